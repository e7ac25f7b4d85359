#include "igr/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace igr {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& value, const std::string& key, int line) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": key '" + key +
                                "' expects a number, got '" + value + "'");
  }
  if (pos != value.size())
    throw std::invalid_argument("config line " + std::to_string(line) + ": key '" + key +
                                "' has trailing characters in '" + value + "'");
  return v;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value', got '" + trim(raw) + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": empty key or value");

    if (key == "model") {
      try {
        cfg.model = parse_model_kind(value);
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": unknown model '" + value + "'");
      }
    } else if (key == "n_cells") {
      cfg.n_cells = static_cast<int>(parse_double(value, key, line_no));
    } else if (key == "gamma") {
      cfg.gamma = parse_double(value, key, line_no);
    } else if (key == "alpha_coefficient") {
      cfg.alpha_coefficient = parse_double(value, key, line_no);
    } else if (key == "cfl") {
      cfg.cfl = parse_double(value, key, line_no);
    } else if (key == "t_end") {
      cfg.t_end = parse_double(value, key, line_no);
    } else if (key == "output_times") {
      cfg.output_times.clear();
      std::istringstream list(value);
      std::string item;
      while (std::getline(list, item, ','))
        cfg.output_times.push_back(parse_double(trim(item), key, line_no));
    } else if (key == "x1") {
      cfg.x1 = parse_double(value, key, line_no);
    } else if (key == "x2") {
      cfg.x2 = parse_double(value, key, line_no);
    } else if (key == "delta") {
      cfg.delta = parse_double(value, key, line_no);
    } else if (key == "c_penalty") {
      cfg.c_penalty = parse_double(value, key, line_no);
    } else if (key == "flux_dissipation_scale") {
      cfg.flux_dissipation_scale = parse_double(value, key, line_no);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_double(value, key, line_no));
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" +
                                  key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

Config Config::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

void Config::validate() const {
  if (n_cells < 4) throw std::invalid_argument("config: n_cells must be at least 4");
  if (!(gamma > 1.0)) throw std::invalid_argument("config: gamma must exceed 1");
  if (alpha_coefficient < 0.0)
    throw std::invalid_argument("config: alpha_coefficient must be nonnegative");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("config: cfl must lie in (0, 1]");
  if (t_end < 0.0) throw std::invalid_argument("config: t_end must be nonnegative");
  if (!(c_penalty > 0.0)) throw std::invalid_argument("config: c_penalty must be positive");
  if (flux_dissipation_scale < 0.0)
    throw std::invalid_argument("config: flux_dissipation_scale must be nonnegative");
  make_run_config().validate();
  make_sod_params();  // validates geometry
}

std::string Config::echo() const {
  std::map<std::string, std::string> kv;
  kv["model"] = to_string(model);
  kv["n_cells"] = std::to_string(n_cells);
  kv["gamma"] = format_double(gamma);
  kv["alpha_coefficient"] = format_double(alpha_coefficient);
  kv["cfl"] = format_double(cfl);
  kv["t_end"] = format_double(t_end);
  std::string times;
  for (std::size_t i = 0; i < output_times.size(); ++i) {
    if (i) times += ",";
    times += format_double(output_times[i]);
  }
  kv["output_times"] = times;
  kv["x1"] = format_double(x1);
  kv["x2"] = format_double(x2);
  kv["delta"] = format_double(delta);
  kv["c_penalty"] = format_double(c_penalty);
  kv["flux_dissipation_scale"] = format_double(flux_dissipation_scale);
  kv["seed"] = std::to_string(seed);
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

ModelParams Config::make_model_params() const {
  ModelParams p = ModelParams::defaults(model, alpha(), gamma);
  p.cfl = cfl;
  p.penalty.c_penalty = c_penalty;
  p.flux_dissipation_scale = flux_dissipation_scale;
  return p;
}

RunConfig Config::make_run_config() const {
  RunConfig rc;
  rc.t_end = t_end;
  rc.cfl = cfl;
  rc.output_times = output_times;
  return rc;
}

SodParams Config::make_sod_params() const {
  SodParams sod;
  sod.x1 = x1;
  sod.x2 = x2;
  sod.delta = delta;
  if (!(delta > 0.0)) throw std::invalid_argument("config: delta must be positive");
  if (!(0.0 < x1 && x1 < x2 && x2 < 1.0))
    throw std::invalid_argument("config: need 0 < x1 < x2 < 1");
  if (x2 - x1 < 4.0 * delta || (1.0 - x2) + x1 < 4.0 * delta)
    throw std::invalid_argument("config: interface ramps overlap (need gaps >= 4 delta)");
  return sod;
}

}  // namespace igr
