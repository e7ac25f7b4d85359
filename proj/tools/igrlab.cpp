// Command-line front end: shock-tube runs with CSV snapshots, the acoustic
// dispersion harness, the elliptic-operator verification suite, and snapshot
// comparison.

#include <CLI11.hpp>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <thread>
#include <vector>

#include "igr/config.hpp"
#include "igr/diagnostics.hpp"
#include "igr/errors.hpp"
#include "igr/linwave.hpp"
#include "igr/opcheck.hpp"
#include "igr/snapshot.hpp"
#include "igr/timestep.hpp"
#include "igr/version.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

int sweep_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("IGRLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", t);
  return buf;
}

void run_one_config(const igr::Config& cfg, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const igr::Mesh1D mesh = cfg.make_mesh();
  const igr::Model model(mesh, cfg.make_model_params());
  igr::SimState state = igr::initial_condition_sod(model, cfg.make_sod_params());

  const std::string echo = cfg.echo();
  std::vector<igr::DiagnosticsRecord> records;
  igr::RunCallbacks callbacks;
  callbacks.on_sample = [&](const igr::SimState& s) {
    records.push_back(igr::sample_diagnostics(model, s));
    igr::write_snapshot(model, s, out_dir / ("snapshot_t_" + time_tag(s.time) + ".csv"), echo);
  };
  igr::run(model, std::move(state), cfg.make_run_config(), callbacks);

  std::ofstream diag(out_dir / "diagnostics.csv");
  diag << "time,mass,momentum,energy,entropy,entropy_production_rate,kinetic_energy\n";
  char buf[200];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.time,
                  r.total_mass, r.total_momentum, r.total_energy, r.total_entropy,
                  r.entropy_production_rate, r.generalized_kinetic_energy);
    diag << buf;
  }
}

int cmd_run(const std::vector<std::string>& config_paths, const std::string& out_base,
            int threads) {
  struct Entry {
    igr::Config cfg;
    fs::path out_dir;
  };
  std::vector<Entry> entries;
  for (const auto& path : config_paths) {
    igr::Config cfg = igr::Config::parse_file(path);
    fs::path dir = out_base;
    if (config_paths.size() > 1) dir /= fs::path(path).stem();
    entries.push_back({std::move(cfg), std::move(dir)});
  }

  const int n_threads = std::min<int>(sweep_threads(threads), static_cast<int>(entries.size()));
  std::atomic<std::size_t> next{0};
  std::atomic<int> worst_exit{kExitOk};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= entries.size()) return;
      try {
        run_one_config(entries[i].cfg, entries[i].out_dir);
      } catch (const igr::PositivityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        worst_exit = kExitNumerical;
      } catch (const igr::SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        worst_exit = kExitNumerical;
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (worst_exit == kExitOk) worst_exit = kExitValidation;
      }
    }
  };
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return worst_exit;
}

int cmd_dispersion(const std::string& model_name, int n_cells, const std::vector<int>& modes,
                   double alpha_k2, double amplitude, double gamma, const std::string& out_path) {
  const igr::ModelKind kind = igr::parse_model_kind(model_name);
  const igr::Mesh1D mesh(n_cells);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::invalid_argument("cannot open output file: " + out_path);
    out = &file;
  }
  (*out) << "k,omega_analytic,speed_measured,rel_err\n";

  for (int mode : modes) {
    const double k = 2.0 * std::numbers::pi * mode;
    const double alpha = alpha_k2 > 0.0 ? alpha_k2 / (k * k) : 0.0;
    const igr::Model model(mesh, igr::ModelParams::defaults(kind, alpha, gamma));

    igr::PhaseSpeedSetup setup;
    setup.k_mode = mode;
    setup.amplitude = amplitude;
    const double measured = igr::measure_phase_speed(model, setup);

    igr::DispersionQuery query;
    query.k = k;
    query.rho0 = setup.rho0;
    query.eps0 = setup.p0 / ((gamma - 1.0) * setup.rho0);
    query.alpha = alpha;
    query.gamma = gamma;
    query.capillary = kind != igr::ModelKind::HreNoCapillary;
    const igr::DispersionResult disp = igr::dispersion_omega(query);
    const double analytic_speed = disp.omega_plus / k;

    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.6e\n", k, disp.omega_plus, measured,
                  std::abs(measured - analytic_speed) / analytic_speed);
    (*out) << buf;
  }
  return kExitOk;
}

int cmd_opcheck(std::uint64_t seed) {
  const igr::opcheck::SuiteReport report = igr::opcheck::run_suite(seed);
  std::printf("%-55s %-14s %-10s %s\n", "check", "residual", "threshold", "status");
  for (const auto& line : report.lines)
    std::printf("%-55s %-14.3e %-10.0e %s\n", line.name.c_str(), line.residual, line.threshold,
                line.pass ? "PASS" : "FAIL");
  return report.all_pass ? kExitOk : kExitNumerical;
}

int cmd_compare(const std::string& a, const std::string& b) {
  const auto norms = igr::compare_csv(a, b);
  std::printf("column,l1,l2,linf\n");
  for (const auto& n : norms)
    std::printf("%s,%.17g,%.17g,%.17g\n", n.column.c_str(), n.l1, n.l2, n.linf);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1D discontinuous-Galerkin lab for entropic-pressure regularizations "
               "of the compressible Euler equations"};
  app.set_version_flag("--version", std::string(igr::kVersion));
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Simulate a shock-tube config; write snapshots + diagnostics");
  std::vector<std::string> config_paths;
  std::string out_base = "out";
  int threads = 0;
  run_cmd->add_option("configs", config_paths, "config files (key = value)")->required();
  run_cmd->add_option("-o,--output", out_base, "output directory (default: out)");
  run_cmd->add_option("--threads", threads,
                      "max concurrent sweep entries (default: IGRLAB_THREADS or hardware)");

  auto* disp_cmd = app.add_subcommand("dispersion", "Measure acoustic phase speeds vs the analytic branches");
  std::string disp_model = "HRE";
  int disp_cells = 256;
  std::vector<int> disp_modes = {1, 2, 4};
  double alpha_k2 = 1.0;
  double amplitude = 1e-6;
  double disp_gamma = 1.4;
  std::string disp_out;
  disp_cmd->add_option("--model", disp_model, "Euler | IGR | HRE | HIGR | HIGRAblated | HRENoCapillary");
  disp_cmd->add_option("--n-cells", disp_cells, "mesh resolution (default 256)");
  disp_cmd->add_option("--modes", disp_modes, "wavenumber modes k = 2 pi m (default 1 2 4)");
  disp_cmd->add_option("--alpha-k2", alpha_k2, "alpha k^2 at each mode (default 1)");
  disp_cmd->add_option("--amplitude", amplitude, "relative wave amplitude (default 1e-6)");
  disp_cmd->add_option("--gamma", disp_gamma, "adiabatic index (default 1.4)");
  disp_cmd->add_option("-o,--output", disp_out, "CSV output path (default: stdout)");

  auto* opcheck_cmd = app.add_subcommand("opcheck", "Run the elliptic-operator verification suite");
  std::uint64_t seed = 12345;
  opcheck_cmd->add_option("--seed", seed, "random seed for replay (default 12345)");

  auto* compare_cmd = app.add_subcommand("compare", "Column-wise norms between two snapshot CSVs");
  std::string path_a, path_b;
  compare_cmd->add_option("a", path_a, "first snapshot")->required();
  compare_cmd->add_option("b", path_b, "second snapshot")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*run_cmd) return cmd_run(config_paths, out_base, threads);
    if (*disp_cmd)
      return cmd_dispersion(disp_model, disp_cells, disp_modes, alpha_k2, amplitude, disp_gamma,
                            disp_out);
    if (*opcheck_cmd) return cmd_opcheck(seed);
    if (*compare_cmd) return cmd_compare(path_a, path_b);
  } catch (const igr::PositivityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const igr::SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
