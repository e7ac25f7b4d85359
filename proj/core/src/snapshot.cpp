#include "igr/snapshot.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "igr/diagnostics.hpp"
#include "igr/version.hpp"

namespace igr {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_snapshot(const Model& model, const SimState& state, const std::filesystem::path& path,
                    const std::string& metadata_echo) {
  const Mesh1D& mesh = model.mesh();
  const Primitives prim = model.recover_primitives(state);

  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_snapshot: cannot open " + path.string());
  out << "x,rho,u,E,eps\n";
  for (int c = 0; c < mesh.n_cells; ++c) {
    const double rho = state.rho.value(c, 0.0);
    const double mom = state.mom.value(c, 0.0);
    const double energy = state.energy.value(c, 0.0);
    const double u = mom / rho;
    double kinetic = 0.5 * mom * mom / rho;
    if (has_alpha_kinetic_energy(model.params().kind)) {
      const double qu = prim.aux.q_u.value(c, 0.0);
      kinetic += 0.5 * rho * model.params().alpha * qu * qu;
    }
    const double eps = (energy - kinetic) / rho;
    out << fmt(mesh.cell_center(c)) << ',' << fmt(rho) << ',' << fmt(u) << ',' << fmt(energy)
        << ',' << fmt(eps) << '\n';
  }
  out.close();
  if (!out) throw std::runtime_error("write_snapshot: write failed for " + path.string());

  std::filesystem::path meta = path;
  meta += ".meta";
  std::ofstream mout(meta);
  if (!mout) throw std::runtime_error("write_snapshot: cannot open " + meta.string());
  const Totals totals = conserved_totals(state);
  mout << "version = " << kVersion << "\n";
  mout << "time = " << fmt(state.time) << "\n";
  mout << "total_mass = " << fmt(totals.mass) << "\n";
  mout << "total_momentum = " << fmt(totals.momentum) << "\n";
  mout << "total_energy = " << fmt(totals.energy) << "\n";
  if (!metadata_echo.empty()) mout << metadata_echo;
  mout.close();
  if (!mout) throw std::runtime_error("write_snapshot: write failed for " + meta.string());
}

SnapshotData read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_snapshot: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_snapshot: empty file " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,rho,u,E,eps")
    throw std::runtime_error("read_snapshot: unexpected header '" + line + "' in " + path.string());

  SnapshotData data;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string item;
    std::array<double, 5> v{};
    for (int col = 0; col < 5; ++col) {
      if (!std::getline(row, item, ','))
        throw std::runtime_error("read_snapshot: short row at line " + std::to_string(line_no));
      v[col] = std::stod(item);
    }
    data.x.push_back(v[0]);
    data.rho.push_back(v[1]);
    data.u.push_back(v[2]);
    data.energy.push_back(v[3]);
    data.eps.push_back(v[4]);
  }
  for (std::size_t i = 1; i < data.x.size(); ++i)
    if (!(data.x[i] > data.x[i - 1]))
      throw std::runtime_error("read_snapshot: x column not sorted in " + path.string());
  return data;
}

std::vector<ColumnNorms> compare_csv(const std::filesystem::path& a,
                                     const std::filesystem::path& b) {
  const SnapshotData da = read_snapshot(a);
  const SnapshotData db = read_snapshot(b);
  if (da.rows() != db.rows())
    throw std::runtime_error("compare_csv: row count mismatch (" + std::to_string(da.rows()) +
                             " vs " + std::to_string(db.rows()) + ")");
  for (std::size_t i = 0; i < da.rows(); ++i)
    if (std::abs(da.x[i] - db.x[i]) > 1e-12)
      throw std::runtime_error("compare_csv: x grids differ at row " + std::to_string(i));

  auto norms = [](const std::string& name, const std::vector<double>& u,
                  const std::vector<double>& v) {
    ColumnNorms n{name, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double d = std::abs(u[i] - v[i]);
      n.l1 += d;
      n.l2 += d * d;
      n.linf = std::max(n.linf, d);
    }
    n.l1 /= u.size();
    n.l2 = std::sqrt(n.l2 / u.size());
    return n;
  };
  return {norms("rho", da.rho, db.rho), norms("u", da.u, db.u), norms("E", da.energy, db.energy),
          norms("eps", da.eps, db.eps)};
}

}  // namespace igr
