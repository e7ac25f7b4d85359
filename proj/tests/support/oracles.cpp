#include "support/oracles.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace igr::test {

namespace {

// Independent statement of the 3-point Gauss rule.
const double kNode = std::sqrt(0.6);
const double kW0 = 8.0 / 9.0;
const double kW1 = 5.0 / 9.0;

struct EulerFlux {
  double rho, mom, energy;
};

EulerFlux euler_flux(double rho, double mom, double energy, double gamma) {
  const double u = mom / rho;
  const double eps = energy / rho - 0.5 * u * u;
  const double p = (gamma - 1.0) * rho * eps;
  return {mom, mom * u + p, (energy + p) * u};
}

}  // namespace

SimState brute_force_euler_rhs(const SimState& state, double gamma, double flux_scale) {
  const Mesh1D& mesh = state.rho.mesh();
  const int n = mesh.n_cells;
  const double h = mesh.h;
  SimState out(mesh);
  out.time = state.time;

  auto lin = [](double mean, double slope, double xi) { return mean + slope * xi; };

  // Face fluxes (face f between cells f-1 and f).
  std::vector<EulerFlux> fhat(n);
  for (int f = 0; f < n; ++f) {
    const int cl = (f - 1 + n) % n;
    const int cr = f;
    const double rl = lin(state.rho.mean(cl), state.rho.slope(cl), 1.0);
    const double ml = lin(state.mom.mean(cl), state.mom.slope(cl), 1.0);
    const double el = lin(state.energy.mean(cl), state.energy.slope(cl), 1.0);
    const double rr = lin(state.rho.mean(cr), state.rho.slope(cr), -1.0);
    const double mr = lin(state.mom.mean(cr), state.mom.slope(cr), -1.0);
    const double er = lin(state.energy.mean(cr), state.energy.slope(cr), -1.0);
    const double ul = ml / rl, ur = mr / rr;
    const double cl_s = std::sqrt(gamma * (gamma - 1.0) * (el / rl - 0.5 * ul * ul));
    const double cr_s = std::sqrt(gamma * (gamma - 1.0) * (er / rr - 0.5 * ur * ur));
    const double lambda = std::max(std::abs(ul) + cl_s, std::abs(ur) + cr_s);
    const EulerFlux fl = euler_flux(rl, ml, el, gamma);
    const EulerFlux fr = euler_flux(rr, mr, er, gamma);
    const double d = 0.5 * flux_scale * lambda;
    fhat[f] = {0.5 * (fl.rho + fr.rho) - d * (rr - rl), 0.5 * (fl.mom + fr.mom) - d * (mr - ml),
               0.5 * (fl.energy + fr.energy) - d * (er - el)};
  }

  const double nodes[3] = {-kNode, 0.0, kNode};
  const double weights[3] = {kW1, kW0, kW1};
  for (int c = 0; c < n; ++c) {
    EulerFlux vol{0.0, 0.0, 0.0};
    for (int q = 0; q < 3; ++q) {
      const double xi = nodes[q];
      const EulerFlux fq = euler_flux(lin(state.rho.mean(c), state.rho.slope(c), xi),
                                      lin(state.mom.mean(c), state.mom.slope(c), xi),
                                      lin(state.energy.mean(c), state.energy.slope(c), xi), gamma);
      vol.rho += 0.5 * h * weights[q] * fq.rho;
      vol.mom += 0.5 * h * weights[q] * fq.mom;
      vol.energy += 0.5 * h * weights[q] * fq.energy;
    }
    const EulerFlux& lo = fhat[c];
    const EulerFlux& hi = fhat[(c + 1) % n];
    out.rho.mean(c) = -(hi.rho - lo.rho) / h;
    out.mom.mean(c) = -(hi.mom - lo.mom) / h;
    out.energy.mean(c) = -(hi.energy - lo.energy) / h;
    out.rho.slope(c) = (3.0 / h) * ((2.0 / h) * vol.rho - (hi.rho + lo.rho));
    out.mom.slope(c) = (3.0 / h) * ((2.0 / h) * vol.mom - (hi.mom + lo.mom));
    out.energy.slope(c) = (3.0 / h) * ((2.0 / h) * vol.energy - (hi.energy + lo.energy));
  }
  return out;
}

namespace {

DgField basis_field(const Mesh1D& mesh, int dof) {
  DgField e(mesh);
  if (dof % 2 == 0)
    e.mean(dof / 2) = 1.0;
  else
    e.slope(dof / 2) = 1.0;
  return e;
}

double cell_quad(const Mesh1D& mesh, int c, const std::function<double(int, double)>& f) {
  const double nodes[3] = {-kNode, 0.0, kNode};
  const double weights[3] = {kW1, kW0, kW1};
  double s = 0.0;
  for (int q = 0; q < 3; ++q) s += 0.5 * mesh.h * weights[q] * f(c, nodes[q]);
  return s;
}

double jump(const DgField& v, int face) { return v.left_trace(face) - v.right_trace(face); }
double avg(const DgField& v, int face) { return 0.5 * (v.left_trace(face) + v.right_trace(face)); }

// d/dx of a P1 field inside cell c.
double deriv(const DgField& v, int c) { return 2.0 * v.slope(c) / v.mesh().h; }

DgField solve_dense(const Mesh1D& mesh, const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd x = a.fullPivLu().solve(b);
  DgField out(mesh);
  for (int c = 0; c < mesh.n_cells; ++c) {
    out.mean(c) = x[2 * c];
    out.slope(c) = x[2 * c + 1];
  }
  return out;
}

}  // namespace

DgField dense_weak_derivative(const DgField& u, const PenaltyParams& penalty) {
  const Mesh1D& mesh = u.mesh();
  const int dofs = 2 * mesh.n_cells;
  const double tau = penalty.c_penalty * penalty.poly_order * penalty.poly_order / mesh.h;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dofs, dofs);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(dofs);
  std::vector<DgField> basis;
  basis.reserve(dofs);
  for (int d = 0; d < dofs; ++d) basis.push_back(basis_field(mesh, d));

  for (int i = 0; i < dofs; ++i) {
    for (int j = 0; j < dofs; ++j) {
      double v = 0.0;
      for (int c = 0; c < mesh.n_cells; ++c)
        v += cell_quad(mesh, c, [&](int cc, double xi) {
          return basis[j].value(cc, xi) * basis[i].value(cc, xi);
        });
      for (int f = 0; f < mesh.n_cells; ++f) v += tau * jump(basis[j], f) * jump(basis[i], f);
      a(i, j) = v;
    }
    // -<u, phi_x> with phi_x constant per cell, plus face averages of u.
    double load = 0.0;
    for (int c = 0; c < mesh.n_cells; ++c) {
      const double phi_x = deriv(basis[i], c);
      if (phi_x != 0.0)
        load -= phi_x * cell_quad(mesh, c, [&](int cc, double xi) { return u.value(cc, xi); });
    }
    for (int f = 0; f < mesh.n_cells; ++f) load += avg(u, f) * jump(basis[i], f);
    b[i] = load;
  }
  return solve_dense(mesh, a, b);
}

DgField dense_sipg_solve(const DgField& rho, double alpha, const DgField& rhs,
                         const PenaltyParams& penalty) {
  const Mesh1D& mesh = rho.mesh();
  const int dofs = 2 * mesh.n_cells;
  const double tau = penalty.c_penalty * penalty.poly_order * penalty.poly_order / mesh.h;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dofs, dofs);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(dofs);
  std::vector<DgField> basis;
  basis.reserve(dofs);
  for (int d = 0; d < dofs; ++d) basis.push_back(basis_field(mesh, d));

  auto avg_weighted_deriv = [&](const DgField& v, int f) {
    const int cl = mesh.wrap(f - 1);
    const int cr = mesh.wrap(f);
    return 0.5 * (deriv(v, cl) / rho.left_trace(f) + deriv(v, cr) / rho.right_trace(f));
  };

  for (int i = 0; i < dofs; ++i) {
    for (int j = 0; j < dofs; ++j) {
      double v = 0.0;
      for (int c = 0; c < mesh.n_cells; ++c) {
        v += cell_quad(mesh, c, [&](int cc, double xi) {
          return basis[j].value(cc, xi) * basis[i].value(cc, xi) / rho.value(cc, xi);
        });
        v += alpha * deriv(basis[j], c) * deriv(basis[i], c) *
             cell_quad(mesh, c, [&](int cc, double xi) { return 1.0 / rho.value(cc, xi); });
      }
      for (int f = 0; f < mesh.n_cells; ++f) {
        v -= alpha * (avg_weighted_deriv(basis[j], f) * jump(basis[i], f) +
                      avg_weighted_deriv(basis[i], f) * jump(basis[j], f));
        v += alpha * tau * jump(basis[j], f) * jump(basis[i], f);
      }
      a(i, j) = v;
    }
    double load = 0.0;
    for (int c = 0; c < mesh.n_cells; ++c)
      load += cell_quad(mesh, c, [&](int cc, double xi) {
        return rhs.value(cc, xi) * basis[i].value(cc, xi);
      });
    b[i] = load;
  }
  return solve_dense(mesh, a, b);
}

double l2_error(const DgField& u, const std::function<double(double)>& exact) {
  const Mesh1D& mesh = u.mesh();
  double err = 0.0;
  for (int c = 0; c < mesh.n_cells; ++c)
    err += cell_quad(mesh, c, [&](int cc, double xi) {
      const double x = mesh.cell_center(cc) + 0.5 * mesh.h * xi;
      const double d = u.value(cc, xi) - exact(x);
      return d * d;
    });
  return std::sqrt(err);
}

double observed_order(const std::vector<double>& h, const std::vector<double>& err) {
  const std::size_t n = h.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace igr::test
