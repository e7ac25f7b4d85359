#include "igr/opcheck.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

namespace igr::opcheck {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Centered periodic difference matrix (f[i+1] - f[i-1]) / (2h).
MatrixXd centered_difference(int n, double h) {
  MatrixXd d = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    d(i, (i + 1) % n) = 0.5 / h;
    d(i, (i - 1 + n) % n) = -0.5 / h;
  }
  return d;
}

double rel_l2(const VectorXd& a, const VectorXd& b) {
  const double scale = std::max({a.norm(), b.norm(), 1e-300});
  return (a - b).norm() / scale;
}

}  // namespace

FdGrid FdGrid::periodic_1d(int n, double length) {
  if (n < 4 || n > 64) throw std::invalid_argument("FdGrid: 1D size must lie in [4, 64]");
  return {1, n, length / n};
}

FdGrid FdGrid::periodic_2d(int n, double length) {
  if (n < 4 || n > 24) throw std::invalid_argument("FdGrid: 2D size must lie in [4, 24]");
  return {2, n, length / n};
}

MaxPrincipleResult max_principle_check(const FdGrid& grid, std::span<const double> rho,
                                       std::span<const double> g, double alpha) {
  if (grid.dims != 1) throw std::invalid_argument("max_principle_check: 1D grids only");
  const int n = grid.n;
  if (static_cast<int>(rho.size()) != n || static_cast<int>(g.size()) != n)
    throw std::invalid_argument("max_principle_check: field size mismatch");
  const double h = grid.spacing;

  // Conservative stencil for rho^{-1} phi - alpha (w phi_x)_x with face
  // weights w = average of rho^{-1}: an M-matrix, so g >= 0 forces phi >= 0.
  MatrixXd a = MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (!(rho[i] > 0.0)) throw std::invalid_argument("max_principle_check: rho must be positive");
    const int ip = (i + 1) % n;
    const int im = (i - 1 + n) % n;
    const double w_hi = 0.5 * (1.0 / rho[i] + 1.0 / rho[ip]);
    const double w_lo = 0.5 * (1.0 / rho[i] + 1.0 / rho[im]);
    a(i, i) = 1.0 / rho[i] + alpha * (w_hi + w_lo) / (h * h);
    a(i, ip) -= alpha * w_hi / (h * h);
    a(i, im) -= alpha * w_lo / (h * h);
  }
  VectorXd rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = g[i];
  const VectorXd phi = a.llt().solve(rhs);

  MaxPrincipleResult res;
  res.min_phi = phi.minCoeff();
  res.max_g = rhs.cwiseAbs().maxCoeff();
  res.pass = res.min_phi >= -1e-10 * res.max_g;
  return res;
}

CommutationResult commutation_check(const FdGrid& grid, std::span<const double> rho,
                                    std::span<const double> f, double alpha) {
  if (grid.dims != 1) throw std::invalid_argument("commutation_check: 1D grids only");
  const int n = grid.n;
  if (static_cast<int>(rho.size()) != n || static_cast<int>(f.size()) != n)
    throw std::invalid_argument("commutation_check: field size mismatch");

  const MatrixXd d = centered_difference(n, grid.spacing);
  VectorXd rho_v(n), f_v(n);
  for (int i = 0; i < n; ++i) {
    if (!(rho[i] > 0.0)) throw std::invalid_argument("commutation_check: rho must be positive");
    rho_v[i] = rho[i];
    f_v[i] = f[i];
  }
  const VectorXd inv_rho = rho_v.cwiseInverse();

  // Lv(rho) u = rho u - alpha (rho u_x)_x ; Ls(rho^{-1}) f = rho^{-1} f - alpha (rho^{-1} f_x)_x
  const MatrixXd lv = MatrixXd(rho_v.asDiagonal()) - alpha * d * rho_v.asDiagonal() * d;
  const MatrixXd ls = MatrixXd(inv_rho.asDiagonal()) - alpha * d * inv_rho.asDiagonal() * d;
  const Eigen::PartialPivLU<MatrixXd> lv_lu(lv);
  const Eigen::PartialPivLU<MatrixXd> ls_lu(ls);

  CommutationResult res;
  {
    // M_rho (Lv)^{-1} grad f  vs  grad (Ls)^{-1} M_rho^{-1} f
    const VectorXd lhs = rho_v.cwiseProduct(lv_lu.solve(d * f_v));
    const VectorXd rhs = d * ls_lu.solve(inv_rho.cwiseProduct(f_v));
    res.grad_residual = rel_l2(lhs, rhs);
  }
  {
    // div (Lv)^{-1} M_rho f  vs  M_rho^{-1} (Ls)^{-1} div f
    const VectorXd lhs = d * lv_lu.solve(rho_v.cwiseProduct(f_v));
    const VectorXd rhs = inv_rho.cwiseProduct(ls_lu.solve(d * f_v));
    res.div_residual = rel_l2(lhs, rhs);
  }
  return res;
}

StrainParts strain_decompose(const Eigen::MatrixXd& j) {
  if (j.rows() != j.cols() || j.rows() < 1 || j.rows() > 3)
    throw std::invalid_argument("strain_decompose: need a square d x d matrix with d <= 3");
  const int d = static_cast<int>(j.rows());
  StrainParts parts;
  parts.S = 0.5 * (j + j.transpose());
  parts.Om = j - parts.S;
  parts.S_I = (parts.S.trace() / d) * MatrixXd::Identity(d, d);
  parts.S_D = parts.S - parts.S_I;
  return parts;
}

double matrix_elliptic_reduce_check(const FdGrid& grid, const Eigen::VectorXd& rho,
                                    const Eigen::VectorXd& f,
                                    const std::array<Eigen::VectorXd, 4>& g_components,
                                    double alpha) {
  if (grid.dims != 2) throw std::invalid_argument("matrix_elliptic_reduce_check: 2D grids only");
  const int n = grid.n;
  const int m = n * n;
  if (rho.size() != m || f.size() != m)
    throw std::invalid_argument("matrix_elliptic_reduce_check: field size mismatch");
  for (const auto& g : g_components)
    if (g.size() != m) throw std::invalid_argument("matrix_elliptic_reduce_check: G size mismatch");

  // Axis difference matrices on the flattened n x n grid, index = i * n + j.
  const double h = grid.spacing;
  MatrixXd d1 = MatrixXd::Zero(m, m);
  MatrixXd d2 = MatrixXd::Zero(m, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int id = i * n + j;
      d1(id, ((i + 1) % n) * n + j) = 0.5 / h;
      d1(id, ((i - 1 + n) % n) * n + j) = -0.5 / h;
      d2(id, i * n + (j + 1) % n) = 0.5 / h;
      d2(id, i * n + (j - 1 + n) % n) = -0.5 / h;
    }

  const VectorXd inv_rho = rho.cwiseInverse();
  const MatrixXd r = MatrixXd(inv_rho.asDiagonal());
  const MatrixXd d1r = d1 * r;
  const MatrixXd d2r = d2 * r;

  // Components ordered [S11, S12, S21, S22]; the scalar coupling term
  // div(rho^{-1} div Sig) = d1 r (d1 S11 + d2 S21) + d2 r (d1 S12 + d2 S22)
  // enters the two diagonal-component rows only.
  MatrixXd full = MatrixXd::Zero(4 * m, 4 * m);
  const std::array<MatrixXd, 4> coupling = {d1r * d1, d2r * d1, d1r * d2, d2r * d2};
  for (int comp = 0; comp < 4; ++comp)
    full.block(comp * m, comp * m, m, m) = r;
  for (int diag_row : {0, 3})
    for (int comp = 0; comp < 4; ++comp)
      full.block(diag_row * m, comp * m, m, m) -= alpha * coupling[comp];

  VectorXd rhs(4 * m);
  rhs.segment(0 * m, m) = f + g_components[0];
  rhs.segment(1 * m, m) = g_components[1];
  rhs.segment(2 * m, m) = g_components[2];
  rhs.segment(3 * m, m) = f + g_components[3];
  const VectorXd full_solution = Eigen::PartialPivLU<MatrixXd>(full).solve(rhs);

  // Reduced route: Sig = rho G + sigma I with one scalar solve.
  const MatrixXd scalar_op = r - alpha * (d1 * r * d1 + d2 * r * d2);
  VectorXd scalar_rhs = f;
  {
    const VectorXd rg1 = rho.cwiseProduct(g_components[0]);
    const VectorXd rg2 = rho.cwiseProduct(g_components[1]);
    const VectorXd rg3 = rho.cwiseProduct(g_components[2]);
    const VectorXd rg4 = rho.cwiseProduct(g_components[3]);
    // alpha div(rho^{-1} div(rho G)) with (div M)_j = d_i M_ij.
    scalar_rhs += alpha * (d1 * (r * (d1 * rg1 + d2 * rg3)) + d2 * (r * (d1 * rg2 + d2 * rg4)));
  }
  const VectorXd sigma = Eigen::PartialPivLU<MatrixXd>(scalar_op).solve(scalar_rhs);

  VectorXd reduced(4 * m);
  reduced.segment(0 * m, m) = rho.cwiseProduct(g_components[0]) + sigma;
  reduced.segment(1 * m, m) = rho.cwiseProduct(g_components[1]);
  reduced.segment(2 * m, m) = rho.cwiseProduct(g_components[2]);
  reduced.segment(3 * m, m) = rho.cwiseProduct(g_components[3]) + sigma;

  return rel_l2(full_solution, reduced);
}

namespace {

// Smooth positive periodic field from a few random Fourier modes.
VectorXd smooth_field_1d(std::mt19937_64& rng, int n, bool positive) {
  std::uniform_real_distribution<double> amp(-0.4, 0.4);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  VectorXd out(n);
  std::array<double, 3> a{amp(rng), amp(rng), amp(rng)};
  std::array<double, 3> p{phase(rng), phase(rng), phase(rng)};
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / n;
    double v = 0.0;
    for (int mode = 1; mode <= 3; ++mode)
      v += a[mode - 1] * std::cos(2.0 * std::numbers::pi * mode * x + p[mode - 1]);
    out[i] = positive ? std::exp(v) : v;
  }
  return out;
}

VectorXd smooth_field_2d(std::mt19937_64& rng, int n, bool positive) {
  std::uniform_real_distribution<double> amp(-0.3, 0.3);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  struct Mode {
    int kx, ky;
    double a, px, py;
  };
  std::vector<Mode> modes;
  for (int kx = 0; kx <= 2; ++kx)
    for (int ky = 0; ky <= 2; ++ky) {
      if (kx == 0 && ky == 0) continue;
      modes.push_back({kx, ky, amp(rng), phase(rng), phase(rng)});
    }
  VectorXd out(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = static_cast<double>(i) / n;
      const double y = static_cast<double>(j) / n;
      double v = 0.0;
      for (const auto& mo : modes)
        v += mo.a * std::cos(2.0 * std::numbers::pi * mo.kx * x + mo.px) *
             std::cos(2.0 * std::numbers::pi * mo.ky * y + mo.py);
      out[i * n + j] = positive ? std::exp(v) : v;
    }
  return out;
}

}  // namespace

SuiteReport run_suite(std::uint64_t seed) {
  SuiteReport report;
  std::mt19937_64 rng(seed);

  {  // Maximum principle: 500 random instances.
    const FdGrid grid = FdGrid::periodic_1d(64);
    std::uniform_real_distribution<double> log_rho(std::log(0.1), std::log(10.0));
    std::uniform_real_distribution<double> log_alpha(std::log(1e-4), std::log(1.0));
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0;  // most negative min_phi / max_g
    bool ok = true;
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<double> rho(grid.n), g(grid.n);
      for (int i = 0; i < grid.n; ++i) {
        rho[i] = std::exp(log_rho(rng));
        const double x = gauss(rng);
        g[i] = x * x;
      }
      const auto res = max_principle_check(grid, rho, g, std::exp(log_alpha(rng)));
      worst = std::min(worst, res.min_phi / res.max_g);
      ok = ok && res.pass;
    }
    report.lines.push_back({"max_principle (500 random)", -worst, 1e-10, ok});
  }

  {  // Strict positivity: point sources with O(1) screening length.
    const FdGrid grid = FdGrid::periodic_1d(64);
    std::uniform_real_distribution<double> log_rho(std::log(0.1), std::log(10.0));
    std::uniform_real_distribution<double> alpha_dist(0.04, 1.0);
    std::uniform_int_distribution<int> node(0, grid.n - 1);
    bool ok = true;
    double worst_ratio = 1.0;
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> rho(grid.n), g(grid.n, 0.0);
      for (int i = 0; i < grid.n; ++i) rho[i] = std::exp(log_rho(rng));
      g[node(rng)] = 1.0;
      const auto res = max_principle_check(grid, rho, g, alpha_dist(rng));
      // solve again to recover max phi for the ratio
      const double ratio = res.min_phi / res.max_g;
      worst_ratio = std::min(worst_ratio, ratio);
      ok = ok && res.min_phi > 1e-12;
    }
    report.lines.push_back({"max_principle strict positivity (100 point sources)",
                            worst_ratio, 1e-12, ok});
  }

  {  // Commutation relations.
    const FdGrid grid = FdGrid::periodic_1d(64);
    std::uniform_real_distribution<double> alpha_dist(0.0, 0.5);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const VectorXd rho = trial == 0 ? VectorXd::Ones(grid.n) : smooth_field_1d(rng, grid.n, true);
      const VectorXd f = smooth_field_1d(rng, grid.n, false);
      const double alpha = trial == 1 ? 0.0 : alpha_dist(rng);
      const auto res = commutation_check(grid, std::span(rho.data(), rho.size()),
                                         std::span(f.data(), f.size()), alpha);
      worst = std::max({worst, res.grad_residual, res.div_residual});
    }
    report.lines.push_back({"commutation relations (100 random)", worst, 1e-10, worst < 1e-10});
  }

  {  // Strain identities on 10^4 random 3x3 gradients.
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
      MatrixXd j(3, 3);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) j(r, c) = gauss(rng);
      const StrainParts parts = strain_decompose(j);
      const double scale = j.squaredNorm() + 1.0;
      const double tr_j2 = (j * j).trace();
      const double id1 = std::abs(tr_j2 - (parts.S.squaredNorm() - parts.Om.squaredNorm()));
      const double tr_j = j.trace();
      const double id2 = std::abs(tr_j * tr_j - parts.S.trace() * parts.S.trace());
      const double id3 = std::abs(tr_j2 - ((parts.S_D * parts.S_D).trace() +
                                           parts.S.trace() * parts.S.trace() / 3.0 +
                                           (parts.Om * parts.Om).trace()));
      worst = std::max(worst, std::max({id1, id2, id3}) / scale);
    }
    report.lines.push_back({"strain identities (10^4 random 3x3)", worst, 1e-12, worst < 1e-12});
  }

  {  // Matrix elliptic reduction: bulk at 10^2, spot checks at 16^2.
    std::uniform_real_distribution<double> alpha_dist(0.001, 0.1);
    double worst = 0.0;
    auto run_one = [&](int n) {
      const FdGrid grid = FdGrid::periodic_2d(n);
      const VectorXd rho = smooth_field_2d(rng, n, true);
      const VectorXd f = smooth_field_2d(rng, n, false);
      std::array<VectorXd, 4> g = {smooth_field_2d(rng, n, false), smooth_field_2d(rng, n, false),
                                   smooth_field_2d(rng, n, false), smooth_field_2d(rng, n, false)};
      worst = std::max(worst, matrix_elliptic_reduce_check(grid, rho, f, g, alpha_dist(rng)));
    };
    for (int trial = 0; trial < 100; ++trial) run_one(10);
    for (int trial = 0; trial < 3; ++trial) run_one(16);
    report.lines.push_back({"matrix elliptic reduction (100 @ 10^2 + 3 @ 16^2)", worst, 1e-8,
                            worst < 1e-8});
  }

  for (const auto& line : report.lines) report.all_pass = report.all_pass && line.pass;
  return report;
}

}  // namespace igr::opcheck
