#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace igr::opcheck {

// Periodic finite-difference grid used by the operator checks; the
// conservative stencils make the discrete operators exact M-matrices /
// exact discrete adjoints, so the identities hold to solver precision.
struct FdGrid {
  int dims = 1;
  int n = 64;       // points per axis (<= 64 in 1D, <= 24 per axis in 2D)
  double spacing = 0.0;

  static FdGrid periodic_1d(int n, double length = 1.0);
  static FdGrid periodic_2d(int n, double length = 1.0);
};

struct MaxPrincipleResult {
  double min_phi = 0.0;
  double max_g = 0.0;
  bool pass = false;
};

// Solves rho^{-1} phi - alpha (rho^{-1} phi_x)_x = g on a periodic 1D grid
// with a conservative second-order stencil and checks min phi against the
// maximum-principle bound min phi >= -1e-10 max g.
MaxPrincipleResult max_principle_check(const FdGrid& grid, std::span<const double> rho,
                                       std::span<const double> g, double alpha);

struct CommutationResult {
  double grad_residual = 0.0;  // M_rho (Lv)^{-1} grad  vs  grad (Ls)^{-1} M_rho^{-1}
  double div_residual = 0.0;   // div (Lv)^{-1} M_rho   vs  M_rho^{-1} (Ls)^{-1} div
};

// Relative L2 residuals of the weighted-elliptic commutation relations,
// evaluated on f with both operators assembled from the same centered
// difference matrix.
CommutationResult commutation_check(const FdGrid& grid, std::span<const double> rho,
                                    std::span<const double> f, double alpha);

struct StrainParts {
  Eigen::MatrixXd S;    // symmetric part
  Eigen::MatrixXd Om;   // antisymmetric part
  Eigen::MatrixXd S_D;  // deviatoric strain
  Eigen::MatrixXd S_I;  // isotropic strain tr(S) I / d
};

// Symmetric/antisymmetric and deviatoric/isotropic split of a velocity
// gradient; satisfies tr(J^2) = |S|_F^2 - |Om|_F^2 and
// tr(J^2) = tr(S_D^2) + tr^2(S)/d + tr(Om^2).
StrainParts strain_decompose(const Eigen::MatrixXd& J);

// 2D periodic grid: solves the full d^2-component matrix elliptic system
//   rho^{-1} Sig - alpha div(rho^{-1} div Sig) I = f I + G
// densely, then the reduced one-scalar-solve form Sig = rho G + sigma I,
// and returns the relative Frobenius discrepancy between the two.
double matrix_elliptic_reduce_check(const FdGrid& grid, const Eigen::VectorXd& rho,
                                    const Eigen::VectorXd& f,
                                    const std::array<Eigen::VectorXd, 4>& g_components,
                                    double alpha);

struct CheckLine {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::vector<CheckLine> lines;
  bool all_pass = true;
};

// The full randomized verification suite (seeded for replay): maximum
// principle (500 instances + strict positivity), commutation relations,
// strain identities (1e4 instances), and the matrix elliptic reduction.
SuiteReport run_suite(std::uint64_t seed);

}  // namespace igr::opcheck
