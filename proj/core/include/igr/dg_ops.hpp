#pragma once

#include <Eigen/Sparse>
#include <memory>

#include "igr/mesh.hpp"

namespace igr {

// Face stabilization constants shared by the penalized weak derivative and
// the SIPG elliptic solve.
struct PenaltyParams {
  double c_penalty = 20.0;
  int poly_order = 1;

  void validate() const {
    if (!(c_penalty > 0.0)) throw std::invalid_argument("PenaltyParams: c_penalty must be positive");
    if (poly_order != 1) throw std::invalid_argument("PenaltyParams: only p = 1 is supported");
  }
};

struct SolverOptions {
  double rel_tol = 1e-10;     // iterative solver relative residual
  int max_cells_direct = 4096;  // direct sparse factorization up to this many cells
};

// Assembled system matrices, exposed for tests that check symmetry and
// positive definiteness of the discrete operators.
Eigen::SparseMatrix<double> assemble_weak_derivative_matrix(const Mesh1D& mesh,
                                                            const PenaltyParams& penalty);
Eigen::SparseMatrix<double> assemble_sipg_matrix(const DgField& rho, double alpha,
                                                 const PenaltyParams& penalty);

// Caches the factorization of the (state-independent) weak-derivative
// operator for one mesh + penalty combination. Not thread-safe; use one
// workspace per thread of execution.
class DgWorkspace {
 public:
  DgWorkspace(const Mesh1D& mesh, const PenaltyParams& penalty, SolverOptions options = {});
  ~DgWorkspace();

  DgWorkspace(const DgWorkspace&) = delete;
  DgWorkspace& operator=(const DgWorkspace&) = delete;
  DgWorkspace(DgWorkspace&&) noexcept;
  DgWorkspace& operator=(DgWorkspace&&) noexcept;

  const Mesh1D& mesh() const { return mesh_; }
  const PenaltyParams& penalty() const { return penalty_; }

  // Jump-penalized weak derivative q_u of a P1DG field: solves
  //   (M + penalty jumps) q = -<u, phi_x> + face averages of u.
  DgField weak_derivative(const DgField& u) const;

  // SIPG solve of  rho^{-1} Sigma - alpha (rho^{-1} Sigma_x)_x = rhs.
  // Requires strictly positive cell means and face traces of rho.
  DgField sipg_solve(const DgField& rho, double alpha, const DgField& rhs) const;

  // Two right-hand sides against the same rho (one factorization).
  std::pair<DgField, DgField> sipg_solve2(const DgField& rho, double alpha,
                                          const DgField& rhs_a, const DgField& rhs_b) const;

 private:
  struct Impl;
  Mesh1D mesh_;
  PenaltyParams penalty_;
  SolverOptions options_;
  std::unique_ptr<Impl> impl_;
};

// One-shot convenience wrappers (construct a workspace internally).
DgField weak_derivative(const DgField& u, const PenaltyParams& penalty = {});
DgField sipg_solve(const DgField& rho, double alpha, const DgField& rhs,
                   const PenaltyParams& penalty = {});

}  // namespace igr
