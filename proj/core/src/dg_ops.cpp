#include "igr/dg_ops.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <cmath>
#include <vector>

#include "igr/errors.hpp"

namespace igr {

DgField project(const Mesh1D& mesh, const std::function<double(double)>& f) {
  DgField out(mesh);
  for (int c = 0; c < mesh.n_cells; ++c) {
    const double xc = mesh.cell_center(c);
    double m = 0.0, s = 0.0;
    for (int q = 0; q < 3; ++q) {
      const double v = f(xc + 0.5 * mesh.h * kGaussNodes[q]);
      m += 0.5 * kGaussWeights[q] * v;
      s += 1.5 * kGaussWeights[q] * v * kGaussNodes[q];
    }
    out.mean(c) = m;
    out.slope(c) = s;
  }
  return out;
}

DgField project_from_samples(const Mesh1D& mesh,
                             const std::vector<std::array<double, 3>>& samples) {
  DgField out(mesh);
  for (int c = 0; c < mesh.n_cells; ++c) {
    double m = 0.0, s = 0.0;
    for (int q = 0; q < 3; ++q) {
      m += 0.5 * kGaussWeights[q] * samples[c][q];
      s += 1.5 * kGaussWeights[q] * samples[c][q] * kGaussNodes[q];
    }
    out.mean(c) = m;
    out.slope(c) = s;
  }
  return out;
}

double integrate(const DgField& u) {
  double total = 0.0;
  for (int c = 0; c < u.n_cells(); ++c) total += u.mean(c);
  return total * u.mesh().h;
}

std::vector<FaceTrace> face_traces(const DgField& u) {
  std::vector<FaceTrace> traces(u.n_cells());
  for (int f = 0; f < u.n_cells(); ++f)
    traces[f] = {u.left_trace(f), u.right_trace(f)};
  return traces;
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplets = std::vector<Eigen::Triplet<double>>;

inline int dof_mean(int c) { return 2 * c; }
inline int dof_slope(int c) { return 2 * c + 1; }

// Face penalty tau [[q]][[phi]] with [[v]] = v_L - v_R. The jump of the
// local basis at face f is +1 on (mean_L, slope_L, slope_R) and -1 on
// mean_R, so the face block is tau J J^T with those signs.
void add_face_penalty(Triplets& trip, const Mesh1D& mesh, int face, double tau) {
  const int L = mesh.wrap(face - 1);
  const int R = mesh.wrap(face);
  const std::array<std::pair<int, double>, 4> jump = {{{dof_mean(L), 1.0},
                                                       {dof_slope(L), 1.0},
                                                       {dof_mean(R), -1.0},
                                                       {dof_slope(R), 1.0}}};
  for (const auto& [i, ji] : jump)
    for (const auto& [j, jj] : jump) trip.emplace_back(i, j, tau * ji * jj);
}

DgField from_vector(const Mesh1D& mesh, const Eigen::VectorXd& v) {
  DgField f(mesh);
  for (int c = 0; c < mesh.n_cells; ++c) {
    f.mean(c) = v[dof_mean(c)];
    f.slope(c) = v[dof_slope(c)];
  }
  return f;
}

// Mass-weighted load vector <rhs, phi> for the diagonal P1 mass matrix.
Eigen::VectorXd load_vector(const DgField& rhs) {
  const double h = rhs.mesh().h;
  Eigen::VectorXd b(2 * rhs.n_cells());
  for (int c = 0; c < rhs.n_cells(); ++c) {
    b[dof_mean(c)] = h * rhs.mean(c);
    b[dof_slope(c)] = (h / 3.0) * rhs.slope(c);
  }
  return b;
}

Eigen::VectorXd solve_iterative(const SpMat& A, const Eigen::VectorXd& b,
                                const SolverOptions& options, const char* what) {
  Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper,
                           Eigen::DiagonalPreconditioner<double>>
      cg;
  cg.setTolerance(options.rel_tol);
  cg.setMaxIterations(20 * A.rows());
  cg.compute(A);
  Eigen::VectorXd x = cg.solve(b);
  if (cg.info() != Eigen::Success)
    throw SolverError(std::string(what) + ": conjugate gradient did not converge",
                      static_cast<int>(cg.iterations()), cg.error());
  return x;
}

}  // namespace

Eigen::SparseMatrix<double> assemble_weak_derivative_matrix(const Mesh1D& mesh,
                                                            const PenaltyParams& penalty) {
  penalty.validate();
  const double h = mesh.h;
  const double tau = penalty.c_penalty * penalty.poly_order * penalty.poly_order / h;
  Triplets trip;
  trip.reserve(18 * mesh.n_cells);
  for (int c = 0; c < mesh.n_cells; ++c) {
    trip.emplace_back(dof_mean(c), dof_mean(c), h);
    trip.emplace_back(dof_slope(c), dof_slope(c), h / 3.0);
  }
  for (int f = 0; f < mesh.n_cells; ++f) add_face_penalty(trip, mesh, f, tau);
  SpMat A(2 * mesh.n_cells, 2 * mesh.n_cells);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

Eigen::SparseMatrix<double> assemble_sipg_matrix(const DgField& rho, double alpha,
                                                 const PenaltyParams& penalty) {
  penalty.validate();
  if (alpha < 0.0) throw std::domain_error("sipg: alpha must be nonnegative");
  const Mesh1D& mesh = rho.mesh();
  const double h = mesh.h;
  const double tau = penalty.c_penalty * penalty.poly_order * penalty.poly_order / h;

  Triplets trip;
  trip.reserve(40 * mesh.n_cells);

  for (int c = 0; c < mesh.n_cells; ++c) {
    if (!(rho.mean(c) > 0.0))
      throw std::domain_error("sipg: non-positive rho cell mean in cell " + std::to_string(c));
    // Reaction: quadrature of rho^{-1} Sigma phi.
    double inv_rho_int = 0.0;  // integral of rho^{-1} over the cell
    for (int q = 0; q < 3; ++q) {
      const double r = rho.value(c, kGaussNodes[q]);
      if (!(r > 0.0))
        throw std::domain_error("sipg: non-positive rho at quadrature point in cell " +
                                std::to_string(c));
      const double w = 0.5 * h * kGaussWeights[q] / r;
      inv_rho_int += w;
      const double xi = kGaussNodes[q];
      trip.emplace_back(dof_mean(c), dof_mean(c), w);
      trip.emplace_back(dof_mean(c), dof_slope(c), w * xi);
      trip.emplace_back(dof_slope(c), dof_mean(c), w * xi);
      trip.emplace_back(dof_slope(c), dof_slope(c), w * xi * xi);
    }
    // Volume diffusion: alpha rho^{-1} Sigma_x phi_x with Sigma_x = 2 s / h.
    trip.emplace_back(dof_slope(c), dof_slope(c), alpha * (4.0 / (h * h)) * inv_rho_int);
  }

  for (int f = 0; f < mesh.n_cells; ++f) {
    const int L = mesh.wrap(f - 1);
    const int R = mesh.wrap(f);
    const double rho_l = rho.left_trace(f);
    const double rho_r = rho.right_trace(f);
    if (!(rho_l > 0.0) || !(rho_r > 0.0))
      throw std::domain_error("sipg: non-positive rho trace at face " + std::to_string(f));

    add_face_penalty(trip, mesh, f, alpha * tau);

    // Consistency + symmetry: -alpha (<rho^{-1} Sigma_x>[[phi]] + <rho^{-1} phi_x>[[Sigma]]).
    // <rho^{-1} v_x> = (s_L / rho_L + s_R / rho_R) / h for P1 data.
    const std::array<std::pair<int, double>, 4> jump = {{{dof_mean(L), 1.0},
                                                         {dof_slope(L), 1.0},
                                                         {dof_mean(R), -1.0},
                                                         {dof_slope(R), 1.0}}};
    const std::array<std::pair<int, double>, 2> avg_dx = {
        {{dof_slope(L), 1.0 / (rho_l * h)}, {dof_slope(R), 1.0 / (rho_r * h)}}};
    for (const auto& [i, gi] : avg_dx)
      for (const auto& [j, jj] : jump) {
        trip.emplace_back(i, j, -alpha * gi * jj);
        trip.emplace_back(j, i, -alpha * gi * jj);
      }
  }

  SpMat A(2 * mesh.n_cells, 2 * mesh.n_cells);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

struct DgWorkspace::Impl {
  SpMat wd_matrix;
  Eigen::SimplicialLLT<SpMat> wd_llt;
  bool wd_direct = false;
};

DgWorkspace::DgWorkspace(const Mesh1D& mesh, const PenaltyParams& penalty, SolverOptions options)
    : mesh_(mesh), penalty_(penalty), options_(options), impl_(std::make_unique<Impl>()) {
  penalty_.validate();
  impl_->wd_matrix = assemble_weak_derivative_matrix(mesh_, penalty_);
  impl_->wd_direct = mesh_.n_cells <= options_.max_cells_direct;
  if (impl_->wd_direct) {
    impl_->wd_llt.compute(impl_->wd_matrix);
    if (impl_->wd_llt.info() != Eigen::Success)
      throw SolverError("weak_derivative: factorization failed", 0, 0.0);
  }
}

DgWorkspace::~DgWorkspace() = default;
DgWorkspace::DgWorkspace(DgWorkspace&&) noexcept = default;
DgWorkspace& DgWorkspace::operator=(DgWorkspace&&) noexcept = default;

DgField DgWorkspace::weak_derivative(const DgField& u) const {
  if (!(u.mesh() == mesh_)) throw std::invalid_argument("weak_derivative: mesh mismatch");
  const int n = mesh_.n_cells;
  Eigen::VectorXd b(2 * n);
  for (int c = 0; c < n; ++c) {
    const int f_lo = c;
    const int f_hi = mesh_.wrap(c + 1);
    const double avg_lo = 0.5 * (u.left_trace(f_lo) + u.right_trace(f_lo));
    const double avg_hi = 0.5 * (u.left_trace(f_hi) + u.right_trace(f_hi));
    b[dof_mean(c)] = avg_hi - avg_lo;
    b[dof_slope(c)] = -2.0 * u.mean(c) + avg_hi + avg_lo;
  }
  Eigen::VectorXd q;
  if (impl_->wd_direct) {
    q = impl_->wd_llt.solve(b);
  } else {
    q = solve_iterative(impl_->wd_matrix, b, options_, "weak_derivative");
  }
  return from_vector(mesh_, q);
}

DgField DgWorkspace::sipg_solve(const DgField& rho, double alpha, const DgField& rhs) const {
  auto [a, unused] = sipg_solve2(rho, alpha, rhs, rhs);
  (void)unused;
  return a;
}

std::pair<DgField, DgField> DgWorkspace::sipg_solve2(const DgField& rho, double alpha,
                                                     const DgField& rhs_a,
                                                     const DgField& rhs_b) const {
  if (!(rho.mesh() == mesh_)) throw std::invalid_argument("sipg_solve: mesh mismatch");
  const SpMat A = assemble_sipg_matrix(rho, alpha, penalty_);
  const Eigen::VectorXd ba = load_vector(rhs_a);
  const Eigen::VectorXd bb = load_vector(rhs_b);
  if (mesh_.n_cells <= options_.max_cells_direct) {
    Eigen::SimplicialLLT<SpMat> llt(A);
    if (llt.info() != Eigen::Success)
      throw SolverError("sipg_solve: factorization failed", 0, 0.0);
    return {from_vector(mesh_, llt.solve(ba)), from_vector(mesh_, llt.solve(bb))};
  }
  return {from_vector(mesh_, solve_iterative(A, ba, options_, "sipg_solve")),
          from_vector(mesh_, solve_iterative(A, bb, options_, "sipg_solve"))};
}

DgField weak_derivative(const DgField& u, const PenaltyParams& penalty) {
  return DgWorkspace(u.mesh(), penalty).weak_derivative(u);
}

DgField sipg_solve(const DgField& rho, double alpha, const DgField& rhs,
                   const PenaltyParams& penalty) {
  return DgWorkspace(rho.mesh(), penalty).sipg_solve(rho, alpha, rhs);
}

}  // namespace igr
