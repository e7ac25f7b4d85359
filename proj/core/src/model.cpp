#include "igr/model.hpp"

#include <cmath>

#include "igr/errors.hpp"

namespace igr {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Euler: return "Euler";
    case ModelKind::Igr: return "IGR";
    case ModelKind::Hre: return "HRE";
    case ModelKind::Higr: return "HIGR";
    case ModelKind::HigrAblated: return "HIGRAblated";
    case ModelKind::HreNoCapillary: return "HRENoCapillary";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "Euler") return ModelKind::Euler;
  if (name == "IGR") return ModelKind::Igr;
  if (name == "HRE") return ModelKind::Hre;
  if (name == "HIGR") return ModelKind::Higr;
  if (name == "HIGRAblated") return ModelKind::HigrAblated;
  if (name == "HRENoCapillary") return ModelKind::HreNoCapillary;
  throw std::invalid_argument("unknown model kind: " + name);
}

bool has_alpha_kinetic_energy(ModelKind kind) {
  switch (kind) {
    case ModelKind::Hre:
    case ModelKind::Higr:
    case ModelKind::HigrAblated:
    case ModelKind::HreNoCapillary:
      return true;
    default:
      return false;
  }
}

ModelParams ModelParams::defaults(ModelKind kind, double alpha, double gamma) {
  ModelParams p;
  p.kind = kind;
  p.alpha = alpha;
  p.gamma = gamma;
  switch (kind) {
    case ModelKind::Hre:
    case ModelKind::HreNoCapillary:
    case ModelKind::HigrAblated:
      p.k = 1;
      break;
    default:
      p.k = 2;
      break;
  }
  return p;
}

void ModelParams::validate() const {
  if (alpha < 0.0) throw std::invalid_argument("ModelParams: alpha must be nonnegative");
  if (k != 1 && k != 2) throw std::invalid_argument("ModelParams: k must be 1 or 2");
  if (!(gamma > 1.0)) throw std::invalid_argument("ModelParams: gamma must exceed 1");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("ModelParams: cfl must lie in (0, 1]");
  if (flux_dissipation_scale < 0.0)
    throw std::invalid_argument("ModelParams: flux_dissipation_scale must be nonnegative");
  penalty.validate();
}

Flux3 physical_flux(const PointState& q, const ModelParams& params) {
  const double gamma = params.gamma;
  const double p = params.pressureless ? 0.0 : (gamma - 1.0) * q.rho * q.eps;
  Flux3 f;
  f.rho = q.mom;
  f.mom = q.mom * q.u + p;
  f.energy = (q.energy + p) * q.u;
  switch (params.kind) {
    case ModelKind::Euler:
      break;
    case ModelKind::Igr:
      f.mom += q.sigma;
      f.energy += q.sigma * q.u;
      break;
    case ModelKind::Hre:
    case ModelKind::Higr:
      f.mom += q.sigma;
      f.energy += q.sigma * q.u;
      if (!params.pressureless)
        f.energy += params.alpha * gamma * (gamma - 1.0) * q.rho * q.eps * q.q_lnrho * q.q_u;
      break;
    case ModelKind::HreNoCapillary:
      f.mom += q.sigma;
      f.energy += q.sigma * q.u;
      break;
    case ModelKind::HigrAblated:
      f.mom += q.sigma + q.sigma_d;
      f.energy += q.sigma * q.u;  // only the conservative part feeds energy
      break;
  }
  return f;
}

Model::Model(const Mesh1D& mesh, const ModelParams& params)
    : mesh_(mesh), params_(params), eos_(params.gamma), workspace_(mesh, params.penalty) {
  params_.validate();
}

bool Model::needs_gradient_aux() const {
  if (params_.pressureless) return false;
  switch (params_.kind) {
    case ModelKind::Hre:
    case ModelKind::Higr:
    case ModelKind::HigrAblated:
      return true;
    default:
      return false;
  }
}

double Model::recover_eps_point(double rho, double mom, double energy, double q_u) const {
  const double u = mom / rho;
  double kinetic = 0.5 * u * u;
  if (has_alpha_kinetic_energy(params_.kind)) kinetic += 0.5 * params_.alpha * q_u * q_u;
  return energy / rho - kinetic;
}

// Positivity policy: rho and the thermodynamic recovery E/rho - u^2/2 must
// stay positive at every quadrature point. The gradient-corrected eps of the
// Hamiltonian family dips below zero transiently when shocks collide (the
// u_x spike makes alpha q_u^2 momentarily exceed the internal energy) and
// those runs recover, so the corrected eps is only floored inside the wave
// speed instead of aborting the run.
void Model::check_eps_point(double rho, double mom, double energy, int cell, double time) const {
  if (params_.pressureless) return;
  const double u = mom / rho;
  if (!(energy / rho - 0.5 * u * u > 0.0)) throw PositivityError("eps", cell, time);
}

double Model::sound_speed_floor(double eps) const {
  return std::sqrt(params_.gamma * (params_.gamma - 1.0) * std::max(eps, 0.0));
}

Primitives Model::recover_primitives_impl(const SimState& state, bool check_eps) const {
  const int n = mesh_.n_cells;
  Primitives prim(mesh_);

  std::vector<std::array<double, 3>> u_samples(n);
  for (int c = 0; c < n; ++c)
    for (int q = 0; q < 3; ++q) {
      const double rho = state.rho.value(c, kGaussNodes[q]);
      if (!(rho > 0.0)) throw PositivityError("rho", c, state.time);
      u_samples[c][q] = state.mom.value(c, kGaussNodes[q]) / rho;
    }
  prim.u = project_from_samples(mesh_, u_samples);
  prim.aux.q_u = workspace_.weak_derivative(prim.u);

  std::vector<std::array<double, 3>> eps_samples(n);
  for (int c = 0; c < n; ++c)
    for (int q = 0; q < 3; ++q) {
      const double xi = kGaussNodes[q];
      if (check_eps)
        check_eps_point(state.rho.value(c, xi), state.mom.value(c, xi), state.energy.value(c, xi),
                        c, state.time);
      eps_samples[c][q] = recover_eps_point(state.rho.value(c, xi), state.mom.value(c, xi),
                                            state.energy.value(c, xi), prim.aux.q_u.value(c, xi));
    }
  prim.eps = project_from_samples(mesh_, eps_samples);

  if (needs_gradient_aux()) {
    std::vector<std::array<double, 3>> ln_samples(n);
    for (int c = 0; c < n; ++c)
      for (int q = 0; q < 3; ++q)
        ln_samples[c][q] = std::log(state.rho.value(c, kGaussNodes[q]));
    prim.aux.q_lnrho = workspace_.weak_derivative(project_from_samples(mesh_, ln_samples));
    prim.aux.q_eps = workspace_.weak_derivative(prim.eps);
    prim.aux.has_gradients = true;
  }
  return prim;
}

Primitives Model::recover_primitives(const SimState& state) const {
  return recover_primitives_impl(state, true);
}

Primitives Model::recover_primitives_relaxed(const SimState& state) const {
  return recover_primitives_impl(state, false);
}

void Model::check_state(const SimState& state) const {
  for (int c = 0; c < mesh_.n_cells; ++c) {
    if (!(state.rho.mean(c) > 0.0)) throw PositivityError("rho", c, state.time);
    for (int q = 0; q < 3; ++q) {
      const double xi = kGaussNodes[q];
      const double rho = state.rho.value(c, xi);
      if (!(rho > 0.0)) throw PositivityError("rho", c, state.time);
      check_eps_point(rho, state.mom.value(c, xi), state.energy.value(c, xi), c, state.time);
    }
  }
}

EllipticRhs Model::elliptic_rhs(const SimState& state, const Primitives& prim) const {
  (void)state;
  const int n = mesh_.n_cells;
  const double alpha = params_.alpha;
  const double gamma = params_.gamma;
  EllipticRhs rhs(mesh_);

  auto project_qu_sq = [&](double coeff) {
    std::vector<std::array<double, 3>> s(n);
    for (int c = 0; c < n; ++c)
      for (int q = 0; q < 3; ++q) {
        const double qu = prim.aux.q_u.value(c, kGaussNodes[q]);
        s[c][q] = coeff * qu * qu;
      }
    return project_from_samples(mesh_, s);
  };

  switch (params_.kind) {
    case ModelKind::Euler:
      return rhs;
    case ModelKind::Igr:
      rhs.primary = project_qu_sq(2.0 * alpha);
      return rhs;
    case ModelKind::HreNoCapillary:
      rhs.primary = project_qu_sq(alpha * params_.k);
      return rhs;
    case ModelKind::Hre:
    case ModelKind::Higr:
    case ModelKind::HigrAblated:
      break;
  }

  if (params_.pressureless) {
    rhs.primary = project_qu_sq(alpha * params_.k);
    if (params_.kind == ModelKind::HigrAblated) rhs.dissipative = project_qu_sq(alpha);
    return rhs;
  }

  // alpha [ k q_u^2 + (gamma-1)(q_eps - (gamma-1) eps q_lnrho)_x
  //        + (gamma (gamma-1)^2 eps / 2) q_lnrho^2 ]
  std::vector<std::array<double, 3>> inner(n), base(n);
  for (int c = 0; c < n; ++c)
    for (int q = 0; q < 3; ++q) {
      const double xi = kGaussNodes[q];
      const double eps = prim.eps.value(c, xi);
      const double qu = prim.aux.q_u.value(c, xi);
      const double ql = prim.aux.q_lnrho.value(c, xi);
      const double qe = prim.aux.q_eps.value(c, xi);
      inner[c][q] = qe - (gamma - 1.0) * eps * ql;
      base[c][q] = alpha * (params_.k * qu * qu +
                            0.5 * gamma * (gamma - 1.0) * (gamma - 1.0) * eps * ql * ql);
    }
  const DgField d_inner = workspace_.weak_derivative(project_from_samples(mesh_, inner));
  rhs.primary = project_from_samples(mesh_, base) + (alpha * (gamma - 1.0)) * d_inner;

  if (params_.kind == ModelKind::HigrAblated) rhs.dissipative = project_qu_sq(alpha);
  return rhs;
}

EntropicPressure Model::entropic_pressure(const SimState& state, const Primitives& prim) const {
  EntropicPressure sigma(mesh_);
  if (params_.kind == ModelKind::Euler) return sigma;
  const EllipticRhs rhs = elliptic_rhs(state, prim);
  if (rhs.dissipative) {
    auto [sc, sd] = workspace_.sipg_solve2(state.rho, params_.alpha, rhs.primary, *rhs.dissipative);
    sigma.sigma = std::move(sc);
    sigma.sigma_d = std::move(sd);
  } else {
    sigma.sigma = workspace_.sipg_solve(state.rho, params_.alpha, rhs.primary);
  }
  return sigma;
}

double Model::max_wave_speed(const SimState& state) const {
  double lambda = 0.0;
  const bool need_cs = !params_.pressureless;
  // q_u only matters for the eps recovery of the Hamiltonian family.
  std::optional<DgField> q_u;
  if (need_cs && has_alpha_kinetic_energy(params_.kind)) {
    Primitives prim = recover_primitives_relaxed(state);
    q_u = std::move(prim.aux.q_u);
  }
  for (int c = 0; c < mesh_.n_cells; ++c)
    for (int q = 0; q < 3; ++q) {
      const double xi = kGaussNodes[q];
      const double rho = state.rho.value(c, xi);
      if (!(rho > 0.0)) throw PositivityError("rho", c, state.time);
      const double u = state.mom.value(c, xi) / rho;
      double speed = std::abs(u);
      if (need_cs) {
        check_eps_point(rho, state.mom.value(c, xi), state.energy.value(c, xi), c, state.time);
        speed += sound_speed_floor(recover_eps_point(rho, state.mom.value(c, xi),
                                                     state.energy.value(c, xi),
                                                     q_u ? q_u->value(c, xi) : 0.0));
      }
      lambda = std::max(lambda, speed);
    }
  return lambda;
}

PointState Model::point_state(const SimState& state, const Primitives& prim,
                              const EntropicPressure& sigma, int cell, double xi) const {
  PointState q;
  q.rho = state.rho.value(cell, xi);
  if (!(q.rho > 0.0)) throw PositivityError("rho", cell, state.time);
  q.mom = state.mom.value(cell, xi);
  q.energy = state.energy.value(cell, xi);
  q.q_u = prim.aux.q_u.value(cell, xi);
  q.q_lnrho = prim.aux.has_gradients ? prim.aux.q_lnrho.value(cell, xi) : 0.0;
  q.u = q.mom / q.rho;
  q.eps = recover_eps_point(q.rho, q.mom, q.energy, q.q_u);
  q.sigma = sigma.sigma.value(cell, xi);
  q.sigma_d = sigma.sigma_d ? sigma.sigma_d->value(cell, xi) : 0.0;
  return q;
}

SimState Model::conservation_rhs(const SimState& state, const Primitives& prim,
                                 const EntropicPressure& sigma) const {
  const int n = mesh_.n_cells;
  const double h = mesh_.h;
  const bool need_cs = !params_.pressureless;
  SimState out(mesh_);
  out.time = state.time;

  // Single-valued LLF flux per face; the wave speed uses the Euler
  // eigenvalues of the two traces only.
  std::vector<Flux3> face_flux(n);
  for (int f = 0; f < n; ++f) {
    const int cl = mesh_.wrap(f - 1);
    const int cr = f;
    const PointState ql = point_state(state, prim, sigma, cl, 1.0);
    const PointState qr = point_state(state, prim, sigma, cr, -1.0);
    double lambda = std::max(std::abs(ql.u), std::abs(qr.u));
    if (need_cs)
      lambda = std::max(std::abs(ql.u) + sound_speed_floor(ql.eps),
                        std::abs(qr.u) + sound_speed_floor(qr.eps));
    const Flux3 fl = physical_flux(ql, params_);
    const Flux3 fr = physical_flux(qr, params_);
    const double d = 0.5 * params_.flux_dissipation_scale * lambda;
    face_flux[f] = {0.5 * (fl.rho + fr.rho) - d * (qr.rho - ql.rho),
                    0.5 * (fl.mom + fr.mom) - d * (qr.mom - ql.mom),
                    0.5 * (fl.energy + fr.energy) - d * (qr.energy - ql.energy)};
  }

  for (int c = 0; c < n; ++c) {
    const Flux3& f_lo = face_flux[c];
    const Flux3& f_hi = face_flux[mesh_.wrap(c + 1)];
    Flux3 vol{};  // integral of F over the cell
    for (int q = 0; q < 3; ++q) {
      const PointState pq = point_state(state, prim, sigma, c, kGaussNodes[q]);
      const Flux3 fq = physical_flux(pq, params_);
      const double w = 0.5 * h * kGaussWeights[q];
      vol.rho += w * fq.rho;
      vol.mom += w * fq.mom;
      vol.energy += w * fq.energy;
    }
    out.rho.mean(c) = -(f_hi.rho - f_lo.rho) / h;
    out.mom.mean(c) = -(f_hi.mom - f_lo.mom) / h;
    out.energy.mean(c) = -(f_hi.energy - f_lo.energy) / h;
    out.rho.slope(c) = (3.0 / h) * ((2.0 / h) * vol.rho - (f_hi.rho + f_lo.rho));
    out.mom.slope(c) = (3.0 / h) * ((2.0 / h) * vol.mom - (f_hi.mom + f_lo.mom));
    out.energy.slope(c) = (3.0 / h) * ((2.0 / h) * vol.energy - (f_hi.energy + f_lo.energy));
  }
  return out;
}

SimState Model::semidiscrete_rhs(const SimState& state) const {
  const Primitives prim = recover_primitives_relaxed(state);
  const EntropicPressure sigma = entropic_pressure(state, prim);
  return conservation_rhs(state, prim, sigma);
}

SimState state_from_primitives(const Model& model, const std::function<double(double)>& rho,
                               const std::function<double(double)>& u,
                               const std::function<double(double)>& p) {
  const Mesh1D& mesh = model.mesh();
  const ModelParams& params = model.params();
  SimState state(mesh);
  state.rho = project(mesh, rho);
  state.mom = project(mesh, [&](double x) { return rho(x) * u(x); });

  DgField q_u(mesh);
  if (has_alpha_kinetic_energy(params.kind)) q_u = model.workspace().weak_derivative(project(mesh, u));

  std::vector<std::array<double, 3>> e_samples(mesh.n_cells);
  for (int c = 0; c < mesh.n_cells; ++c)
    for (int q = 0; q < 3; ++q) {
      const double x = mesh.cell_center(c) + 0.5 * mesh.h * kGaussNodes[q];
      const double qu = q_u.value(c, kGaussNodes[q]);
      double kinetic = 0.5 * rho(x) * u(x) * u(x);
      if (has_alpha_kinetic_energy(params.kind)) kinetic += 0.5 * rho(x) * params.alpha * qu * qu;
      e_samples[c][q] = p(x) / (params.gamma - 1.0) + kinetic;
    }
  state.energy = project_from_samples(mesh, e_samples);
  return state;
}

SimState initial_condition_sod(const Model& model, const SodParams& sod) {
  const double L = model.mesh().domain_length;
  if (!(sod.delta > 0.0)) throw std::invalid_argument("sod: delta must be positive");
  if (!(0.0 < sod.x1 && sod.x1 < sod.x2 && sod.x2 < L))
    throw std::invalid_argument("sod: need 0 < x1 < x2 < domain length");
  if (sod.x2 - sod.x1 < 4.0 * sod.delta || (L - sod.x2) + sod.x1 < 4.0 * sod.delta)
    throw std::invalid_argument("sod: interface ramps overlap (need gaps >= 4 delta)");

  // 1 inside (x1, x2), 0 outside, smooth ramps of width delta.
  auto blend = [sod](double x) {
    return 0.5 * (std::tanh((x - sod.x1) / sod.delta) - std::tanh((x - sod.x2) / sod.delta));
  };
  auto mix = [blend](double lo, double hi) {
    return [blend, lo, hi](double x) { return lo + (hi - lo) * blend(x); };
  };
  return state_from_primitives(model, mix(sod.rho_right, sod.rho_left),
                               mix(sod.u_right, sod.u_left), mix(sod.p_right, sod.p_left));
}

}  // namespace igr
