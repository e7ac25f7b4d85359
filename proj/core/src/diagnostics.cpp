#include "igr/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "igr/errors.hpp"

namespace igr {

namespace {

// Quadrature over the whole domain of a per-point integrand f(cell, xi).
template <typename Fn>
double quad_sum(const Mesh1D& mesh, Fn&& f) {
  double total = 0.0;
  for (int c = 0; c < mesh.n_cells; ++c)
    for (int q = 0; q < 3; ++q)
      total += 0.5 * mesh.h * kGaussWeights[q] * f(c, kGaussNodes[q]);
  return total;
}

bool in_window(const Window& w, double x, double length) {
  double lo = w.x_lo, hi = w.x_hi;
  if (lo <= hi) return x >= lo && x <= hi;
  return x >= lo || x <= hi + length * 0.0;  // wrap-around window
}

double window_spike(const std::vector<double>& values) {
  std::vector<double> sorted = values;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];
  double spike = 0.0;
  for (double v : values) spike = std::max(spike, std::abs(v - median));
  return spike;
}

}  // namespace

Totals conserved_totals(const SimState& state) {
  return {integrate(state.rho), integrate(state.mom), integrate(state.energy)};
}

double total_entropy(const Model& model, const SimState& state) {
  const Primitives prim = model.recover_primitives(state);
  const IdealGasEos& eos = model.eos();
  const ModelParams& params = model.params();
  return quad_sum(model.mesh(), [&](int c, double xi) {
    const double rho = state.rho.value(c, xi);
    double kinetic = 0.5 * state.mom.value(c, xi) * state.mom.value(c, xi) / rho;
    if (has_alpha_kinetic_energy(params.kind)) {
      const double qu = prim.aux.q_u.value(c, xi);
      kinetic += 0.5 * rho * params.alpha * qu * qu;
    }
    const double eps = (state.energy.value(c, xi) - kinetic) / rho;
    if (!(eps > 0.0)) throw PositivityError("eps", c, state.time);
    return rho * eos.entropy(rho, eps);
  });
}

double igr_production_integral(const DgField& sigma, const DgField& q_u, const DgField& theta) {
  return quad_sum(sigma.mesh(), [&](int c, double xi) {
    return -sigma.value(c, xi) * q_u.value(c, xi) / theta.value(c, xi);
  });
}

double higr_production_integral(const DgField& rho, const DgField& theta, const DgField& q_u,
                                double alpha) {
  return quad_sum(rho.mesh(), [&](int c, double xi) {
    const double qu = q_u.value(c, xi);
    return -alpha * rho.value(c, xi) * qu * qu * qu / theta.value(c, xi);
  });
}

double entropy_production_rate(const Model& model, const SimState& state) {
  switch (model.params().kind) {
    case ModelKind::Euler:
    case ModelKind::Hre:
    case ModelKind::HreNoCapillary:
      return 0.0;  // conservative by construction
    case ModelKind::Igr: {
      const Primitives prim = model.recover_primitives(state);
      const EntropicPressure sigma = model.entropic_pressure(state, prim);
      return igr_production_integral(sigma.sigma, prim.aux.q_u, prim.eps);
    }
    case ModelKind::Higr:
    case ModelKind::HigrAblated: {
      const Primitives prim = model.recover_primitives(state);
      return higr_production_integral(state.rho, prim.eps, prim.aux.q_u, model.params().alpha);
    }
  }
  return 0.0;
}

namespace {

double kinetic_energy_impl(const Model& model, const SimState& state, bool include_alpha) {
  const Primitives prim = model.recover_primitives(state);
  const double alpha = model.params().alpha;
  return quad_sum(model.mesh(), [&](int c, double xi) {
    const double rho = state.rho.value(c, xi);
    const double u = state.mom.value(c, xi) / rho;
    double k = u * u;
    if (include_alpha) {
      const double qu = prim.aux.q_u.value(c, xi);
      k += alpha * qu * qu;
    }
    return 0.5 * rho * k;
  });
}

}  // namespace

double generalized_kinetic_energy(const Model& model, const SimState& state) {
  return kinetic_energy_impl(model, state, has_alpha_kinetic_energy(model.params().kind));
}

double kinetic_energy_with_alpha(const Model& model, const SimState& state) {
  return kinetic_energy_impl(model, state, true);
}

double kinetic_energy_source(const Model& model, const SimState& state) {
  if (model.params().kind != ModelKind::Igr) return 0.0;
  const Primitives prim = model.recover_primitives(state);
  const double alpha = model.params().alpha;
  return quad_sum(model.mesh(), [&](int c, double xi) {
    const double qu = prim.aux.q_u.value(c, xi);
    return alpha * state.rho.value(c, xi) * qu * qu * qu;
  });
}

double kinetic_energy_budget_residual(const std::array<std::pair<double, double>, 3>& k_samples,
                                      double source_mid) {
  const auto [t0, k0] = k_samples[0];
  const auto [t1, k1] = k_samples[1];
  const auto [t2, k2] = k_samples[2];
  // Derivative at t1 of the quadratic through the three samples.
  const double dkdt = k0 * (t1 - t2) / ((t0 - t1) * (t0 - t2)) +
                      k1 * (2.0 * t1 - t0 - t2) / ((t1 - t0) * (t1 - t2)) +
                      k2 * (t1 - t0) / ((t2 - t0) * (t2 - t1));
  return std::abs(dkdt - source_mid);
}

namespace {

double spike_impl(const Model& model, const SimState& state, const Window& window, bool pressure) {
  const Primitives prim = model.recover_primitives(state);
  const Mesh1D& mesh = model.mesh();
  const double gamma = model.params().gamma;
  std::vector<double> values;
  for (int c = 0; c < mesh.n_cells; ++c) {
    const double x = mesh.cell_center(c);
    if (!in_window(window, x, mesh.domain_length)) continue;
    const double rho = state.rho.value(c, 0.0);
    double kinetic = 0.5 * state.mom.value(c, 0.0) * state.mom.value(c, 0.0) / rho;
    if (has_alpha_kinetic_energy(model.params().kind)) {
      const double qu = prim.aux.q_u.value(c, 0.0);
      kinetic += 0.5 * rho * model.params().alpha * qu * qu;
    }
    const double eps = (state.energy.value(c, 0.0) - kinetic) / rho;
    values.push_back(pressure ? (gamma - 1.0) * rho * eps : eps);
  }
  if (values.empty()) throw std::invalid_argument("spike_metric: empty window");
  return window_spike(values);
}

}  // namespace

double spike_metric(const Model& model, const SimState& state, const Window& window) {
  return spike_impl(model, state, window, false);
}

double pressure_spike_metric(const Model& model, const SimState& state, const Window& window) {
  return spike_impl(model, state, window, true);
}

DiagnosticsRecord sample_diagnostics(const Model& model, const SimState& state,
                                     std::optional<Window> spike_window) {
  DiagnosticsRecord rec;
  rec.time = state.time;
  const Totals totals = conserved_totals(state);
  rec.total_mass = totals.mass;
  rec.total_momentum = totals.momentum;
  rec.total_energy = totals.energy;
  rec.total_entropy = model.params().pressureless ? 0.0 : total_entropy(model, state);
  rec.entropy_production_rate =
      model.params().pressureless ? 0.0 : entropy_production_rate(model, state);
  rec.generalized_kinetic_energy = generalized_kinetic_energy(model, state);
  if (spike_window) rec.spike_amplitude = spike_metric(model, state, *spike_window);
  return rec;
}

RunResult run_with_diagnostics(const Model& model, SimState state, const RunConfig& config,
                               std::optional<Window> spike_window, const RunCallbacks& extra) {
  RunResult result{SimState(model.mesh()), {}};
  RunCallbacks callbacks;
  callbacks.on_sample = [&](const SimState& s) {
    result.records.push_back(sample_diagnostics(model, s, spike_window));
    if (extra.on_sample) extra.on_sample(s);
  };
  result.final_state = run(model, std::move(state), config, callbacks);
  return result;
}

}  // namespace igr
