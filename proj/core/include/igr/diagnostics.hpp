#pragma once

#include <array>
#include <optional>
#include <vector>

#include "igr/model.hpp"
#include "igr/timestep.hpp"

namespace igr {

struct Totals {
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
};

struct DiagnosticsRecord {
  double time = 0.0;
  double total_mass = 0.0;
  double total_momentum = 0.0;
  double total_energy = 0.0;
  double total_entropy = 0.0;
  double entropy_production_rate = 0.0;
  double generalized_kinetic_energy = 0.0;
  double spike_amplitude = 0.0;
};

// Exact integrals of the conserved DG fields.
Totals conserved_totals(const SimState& state);

// S = integral of rho s(rho, eps) with the model-appropriate eps recovery.
double total_entropy(const Model& model, const SimState& state);

// IGR: -integral theta^{-1} Sigma q_u (solves for Sigma internally).
// HIGR / ablated: -alpha integral rho theta^{-1} q_u^3.
// Euler / HRE variants: exactly zero by construction.
double entropy_production_rate(const Model& model, const SimState& state);

// Quadrature kernels behind entropy_production_rate, exposed so synthetic
// fields can exercise them directly.
double igr_production_integral(const DgField& sigma, const DgField& q_u, const DgField& theta);
double higr_production_integral(const DgField& rho, const DgField& theta, const DgField& q_u,
                                double alpha);

// 1/2 integral rho (u^2 + alpha q_u^2); the alpha term is omitted for
// Euler/IGR, whose energy bookkeeping does not include it.
double generalized_kinetic_energy(const Model& model, const SimState& state);

// Always alpha-inclusive kinetic energy, used by the transport-budget check.
double kinetic_energy_with_alpha(const Model& model, const SimState& state);

// alpha integral rho q_u^3 for the IGR-type models (zero for the
// conservative family): the source term of the pressureless kinetic-energy
// transport equation.
double kinetic_energy_source(const Model& model, const SimState& state);

// |dK/dt - source| with dK/dt the second-order central difference through
// three (time, K) samples; `source_mid` is evaluated at the middle sample.
double kinetic_energy_budget_residual(const std::array<std::pair<double, double>, 3>& k_samples,
                                      double source_mid);

// Window on the periodic domain; x_lo > x_hi denotes a wrap-around window.
struct Window {
  double x_lo;
  double x_hi;
};

// max over cell centers in the window of |eps - median(eps)|; the
// internal-energy defect amplitude after a shock collision.
double spike_metric(const Model& model, const SimState& state, const Window& window);

// Same metric applied to the pressure column.
double pressure_spike_metric(const Model& model, const SimState& state, const Window& window);

DiagnosticsRecord sample_diagnostics(const Model& model, const SimState& state,
                                     std::optional<Window> spike_window = {});

struct RunResult {
  SimState final_state;
  std::vector<DiagnosticsRecord> records;
};

// timestep::run with a diagnostics sample per output time.
RunResult run_with_diagnostics(const Model& model, SimState state, const RunConfig& config,
                               std::optional<Window> spike_window = {},
                               const RunCallbacks& extra = {});

}  // namespace igr
