#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "igr/model.hpp"

namespace igr {

struct RunConfig {
  double t_end = 0.5;
  double cfl = 0.95;
  std::vector<double> output_times;  // sorted, within (0, t_end]
  long max_steps = 2'000'000;

  void validate() const;
};

// dt = cfl * h / max_wave_speed, optionally clipped so the step lands
// exactly on the next output time or t_end.
double cfl_dt(const Model& model, const SimState& state, double cfl,
              std::optional<double> next_event = {});

// Shu-Osher three-stage SSPRK3 step. Errors raised by the semi-discrete
// operator are rethrown with the failing stage attached.
SimState ssprk3_step(const Model& model, const SimState& state, double dt);

// Generic three-stage combination against an arbitrary operator; the public
// ssprk3_step binds it to Model::semidiscrete_rhs.
SimState ssprk3_combine(const SimState& state, double dt,
                        const std::function<SimState(const SimState&)>& rhs);

struct RunCallbacks {
  // Invoked with the state at t = 0, at every requested output time, and at
  // t_end. Must not mutate the state.
  std::function<void(const SimState&)> on_sample;
};

// Advance until t_end with per-step CFL control; deterministic for a given
// configuration.
SimState run(const Model& model, SimState state, const RunConfig& config,
             const RunCallbacks& callbacks = {});

}  // namespace igr
