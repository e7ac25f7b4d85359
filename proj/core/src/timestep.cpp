#include "igr/timestep.hpp"

#include <algorithm>
#include <cmath>

#include "igr/errors.hpp"

namespace igr {

namespace {

constexpr double kTimeTol = 1e-12;

bool close(double a, double b) { return std::abs(a - b) <= kTimeTol * std::max(1.0, std::abs(b)); }

SimState axpy(const SimState& base, double a, const SimState& k) {
  SimState out = base;
  for (int c = 0; c < base.rho.n_cells(); ++c) {
    out.rho.mean(c) += a * k.rho.mean(c);
    out.rho.slope(c) += a * k.rho.slope(c);
    out.mom.mean(c) += a * k.mom.mean(c);
    out.mom.slope(c) += a * k.mom.slope(c);
    out.energy.mean(c) += a * k.energy.mean(c);
    out.energy.slope(c) += a * k.energy.slope(c);
  }
  return out;
}

SimState blend(double wa, const SimState& a, double wb, const SimState& b) {
  SimState out = a;
  for (int c = 0; c < a.rho.n_cells(); ++c) {
    out.rho.mean(c) = wa * a.rho.mean(c) + wb * b.rho.mean(c);
    out.rho.slope(c) = wa * a.rho.slope(c) + wb * b.rho.slope(c);
    out.mom.mean(c) = wa * a.mom.mean(c) + wb * b.mom.mean(c);
    out.mom.slope(c) = wa * a.mom.slope(c) + wb * b.mom.slope(c);
    out.energy.mean(c) = wa * a.energy.mean(c) + wb * b.energy.mean(c);
    out.energy.slope(c) = wa * a.energy.slope(c) + wb * b.energy.slope(c);
  }
  return out;
}

template <typename Fn>
SimState eval_stage(int stage, Fn&& fn) {
  try {
    return fn();
  } catch (PositivityError& e) {
    e.set_stage(stage);
    throw;
  } catch (SolverError& e) {
    e.set_stage(stage);
    throw;
  }
}

}  // namespace

void RunConfig::validate() const {
  if (t_end < 0.0) throw std::invalid_argument("RunConfig: t_end must be nonnegative");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("RunConfig: cfl must lie in (0, 1]");
  if (max_steps <= 0) throw std::invalid_argument("RunConfig: max_steps must be positive");
  double prev = 0.0;
  for (double t : output_times) {
    if (t <= prev && !close(t, prev))
      throw std::invalid_argument("RunConfig: output_times must be strictly increasing");
    if (t > t_end + kTimeTol)
      throw std::invalid_argument("RunConfig: output time beyond t_end");
    prev = t;
  }
}

double cfl_dt(const Model& model, const SimState& state, double cfl,
              std::optional<double> next_event) {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl_dt: cfl must lie in (0, 1]");
  const double lambda = model.max_wave_speed(state);
  if (!(lambda > 0.0)) throw std::domain_error("cfl_dt: zero maximum wave speed");
  // cfl is the fraction of the P^p RKDG stability limit h / ((2p+1) lambda);
  // the hyperbolic update is linearly unstable past that limit, so a bare
  // cfl h / lambda step would blow up within a few steps for any p >= 1.
  const int p = model.params().penalty.poly_order;
  double dt = cfl * model.mesh().h / ((2 * p + 1) * lambda);
  if (next_event) {
    const double gap = *next_event - state.time;
    if (gap <= 0.0) throw std::domain_error("cfl_dt: next event is not ahead of current time");
    dt = std::min(dt, gap);
  }
  return dt;
}

SimState ssprk3_combine(const SimState& state, double dt,
                        const std::function<SimState(const SimState&)>& rhs) {
  SimState u1 = eval_stage(1, [&] { return axpy(state, dt, rhs(state)); });
  u1.time = state.time + dt;

  SimState u2 = eval_stage(2, [&] {
    return blend(0.75, state, 0.25, axpy(u1, dt, rhs(u1)));
  });
  u2.time = state.time + 0.5 * dt;

  SimState out = eval_stage(3, [&] {
    return blend(1.0 / 3.0, state, 2.0 / 3.0, axpy(u2, dt, rhs(u2)));
  });
  out.time = state.time + dt;
  return out;
}

SimState ssprk3_step(const Model& model, const SimState& state, double dt) {
  return ssprk3_combine(state, dt, [&model](const SimState& s) { return model.semidiscrete_rhs(s); });
}

SimState run(const Model& model, SimState state, const RunConfig& config,
             const RunCallbacks& callbacks) {
  config.validate();

  std::vector<double> events = config.output_times;
  if (events.empty() || !close(events.back(), config.t_end)) events.push_back(config.t_end);

  if (callbacks.on_sample) callbacks.on_sample(state);
  if (config.t_end <= kTimeTol) return state;

  std::size_t next = 0;
  long steps = 0;
  while (state.time < config.t_end && !close(state.time, config.t_end)) {
    while (next < events.size() && (events[next] <= state.time || close(events[next], state.time)))
      ++next;
    const double target = next < events.size() ? events[next] : config.t_end;
    const double dt = cfl_dt(model, state, config.cfl, target);
    state = ssprk3_step(model, state, dt);
    model.check_state(state);
    if (close(state.time, target)) {
      state.time = target;  // land exactly for deterministic snapshot naming
      if (callbacks.on_sample) callbacks.on_sample(state);
    }
    if (++steps > config.max_steps)
      throw std::runtime_error("run: max_steps exceeded at t = " + std::to_string(state.time));
  }
  return state;
}

}  // namespace igr
