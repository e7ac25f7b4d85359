#include "igr/linwave.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "igr/eos.hpp"
#include "igr/timestep.hpp"

namespace igr {

DispersionResult dispersion_omega(const DispersionQuery& query) {
  if (query.k == 0.0) throw std::invalid_argument("dispersion_omega: k must be nonzero");
  const IdealGasEos eos(query.gamma);
  const double cs = eos.sound_speed(query.rho0, query.eps0);
  const double k_abs = std::abs(query.k);
  // With the capillary closure rho eps_{|grad rho|^2} = (alpha/2) c_s^2 the
  // numerator gains exactly the 1 + alpha k^2 factor of the denominator.
  const double sound =
      query.capillary ? k_abs * cs : k_abs * cs / std::sqrt(1.0 + query.alpha * query.k * query.k);
  DispersionResult out;
  out.omega_plus = query.k * query.u0 + sound;
  out.omega_minus = query.k * query.u0 - sound;
  out.zero_branches = 1;
  return out;
}

double acoustic_energy_rate_avg(int n, double omega, double rho0, double rho_amp) {
  if (n < 2) throw std::invalid_argument("acoustic_energy_rate_avg: n must be >= 2");
  if (!(rho_amp < rho0)) throw std::invalid_argument("acoustic_energy_rate_avg: need rho_amp < rho0");
  if (n % 2 == 1) return 0.0;
  double dfact_num = 1.0, dfact_den = 1.0;
  for (int m = n - 1; m >= 2; m -= 2) dfact_num *= m;
  for (int m = n; m >= 2; m -= 2) dfact_den *= m;
  const double sign = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n+1}
  return sign * std::pow(omega, n) * std::pow(rho_amp, n) / std::pow(rho0, n - 1) * 2.0 *
         std::numbers::pi * dfact_num / dfact_den;
}

double acoustic_energy_rate_avg_quadrature(int n, double omega, double rho0, double rho_amp,
                                           int n_points) {
  if (n < 2) throw std::invalid_argument("acoustic_energy_rate_avg: n must be >= 2");
  if (!(rho_amp < rho0)) throw std::invalid_argument("acoustic_energy_rate_avg: need rho_amp < rho0");
  const double two_pi = 2.0 * std::numbers::pi;
  double integral = 0.0;
  for (int j = 0; j < n_points; ++j) {
    const double theta = two_pi * (j + 0.5) / n_points;
    integral += (rho0 + rho_amp * std::cos(theta)) * std::pow(std::sin(theta), n);
  }
  integral *= two_pi / n_points;
  const double sign = (n % 2 == 0) ? -1.0 : 1.0;
  return sign * std::pow(omega * rho_amp / rho0, n) * integral;
}

double measure_phase_speed(const Model& model, const PhaseSpeedSetup& setup) {
  if (!(setup.amplitude > 0.0 && setup.amplitude <= 1e-5))
    throw std::invalid_argument("measure_phase_speed: amplitude must lie in (0, 1e-5]");
  if (setup.k_mode == 0) throw std::invalid_argument("measure_phase_speed: k_mode must be nonzero");
  if (setup.n_snapshots < 4)
    throw std::invalid_argument("measure_phase_speed: need at least 4 snapshots");

  const Mesh1D& mesh = model.mesh();
  const double L = mesh.domain_length;
  const double gamma = model.params().gamma;
  const double k = 2.0 * std::numbers::pi * setup.k_mode / L;
  const double cs = std::sqrt(gamma * setup.p0 / setup.rho0);
  const double a = setup.amplitude;

  // Right-moving Euler eigenvector: u' = c_s rho'/rho0, p' = c_s^2 rho'.
  SimState state = state_from_primitives(
      model, [&](double x) { return setup.rho0 * (1.0 + a * std::cos(k * x)); },
      [&](double x) { return cs * a * std::cos(k * x); },
      [&](double x) { return setup.p0 + cs * cs * setup.rho0 * a * std::cos(k * x); });

  const double t_measure = setup.t_measure > 0.0 ? setup.t_measure : L / cs;
  RunConfig config;
  config.t_end = t_measure;
  config.cfl = setup.cfl;
  for (int j = 1; j <= setup.n_snapshots; ++j)
    config.output_times.push_back(t_measure * j / setup.n_snapshots);

  std::vector<double> times, phases;
  RunCallbacks callbacks;
  callbacks.on_sample = [&](const SimState& s) {
    std::complex<double> coeff(0.0, 0.0);
    for (int c = 0; c < mesh.n_cells; ++c)
      for (int q = 0; q < 3; ++q) {
        const double x = mesh.cell_center(c) + 0.5 * mesh.h * kGaussNodes[q];
        const double w = 0.5 * mesh.h * kGaussWeights[q];
        coeff += w * s.rho.value(c, kGaussNodes[q]) *
                 std::exp(std::complex<double>(0.0, -k * x));
      }
    times.push_back(s.time);
    phases.push_back(std::arg(coeff));
  };
  run(model, std::move(state), config, callbacks);

  // Unwrap, then fit phase = b + slope * t by least squares.
  for (std::size_t j = 1; j < phases.size(); ++j) {
    double d = phases[j] - phases[j - 1];
    d -= 2.0 * std::numbers::pi * std::round(d / (2.0 * std::numbers::pi));
    phases[j] = phases[j - 1] + d;
  }
  const std::size_t m = times.size();
  double st = 0.0, sp = 0.0, stt = 0.0, stp = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    st += times[j];
    sp += phases[j];
    stt += times[j] * times[j];
    stp += times[j] * phases[j];
  }
  const double denom = m * stt - st * st;
  const double slope = (m * stp - st * sp) / denom;
  const double intercept = (sp - slope * st) / m;

  double max_residual = 0.0;
  for (std::size_t j = 0; j < m; ++j)
    max_residual = std::max(max_residual, std::abs(phases[j] - intercept - slope * times[j]));
  if (max_residual > 0.7)
    throw std::runtime_error(
        "measure_phase_speed: degenerate phase fit (wrap suspected); shorten t_measure");

  return -slope / k;
}

}  // namespace igr
