#pragma once

#include "igr/model.hpp"

namespace igr {

// Acoustic branch query about a constant background (rho0, eps0) boosted by
// u0. With the capillary closure active the density-gradient energy is tuned
// so the sound branches are exactly non-dispersive.
struct DispersionQuery {
  double k = 2.0 * 3.14159265358979323846;
  double rho0 = 1.0;
  double eps0 = 2.5;
  double u0 = 0.0;
  double alpha = 0.0;
  bool capillary = true;
  double gamma = 1.4;
};

struct DispersionResult {
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  int zero_branches = 1;  // 1D: the thermodynamic branch
};

// capillary on:  omega = k u0 +/- |k| c_s
// capillary off: omega = k u0 +/- |k| c_s / sqrt(1 + alpha k^2)
DispersionResult dispersion_omega(const DispersionQuery& query);

struct PhaseSpeedSetup {
  int k_mode = 1;            // wavenumber k = 2 pi k_mode / L
  double amplitude = 1e-6;   // relative density amplitude, must be <= 1e-5
  double rho0 = 1.0;
  double p0 = 1.0;
  double t_measure = -1.0;   // <= 0 selects one domain crossing
  int n_snapshots = 24;
  double cfl = 0.95;
};

// Runs a small-amplitude right-moving acoustic wave and extracts the phase
// speed from the least-squares slope of the k-th Fourier phase of rho.
double measure_phase_speed(const Model& model, const PhaseSpeedSetup& setup);

// Period average of the kinetic-energy rate of an acoustic plane wave under
// a rho (div u)^n source: 0 for odd n, and
// (-1)^{n+1} omega^n rho_amp^n / rho0^{n-1} * 2 pi (n-1)!!/n!! for even n.
double acoustic_energy_rate_avg(int n, double omega, double rho0, double rho_amp);

// The defining period integral evaluated by quadrature; the independent path
// against which the closed form is checked.
double acoustic_energy_rate_avg_quadrature(int n, double omega, double rho0, double rho_amp,
                                           int n_points = 10000);

}  // namespace igr
