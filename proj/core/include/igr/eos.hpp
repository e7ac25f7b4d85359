#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace igr {

// Polytropic ideal-gas closure. All quantities are functions of mass density
// rho and specific internal energy eps; temperature is the entropy-derivative
// of eps in the nondimensionalization used throughout, so theta == eps.
class IdealGasEos {
 public:
  explicit IdealGasEos(double gamma) : gamma_(gamma) {
    if (!(gamma > 1.0))
      throw std::domain_error("IdealGasEos: gamma must exceed 1, got " + std::to_string(gamma));
  }

  double gamma() const { return gamma_; }

  // p = (gamma - 1) rho eps
  double pressure(double rho, double eps) const {
    check(rho, eps);
    return (gamma_ - 1.0) * rho * eps;
  }

  // c_s^2 = gamma (gamma - 1) eps
  double sound_speed_sq(double rho, double eps) const {
    check(rho, eps);
    return gamma_ * (gamma_ - 1.0) * eps;
  }

  double sound_speed(double rho, double eps) const {
    return std::sqrt(sound_speed_sq(rho, eps));
  }

  // Third density derivative of the specific internal energy at fixed
  // entropy: (gamma-1)(gamma-2)(gamma-3) eps / rho^3.
  double d3_rho_eps(double rho, double eps) const {
    check(rho, eps);
    const double g = gamma_;
    return (g - 1.0) * (g - 2.0) * (g - 3.0) * eps / (rho * rho * rho);
  }

  // s = log((gamma-1) eps rho^{1-gamma}), the inverse of internal_energy().
  // The additive constant is zero, i.e. s = log(p / rho^gamma).
  double entropy(double rho, double eps) const {
    check(rho, eps);
    return std::log((gamma_ - 1.0) * eps) + (1.0 - gamma_) * std::log(rho);
  }

  // eps(rho, s) = rho^{gamma-1} e^s / (gamma-1)
  double internal_energy(double rho, double s) const {
    if (!(rho > 0.0)) throw std::domain_error("IdealGasEos: rho must be positive");
    return std::pow(rho, gamma_ - 1.0) * std::exp(s) / (gamma_ - 1.0);
  }

  // theta = d eps / d s at fixed rho, which equals eps for this EOS.
  double temperature(double rho, double eps) const {
    check(rho, eps);
    return eps;
  }

 private:
  static void check(double rho, double eps) {
    if (!(rho > 0.0)) throw std::domain_error("IdealGasEos: rho must be positive");
    if (!(eps > 0.0)) throw std::domain_error("IdealGasEos: eps must be positive");
  }

  double gamma_;
};

}  // namespace igr
