#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "igr/eos.hpp"

using igr::IdealGasEos;

TEST_CASE("construction rejects gamma <= 1") {
  CHECK_THROWS_AS(IdealGasEos(1.0), std::domain_error);
  CHECK_THROWS_AS(IdealGasEos(0.9), std::domain_error);
  CHECK_NOTHROW(IdealGasEos(1.4));
}

TEST_CASE("pressure") {
  CHECK(IdealGasEos(1.4).pressure(1.0, 2.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(IdealGasEos(1.4).pressure(0.125, 2.0) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(IdealGasEos(2.0).pressure(3.0, 1.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK_THROWS_AS(IdealGasEos(1.4).pressure(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(IdealGasEos(1.4).pressure(1.0, 0.0), std::domain_error);
}

TEST_CASE("sound speed squared") {
  CHECK(IdealGasEos(1.4).sound_speed_sq(1.0, 2.5) == doctest::Approx(1.4).epsilon(1e-14));
  CHECK(IdealGasEos(5.0 / 3.0).sound_speed_sq(1.0, 0.9) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(IdealGasEos(1.4).sound_speed_sq(1.0, 0.0), std::domain_error);
}

TEST_CASE("third density derivative of eps at fixed entropy") {
  CHECK(IdealGasEos(2.0).d3_rho_eps(0.7, 3.1) == doctest::Approx(0.0));
  CHECK(IdealGasEos(3.0).d3_rho_eps(2.0, 0.5) == doctest::Approx(0.0));
  CHECK(IdealGasEos(1.4).d3_rho_eps(1.0, 1.0) == doctest::Approx(0.384).epsilon(1e-13));
}

TEST_CASE("entropy examples and round trip") {
  const IdealGasEos eos(1.4);
  CHECK(eos.entropy(1.0, 2.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(IdealGasEos(2.0).entropy(2.0, 2.0) == doctest::Approx(0.0).epsilon(1e-14));

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> dist(0.01, 10.0);
  for (int i = 0; i < 10000; ++i) {
    const double rho = dist(rng);
    const double eps = dist(rng);
    const double s = eos.entropy(rho, eps);
    CHECK(eos.internal_energy(rho, s) == doctest::Approx(eps).epsilon(1e-12));
  }
}

TEST_CASE("temperature equals eps for this EOS") {
  const IdealGasEos eos(1.4);
  CHECK(eos.temperature(1.0, 2.5) == doctest::Approx(2.5));
  CHECK(eos.temperature(0.125, 2.0) == doctest::Approx(2.0));
  CHECK(eos.temperature(7.3, 1.0) == doctest::Approx(1.0));
  // theta = d eps / d s at fixed rho, via finite differences of eps(rho, s).
  const double rho = 0.8, eps = 1.7;
  const double s = eos.entropy(rho, eps);
  const double ds = 1e-6;
  const double theta_fd = (eos.internal_energy(rho, s + ds) - eos.internal_energy(rho, s - ds)) /
                          (2.0 * ds);
  CHECK(eos.temperature(rho, eps) == doctest::Approx(theta_fd).epsilon(1e-9));
}

TEST_CASE("c_s^2 equals dp/drho at fixed entropy (finite difference)") {
  const IdealGasEos eos(1.4);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.1, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double rho = dist(rng);
    const double eps = dist(rng);
    const double s = eos.entropy(rho, eps);
    const double dr = 1e-5 * rho;
    const double p_hi = eos.pressure(rho + dr, eos.internal_energy(rho + dr, s));
    const double p_lo = eos.pressure(rho - dr, eos.internal_energy(rho - dr, s));
    const double cs2_fd = (p_hi - p_lo) / (2.0 * dr);
    CHECK(eos.sound_speed_sq(rho, eps) == doctest::Approx(cs2_fd).epsilon(1e-6));
  }
}

TEST_CASE("d3_rho_eps matches third-order central difference of eps(rho, s)") {
  const IdealGasEos eos(1.4);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(0.2, 4.0);
  for (int i = 0; i < 100; ++i) {
    const double rho = dist(rng);
    const double eps = dist(rng);
    const double s = eos.entropy(rho, eps);
    const double dr = 1e-2 * rho;
    auto e = [&](double r) { return eos.internal_energy(r, s); };
    const double d3_fd =
        (e(rho + 2 * dr) - 2.0 * e(rho + dr) + 2.0 * e(rho - dr) - e(rho - 2 * dr)) /
        (2.0 * dr * dr * dr);
    CHECK(eos.d3_rho_eps(rho, eps) == doctest::Approx(d3_fd).epsilon(1e-4));
  }
}
