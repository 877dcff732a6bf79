#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>

#include "paper_point.hpp"
#include "srmaser/constants.hpp"
#include "srmaser/params.hpp"

using namespace srmaser;

TEST_CASE("derived rates at the reference point") {
  const SystemParams p = testref::cryo_point();
  const DerivedRates r = derive_rates(p);
  CHECK(r.kappa_c == doctest::Approx(testref::kappa_c).epsilon(1e-14));
  CHECK(r.kappa_s == doctest::Approx(testref::kappa_s).epsilon(1e-14));
  // 3-significant-figure statement of the magnon decay rate
  CHECK(r.kappa_s == doctest::Approx(4.1e6).epsilon(5e-4));
  CHECK(r.n_th == doctest::Approx(testref::n_th_120mk).epsilon(1e-12));
  CHECK(r.detuning == 0.0);
}

TEST_CASE("kappa_c uses the angular convention") {
  // omega_c/2pi = 3 GHz, Q = 1e5 -> kappa_c = 2*pi*3e9/1e5 = 1.885e5 1/s
  const SystemParams p = testref::cryo_point();
  const DerivedRates r = derive_rates(p);
  CHECK(r.kappa_c == doctest::Approx(1.885e5).epsilon(1e-3));
}

TEST_CASE("thermal photon numbers") {
  const double omega = hz_to_angular(3e9);
  CHECK(thermal_photons(omega, 0.12) == doctest::Approx(0.431).epsilon(2e-3));
  CHECK(thermal_photons(omega, 300.0) == doctest::Approx(2083.0).epsilon(5e-4));
  CHECK(thermal_photons(omega, 0.0) == 0.0);
  CHECK(thermal_photons(1.0, 0.0) == 0.0);
}

TEST_CASE("thermal occupation satisfies the detailed-balance identity") {
  // n(omega,T) * exp(hbar omega / kB T) - n(omega,T) = 1
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> log_x(std::log(1e-4), std::log(30.0));
  const double omega = hz_to_angular(3e9);
  for (int i = 0; i < 200; ++i) {
    const double x = std::exp(log_x(rng));
    const double temperature = hbar * omega / (k_boltzmann * x);
    const double n = thermal_photons(omega, temperature);
    CHECK(n * std::exp(x) - n == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("derive_rates is pure: identical inputs, bit-identical outputs") {
  const SystemParams p = testref::cryo_point();
  const DerivedRates a = derive_rates(p);
  const DerivedRates b = derive_rates(p);
  CHECK(std::memcmp(&a, &b, sizeof(DerivedRates)) == 0);
}

TEST_CASE("rate monotonicity in pump and quality factor") {
  std::mt19937_64 rng(999);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    SystemParams p = testref::cryo_point();
    p.pump_rate_w = std::pow(10.0, 2.0 + 6.0 * u(rng));
    p.cavity_q = std::pow(10.0, 3.0 + 5.0 * u(rng));
    const DerivedRates r = derive_rates(p);
    const DerivedRates r_w = derive_rates(p.with_pump(p.pump_rate_w * 1.5));
    const DerivedRates r_q = derive_rates(p.with_q(p.cavity_q * 1.5));
    CHECK(r_w.kappa_s > r.kappa_s);
    CHECK(r_q.kappa_c < r.kappa_c);
  }
}

TEST_CASE("input validation") {
  SystemParams p = testref::cryo_point();
  p.n_spins = 0.5;
  CHECK_THROWS_AS(derive_rates(p), std::invalid_argument);
  p = testref::cryo_point();
  p.t2_star = 0.0;
  CHECK_THROWS_AS(derive_rates(p), std::invalid_argument);
  p = testref::cryo_point();
  p.cavity_q = -1.0;
  CHECK_THROWS_AS(derive_rates(p), std::invalid_argument);
  p = testref::cryo_point();
  p.coupling_g = std::nan("");
  CHECK_THROWS_AS(derive_rates(p), std::invalid_argument);
  p = testref::cryo_point();
  p.omega_s = p.omega_c * 1.01;  // outside the rotating-wave regime
  CHECK_THROWS_AS(derive_rates(p), std::invalid_argument);
  CHECK_THROWS_AS(thermal_photons(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(thermal_photons(1.0, -1.0), std::invalid_argument);
}
