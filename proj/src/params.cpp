#include "srmaser/params.hpp"

#include <cmath>
#include <stdexcept>

#include "srmaser/constants.hpp"

namespace srmaser {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("SystemParams: " + what);
}

}  // namespace

void SystemParams::validate() const {
  require(std::isfinite(n_spins) && n_spins >= 1.0, "n_spins must be >= 1");
  require(std::isfinite(coupling_g) && coupling_g > 0.0, "coupling_g must be > 0");
  require(std::isfinite(cavity_q) && cavity_q > 0.0, "cavity_q must be > 0");
  require(std::isfinite(pump_rate_w) && pump_rate_w >= 0.0, "pump_rate_w must be >= 0");
  require(std::isfinite(t2_star) && t2_star > 0.0, "t2_star must be > 0");
  require(std::isfinite(gamma_eg) && gamma_eg >= 0.0, "gamma_eg must be >= 0");
  require(std::isfinite(omega_s) && omega_s > 0.0, "omega_s must be > 0");
  require(std::isfinite(omega_c) && omega_c > 0.0, "omega_c must be > 0");
  require(std::isfinite(temperature) && temperature >= 0.0, "temperature must be >= 0");
  require(std::isfinite(cavity_length) && cavity_length > 0.0, "cavity_length must be > 0");
  // rotating-wave regime
  require(std::abs(omega_s - omega_c) / omega_c < 1e-3,
          "|omega_s - omega_c|/omega_c must be < 1e-3");
}

double thermal_photons(double omega, double temperature) {
  if (!(std::isfinite(omega) && omega > 0.0))
    throw std::invalid_argument("thermal_photons: omega must be > 0");
  if (!(std::isfinite(temperature) && temperature >= 0.0))
    throw std::invalid_argument("thermal_photons: temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  const double x = hbar * omega / (k_boltzmann * temperature);
  // expm1 keeps the small-x (high-T) regime accurate
  return 1.0 / std::expm1(x);
}

DerivedRates derive_rates(const SystemParams& params) {
  params.validate();
  DerivedRates r;
  r.kappa_c = params.omega_c / params.cavity_q;
  r.kappa_s = params.pump_rate_w + 2.0 / params.t2_star + params.gamma_eg;
  r.n_th = thermal_photons(params.omega_c, params.temperature);
  r.detuning = params.omega_s - params.omega_c;
  return r;
}

}  // namespace srmaser
