// params.hpp - physical inputs and derived decay/pump rates

#pragma once

#include <string>

namespace srmaser {

// User-facing physical configuration of the spin-cavity system.
// All frequencies angular (rad/s), all rates 1/s, SI units otherwise.
struct SystemParams {
  double n_spins = 0.375e14;        // N, number of spins coupled to the mode
  double coupling_g = 0.12566370614359174;  // g (rad/s); g/2pi = 0.02 Hz
  double cavity_q = 1e5;            // Q, cavity quality factor
  double pump_rate_w = 1e5;         // w (1/s), incoherent pump rate
  double t2_star = 0.5e-6;          // T2* (s), ensemble dephasing time
  double gamma_eg = 0.05;           // 1/T1 (1/s), spin relaxation rate
  double omega_s = 1.8849555921538757e10;  // spin transition (rad/s), 3 GHz
  double omega_c = 1.8849555921538757e10;  // cavity mode (rad/s), 3 GHz
  double temperature = 0.12;        // K
  double cavity_length = 0.05;      // L (m), enters position sensitivity only

  // Throws std::invalid_argument on non-finite, negative, or
  // out-of-regime values. |omega_s - omega_c| / omega_c must stay below
  // 1e-3 (rotating-wave regime).
  void validate() const;

  SystemParams with_pump(double w) const {
    SystemParams p = *this;
    p.pump_rate_w = w;
    return p;
  }
  SystemParams with_q(double q) const {
    SystemParams p = *this;
    p.cavity_q = q;
    return p;
  }
};

// Decay/pump rates computed from SystemParams.
struct DerivedRates {
  double kappa_c = 0.0;   // cavity decay, omega_c/Q (1/s)
  double kappa_s = 0.0;   // magnon decay, w + 2/T2* + gamma_eg (1/s)
  double n_th = 0.0;      // thermal photon number of the cavity mode
  double detuning = 0.0;  // omega_s - omega_c (rad/s)
};

// Bose-Einstein occupation of a mode at angular frequency omega and
// temperature T; returns 0 at T = 0.
double thermal_photons(double omega, double temperature);

// Pure function; rejects invalid params by throwing std::invalid_argument.
DerivedRates derive_rates(const SystemParams& params);

}  // namespace srmaser
