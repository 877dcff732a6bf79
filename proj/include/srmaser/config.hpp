// config.hpp - parameter presets and plain-text config files
//
// Config files are line-oriented `key = value` (or `key value`) pairs
// with `#` comments. Frequencies use explicit `_hz` keys (cycles/s) and
// are converted to angular units at this boundary. Recognized keys:
//   n_spins, coupling_g_hz, cavity_q, pump_rate_w, t2_star, gamma_eg,
//   omega_s_hz, omega_c_hz, temperature, cavity_length

#pragma once

#include <istream>
#include <optional>
#include <string>

#include "srmaser/params.hpp"

namespace srmaser {

// Per-field overrides; unset fields leave the base value untouched.
struct ParamOverrides {
  std::optional<double> n_spins;
  std::optional<double> coupling_g_hz;
  std::optional<double> cavity_q;
  std::optional<double> pump_rate_w;
  std::optional<double> t2_star;
  std::optional<double> gamma_eg;
  std::optional<double> omega_s_hz;
  std::optional<double> omega_c_hz;
  std::optional<double> temperature;
  std::optional<double> cavity_length;

  void apply(SystemParams& params) const;
};

// Named parameter sets matching the design-plane figures:
//   fig3  : 120 mK, gamma_eg = 0.05 1/s
//   fig4a : 4 K,    gamma_eg = 0.05 1/s
//   fig4b : 300 K,  gamma_eg = 200 1/s
// Throws std::invalid_argument for unknown names.
SystemParams preset(const std::string& name);

// Throws std::runtime_error with line information on malformed input or
// unknown keys.
ParamOverrides parse_config(std::istream& is);
ParamOverrides load_config_file(const std::string& path);

}  // namespace srmaser
