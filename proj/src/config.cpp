#include "srmaser/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "srmaser/constants.hpp"

namespace srmaser {

void ParamOverrides::apply(SystemParams& params) const {
  if (n_spins) params.n_spins = *n_spins;
  if (coupling_g_hz) params.coupling_g = hz_to_angular(*coupling_g_hz);
  if (cavity_q) params.cavity_q = *cavity_q;
  if (pump_rate_w) params.pump_rate_w = *pump_rate_w;
  if (t2_star) params.t2_star = *t2_star;
  if (gamma_eg) params.gamma_eg = *gamma_eg;
  if (omega_s_hz) params.omega_s = hz_to_angular(*omega_s_hz);
  if (omega_c_hz) params.omega_c = hz_to_angular(*omega_c_hz);
  if (temperature) params.temperature = *temperature;
  if (cavity_length) params.cavity_length = *cavity_length;
}

SystemParams preset(const std::string& name) {
  SystemParams p;  // defaults are the fig3 parameter set
  if (name == "fig3") {
    p.temperature = 0.12;
    p.gamma_eg = 0.05;
  } else if (name == "fig4a") {
    p.temperature = 4.0;
    p.gamma_eg = 0.05;
  } else if (name == "fig4b") {
    p.temperature = 300.0;
    p.gamma_eg = 200.0;
  } else {
    throw std::invalid_argument("unknown preset: " + name +
                                " (expected fig3, fig4a, or fig4b)");
  }
  return p;
}

ParamOverrides parse_config(std::istream& is) {
  ParamOverrides ov;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string key, eq, value;
    std::istringstream ls(line);
    if (!(ls >> key)) continue;  // blank line
    if (!(ls >> eq)) throw std::runtime_error("config line " +
                                              std::to_string(lineno) +
                                              ": missing value");
    if (eq == "=") {
      if (!(ls >> value))
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": missing value");
    } else {
      value = eq;
    }
    std::string trailing;
    if (ls >> trailing)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": trailing content '" + trailing + "'");

    double parsed = 0.0;
    try {
      std::size_t pos = 0;
      parsed = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": bad number '" + value + "'");
    }

    if (key == "n_spins") ov.n_spins = parsed;
    else if (key == "coupling_g_hz") ov.coupling_g_hz = parsed;
    else if (key == "cavity_q") ov.cavity_q = parsed;
    else if (key == "pump_rate_w") ov.pump_rate_w = parsed;
    else if (key == "t2_star") ov.t2_star = parsed;
    else if (key == "gamma_eg") ov.gamma_eg = parsed;
    else if (key == "omega_s_hz") ov.omega_s_hz = parsed;
    else if (key == "omega_c_hz") ov.omega_c_hz = parsed;
    else if (key == "temperature") ov.temperature = parsed;
    else if (key == "cavity_length") ov.cavity_length = parsed;
    else
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
  }
  return ov;
}

ParamOverrides load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  return parse_config(f);
}

}  // namespace srmaser
