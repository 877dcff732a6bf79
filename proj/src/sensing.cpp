#include "srmaser/sensing.hpp"

#include <cmath>
#include <stdexcept>

namespace srmaser {

namespace {

void require_masing(double t_coh) {
  if (!(t_coh > 0.0))
    throw std::domain_error("sensitivity requires a masing state (t_coh > 0)");
}

}  // namespace

double magnetic_sensitivity(const DerivedRates& rates, double t_coh,
                            double gamma_nv) {
  require_masing(t_coh);
  return (1.0 / gamma_nv) * (1.0 + rates.kappa_s / rates.kappa_c) *
         std::sqrt(2.0 / t_coh);
}

double position_sensitivity(const SystemParams& params,
                            const DerivedRates& rates, double t_coh) {
  require_masing(t_coh);
  return (params.cavity_length / params.omega_c) *
         (1.0 + rates.kappa_c / rates.kappa_s) * std::sqrt(2.0 / t_coh);
}

SensitivityReport sensitivity_report(const SystemParams& params,
                                     const DerivedRates& rates, double t_coh,
                                     double gamma_nv) {
  SensitivityReport rep;
  rep.gamma_nv = gamma_nv;
  rep.db_sqrt_t = magnetic_sensitivity(rates, t_coh, gamma_nv);
  rep.dx_sqrt_t = position_sensitivity(params, rates, t_coh);
  rep.bandwidth = 0.5 * (rates.kappa_c + rates.kappa_s);
  return rep;
}

}  // namespace srmaser
