// sensing.hpp - magnetometry and mirror-position sensitivity estimates

#pragma once

#include "srmaser/constants.hpp"
#include "srmaser/params.hpp"

namespace srmaser {

struct SensitivityReport {
  double db_sqrt_t = 0.0;   // tesla sqrt(s)
  double dx_sqrt_t = 0.0;   // meter sqrt(s)
  double gamma_nv = gamma_nv_default;  // rad/(s T)
  double bandwidth = 0.0;   // usable signal band, (kappa_c + kappa_s)/2
};

// deltaB sqrt(t_m) = (1/gamma_nv)(1 + ks/kc) sqrt(2/T_coh).
// Throws std::domain_error unless t_coh > 0.
double magnetic_sensitivity(const DerivedRates& rates, double t_coh,
                            double gamma_nv = gamma_nv_default);

// deltax sqrt(t_m) = (L/omega_c)(1 + kc/ks) sqrt(2/T_coh).
double position_sensitivity(const SystemParams& params,
                            const DerivedRates& rates, double t_coh);

SensitivityReport sensitivity_report(const SystemParams& params,
                                     const DerivedRates& rates, double t_coh,
                                     double gamma_nv = gamma_nv_default);

}  // namespace srmaser
