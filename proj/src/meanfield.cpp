#include "srmaser/meanfield.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "srmaser/rootfind.hpp"

namespace srmaser {

namespace {

constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();

// Incoherent (rate-equation) inversion, used below threshold.
double incoherent_sz(const SystemParams& p) {
  const double denom = p.pump_rate_w + p.gamma_eg;
  if (denom <= 0.0) return 0.0;
  double sz = p.n_spins * (p.pump_rate_w - p.gamma_eg) / denom;
  return std::clamp(sz, -p.n_spins, p.n_spins);
}

MeanFieldState non_masing_state(const SystemParams& p, MeanFieldDiag diag) {
  MeanFieldState st;
  st.masing = false;
  st.diag = diag;
  st.s_z = incoherent_sz(p);
  st.s_minus = 0.0;
  st.a = 0.0;
  st.n_e = 0.5 * (p.n_spins + st.s_z);
  st.n_g = 0.5 * (p.n_spins - st.s_z);
  st.omega_mase = quiet_nan;
  return st;
}

// Shared back end: given the inversion s_z of a masing fixed point and the
// operating frequency, fill amplitudes and populations from the pump /
// emission balance. Returns nullopt if the photon number would not be
// positive (not masing at this s_z).
std::optional<MeanFieldState> masing_state_from_sz(const SystemParams& p,
                                                   const DerivedRates& r,
                                                   double s_z, double omega) {
  const double w = p.pump_rate_w;
  const double g = p.gamma_eg;
  const double n_c =
      ((w - g) * p.n_spins - (w + g) * s_z) / (2.0 * r.kappa_c);
  if (!(n_c > 0.0)) return std::nullopt;

  MeanFieldState st;
  st.masing = true;
  st.diag = MeanFieldDiag::ok;
  st.s_z = s_z;
  st.omega_mase = omega;
  const double amp = std::sqrt(n_c);
  st.a = amp;  // phase convention: cavity field real positive
  // S- from the cavity amplitude equation at the operating frequency
  st.s_minus = std::complex<double>((omega - p.omega_c) * amp / p.coupling_g,
                                    0.5 * r.kappa_c * amp / p.coupling_g);
  // populations from pump/emission balance, including the thermal input
  st.n_e = (w * p.n_spins - r.kappa_c * (n_c - r.n_th)) / (w + g);
  st.n_g = p.n_spins - st.n_e;
  return st;
}

// Threshold polynomial in w: positive strictly inside the masing window.
// f(w) = 4 g^2 N (w - gamma) - kappa_c (w + gamma) kappa_s(w)
double window_poly(const SystemParams& p, double w) {
  const double four_g2_n = 4.0 * p.coupling_g * p.coupling_g * p.n_spins;
  const double kappa_c = p.omega_c / p.cavity_q;
  const double kappa_s = w + 2.0 / p.t2_star + p.gamma_eg;
  return four_g2_n * (w - p.gamma_eg) - kappa_c * (w + p.gamma_eg) * kappa_s;
}

}  // namespace

bool masing_condition(const SystemParams& params, const DerivedRates& rates) {
  const double w = params.pump_rate_w;
  const double g = params.gamma_eg;
  if (!(w > g)) return false;
  const double rhs = 4.0 * params.coupling_g * params.coupling_g /
                     rates.kappa_s * ((w - g) / (w + g)) * params.n_spins;
  return rates.kappa_c < rhs;
}

MeanFieldState resonant_steady_state(const SystemParams& params,
                                     const DerivedRates& rates) {
  if (rates.detuning != 0.0)
    throw std::invalid_argument(
        "resonant_steady_state requires omega_s == omega_c");
  const double s_z = rates.kappa_s * rates.kappa_c /
                     (4.0 * params.coupling_g * params.coupling_g);
  if (s_z > params.n_spins)
    return non_masing_state(params, MeanFieldDiag::over_repumped);
  if (!masing_condition(params, rates))
    return non_masing_state(params, MeanFieldDiag::below_threshold);
  auto st = masing_state_from_sz(params, rates, s_z, params.omega_c);
  if (!st) return non_masing_state(params, MeanFieldDiag::below_threshold);
  return *st;
}

double masing_frequency(const SystemParams& params, const DerivedRates& rates) {
  return (rates.kappa_c * params.omega_s + rates.kappa_s * params.omega_c) /
         (rates.kappa_c + rates.kappa_s);
}

MeanFieldState detuned_steady_state(const SystemParams& params,
                                    const DerivedRates& rates) {
  if (rates.detuning == 0.0) return resonant_steady_state(params, rates);

  // Operating frequency from the phase balance between the spin and
  // cavity amplitude equations: kappa_c (omega - omega_s) +
  // kappa_s (omega - omega_c) = 0, bracketed by the two bare frequencies.
  const double lo = std::min(params.omega_s, params.omega_c);
  const double hi = std::max(params.omega_s, params.omega_c);
  const double omega = find_root(
      [&](double om) {
        return rates.kappa_c * (om - params.omega_s) +
               rates.kappa_s * (om - params.omega_c);
      },
      lo, hi);

  // Amplitude balance fixes the inversion; detuning raises it above the
  // resonant value.
  const double g2 = params.coupling_g * params.coupling_g;
  const double s_z = (0.25 * rates.kappa_s * rates.kappa_c -
                      (omega - params.omega_s) * (omega - params.omega_c)) /
                     g2;
  if (s_z > params.n_spins)
    return non_masing_state(params, MeanFieldDiag::over_repumped);
  auto st = masing_state_from_sz(params, rates, s_z, omega);
  if (!st) return non_masing_state(params, MeanFieldDiag::below_threshold);
  return *st;
}

std::optional<MasingWindow> masing_window(const SystemParams& params) {
  params.validate();
  // window_poly is a downward parabola in w; masing holds between its
  // roots. Locate the vertex, then bracket each root.
  const double four_g2_n = 4.0 * params.coupling_g * params.coupling_g * params.n_spins;
  const double kappa_c = params.omega_c / params.cavity_q;
  const double vertex =
      (four_g2_n - kappa_c * (2.0 / params.t2_star + 2.0 * params.gamma_eg)) /
      (2.0 * kappa_c);
  if (!(vertex > params.gamma_eg) || !(window_poly(params, vertex) > 0.0))
    return std::nullopt;

  auto f = [&](double w) { return window_poly(params, w); };

  MasingWindow win;
  // lower root in (gamma_eg, vertex]; f(gamma_eg) <= 0 (== 0 iff gamma_eg == 0)
  if (window_poly(params, params.gamma_eg) == 0.0) {
    win.w_min = params.gamma_eg;
  } else {
    win.w_min = find_root(f, params.gamma_eg, vertex);
  }
  // upper root beyond the vertex; expand until the sign flips
  double hi = 2.0 * vertex + 1.0;
  while (f(hi) > 0.0) hi *= 2.0;
  win.w_max = find_root(f, vertex, hi);
  return win;
}

double spin_correlation_at(const SystemParams& params, double w) {
  const SystemParams p = params.with_pump(w);
  const DerivedRates r = derive_rates(p);
  const double s_z =
      r.kappa_s * r.kappa_c / (4.0 * p.coupling_g * p.coupling_g);
  if (s_z > p.n_spins || !masing_condition(p, r)) return 0.0;
  const double corr = s_z *
                      ((w - p.gamma_eg) * p.n_spins - (w + p.gamma_eg) * s_z) /
                      (2.0 * r.kappa_s);
  return std::max(corr, 0.0);
}

OptimalPump optimal_pump_max_correlation(const SystemParams& params) {
  OptimalPump opt;
  const double kappa_c = params.omega_c / params.cavity_q;
  opt.w_analytic = 2.0 * params.n_spins * params.coupling_g * params.coupling_g /
                   kappa_c;
  const auto win = masing_window(params);
  if (!win) {
    opt.w_numeric = quiet_nan;
    return opt;
  }
  // coarse log scan to bracket the peak, then golden-section refine
  auto corr = [&](double w) { return spin_correlation_at(params, w); };
  const int n_scan = 200;
  const double lo = std::max(win->w_min, 1e-12);
  const double ratio = win->w_max / lo;
  double best_w = lo;
  double best_v = -1.0;
  for (int i = 0; i <= n_scan; ++i) {
    const double w = lo * std::pow(ratio, double(i) / n_scan);
    const double v = corr(w);
    if (v > best_v) {
      best_v = v;
      best_w = w;
    }
  }
  const double step = std::pow(ratio, 1.0 / n_scan);
  opt.w_numeric =
      golden_section_max(corr, best_w / step, std::min(best_w * step, win->w_max));
  return opt;
}

}  // namespace srmaser
