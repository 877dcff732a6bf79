// meanfield.hpp - steady states of the mean-field masing equations
//
// Solves the classical (expectation-value) steady state of the coupled
// spin-ensemble / cavity system: the resonant closed form, the detuned
// fixed point with its pulled operating frequency, the masing threshold
// condition, the pump window, and the optimal pump rates.

#pragma once

#include <complex>
#include <optional>

#include "srmaser/params.hpp"

namespace srmaser {

enum class MeanFieldDiag {
  ok,               // masing fixed point
  below_threshold,  // threshold inequality fails
  over_repumped,    // required inversion exceeds N (spins fully polarized)
};

struct MeanFieldState {
  bool masing = false;
  double s_z = 0.0;                   // population inversion
  std::complex<double> s_minus{0.0};  // collective spin amplitude
  std::complex<double> a{0.0};        // cavity field amplitude
  double n_e = 0.0;                   // excited population
  double n_g = 0.0;                   // ground population
  double omega_mase = 0.0;  // operating frequency (rad/s); NaN if not masing
  MeanFieldDiag diag = MeanFieldDiag::below_threshold;

  double photon_number() const { return std::norm(a); }
  double spin_correlation() const { return std::norm(s_minus); }  // <S+S->
};

// Threshold inequality: kappa_c < (4g^2/kappa_s) * (w-gamma)/(w+gamma) * N,
// together with w > gamma_eg. Strict on both.
bool masing_condition(const SystemParams& params, const DerivedRates& rates);

// Closed-form steady state on resonance (omega_s == omega_c).
// Phase convention: a real positive, S- = i|S-|.
// Below threshold the amplitudes are exactly zero and s_z takes the
// incoherent rate-equation value.
MeanFieldState resonant_steady_state(const SystemParams& params,
                                     const DerivedRates& rates);

// Steady state at nonzero detuning. The operating frequency is found by
// root-finding the phase-balance equation between spin and cavity; the
// inversion and amplitudes follow from the amplitude-balance equations.
// Reduces exactly to resonant_steady_state at zero detuning.
MeanFieldState detuned_steady_state(const SystemParams& params,
                                    const DerivedRates& rates);

// Decay-rate-weighted operating frequency,
// omega = (kappa_c*omega_s + kappa_s*omega_c) / (kappa_c + kappa_s).
double masing_frequency(const SystemParams& params, const DerivedRates& rates);

// Pump interval (w_min, w_max) where the threshold inequality holds at
// the params' Q, accounting for kappa_s(w) = w + 2/T2* + gamma_eg.
// nullopt when no pump rate supports masing.
struct MasingWindow {
  double w_min = 0.0;
  double w_max = 0.0;
};
std::optional<MasingWindow> masing_window(const SystemParams& params);

// Collective spin correlation <S+S-> of the masing fixed point at pump
// rate w (params' Q, all other fields fixed); zero outside the window.
double spin_correlation_at(const SystemParams& params, double w);

// Pump rate maximizing <S+S->: the strong-pump analytic value
// 2*N*g^2/kappa_c and the numerical maximizer over the masing window.
struct OptimalPump {
  double w_analytic = 0.0;
  double w_numeric = 0.0;
};
OptimalPump optimal_pump_max_correlation(const SystemParams& params);

}  // namespace srmaser
