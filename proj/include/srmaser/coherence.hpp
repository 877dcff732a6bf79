// coherence.hpp - maser coherence time, linewidth, and phase-noise analysis
//
// Two routes to the linewidth:
//   1. the analytic coherence-time formula built from photon/magnon
//      numbers and the incoherent population, and
//   2. the phase-diffusion rate of the linearized fluctuation dynamics
//      around the masing fixed point (Goldstone-mode projection).
// Convention used throughout: T_coh = 2 / (FWHM linewidth).

#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "srmaser/cumulant.hpp"
#include "srmaser/meanfield.hpp"
#include "srmaser/params.hpp"

namespace srmaser {

struct CoherenceReport {
  bool masing = false;
  double n_c = 0.0;       // coherent photon number <a+a>
  double n_s = 0.0;       // magnon number <S+S->/Sz
  double n_incoh = 0.0;   // n_th + Ne/Sz
  double t_coh = 0.0;     // seconds; 0 when not masing
  double linewidth = 0.0; // rad/s, = 2/t_coh (inf when not masing)
};

// Coherence time from mean-field steady-state moments.
CoherenceReport coherence_time(const MeanFieldState& mean_field,
                               const DerivedRates& rates);

// Same formula evaluated with cumulant steady-state moments (masing gate
// still taken from the mean-field state).
CoherenceReport coherence_time(const MeanFieldState& mean_field,
                               const CumulantState& cumulant,
                               const DerivedRates& rates);

// Order-of-magnitude estimate (n_c + n_s)(tau_a + tau_c) with
// tau_c = 2/kappa_c, tau_a = 2/kappa_s. Heuristic only; it exceeds the
// full formula by exactly n_incoh/2.
double heuristic_coherence_time(const DerivedRates& rates, double n_c,
                                double n_s);

// Optimal pump rate for coherence: analytic strong-pump limit plus a
// numerical scan of the full formula over the masing window.
struct OptimalCoherence {
  double w_analytic = 0.0;   // 2 N g^2 / kappa_c
  double t_analytic = 0.0;   // 4 N^2 g^2 / (3 kappa_c^3)
  double w_numeric = 0.0;
  double t_numeric = 0.0;
  double limit_ratio = 0.0;  // (kappa_c/2g^2) / (N T2*); small means deep limit
  bool marginal = false;     // limit_ratio not small: analytic form approximate
};
OptimalCoherence optimal_coherence(const SystemParams& params);

// Linearized fluctuation dynamics at a masing fixed point, in the real
// coordinates v = (dNe, dNg, Re dS-, Im dS-, Re da, Im da):
//   dv/dt = drift_matrix v + F,   <F_i(t) F_j(t')> = diffusion_matrix_ij d(t-t')
struct FluctuationSystem {
  Eigen::Matrix<double, 6, 6> drift_matrix;
  Eigen::Matrix<double, 6, 6> diffusion_matrix;
  // fixed-point context (resonant phase convention: a real, S- = i|S-|)
  double s_z = 0.0;
  double s_minus_mag = 0.0;
  double a_mag = 0.0;
  double kappa_c = 0.0;
  double kappa_s = 0.0;
};

// Builds drift and diffusion at the mean-field fixed point. The noise
// strengths come from generalized Einstein relations per dissipation
// channel: cavity quadratures kappa_c(2 n_th + 1)/4, spin quadratures
// kappa_s N / 4, population shot noise (w Ng + gamma Ne). Throws
// std::invalid_argument for non-masing or detuned input, std::logic_error
// if the assembled diffusion fails the PSD check.
FluctuationSystem build_fluctuation_system(const MeanFieldState& mean_field,
                                           const DerivedRates& rates,
                                           const SystemParams& params);

// Spectrum of the drift restricted to the physical subspace
// dNe + dNg = 0, plus identification of the phase (Goldstone) mode.
struct GoldstoneAnalysis {
  std::array<std::complex<double>, 5> eigenvalues{};  // restricted spectrum
  std::complex<double> lambda_phase{0.0};
  double overlap = 0.0;  // |<unit eigenvector, unit phase direction>|
  bool stable = false;   // all non-Goldstone eigenvalues have Re < 0
};
GoldstoneAnalysis analyze_goldstone(const FluctuationSystem& system);

// FWHM linewidth (rad/s) from projecting the diffusion onto the phase
// zero mode. Throws std::runtime_error when no near-zero eigenvalue with
// phase-direction character exists (not masing).
double phase_noise_linewidth(const FluctuationSystem& system);

// Phase-quadrature noise spectrum S(Omega) on a caller-supplied grid;
// diverges as 1/Omega^2 toward zero frequency (free phase diffusion).
std::vector<std::pair<double, double>> phase_noise_spectrum(
    const FluctuationSystem& system, const std::vector<double>& omegas);

}  // namespace srmaser
