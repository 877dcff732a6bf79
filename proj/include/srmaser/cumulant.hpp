// cumulant.hpp - second-order moment dynamics of the spin-cavity system
//
// Closed ODEs for the five moments {<Ne>, <Ng>, <a+S->, <S+S->, <a+a>}
// (Gaussian factorization of third-order correlators), valid above and
// below the masing threshold. Integrated to steady state with an
// implicit adaptive-step method (stiff: rates span ~8 decades).

#pragma once

#include <complex>
#include <vector>

#include "srmaser/params.hpp"

namespace srmaser {

struct CumulantState {
  double n_e = 0.0;                    // <Ne>
  double n_g = 0.0;                    // <Ng>
  std::complex<double> a_dag_s{0.0};   // <a+ S->, photon-spin correlation
  double spsm = 0.0;                   // <S+ S->
  double photons = 0.0;                // <a+ a>

  double s_z() const { return n_e - n_g; }
};

// Time derivative of the moments (pure function; resonant rotating frame).
CumulantState cumulant_rhs(const CumulantState& state,
                           const SystemParams& params,
                           const DerivedRates& rates);

// Incoherent fixed point (decoupled rate equations) plus one quantum of
// correlation noise in <S+S->; the default integration seed.
CumulantState incoherent_seed(const SystemParams& params,
                              const DerivedRates& rates);

// Seed at the mean-field masing fixed point.
CumulantState meanfield_seed(const SystemParams& params,
                             const DerivedRates& rates);

enum class CumulantStatus {
  converged,
  t_max_exceeded,
  numerical_failure,
};

struct IntegrationOptions {
  double steady_tol = 1e-8;  // scaled residual threshold for steadiness
  double t_max = 0.0;        // simulated-time budget; 0 picks one from the rates
};

struct CumulantResult {
  CumulantState state;
  CumulantStatus status = CumulantStatus::numerical_failure;
  double t_final = 0.0;            // simulated time reached
  double conservation_drift = 0.0; // max |n_e + n_g - N| / N seen
  long n_steps = 0;                // integrator steps taken

  bool converged() const { return status == CumulantStatus::converged; }
};

// Integrates until the scaled residual stays below steady_tol over one
// slow-timescale window, or the time budget runs out.
CumulantResult integrate_to_steady_state(const CumulantState& initial,
                                         const SystemParams& params,
                                         const DerivedRates& rates,
                                         const IntegrationOptions& opts = {});

struct TrajectoryPoint {
  double t = 0.0;
  CumulantState state;
};

// State sampled at the given (strictly increasing) times; sample_times
// may start at 0 to record the initial state.
std::vector<TrajectoryPoint> integrate_trajectory(
    const CumulantState& initial, const SystemParams& params,
    const DerivedRates& rates, const std::vector<double>& sample_times);

// n_th + Ne/Sz; throws std::domain_error unless n_e > n_g.
double incoherent_magnon_number(const CumulantState& state,
                                const DerivedRates& rates);

// Scaled steadiness residual (max over components of |d x_i/dt| relative
// to the component's own relaxation rate and magnitude). Exposed for
// tests and diagnostics.
double steady_residual(const CumulantState& state, const SystemParams& params,
                       const DerivedRates& rates);

}  // namespace srmaser
