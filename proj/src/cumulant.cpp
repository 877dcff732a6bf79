#include "srmaser/cumulant.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_matrix.h>
#include <gsl/gsl_odeiv2.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace srmaser {

namespace {

// Integration state vector: x = (n_e, n_g, y, s, p) with y = Im<a+S->.
// Re<a+S-> decouples (plain decay at (kappa_s+kappa_c)/2, no source on
// resonance) and is propagated analytically.
struct OdeCtx {
  double w, gamma, g, kappa_s, kappa_c, n_th, n_spins;
};

int rhs_gsl(double /*t*/, const double x[], double dxdt[], void* raw) {
  const auto& c = *static_cast<const OdeCtx*>(raw);
  const double n_e = x[0], n_g = x[1], y = x[2], s = x[3], p = x[4];
  const double s_z = n_e - n_g;
  // single rounded flux keeps n_e + n_g conserved exactly in floating point
  const double flux = c.w * n_g - c.gamma * n_e - 2.0 * c.g * y;
  dxdt[0] = flux;
  dxdt[1] = -flux;
  dxdt[2] = -0.5 * (c.kappa_s + c.kappa_c) * y +
            c.g * ((1.0 - 1.0 / c.n_spins) * s + n_e + p * s_z);
  dxdt[3] = -c.kappa_s * s + 2.0 * c.g * s_z * y;
  dxdt[4] = -c.kappa_c * p + 2.0 * c.g * y + c.kappa_c * c.n_th;
  return GSL_SUCCESS;
}

// Analytic Jacobian of the moment system, J[i][j] = d f_i / d x_j:
//
//            n_e          n_g         y                 s            p
//  f_ne   [ -gamma,       w,         -2g,               0,           0        ]
//  f_ng   [  gamma,      -w,          2g,               0,           0        ]
//  f_y    [  g(1+p),     -g p,       -(ks+kc)/2,        g(1-1/N),    g s_z    ]
//  f_s    [  2g y,       -2g y,       2g s_z,          -ks,          0        ]
//  f_p    [  0,           0,          2g,               0,          -kc       ]
int jac_gsl(double /*t*/, const double x[], double* dfdx, double dfdt[],
            void* raw) {
  const auto& c = *static_cast<const OdeCtx*>(raw);
  const double n_e = x[0], n_g = x[1], y = x[2], p = x[4];
  const double s_z = n_e - n_g;
  gsl_matrix_view m = gsl_matrix_view_array(dfdx, 5, 5);
  gsl_matrix* J = &m.matrix;
  gsl_matrix_set_zero(J);

  gsl_matrix_set(J, 0, 0, -c.gamma);
  gsl_matrix_set(J, 0, 1, c.w);
  gsl_matrix_set(J, 0, 2, -2.0 * c.g);
  gsl_matrix_set(J, 1, 0, c.gamma);
  gsl_matrix_set(J, 1, 1, -c.w);
  gsl_matrix_set(J, 1, 2, 2.0 * c.g);

  gsl_matrix_set(J, 2, 0, c.g * (1.0 + p));
  gsl_matrix_set(J, 2, 1, -c.g * p);
  gsl_matrix_set(J, 2, 2, -0.5 * (c.kappa_s + c.kappa_c));
  gsl_matrix_set(J, 2, 3, c.g * (1.0 - 1.0 / c.n_spins));
  gsl_matrix_set(J, 2, 4, c.g * s_z);

  gsl_matrix_set(J, 3, 0, 2.0 * c.g * y);
  gsl_matrix_set(J, 3, 1, -2.0 * c.g * y);
  gsl_matrix_set(J, 3, 2, 2.0 * c.g * s_z);
  gsl_matrix_set(J, 3, 3, -c.kappa_s);

  gsl_matrix_set(J, 4, 2, 2.0 * c.g);
  gsl_matrix_set(J, 4, 4, -c.kappa_c);

  for (int i = 0; i < 5; ++i) dfdt[i] = 0.0;
  return GSL_SUCCESS;
}

OdeCtx make_ctx(const SystemParams& params, const DerivedRates& rates) {
  return OdeCtx{params.pump_rate_w, params.gamma_eg, params.coupling_g,
                rates.kappa_s,      rates.kappa_c,   rates.n_th,
                params.n_spins};
}

void pack(const CumulantState& st, double x[5]) {
  x[0] = st.n_e;
  x[1] = st.n_g;
  x[2] = st.a_dag_s.imag();
  x[3] = st.spsm;
  x[4] = st.photons;
}

CumulantState unpack(const double x[5], double re_a_dag_s) {
  CumulantState st;
  st.n_e = x[0];
  st.n_g = x[1];
  st.a_dag_s = {re_a_dag_s, x[2]};
  st.spsm = x[3];
  st.photons = x[4];
  return st;
}

// Residual scales: a component counts as steady when its drift is below
// tol relative to (own relaxation rate) x (own magnitude, floored).
double residual(const OdeCtx& c, const double x[5]) {
  double f[5];
  rhs_gsl(0.0, x, f, const_cast<OdeCtx*>(&c));
  const double kappa_bar = 0.5 * (c.kappa_s + c.kappa_c);
  const double rate_pop = std::max(c.w + c.gamma, 1e-6 * c.kappa_c);
  const double rate[5] = {rate_pop, rate_pop, kappa_bar, c.kappa_s, c.kappa_c};
  const double floor[5] = {1e-6 * c.n_spins, 1e-6 * c.n_spins, 1.0, 1.0,
                           1e-3 * (c.n_th + 1.0)};
  double r = 0.0;
  for (int i = 0; i < 5; ++i)
    r = std::max(r, std::abs(f[i]) /
                        (rate[i] * std::max(std::abs(x[i]), floor[i])));
  return r;
}

std::once_flag gsl_handler_once;

void disable_gsl_abort() {
  std::call_once(gsl_handler_once, [] { gsl_set_error_handler_off(); });
}

struct Driver {
  gsl_odeiv2_system sys{};
  gsl_odeiv2_driver* d = nullptr;
  OdeCtx ctx;

  Driver(const SystemParams& params, const DerivedRates& rates)
      : ctx(make_ctx(params, rates)) {
    disable_gsl_abort();
    sys.function = rhs_gsl;
    sys.jacobian = jac_gsl;
    sys.dimension = 5;
    sys.params = &ctx;
    const double rate_fast =
        ctx.kappa_s + ctx.kappa_c + ctx.w + ctx.gamma;
    const double scale_abs[5] = {1e-3 * ctx.n_spins, 1e-3 * ctx.n_spins, 1.0,
                                 1.0, 1.0};
    d = gsl_odeiv2_driver_alloc_scaled_new(&sys, gsl_odeiv2_step_msbdf,
                                           1e-3 / rate_fast, 1e-9, 1e-9, 1.0,
                                           0.0, scale_abs);
  }
  ~Driver() { gsl_odeiv2_driver_free(d); }
  Driver(const Driver&) = delete;
  Driver& operator=(const Driver&) = delete;

  long steps() const { return static_cast<long>(d->e->count); }
};

bool all_finite(const double x[5]) {
  for (int i = 0; i < 5; ++i)
    if (!std::isfinite(x[i])) return false;
  return true;
}

}  // namespace

CumulantState cumulant_rhs(const CumulantState& state,
                           const SystemParams& params,
                           const DerivedRates& rates) {
  const OdeCtx c = make_ctx(params, rates);
  double x[5], f[5];
  pack(state, x);
  rhs_gsl(0.0, x, f, const_cast<OdeCtx*>(&c));
  CumulantState d;
  d.n_e = f[0];
  d.n_g = f[1];
  const double kappa_bar = 0.5 * (rates.kappa_s + rates.kappa_c);
  d.a_dag_s = {-kappa_bar * state.a_dag_s.real(), f[2]};
  d.spsm = f[3];
  d.photons = f[4];
  return d;
}

CumulantState incoherent_seed(const SystemParams& params,
                              const DerivedRates& rates) {
  CumulantState st;
  const double denom = params.pump_rate_w + params.gamma_eg;
  st.n_e = denom > 0.0 ? params.n_spins * params.pump_rate_w / denom : 0.0;
  st.n_g = params.n_spins - st.n_e;
  st.a_dag_s = 0.0;
  st.spsm = st.n_e + 1.0;  // single-spin terms plus one noise quantum
  st.photons = rates.n_th;
  return st;
}

CumulantState meanfield_seed(const SystemParams& params,
                             const DerivedRates& rates) {
  // local evaluation of the resonant closed form (the meanfield module
  // consumes this header, not the other way around)
  const double g2 = params.coupling_g * params.coupling_g;
  const double s_z = rates.kappa_s * rates.kappa_c / (4.0 * g2);
  const double w = params.pump_rate_w, gam = params.gamma_eg;
  const double n_c =
      ((w - gam) * params.n_spins - (w + gam) * s_z) / (2.0 * rates.kappa_c);
  if (!(n_c > 0.0) || s_z > params.n_spins) return incoherent_seed(params, rates);
  const double spsm = s_z * n_c * rates.kappa_c / rates.kappa_s;
  CumulantState st;
  st.n_e = (w * params.n_spins - rates.kappa_c * (n_c - rates.n_th)) / (w + gam);
  st.n_g = params.n_spins - st.n_e;
  st.a_dag_s = {0.0, std::sqrt(n_c * spsm)};
  st.spsm = spsm;
  st.photons = n_c;
  return st;
}

double steady_residual(const CumulantState& state, const SystemParams& params,
                       const DerivedRates& rates) {
  const OdeCtx c = make_ctx(params, rates);
  double x[5];
  pack(state, x);
  return residual(c, x);
}

CumulantResult integrate_to_steady_state(const CumulantState& initial,
                                         const SystemParams& params,
                                         const DerivedRates& rates,
                                         const IntegrationOptions& opts) {
  params.validate();
  Driver drv(params, rates);
  const OdeCtx& c = drv.ctx;

  double x[5];
  pack(initial, x);
  const double re0 = initial.a_dag_s.real();
  const double kappa_bar = 0.5 * (c.kappa_s + c.kappa_c);

  // time budget: generous multiple of the slowest relaxation rate
  double rate_slow = std::min(c.kappa_s, c.kappa_c);
  if (c.w + c.gamma > 0.0) rate_slow = std::min(rate_slow, c.w + c.gamma);
  const double t_max = opts.t_max > 0.0 ? opts.t_max : 2000.0 / rate_slow;

  // steadiness must persist over one slow-timescale window
  const double t_window =
      std::min(c.gamma > 0.0 ? 1.0 / c.gamma : t_max, 1e3 / c.kappa_c);

  CumulantResult res;
  res.state = initial;

  double t = 0.0;
  double dt = 10.0 / (c.kappa_s + c.kappa_c);
  double drift = 0.0;
  const double n_total0 = x[0] + x[1];

  bool marked = false;
  double t_mark = 0.0;
  double x_mark[5] = {};

  while (t < t_max) {
    const double t_next = std::min(t + dt, t_max);
    const int status = gsl_odeiv2_driver_apply(drv.d, &t, t_next, x);
    if (status != GSL_SUCCESS || !all_finite(x)) {
      res.status = CumulantStatus::numerical_failure;
      res.state = unpack(x, re0 * std::exp(-kappa_bar * t));
      res.t_final = t;
      res.conservation_drift = drift;
      res.n_steps = drv.steps();
      return res;
    }
    drift = std::max(drift, std::abs(x[0] + x[1] - n_total0) /
                                std::max(n_total0, 1.0));

    if (residual(c, x) < opts.steady_tol) {
      if (!marked) {
        marked = true;
        t_mark = t;
        std::copy(x, x + 5, x_mark);
      } else if (t - t_mark >= t_window) {
        // reject if the state drifted across the window
        const double floor[5] = {1e-6 * c.n_spins, 1e-6 * c.n_spins, 1.0, 1.0,
                                 1e-3 * (c.n_th + 1.0)};
        bool still = true;
        for (int i = 0; i < 5; ++i) {
          if (std::abs(x[i] - x_mark[i]) >
              100.0 * opts.steady_tol * std::max(std::abs(x[i]), floor[i])) {
            still = false;
            break;
          }
        }
        if (still) {
          res.status = CumulantStatus::converged;
          res.state = unpack(x, re0 * std::exp(-kappa_bar * t));
          res.t_final = t;
          res.conservation_drift = drift;
          res.n_steps = drv.steps();
          return res;
        }
        marked = false;
      }
    } else {
      marked = false;
    }
    dt = std::min(dt * 2.0, t_window);
  }

  res.status = CumulantStatus::t_max_exceeded;
  res.state = unpack(x, re0 * std::exp(-kappa_bar * t));
  res.t_final = t;
  res.conservation_drift = drift;
  res.n_steps = drv.steps();
  return res;
}

std::vector<TrajectoryPoint> integrate_trajectory(
    const CumulantState& initial, const SystemParams& params,
    const DerivedRates& rates, const std::vector<double>& sample_times) {
  params.validate();
  for (std::size_t i = 1; i < sample_times.size(); ++i)
    if (!(sample_times[i] > sample_times[i - 1]))
      throw std::invalid_argument("sample_times must be strictly increasing");

  Driver drv(params, rates);
  double x[5];
  pack(initial, x);
  const double re0 = initial.a_dag_s.real();
  const double kappa_bar = 0.5 * (rates.kappa_s + rates.kappa_c);

  std::vector<TrajectoryPoint> out;
  out.reserve(sample_times.size());
  double t = 0.0;
  for (double ts : sample_times) {
    if (ts > t) {
      const int status = gsl_odeiv2_driver_apply(drv.d, &t, ts, x);
      if (status != GSL_SUCCESS)
        throw std::runtime_error("integrate_trajectory: integrator failure");
    }
    out.push_back({ts, unpack(x, re0 * std::exp(-kappa_bar * ts))});
  }
  return out;
}

double incoherent_magnon_number(const CumulantState& state,
                                const DerivedRates& rates) {
  const double s_z = state.s_z();
  if (!(s_z > 0.0))
    throw std::domain_error(
        "incoherent_magnon_number requires positive inversion");
  return rates.n_th + state.n_e / s_z;
}

}  // namespace srmaser
