#include "srmaser/coherence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "srmaser/rootfind.hpp"

namespace srmaser {

namespace {

CoherenceReport assemble_report(bool masing, double n_c, double n_s,
                                double n_incoh, const DerivedRates& rates) {
  CoherenceReport rep;
  rep.masing = masing;
  rep.n_c = n_c;
  rep.n_s = n_s;
  rep.n_incoh = n_incoh;
  if (!masing) {
    rep.t_coh = 0.0;
    rep.linewidth = std::numeric_limits<double>::infinity();
    return rep;
  }
  rep.t_coh = 4.0 * (1.0 / rates.kappa_c + 1.0 / rates.kappa_s) *
              (n_c + n_s) / n_incoh;
  rep.linewidth = 2.0 / rep.t_coh;
  return rep;
}

// orthonormal basis of the physical subspace dNe + dNg = 0
Eigen::Matrix<double, 6, 5> subspace_basis() {
  Eigen::Matrix<double, 6, 5> b = Eigen::Matrix<double, 6, 5>::Zero();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  b(0, 0) = inv_sqrt2;
  b(1, 0) = -inv_sqrt2;
  for (int i = 1; i < 5; ++i) b(i + 1, i) = 1.0;
  return b;
}

// phase direction: a global phase rotation of the masing solution,
// (0, 0, -|S-|, 0, 0, |a|) per unit angle
Eigen::Matrix<double, 6, 1> phase_direction(const FluctuationSystem& sys) {
  Eigen::Matrix<double, 6, 1> v = Eigen::Matrix<double, 6, 1>::Zero();
  v(2) = -sys.s_minus_mag;
  v(5) = sys.a_mag;
  return v;
}

struct GoldstoneVectors {
  GoldstoneAnalysis analysis;
  Eigen::Matrix<double, 5, 1> left_null;  // normalized so u . v_phase = 1
};

GoldstoneVectors goldstone_vectors(const FluctuationSystem& sys) {
  const auto b = subspace_basis();
  const Eigen::Matrix<double, 5, 5> a_r =
      b.transpose() * sys.drift_matrix * b;
  const Eigen::Matrix<double, 5, 1> phase_r =
      b.transpose() * phase_direction(sys);

  Eigen::EigenSolver<Eigen::Matrix<double, 5, 5>> eig(a_r);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("goldstone analysis: eigensolver failed");

  GoldstoneVectors out;
  int i_min = 0;
  for (int i = 0; i < 5; ++i) {
    out.analysis.eigenvalues[i] = eig.eigenvalues()(i);
    if (std::abs(eig.eigenvalues()(i)) < std::abs(eig.eigenvalues()(i_min)))
      i_min = i;
  }
  out.analysis.lambda_phase = eig.eigenvalues()(i_min);

  const Eigen::Matrix<std::complex<double>, 5, 1> vec =
      eig.eigenvectors().col(i_min);
  const std::complex<double> ovl =
      (vec.adjoint() * phase_r.cast<std::complex<double>>())(0, 0);
  out.analysis.overlap = std::abs(ovl) / (vec.norm() * phase_r.norm());

  out.analysis.stable = true;
  for (int i = 0; i < 5; ++i) {
    if (i == i_min) continue;
    if (!(eig.eigenvalues()(i).real() < 0.0)) out.analysis.stable = false;
  }

  // left zero eigenvector, from the transposed restriction
  Eigen::EigenSolver<Eigen::Matrix<double, 5, 5>> eig_t(a_r.transpose());
  if (eig_t.info() != Eigen::Success)
    throw std::runtime_error("goldstone analysis: eigensolver failed");
  int j_min = 0;
  for (int i = 0; i < 5; ++i)
    if (std::abs(eig_t.eigenvalues()(i)) <
        std::abs(eig_t.eigenvalues()(j_min)))
      j_min = i;
  Eigen::Matrix<std::complex<double>, 5, 1> u =
      eig_t.eigenvectors().col(j_min);
  // the zero mode is real; strip the arbitrary complex phase
  int k_big = 0;
  for (int i = 1; i < 5; ++i)
    if (std::abs(u(i)) > std::abs(u(k_big))) k_big = i;
  u *= std::abs(u(k_big)) / u(k_big);
  Eigen::Matrix<double, 5, 1> u_real = u.real();

  const double proj = u_real.dot(phase_r);
  if (proj == 0.0)
    throw std::runtime_error("goldstone analysis: zero mode orthogonal to phase");
  out.left_null = u_real / proj;
  return out;
}

}  // namespace

CoherenceReport coherence_time(const MeanFieldState& mean_field,
                               const DerivedRates& rates) {
  if (!mean_field.masing || !(mean_field.s_z > 0.0))
    return assemble_report(false, 0.0, 0.0, 0.0, rates);
  const double n_c = mean_field.photon_number();
  const double n_s = mean_field.spin_correlation() / mean_field.s_z;
  const double n_incoh = rates.n_th + mean_field.n_e / mean_field.s_z;
  return assemble_report(true, n_c, n_s, n_incoh, rates);
}

CoherenceReport coherence_time(const MeanFieldState& mean_field,
                               const CumulantState& cumulant,
                               const DerivedRates& rates) {
  const double s_z = cumulant.s_z();
  if (!mean_field.masing || !(s_z > 0.0)) {
    const double n_c = std::max(cumulant.photons, 0.0);
    const double n_s = s_z > 0.0 ? cumulant.spsm / s_z : 0.0;
    return assemble_report(false, n_c, n_s, 0.0, rates);
  }
  const double n_c = cumulant.photons;
  const double n_s = cumulant.spsm / s_z;
  const double n_incoh = rates.n_th + cumulant.n_e / s_z;
  return assemble_report(true, n_c, n_s, n_incoh, rates);
}

double heuristic_coherence_time(const DerivedRates& rates, double n_c,
                                double n_s) {
  return (n_c + n_s) * (2.0 / rates.kappa_s + 2.0 / rates.kappa_c);
}

OptimalCoherence optimal_coherence(const SystemParams& params) {
  params.validate();
  OptimalCoherence opt;
  const double g2 = params.coupling_g * params.coupling_g;
  const double kappa_c = params.omega_c / params.cavity_q;
  opt.w_analytic = 2.0 * params.n_spins * g2 / kappa_c;
  opt.t_analytic = 4.0 * params.n_spins * params.n_spins * g2 /
                   (3.0 * kappa_c * kappa_c * kappa_c);
  opt.limit_ratio = (kappa_c / (2.0 * g2)) / (params.n_spins * params.t2_star);
  opt.marginal = !(opt.limit_ratio < 0.1);

  const auto win = masing_window(params);
  if (!win) {
    opt.w_numeric = std::numeric_limits<double>::quiet_NaN();
    opt.t_numeric = 0.0;
    return opt;
  }
  auto t_of_w = [&](double w) {
    const SystemParams p = params.with_pump(w);
    const DerivedRates r = derive_rates(p);
    return coherence_time(resonant_steady_state(p, r), r).t_coh;
  };
  const int n_scan = 200;
  const double lo = std::max(win->w_min, 1e-12);
  const double ratio = win->w_max / lo;
  double best_w = lo, best_t = -1.0;
  for (int i = 0; i <= n_scan; ++i) {
    const double w = lo * std::pow(ratio, double(i) / n_scan);
    const double t = t_of_w(w);
    if (t > best_t) {
      best_t = t;
      best_w = w;
    }
  }
  const double step = std::pow(ratio, 1.0 / n_scan);
  opt.w_numeric = golden_section_max(t_of_w, best_w / step,
                                     std::min(best_w * step, win->w_max));
  opt.t_numeric = t_of_w(opt.w_numeric);
  return opt;
}

FluctuationSystem build_fluctuation_system(const MeanFieldState& mean_field,
                                           const DerivedRates& rates,
                                           const SystemParams& params) {
  if (!mean_field.masing)
    throw std::invalid_argument(
        "build_fluctuation_system requires a masing fixed point");
  if (rates.detuning != 0.0)
    throw std::invalid_argument(
        "build_fluctuation_system requires resonance (omega_s == omega_c)");
  if (!(mean_field.n_e >= 0.0) || !(mean_field.n_g >= 0.0))
    throw std::invalid_argument(
        "build_fluctuation_system: negative populations");

  FluctuationSystem sys;
  sys.s_z = mean_field.s_z;
  sys.s_minus_mag = std::abs(mean_field.s_minus);
  sys.a_mag = std::abs(mean_field.a);
  sys.kappa_c = rates.kappa_c;
  sys.kappa_s = rates.kappa_s;

  const double g = params.coupling_g;
  const double w = params.pump_rate_w;
  const double gam = params.gamma_eg;
  const double m = sys.s_minus_mag;
  const double amp = sys.a_mag;

  auto& A = sys.drift_matrix;
  A.setZero();
  // populations
  A(0, 0) = -gam;
  A(0, 1) = w;
  A(0, 3) = -2.0 * g * amp;
  A(0, 4) = -2.0 * g * m;
  A.row(1) = -A.row(0);
  // spin quadratures (Re dS-, Im dS-)
  A(2, 2) = -0.5 * rates.kappa_s;
  A(2, 5) = -g * sys.s_z;
  A(3, 0) = g * amp;
  A(3, 1) = -g * amp;
  A(3, 3) = -0.5 * rates.kappa_s;
  A(3, 4) = g * sys.s_z;
  // cavity quadratures (Re da, Im da)
  A(4, 3) = g;
  A(4, 4) = -0.5 * rates.kappa_c;
  A(5, 2) = -g;
  A(5, 5) = -0.5 * rates.kappa_c;

  auto& D = sys.diffusion_matrix;
  D.setZero();
  // population shot noise: pump and relaxation jumps move one spin at a
  // time between the levels
  const double q = w * mean_field.n_g + gam * mean_field.n_e;
  D(0, 0) = q;
  D(1, 1) = q;
  D(0, 1) = -q;
  D(1, 0) = -q;
  // collective spin quadratures: total single-spin noise power kappa_s N
  const double d_spin = 0.25 * rates.kappa_s * (mean_field.n_e + mean_field.n_g);
  D(2, 2) = d_spin;
  D(3, 3) = d_spin;
  // cavity quadratures: input noise at occupation n_th
  const double d_cav = 0.25 * rates.kappa_c * (2.0 * rates.n_th + 1.0);
  D(4, 4) = d_cav;
  D(5, 5) = d_cav;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(D);
  if (es.info() != Eigen::Success ||
      es.eigenvalues().minCoeff() < -1e-10 * es.eigenvalues().maxCoeff())
    throw std::logic_error("build_fluctuation_system: diffusion not PSD");

  return sys;
}

GoldstoneAnalysis analyze_goldstone(const FluctuationSystem& system) {
  return goldstone_vectors(system).analysis;
}

double phase_noise_linewidth(const FluctuationSystem& system) {
  const auto gv = goldstone_vectors(system);
  if (!(std::abs(gv.analysis.lambda_phase) < 1e-3 * system.kappa_c) ||
      gv.analysis.overlap <= 0.9)
    throw std::runtime_error(
        "phase_noise_linewidth: no phase zero mode (not masing)");
  const auto b = subspace_basis();
  const Eigen::Matrix<double, 5, 5> d_r =
      b.transpose() * system.diffusion_matrix * b;
  // u D u^T is the mean-square phase drift rate; the Lorentzian FWHM of
  // the field spectrum is that same rate (T_coh = 2/FWHM)
  return gv.left_null.dot(d_r * gv.left_null);
}

std::vector<std::pair<double, double>> phase_noise_spectrum(
    const FluctuationSystem& system, const std::vector<double>& omegas) {
  const auto gv = goldstone_vectors(system);
  const auto b = subspace_basis();
  const Eigen::Matrix<double, 5, 5> a_r =
      b.transpose() * system.drift_matrix * b;
  const Eigen::Matrix<double, 5, 5> d_r =
      b.transpose() * system.diffusion_matrix * b;
  const Eigen::Matrix<std::complex<double>, 5, 5> at =
      a_r.transpose().cast<std::complex<double>>();
  const Eigen::Matrix<std::complex<double>, 5, 1> u =
      gv.left_null.cast<std::complex<double>>();

  std::vector<std::pair<double, double>> out;
  out.reserve(omegas.size());
  for (double om : omegas) {
    Eigen::Matrix<std::complex<double>, 5, 5> shifted = at;
    shifted.diagonal().array() -= std::complex<double>(0.0, om);
    const Eigen::Matrix<std::complex<double>, 5, 1> qv =
        shifted.fullPivLu().solve(u);
    const Eigen::Matrix<std::complex<double>, 5, 1> qc = qv.conjugate();
    const std::complex<double> s =
        (qc.adjoint() * d_r.cast<std::complex<double>>() * qc)(0, 0);
    out.emplace_back(om, s.real());
  }
  return out;
}

}  // namespace srmaser
