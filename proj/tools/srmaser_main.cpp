// srmaser command line: steady states, moment dynamics, coherence and
// sensitivity reports, and (Q, w) design-plane sweeps.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "srmaser/coherence.hpp"
#include "srmaser/config.hpp"
#include "srmaser/constants.hpp"
#include "srmaser/cumulant.hpp"
#include "srmaser/meanfield.hpp"
#include "srmaser/params.hpp"
#include "srmaser/sensing.hpp"
#include "srmaser/sweep.hpp"

namespace {

using namespace srmaser;

struct ParamArgs {
  std::string preset_name = "fig3";
  std::string config_path;
  ParamOverrides flags;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--preset", preset_name,
                    "parameter preset: fig3, fig4a, fig4b")
        ->check(CLI::IsMember({"fig3", "fig4a", "fig4b"}));
    cmd->add_option("--config", config_path,
                    "key/value config file (overrides the preset)");
    cmd->add_option("--n-spins", flags.n_spins, "number of spins N");
    cmd->add_option("--coupling-g-hz", flags.coupling_g_hz,
                    "spin-photon coupling g/2pi (Hz)");
    cmd->add_option("--q", flags.cavity_q, "cavity quality factor Q");
    cmd->add_option("--pump-w", flags.pump_rate_w, "pump rate w (1/s)");
    cmd->add_option("--t2-star", flags.t2_star, "dephasing time T2* (s)");
    cmd->add_option("--gamma-eg", flags.gamma_eg, "spin relaxation rate (1/s)");
    cmd->add_option("--omega-s-hz", flags.omega_s_hz,
                    "spin transition frequency (Hz)");
    cmd->add_option("--omega-c-hz", flags.omega_c_hz,
                    "cavity mode frequency (Hz)");
    cmd->add_option("--temperature", flags.temperature, "temperature (K)");
    cmd->add_option("--cavity-length", flags.cavity_length,
                    "cavity length L (m)");
  }

  SystemParams resolve() const {
    SystemParams p = preset(preset_name);
    if (!config_path.empty()) load_config_file(config_path).apply(p);
    flags.apply(p);
    p.validate();
    return p;
  }
};

// output sink: "-" selects stdout
struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit Sink(const std::string& path) {
    if (path != "-") {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open output file: " + path);
      os = &file;
    }
  }
  std::ostream& stream() { return *os; }
};

void print_params(const SystemParams& p, const DerivedRates& r) {
  std::printf("parameters:\n");
  std::printf("  N          = %.6g spins\n", p.n_spins);
  std::printf("  g/2pi      = %.6g Hz\n", angular_to_hz(p.coupling_g));
  std::printf("  Q          = %.6g\n", p.cavity_q);
  std::printf("  w          = %.6g 1/s\n", p.pump_rate_w);
  std::printf("  T2*        = %.6g s\n", p.t2_star);
  std::printf("  gamma_eg   = %.6g 1/s\n", p.gamma_eg);
  std::printf("  omega_s/2pi= %.9g Hz\n", angular_to_hz(p.omega_s));
  std::printf("  omega_c/2pi= %.9g Hz\n", angular_to_hz(p.omega_c));
  std::printf("  T          = %.6g K\n", p.temperature);
  std::printf("  L          = %.6g m\n", p.cavity_length);
  std::printf("derived rates:\n");
  std::printf("  kappa_c    = %.6g 1/s\n", r.kappa_c);
  std::printf("  kappa_s    = %.6g 1/s\n", r.kappa_s);
  std::printf("  n_th       = %.6g\n", r.n_th);
  std::printf("  detuning   = %.6g rad/s\n", r.detuning);
}

const char* diag_text(MeanFieldDiag d) {
  switch (d) {
    case MeanFieldDiag::ok:
      return "ok";
    case MeanFieldDiag::below_threshold:
      return "below threshold";
    case MeanFieldDiag::over_repumped:
      return "over-repumped";
  }
  return "?";
}

int cmd_steady(const ParamArgs& pargs) {
  const SystemParams p = pargs.resolve();
  const DerivedRates r = derive_rates(p);
  print_params(p, r);

  const MeanFieldState st = r.detuning == 0.0 ? resonant_steady_state(p, r)
                                              : detuned_steady_state(p, r);
  std::printf("masing condition: %s\n",
              masing_condition(p, r) ? "satisfied" : "not satisfied");
  if (const auto win = masing_window(p)) {
    std::printf("masing window:  w in (%.6g, %.6g) 1/s\n", win->w_min,
                win->w_max);
  } else {
    std::printf("masing window:  empty (no pump rate supports masing)\n");
  }
  std::printf("steady state (%s):\n", diag_text(st.diag));
  std::printf("  S_z        = %.6g\n", st.s_z);
  std::printf("  n_c        = %.6g photons\n", st.photon_number());
  std::printf("  <S+S->     = %.6g\n", st.spin_correlation());
  std::printf("  N_e        = %.6g\n", st.n_e);
  std::printf("  N_g        = %.6g\n", st.n_g);
  if (st.masing) {
    std::printf("  omega/2pi  = %.9g Hz\n", angular_to_hz(st.omega_mase));
    std::printf("  pulling    = %.6g rad/s from cavity\n",
                st.omega_mase - p.omega_c);
  }
  return 0;
}

int cmd_dynamics(const ParamArgs& pargs, double t_max, int samples,
                 bool seed_meanfield, const std::string& out_path) {
  const SystemParams p = pargs.resolve();
  const DerivedRates r = derive_rates(p);
  const CumulantState seed =
      seed_meanfield ? meanfield_seed(p, r) : incoherent_seed(p, r);

  IntegrationOptions opts;
  if (t_max > 0.0) opts.t_max = t_max;
  const CumulantResult res = integrate_to_steady_state(seed, p, r, opts);

  if (!out_path.empty()) {
    // sample the trajectory on a log time grid up to the converged time
    const double t_end = res.t_final > 0.0 ? res.t_final : 1.0 / r.kappa_c;
    const double t_start = t_end * 1e-9;
    std::vector<double> times;
    for (int i = 0; i < samples; ++i)
      times.push_back(t_start *
                      std::pow(t_end / t_start, double(i) / (samples - 1)));
    const auto traj = integrate_trajectory(seed, p, r, times);
    Sink sink(out_path);
    sink.stream() << "t,n_e,n_g,re_adag_s,im_adag_s,spsm,photons\n";
    char buf[256];
    for (const auto& pt : traj) {
      std::snprintf(buf, sizeof(buf),
                    "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", pt.t,
                    pt.state.n_e, pt.state.n_g, pt.state.a_dag_s.real(),
                    pt.state.a_dag_s.imag(), pt.state.spsm, pt.state.photons);
      sink.stream() << buf;
    }
  }

  std::ostream& log = out_path == "-" ? std::cerr : std::cout;
  const char* status = res.status == CumulantStatus::converged
                           ? "converged"
                           : res.status == CumulantStatus::t_max_exceeded
                                 ? "t_max exceeded"
                                 : "numerical failure";
  log << "status: " << status << " at t = " << res.t_final << " s after "
      << res.n_steps << " steps\n";
  log << "conservation drift: " << res.conservation_drift << " (relative)\n";
  log << "final state:\n";
  log << "  <Ne>     = " << res.state.n_e << "\n";
  log << "  <Ng>     = " << res.state.n_g << "\n";
  log << "  S_z      = " << res.state.s_z() << "\n";
  log << "  <S+S->   = " << res.state.spsm << "\n";
  log << "  <a+a>    = " << res.state.photons << "\n";
  log << "  residual = " << steady_residual(res.state, p, r) << "\n";
  return res.converged() ? 0 : 1;
}

int cmd_coherence(const ParamArgs& pargs, bool use_cumulant, bool optimal,
                  const std::string& spectrum_out) {
  const SystemParams p = pargs.resolve();
  const DerivedRates r = derive_rates(p);
  const MeanFieldState mf = r.detuning == 0.0 ? resonant_steady_state(p, r)
                                              : detuned_steady_state(p, r);

  CoherenceReport rep;
  if (use_cumulant) {
    const CumulantResult cr =
        integrate_to_steady_state(incoherent_seed(p, r), p, r);
    if (!cr.converged()) {
      std::fprintf(stderr, "cumulant integration did not converge\n");
      return 1;
    }
    rep = coherence_time(mf, cr.state, r);
  } else {
    rep = coherence_time(mf, r);
  }

  std::printf("masing: %s\n", rep.masing ? "yes" : "no");
  std::printf("n_c      = %.6g\n", rep.n_c);
  std::printf("n_s      = %.6g\n", rep.n_s);
  std::printf("n_incoh  = %.6g\n", rep.n_incoh);
  if (rep.masing) {
    std::printf("T_coh    = %.6g s\n", rep.t_coh);
    std::printf("linewidth= %.6g rad/s (FWHM)\n", rep.linewidth);
    std::printf("heuristic= %.6g s (order of magnitude)\n",
                heuristic_coherence_time(r, rep.n_c, rep.n_s));
    if (r.detuning == 0.0) {
      const FluctuationSystem sys = build_fluctuation_system(mf, r, p);
      const double lw = phase_noise_linewidth(sys);
      std::printf("spectral = %.6g rad/s (phase-diffusion route, T = %.6g s)\n",
                  lw, 2.0 / lw);
      if (!spectrum_out.empty()) {
        std::vector<double> omegas;
        for (int i = 0; i <= 200; ++i)
          omegas.push_back(lw * std::pow(1e8, i / 200.0 - 0.25));
        Sink sink(spectrum_out);
        sink.stream() << "omega,psd\n";
        char buf[128];
        for (const auto& [om, s] : phase_noise_spectrum(sys, omegas)) {
          std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", om, s);
          sink.stream() << buf;
        }
      }
    }
  }
  if (optimal) {
    const OptimalCoherence oc = optimal_coherence(p);
    std::printf("optimal pump (analytic): w = %.6g 1/s, T_coh = %.6g s\n",
                oc.w_analytic, oc.t_analytic);
    std::printf("optimal pump (numeric):  w = %.6g 1/s, T_coh = %.6g s\n",
                oc.w_numeric, oc.t_numeric);
    std::printf("deep-limit ratio = %.3g%s\n", oc.limit_ratio,
                oc.marginal ? " (marginal: analytic form approximate)" : "");
  }
  return 0;
}

int cmd_sensitivity(const ParamArgs& pargs, bool use_cumulant) {
  const SystemParams p = pargs.resolve();
  const DerivedRates r = derive_rates(p);
  const MeanFieldState mf = r.detuning == 0.0 ? resonant_steady_state(p, r)
                                              : detuned_steady_state(p, r);
  CoherenceReport rep;
  if (use_cumulant) {
    const CumulantResult cr =
        integrate_to_steady_state(incoherent_seed(p, r), p, r);
    if (!cr.converged()) {
      std::fprintf(stderr, "cumulant integration did not converge\n");
      return 1;
    }
    rep = coherence_time(mf, cr.state, r);
  } else {
    rep = coherence_time(mf, r);
  }
  if (!rep.masing) {
    std::fprintf(stderr, "not masing at these parameters; no sensitivity\n");
    return 1;
  }
  const SensitivityReport s = sensitivity_report(p, r, rep.t_coh);
  std::printf("T_coh     = %.6g s\n", rep.t_coh);
  std::printf("deltaB    = %.6g T/sqrt(Hz) = %.4g fT/sqrt(Hz)\n", s.db_sqrt_t,
              s.db_sqrt_t * 1e15);
  std::printf("deltax    = %.6g m/sqrt(Hz) = %.4g fm/sqrt(Hz)\n", s.dx_sqrt_t,
              s.dx_sqrt_t * 1e15);
  std::printf("bandwidth = %.6g rad/s\n", s.bandwidth);
  return 0;
}

int cmd_sweep(const ParamArgs& pargs, SweepSpec spec,
              const std::string& method, const std::string& obs_csv,
              const std::string& format, const std::string& out_path,
              const std::string& boundary_out, const std::string& ridge_out) {
  spec.base = pargs.resolve();
  if (method == "meanfield") spec.method = SweepMethod::meanfield;
  else if (method == "cumulant") spec.method = SweepMethod::cumulant;
  else spec.method = SweepMethod::both;

  if (!obs_csv.empty()) {
    std::stringstream ss(obs_csv);
    std::string name;
    while (std::getline(ss, name, ',')) {
      const auto ob = observable_from_name(name);
      if (!ob) throw std::runtime_error("unknown observable: " + name);
      spec.observables.push_back(*ob);
    }
  }

  const SweepResult result = run_sweep(spec);
  {
    Sink sink(out_path);
    if (format == "json")
      write_json(result, sink.stream());
    else
      write_csv(result, sink.stream());
  }
  if (!boundary_out.empty()) {
    Sink sink(boundary_out);
    write_boundary_csv(result.boundary, sink.stream());
  }
  if (!ridge_out.empty()) {
    Sink sink(ridge_out);
    write_ridge_csv(result.ridge, sink.stream());
  }
  return 0;
}

int cmd_boundary(const ParamArgs& pargs, SweepSpec spec,
                 const std::string& out_path) {
  spec.base = pargs.resolve();
  Sink sink(out_path);
  write_boundary_csv(masing_boundary(spec), sink.stream());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"superradiant maser design-space simulator"};
  app.require_subcommand(1);

  ParamArgs pargs;

  auto* steady = app.add_subcommand("steady", "mean-field steady state");
  pargs.add_to(steady);

  auto* dynamics =
      app.add_subcommand("dynamics", "integrate moment equations to steady state");
  double t_max = 0.0;
  int samples = 200;
  bool seed_mf = false;
  std::string dyn_out;
  pargs.add_to(dynamics);
  dynamics->add_option("--t-max", t_max, "simulated time budget (s)");
  dynamics->add_option("--samples", samples, "trajectory samples")
      ->check(CLI::Range(2, 1000000));
  dynamics->add_flag("--seed-meanfield", seed_mf,
                     "seed from the mean-field fixed point");
  dynamics->add_option("--out", dyn_out, "trajectory CSV path ('-' = stdout)");

  auto* coherence = app.add_subcommand("coherence", "coherence time and linewidth");
  bool coh_cumulant = false, coh_optimal = false;
  std::string spectrum_out;
  pargs.add_to(coherence);
  coherence->add_flag("--cumulant", coh_cumulant,
                      "use cumulant steady-state moments");
  coherence->add_flag("--optimal", coh_optimal,
                      "report the optimal pump analysis");
  coherence->add_option("--spectrum-out", spectrum_out,
                        "phase-noise spectrum CSV path");

  auto* sensitivity =
      app.add_subcommand("sensitivity", "magnetometry and position sensitivity");
  bool sens_cumulant = false;
  pargs.add_to(sensitivity);
  sensitivity->add_flag("--cumulant", sens_cumulant,
                        "use cumulant steady-state moments");

  auto* sweep = app.add_subcommand("sweep", "(Q, w) design-plane sweep");
  SweepSpec spec;
  std::string method = "meanfield", obs_csv, format = "csv", out_path = "-";
  std::string boundary_out, ridge_out;
  pargs.add_to(sweep);
  sweep->add_option("--q-min", spec.q_axis.min, "Q axis minimum");
  sweep->add_option("--q-max", spec.q_axis.max, "Q axis maximum");
  sweep->add_option("--q-points", spec.q_axis.points, "Q axis points")
      ->check(CLI::Range(2, 100000));
  sweep->add_option("--w-min", spec.w_axis.min, "w axis minimum (1/s)");
  sweep->add_option("--w-max", spec.w_axis.max, "w axis maximum (1/s)");
  sweep->add_option("--w-points", spec.w_axis.points, "w axis points")
      ->check(CLI::Range(2, 100000));
  sweep->add_option("--method", method, "meanfield, cumulant, or both")
      ->check(CLI::IsMember({"meanfield", "cumulant", "both"}));
  sweep->add_option("--observables", obs_csv,
                    "comma list from s_z,n_c,spsm,t_coh,db,dx");
  sweep->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", out_path, "output path ('-' = stdout)");
  sweep->add_option("--boundary-out", boundary_out,
                    "also write the masing boundary polyline CSV");
  sweep->add_option("--ridge-out", ridge_out,
                    "also write the optimal-pump ridge CSV");
  sweep->add_option("--jobs", spec.jobs, "worker threads")
      ->check(CLI::Range(1, 1024));

  auto* boundary = app.add_subcommand("boundary", "masing window boundary");
  SweepSpec bspec;
  std::string bout = "-";
  pargs.add_to(boundary);
  boundary->add_option("--q-min", bspec.q_axis.min, "Q axis minimum");
  boundary->add_option("--q-max", bspec.q_axis.max, "Q axis maximum");
  boundary->add_option("--q-points", bspec.q_axis.points, "Q axis points")
      ->check(CLI::Range(2, 100000));
  boundary->add_option("--out", bout, "output path ('-' = stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (steady->parsed()) return cmd_steady(pargs);
    if (dynamics->parsed())
      return cmd_dynamics(pargs, t_max, samples, seed_mf, dyn_out);
    if (coherence->parsed())
      return cmd_coherence(pargs, coh_cumulant, coh_optimal, spectrum_out);
    if (sensitivity->parsed()) return cmd_sensitivity(pargs, sens_cumulant);
    if (sweep->parsed())
      return cmd_sweep(pargs, spec, method, obs_csv, format, out_path,
                       boundary_out, ridge_out);
    if (boundary->parsed()) return cmd_boundary(pargs, bspec, bout);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
