#include "srmaser/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "srmaser/coherence.hpp"
#include "srmaser/cumulant.hpp"
#include "srmaser/meanfield.hpp"
#include "srmaser/sensing.hpp"

namespace srmaser {

namespace {

constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();

const std::array<Observable, 6> all_observables = {
    Observable::s_z, Observable::n_c,  Observable::spsm,
    Observable::t_coh, Observable::db, Observable::dx};

// fixed "%.17g" rendering keeps result files byte-identical across runs
std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* diag_name(MeanFieldDiag d) {
  switch (d) {
    case MeanFieldDiag::ok:
      return "ok";
    case MeanFieldDiag::below_threshold:
      return "below_threshold";
    case MeanFieldDiag::over_repumped:
      return "over_repumped";
  }
  return "unknown";
}

struct CellObservables {
  double s_z = quiet_nan;
  double n_c = quiet_nan;
  double spsm = quiet_nan;
  double t_coh = quiet_nan;
  double db = quiet_nan;
  double dx = quiet_nan;
};

CellObservables from_meanfield(const SystemParams& p, const DerivedRates& r,
                               const MeanFieldState& mf) {
  CellObservables o;
  o.s_z = mf.s_z;
  o.n_c = mf.photon_number();
  o.spsm = mf.spin_correlation();
  const CoherenceReport rep = coherence_time(mf, r);
  if (rep.masing) {
    o.t_coh = rep.t_coh;
    o.db = magnetic_sensitivity(r, rep.t_coh);
    o.dx = position_sensitivity(p, r, rep.t_coh);
  }
  return o;
}

CellObservables from_cumulant(const SystemParams& p, const DerivedRates& r,
                              const MeanFieldState& mf,
                              const CumulantState& cum) {
  CellObservables o;
  o.s_z = cum.s_z();
  o.n_c = cum.photons;
  o.spsm = cum.spsm;
  const CoherenceReport rep = coherence_time(mf, cum, r);
  if (rep.masing) {
    o.t_coh = rep.t_coh;
    o.db = magnetic_sensitivity(r, rep.t_coh);
    o.dx = position_sensitivity(p, r, rep.t_coh);
  }
  return o;
}

double pick(const CellObservables& o, Observable obs) {
  switch (obs) {
    case Observable::s_z:
      return o.s_z;
    case Observable::n_c:
      return o.n_c;
    case Observable::spsm:
      return o.spsm;
    case Observable::t_coh:
      return o.t_coh;
    case Observable::db:
      return o.db;
    case Observable::dx:
      return o.dx;
  }
  return quiet_nan;
}

SweepCell evaluate_cell(const SweepSpec& spec,
                        const std::vector<Observable>& obs, double q,
                        double w) {
  SweepCell cell;
  cell.q = q;
  cell.w = w;
  try {
    const SystemParams p = spec.base.with_q(q).with_pump(w);
    const DerivedRates r = derive_rates(p);
    const MeanFieldState mf = r.detuning == 0.0 ? resonant_steady_state(p, r)
                                                : detuned_steady_state(p, r);
    cell.masing = mf.masing;
    cell.diag = diag_name(mf.diag);

    CellObservables o_mf = from_meanfield(p, r, mf);
    CellObservables o_cum;
    if (spec.method != SweepMethod::meanfield) {
      if (r.detuning != 0.0) {
        cell.diag = "cumulant_requires_resonance";
      } else {
        const CumulantResult cr =
            integrate_to_steady_state(incoherent_seed(p, r), p, r);
        if (cr.converged()) {
          o_cum = from_cumulant(p, r, mf, cr.state);
        } else {
          cell.diag = cr.status == CumulantStatus::t_max_exceeded
                          ? "cumulant_nonconverged"
                          : "cumulant_failure";
        }
      }
    }

    for (Observable ob : obs) {
      if (spec.method != SweepMethod::cumulant)
        cell.values.push_back(pick(o_mf, ob));
      if (spec.method != SweepMethod::meanfield)
        cell.values.push_back(pick(o_cum, ob));
    }
  } catch (const std::exception& e) {
    cell.diag = std::string("error:") + e.what();
    std::size_t n_cols = obs.size() * (spec.method == SweepMethod::both ? 2 : 1);
    cell.values.assign(n_cols, quiet_nan);
  }
  return cell;
}

}  // namespace

void SweepSpec::validate() const {
  base.validate();
  auto check_axis = [](const AxisSpec& a, const char* name) {
    if (!(a.min > 0.0) || !(a.max >= a.min) || a.points < 2)
      throw std::invalid_argument(std::string("SweepSpec: bad axis ") + name);
  };
  check_axis(q_axis, "q");
  check_axis(w_axis, "w");
  if (jobs < 1) throw std::invalid_argument("SweepSpec: jobs must be >= 1");
}

std::vector<double> axis_values(const AxisSpec& axis) {
  std::vector<double> v(axis.points);
  const double ratio = axis.max / axis.min;
  for (int i = 0; i < axis.points; ++i)
    v[i] = axis.min * std::pow(ratio, double(i) / (axis.points - 1));
  return v;
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::vector<Observable> obs =
      spec.observables.empty()
          ? std::vector<Observable>(all_observables.begin(),
                                    all_observables.end())
          : spec.observables;

  SweepResult result;
  result.resolved_base = spec.base;
  result.method = spec.method;
  for (Observable ob : obs) {
    if (spec.method != SweepMethod::cumulant)
      result.columns.push_back(observable_name(ob));
    if (spec.method != SweepMethod::meanfield)
      result.columns.push_back(observable_name(ob) + "_cum");
  }

  const std::vector<double> qs = axis_values(spec.q_axis);
  const std::vector<double> ws = axis_values(spec.w_axis);
  const std::size_t n_cells = qs.size() * ws.size();
  result.cells.resize(n_cells);

  // work-stealing over a shared cell counter; cells land at their
  // row-major index so output order never depends on scheduling
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= n_cells) return;
      const double q = qs[idx / ws.size()];
      const double w = ws[idx % ws.size()];
      result.cells[idx] = evaluate_cell(spec, obs, q, w);
    }
  };
  const int jobs = std::min<int>(spec.jobs, int(n_cells));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  result.boundary = masing_boundary(spec);

  // per-column ridge: raster argmax of t_coh (first matching method column)
  int t_col = -1;
  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    if (result.columns[i] == "t_coh" || result.columns[i] == "t_coh_cum") {
      t_col = int(i);
      break;
    }
  }
  for (std::size_t iq = 0; iq < qs.size(); ++iq) {
    RidgePoint rp;
    rp.q = qs[iq];
    rp.w_star = quiet_nan;
    rp.t_coh = quiet_nan;
    if (t_col >= 0) {
      for (std::size_t iw = 0; iw < ws.size(); ++iw) {
        const SweepCell& cell = result.cells[iq * ws.size() + iw];
        const double t = cell.values[t_col];
        if (std::isfinite(t) && (!std::isfinite(rp.t_coh) || t > rp.t_coh)) {
          rp.t_coh = t;
          rp.w_star = cell.w;
        }
      }
    }
    result.ridge.push_back(rp);
  }
  return result;
}

std::vector<BoundaryPoint> masing_boundary(const SweepSpec& spec) {
  spec.validate();
  std::vector<BoundaryPoint> out;
  for (double q : axis_values(spec.q_axis)) {
    BoundaryPoint bp;
    bp.q = q;
    const auto win = masing_window(spec.base.with_q(q));
    if (win) {
      bp.w_min = win->w_min;
      bp.w_max = win->w_max;
    } else {
      bp.w_min = quiet_nan;
      bp.w_max = quiet_nan;
    }
    out.push_back(bp);
  }
  return out;
}

void write_csv(const SweepResult& result, std::ostream& os) {
  os << "q,w";
  for (const auto& c : result.columns) os << ',' << c;
  os << ",masing,diag\n";
  for (const auto& cell : result.cells) {
    os << fmt(cell.q) << ',' << fmt(cell.w);
    for (double v : cell.values) os << ',' << fmt(v);
    os << ',' << (cell.masing ? 1 : 0) << ',' << cell.diag << '\n';
  }
}

void write_json(const SweepResult& result, std::ostream& os) {
  nlohmann::json meta;
  meta["tool"] = "srmaser";
  meta["version"] = tool_version;
  const SystemParams& p = result.resolved_base;
  meta["params"] = {{"n_spins", p.n_spins},
                    {"coupling_g", p.coupling_g},
                    {"cavity_q", p.cavity_q},
                    {"pump_rate_w", p.pump_rate_w},
                    {"t2_star", p.t2_star},
                    {"gamma_eg", p.gamma_eg},
                    {"omega_s", p.omega_s},
                    {"omega_c", p.omega_c},
                    {"temperature", p.temperature},
                    {"cavity_length", p.cavity_length}};
  meta["method"] = result.method == SweepMethod::meanfield ? "meanfield"
                   : result.method == SweepMethod::cumulant ? "cumulant"
                                                            : "both";
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& cell : result.cells) {
    nlohmann::json jc;
    jc["q"] = cell.q;
    jc["w"] = cell.w;
    jc["values"] = cell.values;
    jc["masing"] = cell.masing;
    jc["diag"] = cell.diag;
    cells.push_back(std::move(jc));
  }
  nlohmann::json boundary = nlohmann::json::array();
  for (const auto& bp : result.boundary)
    boundary.push_back({{"q", bp.q}, {"w_min", bp.w_min}, {"w_max", bp.w_max}});
  nlohmann::json ridge = nlohmann::json::array();
  for (const auto& rp : result.ridge)
    ridge.push_back({{"q", rp.q}, {"w_star", rp.w_star}, {"t_coh", rp.t_coh}});

  nlohmann::json root;
  root["metadata"] = std::move(meta);
  root["columns"] = result.columns;
  root["cells"] = std::move(cells);
  root["boundary"] = std::move(boundary);
  root["ridge"] = std::move(ridge);
  os << root.dump(2) << '\n';
}

void write_boundary_csv(const std::vector<BoundaryPoint>& boundary,
                        std::ostream& os) {
  os << "q,w_min,w_max\n";
  for (const auto& bp : boundary)
    os << fmt(bp.q) << ',' << fmt(bp.w_min) << ',' << fmt(bp.w_max) << '\n';
}

void write_ridge_csv(const std::vector<RidgePoint>& ridge, std::ostream& os) {
  os << "q,w_star,t_coh\n";
  for (const auto& rp : ridge)
    os << fmt(rp.q) << ',' << fmt(rp.w_star) << ',' << fmt(rp.t_coh) << '\n';
}

std::string observable_name(Observable obs) {
  switch (obs) {
    case Observable::s_z:
      return "s_z";
    case Observable::n_c:
      return "n_c";
    case Observable::spsm:
      return "spsm";
    case Observable::t_coh:
      return "t_coh";
    case Observable::db:
      return "db";
    case Observable::dx:
      return "dx";
  }
  return "unknown";
}

std::optional<Observable> observable_from_name(const std::string& name) {
  for (Observable ob : all_observables)
    if (observable_name(ob) == name) return ob;
  return std::nullopt;
}

}  // namespace srmaser
