// sweep.hpp - (Q, w) design-plane evaluation of the full pipeline

#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "srmaser/params.hpp"

namespace srmaser {

inline constexpr const char* tool_version = "0.1.0";

enum class SweepMethod { meanfield, cumulant, both };

enum class Observable { s_z, n_c, spsm, t_coh, db, dx };

// log-spaced axis, min and max inclusive
struct AxisSpec {
  double min = 0.0;
  double max = 0.0;
  int points = 2;
};

struct SweepSpec {
  SystemParams base;
  AxisSpec q_axis{1e3, 1e8, 121};
  AxisSpec w_axis{1e2, 1e8, 121};
  std::vector<Observable> observables;  // empty selects all, in enum order
  SweepMethod method = SweepMethod::meanfield;
  int jobs = 1;

  void validate() const;  // throws std::invalid_argument
};

struct SweepCell {
  double q = 0.0;
  double w = 0.0;
  std::vector<double> values;  // one per column; NaN marks undefined
  bool masing = false;
  std::string diag;
};

// one row per Q column; NaN w_min/w_max marks a gap (no masing window)
struct BoundaryPoint {
  double q = 0.0;
  double w_min = 0.0;
  double w_max = 0.0;
};

// per-column pump rate maximizing t_coh over the raster
struct RidgePoint {
  double q = 0.0;
  double w_star = 0.0;
  double t_coh = 0.0;  // NaN when no masing cell in the column
};

struct SweepResult {
  std::vector<std::string> columns;  // value column names
  std::vector<SweepCell> cells;      // row-major: q outer, w inner
  std::vector<BoundaryPoint> boundary;
  std::vector<RidgePoint> ridge;
  SystemParams resolved_base;
  SweepMethod method = SweepMethod::meanfield;
};

// Evaluates every cell (concurrently when jobs > 1); per-cell failures
// land in the diag field and never abort the sweep. Output ordering is
// fixed row-major regardless of the degree of parallelism.
SweepResult run_sweep(const SweepSpec& spec);

// The threshold-equality polyline over the spec's Q axis.
std::vector<BoundaryPoint> masing_boundary(const SweepSpec& spec);

std::vector<double> axis_values(const AxisSpec& axis);

// serialization; NaN renders as "nan" in CSV and null in JSON
void write_csv(const SweepResult& result, std::ostream& os);
void write_json(const SweepResult& result, std::ostream& os);
void write_boundary_csv(const std::vector<BoundaryPoint>& boundary,
                        std::ostream& os);
void write_ridge_csv(const std::vector<RidgePoint>& ridge, std::ostream& os);

std::string observable_name(Observable obs);
std::optional<Observable> observable_from_name(const std::string& name);

}  // namespace srmaser
