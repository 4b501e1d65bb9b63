#pragma once

#include <vector>

#include "pcgpen/solver.hpp"

namespace pcgpen {

struct FiveNumberSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

// Nearest-rank quantile: the ceil(f * N)-th smallest value (rank >= 1).
double nearest_rank_quantile(std::vector<double> values, double fraction);

// Quartiles under the nearest-rank convention. Throws on empty input.
FiveNumberSummary five_number_summary(std::vector<double> values);

enum class TraceColumn { Obj, Feas2, Dx, Dy, GapR, Dual, DistRef };

TraceColumn parse_trace_column(const std::string& name);

// Least-squares slope of log(value) against log(t + 1) over records with
// t_lo <= t <= t_hi. Missing and nonpositive values are skipped with a
// warning on std::clog; fewer than 10 usable points throws.
double slope_fit(const IterTrace& trace, TraceColumn column, long t_lo, long t_hi);

}  // namespace pcgpen
