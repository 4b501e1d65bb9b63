#include "pcgpen/stats.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

namespace pcgpen {

double nearest_rank_quantile(std::vector<double> values, double fraction) {
  if (values.empty()) throw std::invalid_argument("nearest_rank_quantile: empty input");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(fraction * n));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

FiveNumberSummary five_number_summary(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("five_number_summary: empty input");
  std::sort(values.begin(), values.end());
  FiveNumberSummary s;
  s.count = values.size();
  s.min = values.front();
  s.max = values.back();
  s.q1 = nearest_rank_quantile(values, 0.25);
  s.median = nearest_rank_quantile(values, 0.5);
  s.q3 = nearest_rank_quantile(values, 0.75);
  return s;
}

TraceColumn parse_trace_column(const std::string& name) {
  if (name == "obj") return TraceColumn::Obj;
  if (name == "feas2") return TraceColumn::Feas2;
  if (name == "dx") return TraceColumn::Dx;
  if (name == "dy") return TraceColumn::Dy;
  if (name == "gap_r") return TraceColumn::GapR;
  if (name == "dual") return TraceColumn::Dual;
  if (name == "dist_ref") return TraceColumn::DistRef;
  throw std::invalid_argument("unknown trace column: " + name);
}

namespace {

std::optional<double> column_value(const TraceRecord& r, TraceColumn c) {
  switch (c) {
    case TraceColumn::Obj:
      return r.obj;
    case TraceColumn::Feas2:
      return r.feas2;
    case TraceColumn::Dx:
      return r.dx;
    case TraceColumn::Dy:
      return r.dy;
    case TraceColumn::GapR:
      return r.gap_r;
    case TraceColumn::Dual:
      return r.dual;
    case TraceColumn::DistRef:
      return r.dist_ref;
  }
  return std::nullopt;
}

}  // namespace

double slope_fit(const IterTrace& trace, TraceColumn column, long t_lo, long t_hi) {
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t skipped = 0;
  for (const TraceRecord& r : trace) {
    if (r.t < t_lo || r.t > t_hi) continue;
    const std::optional<double> v = column_value(r, column);
    if (!v || !(*v > 0.0) || !std::isfinite(*v)) {
      ++skipped;
      continue;
    }
    xs.push_back(std::log(static_cast<double>(r.t) + 1.0));
    ys.push_back(std::log(*v));
  }
  if (skipped > 0) {
    std::clog << "slope_fit: skipped " << skipped << " missing or nonpositive values\n";
  }
  if (xs.size() < 10) throw std::invalid_argument("slope_fit: fewer than 10 usable points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope_fit: degenerate abscissae");
  return sxy / sxx;
}

}  // namespace pcgpen
