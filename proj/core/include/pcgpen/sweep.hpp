#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pcgpen/stats.hpp"

namespace pcgpen {

struct ProblemSize {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t k = 0;
};

struct SweepPlan {
  std::vector<ProblemSize> sizes;
  std::vector<std::uint64_t> seeds;
  std::vector<double> beta0_grid;
  double delta = 0.5;
  double p = 1.5;
  double H0 = 1e-4;
  double gap_tol = 0.05;
  double feas_tol_rel = 0.005;
  double step_tol = 1e-6;
  long max_iters = 10000;
  unsigned threads = 0;  // 0: hardware concurrency

  // Sizes (720i, 2560i, 80i) for i in {4, 8, 12}, seeds 0..19,
  // beta0 in {0.5, 1, 10, 20, 50}.
  static SweepPlan full_default();
  // (180, 640, 20), seeds 0..19, the same beta0 grid.
  static SweepPlan scaled_default();
};

// JSON object with optional keys: sizes ([[m,n,k],...]), seeds ([...] or
// {"first": s, "count": c}), beta0 ([...]), delta, p, h0, gap_tol,
// feas_tol_rel, step_tol, max_iters, threads. Missing keys keep the
// scaled_default() values.
SweepPlan parse_sweep_plan(const std::string& json_text);
SweepPlan load_sweep_plan(const std::string& path);

struct SweepRunRow {
  ProblemSize size;
  std::uint64_t seed = 0;
  double beta0 = 0.0;
  bool failed = false;
  std::string stop_reason;  // or the failure message
  long iterations = 0;
  double gap_r = 0.0;
  double feas_violation = 0.0;  // (||A x_out - b||_p - sigma)_+
  double sigma = 0.0;
  double wall_seconds = 0.0;
};

struct SweepSummaryRow {
  ProblemSize size;
  double beta0 = 0.0;
  std::string metric;  // "gap_r" or "feas_violation"
  FiveNumberSummary stats;
};

struct SweepResult {
  std::vector<SweepRunRow> runs;  // ordered by (size, seed, beta0)
  std::vector<SweepSummaryRow> summary;
};

SweepResult run_sweep(const SweepPlan& plan);

// Per-(size, beta0) quartiles of the successful runs.
std::vector<SweepSummaryRow> summarize_runs(const std::vector<SweepRunRow>& runs,
                                            const std::vector<double>& beta0_grid);

void write_sweep_runs_csv(std::ostream& os, const SweepPlan& plan, const SweepResult& res,
                          bool include_timing = true);
void write_sweep_summary_csv(std::ostream& os, const SweepPlan& plan, const SweepResult& res);

}  // namespace pcgpen
