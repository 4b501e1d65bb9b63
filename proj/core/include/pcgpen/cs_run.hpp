#pragma once

#include <optional>

#include "pcgpen/csgen.hpp"
#include "pcgpen/solver.hpp"

namespace pcgpen {

// Solver settings used for compressed-sensing runs: delta = 1/2, H0 = 1e-4,
// stop when gap_r <= 0.05 and ||Ax - b||_p - sigma <= 0.005 sigma, when both
// step norms are <= 1e-6, or after 10000 iterations.
SolverConfig cs_default_config(double beta0);

struct CsRunOptions {
  // Enables the gap-and-feasibility stop; the trace diagnostics are always filled.
  bool accuracy_criterion = true;
  // When set, traces record ||x^t - reference||_2 as dist_ref.
  std::optional<Vector> reference_x;
  std::function<bool(const SolverState&)> user_stop;
};

struct CsRunResult {
  RunResult run;
  // gap_r of the last executed step (x^{t+1} against lambda^t).
  double terminal_gap_r = 0.0;
  // (||A x_out - b||_p - sigma)_+
  double feas_violation = 0.0;
  long iterations = 0;
};

// (||Ax - b||_p - sigma)_+
double cs_feasibility_violation(const CsProblem& prob, ConstSpan x);

// Hooks that evaluate gap_r and the dual value from the step internals, and
// the accuracy criterion when `opts.accuracy_criterion` is set.
RunHooks cs_hooks(const CsProblem& prob, const SolverConfig& cfg, const CsRunOptions& opts);

// Runs from the origin.
CsRunResult solve_cs(const CsProblem& prob, const SolverConfig& cfg, const CsRunOptions& opts = {});

}  // namespace pcgpen
