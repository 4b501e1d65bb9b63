#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcgpen/problem.hpp"
#include "pcgpen/vector_ops.hpp"

namespace pcgpen {

struct SolverConfig {
  double beta0 = 1.0;
  double delta = 0.5;
  double H0 = 1e-4;
  long max_iters = 10000;
  // Small-step criterion threshold; disabled when <= 0.
  double step_tol = 0.0;
  // Thresholds consumed by problem-supplied accuracy criteria.
  double gap_tol = 0.05;
  double feas_tol_rel = 0.005;
  long record_every = 1;

  // Throws std::invalid_argument unless beta0 > 0, 0 < delta < 1, H0 > 0.
  void validate() const;
};

struct Schedule {
  double alpha = 0.0;
  double beta = 0.0;
  double H = 0.0;
};

// alpha_t = 2/(t+2), beta_t = beta0 (t+1)^delta,
// H_0 = H0 and H_t = max{H0, 2 M_f/(mu+1)} t^(1-mu) for t >= 1.
Schedule schedules(long t, const SolverConfig& cfg, double mu, double holder_constant);

struct SolverState {
  long t = 0;
  Vector x;
  Vector y;
  double beta = 0.0;
  double H = 0.0;
  double lambda_A = 0.0;
  Vector residual;  // Ax + By - c at (x, y)
};

// Intermediate quantities of one iteration, exposed for diagnostics.
struct StepDetail {
  Schedule schedule;
  Vector residual;      // R^t
  Vector adj_residual;  // A^* R^t
  Vector ax_next;       // A x^{t+1}
  Vector lo_point;      // u^t
};

class SolverAbort : public std::runtime_error {
 public:
  SolverAbort(long t, const std::string& what)
      : std::runtime_error("solver aborted at t=" + std::to_string(t) + ": " + what), t_(t) {}
  long t() const { return t_; }

 private:
  long t_;
};

SolverState initial_state(const ProblemSpec& spec, const SolverConfig& cfg, Vector x0, Vector y0);

/// One iteration: a proximal-gradient step in x on the penalty function with
/// curvature H_t + lambda_A beta_t, then a conditional-gradient step in y with
/// stepsize alpha_t, then the schedule update. Throws SolverAbort on non-finite values.
SolverState step(const SolverState& state, const ProblemSpec& spec, const SolverConfig& cfg,
                 StepDetail* detail = nullptr);

bool terminate_small_steps(ConstSpan x_prev, ConstSpan y_prev, ConstSpan x_next,
                           ConstSpan y_next, double tol);

enum class StopReason { GapAndFeasibility, SmallSteps, IterationCap, User };
std::string to_string(StopReason r);

struct TraceRecord {
  long t = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double H = 0.0;
  double obj = 0.0;
  double feas2 = 0.0;  // ||Ax + By - c||_2
  std::optional<double> dx;
  std::optional<double> dy;
  std::optional<double> gap_r;
  std::optional<double> dual;
  std::optional<double> dist_ref;
};

using IterTrace = std::vector<TraceRecord>;

// What a diagnostics hook sees after step t produced state t+1.
struct StepEvent {
  const SolverState& prev;
  const SolverState& next;
  const StepDetail& detail;
  double dx;
  double dy;
};

struct StepDiagnostics {
  std::optional<double> gap_r;
  std::optional<double> dual;
  std::optional<double> dist_ref;
  bool accuracy_reached = false;
};

struct RunHooks {
  // Problem-specific measurements and the accuracy criterion.
  std::function<StepDiagnostics(const StepEvent&)> diagnose;
  std::function<bool(const SolverState&)> user_stop;
  // Called with every iterate, including the initial one.
  std::function<void(const SolverState&)> on_iterate;
};

struct RunResult {
  SolverState state;
  IterTrace trace;
  StopReason stop_reason = StopReason::IterationCap;
  // Recorded iterates that failed a block membership test.
  long domain_violations = 0;
};

RunResult run(const ProblemSpec& spec, const SolverConfig& cfg, Vector x0, Vector y0,
              const RunHooks& hooks = {});

}  // namespace pcgpen
