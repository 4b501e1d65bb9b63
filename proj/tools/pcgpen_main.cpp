// pcgpen: generate compressed-sensing instances, run the solver, sweep beta0
// grids, evaluate complexity bounds and run the acceptance checks.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pcgpen/bounds.hpp"
#include "pcgpen/criteria.hpp"
#include "pcgpen/cs_run.hpp"
#include "pcgpen/csgen.hpp"
#include "pcgpen/instance_io.hpp"
#include "pcgpen/sweep.hpp"
#include "pcgpen/trace_csv.hpp"

namespace {

using namespace pcgpen;

struct CommonFlags {
  double beta0 = 1.0;
  double delta = 0.5;
  double h0 = 1e-4;
  long max_iters = 10000;
  std::uint64_t seed = 0;
  long record_every = 1;
  std::string out;
};

void add_solver_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--beta0", f.beta0, "Initial penalty parameter")->capture_default_str();
  cmd->add_option("--delta", f.delta, "Penalty growth exponent")->capture_default_str();
  cmd->add_option("--h0", f.h0, "Initial proximal weight")->capture_default_str();
  cmd->add_option("--max-iters", f.max_iters, "Iteration cap")->capture_default_str();
  cmd->add_option("--record-every", f.record_every, "Trace stride")->capture_default_str();
}

// Writes to `path`, or stdout when it is empty or "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  fn(os);
}

// "1,2;3,4" -> rows {1,2},{3,4}
std::vector<Vector> parse_rows(const std::string& text) {
  std::vector<Vector> rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    Vector r;
    std::stringstream es(row);
    std::string e;
    while (std::getline(es, e, ',')) r.push_back(std::stod(e));
    if (!r.empty()) rows.push_back(std::move(r));
  }
  return rows;
}

CsInstance inline_instance(const std::string& matrix, const std::string& rhs, double sigma, double p) {
  const std::vector<Vector> rows = parse_rows(matrix);
  const std::vector<Vector> b = parse_rows(rhs);
  if (rows.empty() || b.size() != 1) throw std::invalid_argument("--matrix and --rhs must be non-empty");
  const std::size_t n = rows.front().size();
  Vector flat;
  for (const Vector& r : rows) {
    if (r.size() != n) throw std::invalid_argument("ragged --matrix");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  CsInstance inst{LinearMap::dense(rows.size(), n, flat), b.front(), sigma, p, Vector(n, 0.0), 0, 0, 0};
  if (inst.b.size() != inst.m()) throw std::invalid_argument("--rhs length differs from matrix rows");
  return inst;
}

SolverConfig config_from(const CommonFlags& f) {
  SolverConfig cfg = cs_default_config(f.beta0);
  cfg.delta = f.delta;
  cfg.H0 = f.h0;
  cfg.max_iters = f.max_iters;
  cfg.record_every = f.record_every;
  cfg.validate();
  return cfg;
}

Metadata instance_metadata(const CsInstance& inst) {
  return {{"m", std::to_string(inst.m())},
          {"n", std::to_string(inst.n())},
          {"k", std::to_string(inst.k)},
          {"p", format_double(inst.p)},
          {"sigma", format_double(inst.sigma)},
          {"seed", std::to_string(inst.seed)}};
}

Metadata config_metadata(const SolverConfig& cfg) {
  return {{"beta0", format_double(cfg.beta0)},
          {"delta", format_double(cfg.delta)},
          {"H0", format_double(cfg.H0)},
          {"max_iters", std::to_string(cfg.max_iters)},
          {"step_tol", format_double(cfg.step_tol)},
          {"gap_tol", format_double(cfg.gap_tol)},
          {"feas_tol_rel", format_double(cfg.feas_tol_rel)},
          {"record_every", std::to_string(cfg.record_every)}};
}

int cmd_gen(std::size_t m, std::size_t n, std::size_t k, double p, std::uint64_t seed, const std::string& out) {
  if (out.empty()) throw std::invalid_argument("gen needs --out");
  const CsInstance inst = generate_instance(m, n, k, p, seed);
  save_instance(out, inst);
  std::cerr << "wrote " << out << " (sigma=" << format_double(inst.sigma) << ", seed=" << inst.seed << ")\n";
  return 0;
}

int cmd_solve(const CommonFlags& f, const std::string& instance_path, const std::string& matrix,
              const std::string& rhs, double sigma, double p, bool no_stop, double step_tol) {
  CsInstance inst = instance_path.empty() ? inline_instance(matrix, rhs, sigma, p) : load_instance(instance_path);
  const CsProblem prob = reformulate(inst);
  SolverConfig cfg = config_from(f);
  cfg.step_tol = step_tol;
  CsRunOptions ro;
  ro.accuracy_criterion = !no_stop;
  const CsRunResult res = solve_cs(prob, cfg, ro);

  Metadata meta = instance_metadata(inst);
  for (auto& kv : config_metadata(cfg)) meta.push_back(kv);
  meta.emplace_back("stop_reason", to_string(res.run.stop_reason));
  meta.emplace_back("iterations", std::to_string(res.iterations));
  meta.emplace_back("terminal_gap_r", format_double(res.terminal_gap_r));
  meta.emplace_back("feas_violation", format_double(res.feas_violation));
  meta.emplace_back("domain_violations", std::to_string(res.run.domain_violations));
  with_output(f.out, [&](std::ostream& os) { write_trace_csv(os, res.run.trace, meta); });
  std::cerr << "stop_reason=" << to_string(res.run.stop_reason) << " iterations=" << res.iterations
            << " gap_r=" << format_double(res.terminal_gap_r)
            << " feas_violation=" << format_double(res.feas_violation) << '\n';
  return 0;
}

int cmd_sweep(const std::string& plan_path, bool full, unsigned threads, const std::string& out,
              const std::string& runs_out, bool timing) {
  SweepPlan plan = !plan_path.empty() ? load_sweep_plan(plan_path)
                                      : (full ? SweepPlan::full_default() : SweepPlan::scaled_default());
  if (threads > 0) plan.threads = threads;
  const SweepResult res = run_sweep(plan);
  with_output(out, [&](std::ostream& os) { write_sweep_summary_csv(os, plan, res); });
  if (!runs_out.empty()) {
    with_output(runs_out, [&](std::ostream& os) { write_sweep_runs_csv(os, plan, res, timing); });
  }
  return 0;
}

struct BoundFlags {
  std::string instance;
  std::optional<double> val;
  double mu = 1.0, nu = 1.0, mf = 0.0, mg = 0.0;
  double lambda_a = 0.0, lambda_b = 0.0, df = 0.0, dg = 0.0, d2 = 0.0, theta = 0.0;
  std::optional<double> multiplier;
  long t_max = 0;
};

int cmd_bounds(const CommonFlags& f, const BoundFlags& b) {
  SolverConfig cfg = config_from(f);
  BoundInputs in;
  if (!b.instance.empty()) {
    const CsProblem prob = reformulate(load_instance(b.instance));
    in = bound_inputs_for(prob.spec, cfg);
    in.theta = b.theta;
    in.theta_source = "--theta";
    if (b.val) {
      const SolverState s0 =
          initial_state(prob.spec, cfg, Vector(prob.instance.n(), 0.0), Vector(prob.instance.m(), 0.0));
      const SolverState s1 = step(s0, prob.spec, cfg, nullptr);
      in.theta = theta_from_first_iterate(prob.spec, s1.x, s1.y, cfg.beta0, *b.val);
      in.theta_source = "first iterate from the origin";
    }
  } else {
    in.beta0 = cfg.beta0;
    in.delta = cfg.delta;
    in.H0 = cfg.H0;
    in.mu = b.mu;
    in.nu = b.nu;
    in.M_f = b.mf;
    in.M_g = b.mg;
    in.lambda_A = b.lambda_a;
    in.lambda_B = b.lambda_b;
    in.D_f = b.df;
    in.D_g = b.dg;
    in.D2 = b.d2;
    in.theta = b.theta;
    in.theta_source = "--theta";
  }
  in.multiplier_norm = b.multiplier;
  const BoundReport rep = compute_constants(in);
  with_output(f.out, [&](std::ostream& os) {
    write_metadata(os, rep.to_metadata());
    if (b.t_max < 2) return;
    os << "t,tau" << (b.multiplier ? ",G" : "") << '\n';
    const long stride = std::max(1L, f.record_every);
    for (long t = 2; t <= b.t_max; t += stride) {
      os << t << ',' << format_double(rep.tau(t));
      if (b.multiplier) os << ',' << format_double(rep.G(t, *b.multiplier));
      os << '\n';
    }
  });
  return 0;
}

int cmd_verify(std::vector<std::string> ids, bool all, unsigned threads) {
  using acceptance::AcceptanceSuite;
  if (all) ids = AcceptanceSuite::ids();
  if (ids.empty()) ids = AcceptanceSuite::quick_ids();
  AcceptanceSuite suite({threads});
  int failures = 0;
  for (const std::string& id : ids) {
    const auto r = suite.run(id);
    std::cout << acceptance::format_result(r) << std::endl;
    if (!r.passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proximal conditional-gradient penalty solver"};
  app.require_subcommand(1);

  CommonFlags gen_f;
  std::size_t m = 180, n = 640, k = 20;
  double gen_p = 1.5;
  auto* gen = app.add_subcommand("gen", "Write a seeded compressed-sensing instance");
  gen->add_option("--m", m, "Measurements")->capture_default_str();
  gen->add_option("--n", n, "Signal length")->capture_default_str();
  gen->add_option("--k", k, "Sparsity")->capture_default_str();
  gen->add_option("--p", gen_p, "Noise norm exponent in (1, 2]")->capture_default_str();
  gen->add_option("--seed", gen_f.seed, "Instance seed")->capture_default_str();
  gen->add_option("--out", gen_f.out, "Instance file")->required();

  CommonFlags solve_f;
  std::string instance_path, matrix, rhs;
  double sigma = 0.0, solve_p = 2.0, step_tol = 1e-6;
  bool no_stop = false;
  auto* solve = app.add_subcommand("solve", "Solve an instance and write the iteration trace CSV");
  add_solver_flags(solve, solve_f);
  solve->add_option("--instance", instance_path, "Instance file from `gen`");
  solve->add_option("--matrix", matrix, "Inline matrix, rows separated by ';'");
  solve->add_option("--rhs", rhs, "Inline right-hand side, comma separated");
  solve->add_option("--sigma", sigma, "Inline noise radius");
  solve->add_option("--p", solve_p, "Inline noise norm exponent")->capture_default_str();
  solve->add_option("--step-tol", step_tol, "Small-step threshold, <= 0 disables")->capture_default_str();
  solve->add_flag("--no-stop", no_stop, "Disable the gap-and-feasibility stop");
  solve->add_option("--out", solve_f.out, "Trace CSV (default stdout)");

  std::string plan_path, sweep_out, runs_out;
  bool full = false, no_timing = false;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Run a beta0 sweep and write quartile summaries");
  sweep->add_option("--plan", plan_path, "JSON plan file (default: scaled plan)");
  sweep->add_flag("--full-sizes", full, "Use the full-size default plan");
  sweep->add_option("--threads", threads, "Worker threads, 0 = hardware");
  sweep->add_option("--out", sweep_out, "Summary CSV (default stdout)");
  sweep->add_option("--runs-out", runs_out, "Per-run CSV");
  sweep->add_flag("--no-timing", no_timing, "Omit the wall-time column from per-run rows");

  CommonFlags bounds_f;
  BoundFlags bf;
  double val_in = 0.0, mult_in = 0.0;
  auto* bounds = app.add_subcommand("bounds", "Evaluate the complexity-bound constants");
  add_solver_flags(bounds, bounds_f);
  bounds->add_option("--instance", bf.instance, "Take problem constants from an instance file");
  auto* val_opt = bounds->add_option("--val", val_in, "Optimal value, sets theta from the first iterate");
  bounds->add_option("--mu", bf.mu)->capture_default_str();
  bounds->add_option("--nu", bf.nu)->capture_default_str();
  bounds->add_option("--mf", bf.mf, "Holder constant of grad f1")->capture_default_str();
  bounds->add_option("--mg", bf.mg, "Holder constant of grad g1")->capture_default_str();
  bounds->add_option("--lambda-a", bf.lambda_a)->capture_default_str();
  bounds->add_option("--lambda-b", bf.lambda_b)->capture_default_str();
  bounds->add_option("--df", bf.df, "Diameter of dom f")->capture_default_str();
  bounds->add_option("--dg", bf.dg, "Diameter of dom g")->capture_default_str();
  bounds->add_option("--d2", bf.d2)->capture_default_str();
  bounds->add_option("--theta", bf.theta)->capture_default_str();
  auto* mult_opt = bounds->add_option("--multiplier-norm", mult_in, "Norm of a Lagrange multiplier");
  bounds->add_option("--t-max", bf.t_max, "Also tabulate tau (and G) for t = 2..t-max");
  bounds->add_option("--out", bounds_f.out, "Output file (default stdout)");

  std::vector<std::string> ids;
  bool all = false;
  unsigned verify_threads = 0;
  auto* verify = app.add_subcommand("verify", "Run acceptance checks A1..A9 (default: the oracle suites)");
  verify->add_option("ids", ids, "Criteria to run, e.g. A1 A5");
  verify->add_flag("--all", all, "Run every criterion");
  verify->add_option("--threads", verify_threads, "Sweep worker threads for A6");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(m, n, k, gen_p, gen_f.seed, gen_f.out);
    if (*solve) {
      if (instance_path.empty() && matrix.empty()) throw std::invalid_argument("solve needs --instance or --matrix");
      return cmd_solve(solve_f, instance_path, matrix, rhs, sigma, solve_p, no_stop, step_tol);
    }
    if (*sweep) return cmd_sweep(plan_path, full, threads, sweep_out, runs_out, !no_timing);
    if (*bounds) {
      if (*val_opt) bf.val = val_in;
      if (*mult_opt) bf.multiplier = mult_in;
      return cmd_bounds(bounds_f, bf);
    }
    if (*verify) return cmd_verify(ids, all, verify_threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
