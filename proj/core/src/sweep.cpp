#include "pcgpen/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pcgpen/cs_run.hpp"
#include "pcgpen/csgen.hpp"
#include "pcgpen/trace_csv.hpp"

namespace pcgpen {

namespace {

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::uint64_t count) {
  std::vector<std::uint64_t> s(count);
  for (std::uint64_t i = 0; i < count; ++i) s[i] = first + i;
  return s;
}

Metadata plan_metadata(const SweepPlan& plan) {
  Metadata m;
  m.emplace_back("delta", format_double(plan.delta));
  m.emplace_back("p", format_double(plan.p));
  m.emplace_back("H0", format_double(plan.H0));
  m.emplace_back("gap_tol", format_double(plan.gap_tol));
  m.emplace_back("feas_tol_rel", format_double(plan.feas_tol_rel));
  m.emplace_back("step_tol", format_double(plan.step_tol));
  m.emplace_back("max_iters", std::to_string(plan.max_iters));
  m.emplace_back("quartiles", "nearest-rank");
  return m;
}

}  // namespace

SweepPlan SweepPlan::full_default() {
  SweepPlan p;
  for (std::size_t i : {4, 8, 12}) p.sizes.push_back({720 * i, 2560 * i, 80 * i});
  p.seeds = seed_range(0, 20);
  p.beta0_grid = {0.5, 1.0, 10.0, 20.0, 50.0};
  return p;
}

SweepPlan SweepPlan::scaled_default() {
  SweepPlan p;
  p.sizes = {{180, 640, 20}};
  p.seeds = seed_range(0, 20);
  p.beta0_grid = {0.5, 1.0, 10.0, 20.0, 50.0};
  return p;
}

namespace {

SweepPlan plan_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("sweep plan: expected a JSON object");
  SweepPlan plan = SweepPlan::scaled_default();
  if (j.contains("sizes")) {
    plan.sizes.clear();
    for (const auto& s : j.at("sizes")) {
      if (!s.is_array() || s.size() != 3) throw std::invalid_argument("sweep plan: sizes are [m,n,k]");
      plan.sizes.push_back({s[0].get<std::size_t>(), s[1].get<std::size_t>(), s[2].get<std::size_t>()});
    }
  }
  if (j.contains("seeds")) {
    const auto& s = j.at("seeds");
    if (s.is_object()) {
      plan.seeds = seed_range(s.value("first", std::uint64_t{0}), s.at("count").get<std::uint64_t>());
    } else {
      plan.seeds = s.get<std::vector<std::uint64_t>>();
    }
  }
  if (j.contains("beta0")) plan.beta0_grid = j.at("beta0").get<std::vector<double>>();
  plan.delta = j.value("delta", plan.delta);
  plan.p = j.value("p", plan.p);
  plan.H0 = j.value("h0", plan.H0);
  plan.gap_tol = j.value("gap_tol", plan.gap_tol);
  plan.feas_tol_rel = j.value("feas_tol_rel", plan.feas_tol_rel);
  plan.step_tol = j.value("step_tol", plan.step_tol);
  plan.max_iters = j.value("max_iters", plan.max_iters);
  plan.threads = j.value("threads", plan.threads);
  return plan;
}

}  // namespace

SweepPlan parse_sweep_plan(const std::string& json_text) {
  try {
    return plan_from_json(nlohmann::json::parse(json_text));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("sweep plan: ") + e.what());
  }
}

SweepPlan load_sweep_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sweep plan " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sweep_plan(ss.str());
}

SweepResult run_sweep(const SweepPlan& plan) {
  SweepResult res;
  if (plan.beta0_grid.empty()) return res;

  struct Task {
    ProblemSize size;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const ProblemSize& s : plan.sizes)
    for (std::uint64_t seed : plan.seeds) tasks.push_back({s, seed});

  const std::size_t nb = plan.beta0_grid.size();
  res.runs.resize(tasks.size() * nb);

  // Each task owns the rows [task * nb, (task + 1) * nb).
  auto work = [&](std::size_t ti) {
    const Task& task = tasks[ti];
    auto fill_failure = [&](std::size_t bi, const std::string& msg) {
      SweepRunRow& row = res.runs[ti * nb + bi];
      row.size = task.size;
      row.seed = task.seed;
      row.beta0 = plan.beta0_grid[bi];
      row.failed = true;
      row.stop_reason = msg;
    };
    std::optional<CsProblem> prob;
    try {
      prob.emplace(reformulate(generate_instance(task.size.m, task.size.n, task.size.k, plan.p, task.seed)));
    } catch (const std::exception& e) {
      for (std::size_t bi = 0; bi < nb; ++bi) fill_failure(bi, std::string("failed: ") + e.what());
      return;
    }
    for (std::size_t bi = 0; bi < nb; ++bi) {
      SolverConfig cfg = cs_default_config(plan.beta0_grid[bi]);
      cfg.delta = plan.delta;
      cfg.H0 = plan.H0;
      cfg.gap_tol = plan.gap_tol;
      cfg.feas_tol_rel = plan.feas_tol_rel;
      cfg.step_tol = plan.step_tol;
      cfg.max_iters = plan.max_iters;
      cfg.record_every = std::max<long>(1, plan.max_iters);
      const auto start = std::chrono::steady_clock::now();
      try {
        const CsRunResult r = solve_cs(*prob, cfg);
        SweepRunRow& row = res.runs[ti * nb + bi];
        row.size = task.size;
        row.seed = task.seed;
        row.beta0 = cfg.beta0;
        row.stop_reason = to_string(r.run.stop_reason);
        row.iterations = r.iterations;
        row.gap_r = r.terminal_gap_r;
        row.feas_violation = r.feas_violation;
        row.sigma = prob->instance.sigma;
        row.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      } catch (const std::exception& e) {
        fill_failure(bi, std::string("failed: ") + e.what());
      }
    }
  };

  unsigned threads = plan.threads != 0 ? plan.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) work(i);
      });
    }
  }
  res.summary = summarize_runs(res.runs, plan.beta0_grid);
  return res;
}

std::vector<SweepSummaryRow> summarize_runs(const std::vector<SweepRunRow>& runs,
                                            const std::vector<double>& beta0_grid) {
  std::vector<SweepSummaryRow> out;
  std::vector<ProblemSize> sizes;
  for (const SweepRunRow& r : runs) {
    const bool seen = std::any_of(sizes.begin(), sizes.end(), [&](const ProblemSize& s) {
      return s.m == r.size.m && s.n == r.size.n && s.k == r.size.k;
    });
    if (!seen) sizes.push_back(r.size);
  }
  for (const ProblemSize& s : sizes) {
    for (double beta0 : beta0_grid) {
      std::vector<double> gaps;
      std::vector<double> feas;
      for (const SweepRunRow& r : runs) {
        if (r.failed || r.beta0 != beta0 || r.size.m != s.m || r.size.n != s.n || r.size.k != s.k) continue;
        gaps.push_back(r.gap_r);
        feas.push_back(r.feas_violation);
      }
      if (gaps.empty()) continue;
      out.push_back({s, beta0, "gap_r", five_number_summary(gaps)});
      out.push_back({s, beta0, "feas_violation", five_number_summary(feas)});
    }
  }
  return out;
}

void write_sweep_runs_csv(std::ostream& os, const SweepPlan& plan, const SweepResult& res,
                          bool include_timing) {
  write_metadata(os, plan_metadata(plan));
  os << "m,n,k,seed,beta0,stop_reason,iterations,gap_r,feas_violation,sigma";
  if (include_timing) os << ",wall_s";
  os << '\n';
  for (const SweepRunRow& r : res.runs) {
    std::string reason = r.stop_reason;
    std::replace(reason.begin(), reason.end(), ',', ';');
    os << r.size.m << ',' << r.size.n << ',' << r.size.k << ',' << r.seed << ','
       << format_double(r.beta0) << ',' << reason << ',' << r.iterations << ',';
    if (r.failed) {
      os << ",,";
    } else {
      os << format_double(r.gap_r) << ',' << format_double(r.feas_violation) << ','
         << format_double(r.sigma);
    }
    if (include_timing) os << ',' << format_double(r.wall_seconds);
    os << '\n';
  }
}

void write_sweep_summary_csv(std::ostream& os, const SweepPlan& plan, const SweepResult& res) {
  write_metadata(os, plan_metadata(plan));
  os << "m,n,k,beta0,metric,count,min,q1,median,q3,max\n";
  for (const SweepSummaryRow& r : res.summary) {
    os << r.size.m << ',' << r.size.n << ',' << r.size.k << ',' << format_double(r.beta0) << ','
       << r.metric << ',' << r.stats.count << ',' << format_double(r.stats.min) << ','
       << format_double(r.stats.q1) << ',' << format_double(r.stats.median) << ','
       << format_double(r.stats.q3) << ',' << format_double(r.stats.max) << '\n';
  }
}

}  // namespace pcgpen
