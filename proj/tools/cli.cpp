#include "cli.hpp"

#include "asl1/baselines.hpp"
#include "asl1/data_io.hpp"
#include "asl1/kernels.hpp"
#include "asl1/objectives.hpp"
#include "asl1/solver.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace asl1::cli {

namespace {

struct InstanceOptions {
  std::string problem = "lasso";
  std::string input;
  std::size_t synthetic = 0;
  std::size_t samples = 500;
  std::string tau = "auto";
  std::optional<double> tau_fraction;
};

struct RunOptions {
  double tol = 1e-6;
  std::size_t max_iter = 100000;
  double time_limit = 3600.0;
  std::string simd;
};

struct Instance {
  std::string name;
  std::shared_ptr<ProblemInstance> problem;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_instance_flags(CLI::App& cmd, InstanceOptions& o) {
  cmd.add_option("--problem", o.problem, "Objective family")
      ->check(CLI::IsMember({"lasso", "logistic"}));
  cmd.add_option("--input", o.input,
                 "LIBSVM file (logistic: +-1 labels; lasso: real targets)");
  cmd.add_option("--synthetic", o.synthetic,
                 "Generate a synthetic instance with this many variables");
  cmd.add_option("--samples", o.samples, "Samples for synthetic logistic data");
  cmd.add_option("--tau", o.tau,
                 "l1 radius: a value, or 'auto' (lasso recipe / 0.01 n for logistic)");
  cmd.add_option("--tau-fraction", o.tau_fraction, "l1 radius as a fraction of n")
      ->check(CLI::PositiveNumber);
}

void add_run_flags(CLI::App& cmd, RunOptions& o) {
  cmd.add_option("--tol", o.tol, "Projected-gradient residual tolerance")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--max-iter", o.max_iter, "Iteration limit");
  cmd.add_option("--time-limit", o.time_limit, "Time limit in seconds")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--simd", o.simd, "Force the kernel set (scalar or avx2)")
      ->check(CLI::IsMember({"scalar", "avx2"}));
}

double parse_tau(const InstanceOptions& o, std::size_t n,
                 std::optional<double> recipe_tau) {
  if (o.tau_fraction) return *o.tau_fraction * static_cast<double>(n);
  if (o.tau == "auto") {
    if (o.problem == "logistic") return 0.01 * static_cast<double>(n);
    if (recipe_tau) return *recipe_tau;
    throw UsageError("--tau auto needs a synthetic lasso instance; pass --tau or --tau-fraction");
  }
  double tau = 0.0;
  std::istringstream in(o.tau);
  if (!(in >> tau) || !in.eof() || !(tau > 0.0))
    throw UsageError("--tau must be a positive number or 'auto'");
  return tau;
}

Instance build_instance(const InstanceOptions& o, std::uint64_t seed) {
  if (o.input.empty() == (o.synthetic == 0))
    throw UsageError("exactly one of --input or --synthetic is required");

  Instance inst;
  std::shared_ptr<const ObjectiveOracle> objective;
  std::optional<double> recipe_tau;
  if (o.problem == "lasso") {
    if (o.synthetic) {
      LassoInstance gen = generate_lasso(o.synthetic, seed);
      recipe_tau = gen.tau;
      objective = std::make_shared<LassoObjective>(std::move(gen.problem));
      inst.name = "lasso_n" + std::to_string(o.synthetic) + "_s" + std::to_string(seed);
    } else {
      objective = std::make_shared<LassoObjective>(read_libsvm_regression(o.input));
      inst.name = std::filesystem::path(o.input).stem().string();
    }
  } else {
    if (o.synthetic) {
      objective = std::make_shared<LogisticObjective>(
          generate_logistic(o.samples, o.synthetic, seed));
      inst.name = "logistic_n" + std::to_string(o.synthetic) + "_s" + std::to_string(seed);
    } else {
      objective = std::make_shared<LogisticObjective>(read_libsvm(o.input));
      inst.name = std::filesystem::path(o.input).stem().string();
    }
  }
  const double tau = parse_tau(o, objective->dimension(), recipe_tau);
  inst.problem = std::make_shared<ProblemInstance>(objective, tau);
  return inst;
}

SolverConfig make_config(const RunOptions& o) {
  SolverConfig c;
  c.tolerance = o.tol;
  c.max_iterations = o.max_iter;
  c.time_limit_s = o.time_limit;
  return c;
}

void apply_simd(const RunOptions& o) {
  if (o.simd.empty()) return;
  kernels::Isa isa{};
  kernels::parse_isa(o.simd, isa);
  if (!kernels::select(isa)) throw UsageError("kernel set '" + o.simd + "' is not available on this CPU");
}

SolverResult run_solver(const std::string& solver, const ProblemInstance& p,
                        const SolverConfig& config) {
  const Vector origin(p.dimension(), 0.0);
  if (solver == "asl1") return solve_asl1(p, origin, config);
  if (solver == "nmspg") return solve_nmspg(p, origin, config);
  return solve_afw(p, AtomWeights::origin(p.dimension()), config).result;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

bool is_limit(SolverStatus s) {
  return s == SolverStatus::IterationLimit || s == SolverStatus::TimeLimit;
}

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dash = part.find('-');
    try {
      if (dash != std::string::npos && dash > 0) {
        const auto lo = std::stoull(part.substr(0, dash));
        const auto hi = std::stoull(part.substr(dash + 1));
        if (hi < lo) throw UsageError("bad seed range '" + part + "'");
        for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
      } else {
        seeds.push_back(std::stoull(part));
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad seed list '" + spec + "'");
    }
  }
  if (seeds.empty()) throw UsageError("empty seed list");
  return seeds;
}

int cmd_solve(const InstanceOptions& io, const RunOptions& ro,
              const std::string& solver, std::uint64_t seed,
              const std::string& trace_path, std::ostream& out) {
  apply_simd(ro);
  const Instance inst = build_instance(io, seed);
  const SolverResult r = run_solver(solver, *inst.problem, make_config(ro));
  if (!trace_path.empty()) write_trace(r.trace, trace_path);

  out << "instance\t" << inst.name << '\n'
      << "solver\t" << solver << '\n'
      << "n\t" << inst.problem->dimension() << '\n'
      << "tau\t" << fmt("%.10g", inst.problem->radius()) << '\n'
      << "status\t" << to_string(r.status) << '\n'
      << "objective\t" << fmt("%.10g", r.objective) << '\n'
      << "residual\t" << fmt("%.3e", r.residual) << '\n'
      << "zeros_pct\t" << fmt("%.2f", 100.0 * r.sparsity) << '\n'
      << "iterations\t" << r.iterations << '\n'
      << "time_s\t" << fmt("%.3f", r.elapsed_s) << '\n';
  return is_limit(r.status) ? kExitLimit : kExitOk;
}

int cmd_compare(const InstanceOptions& io, const RunOptions& ro,
                std::vector<std::string> solvers, const std::string& seed_spec,
                const std::string& trace_dir, std::ostream& out) {
  apply_simd(ro);
  // The reference run always comes first: it defines f*.
  std::erase(solvers, "asl1");
  solvers.insert(solvers.begin(), "asl1");
  const std::vector<std::uint64_t> seeds =
      io.synthetic ? parse_seeds(seed_spec) : std::vector<std::uint64_t>{0};
  if (!trace_dir.empty()) std::filesystem::create_directories(trace_dir);

  out << "instance\tsolver\tobj\ttime_s\tzeros_pct\titerations\tstatus\n";
  bool any_limit = false;
  for (std::uint64_t seed : seeds) {
    const Instance inst = build_instance(io, seed);
    SolverConfig config = make_config(ro);
    double f_star = 0.0;
    for (const std::string& solver : solvers) {
      if (solver != "asl1") config.target_objective = relative_target(f_star);
      const SolverResult r = run_solver(solver, *inst.problem, config);
      if (solver == "asl1") f_star = r.objective;
      any_limit = any_limit || is_limit(r.status);
      if (!trace_dir.empty())
        write_trace(r.trace, std::filesystem::path(trace_dir) / (inst.name + "_" + solver + ".csv"));
      out << inst.name << '\t' << solver << '\t' << fmt("%.6f", r.objective) << '\t'
          << fmt("%.3f", r.elapsed_s) << '\t' << fmt("%.2f", 100.0 * r.sparsity) << '\t'
          << r.iterations << '\t' << to_string(r.status) << '\n';
    }
  }
  return any_limit ? kExitLimit : kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Active-set and baseline solvers for l1-ball constrained problems"};
  app.require_subcommand(1);

  InstanceOptions solve_io, cmp_io;
  RunOptions solve_ro, cmp_ro;
  std::string solver = "asl1";
  std::uint64_t seed = 1;
  std::string trace_path;
  std::vector<std::string> solvers{"asl1", "nmspg", "afw"};
  std::string seed_spec = "1";
  std::string trace_dir;

  CLI::App* solve = app.add_subcommand("solve", "Solve one instance");
  solve->add_option("--solver", solver, "Solver")->check(CLI::IsMember({"asl1", "nmspg", "afw"}));
  solve->add_option("--seed", seed, "Seed for synthetic instances");
  solve->add_option("--trace", trace_path, "Write the per-iteration trace (CSV)");
  add_instance_flags(*solve, solve_io);
  add_run_flags(*solve, solve_ro);

  CLI::App* compare = app.add_subcommand(
      "compare", "Run the reference solver, then each baseline until it matches its objective");
  compare->add_option("--solvers", solvers, "Solvers to run")
      ->delimiter(',')
      ->check(CLI::IsMember({"asl1", "nmspg", "afw"}));
  compare->add_option("--seeds", seed_spec, "Seeds for synthetic instances, e.g. 1-10 or 1,4,7");
  compare->add_option("--trace-dir", trace_dir, "Directory for per-run traces");
  add_instance_flags(*compare, cmp_io);
  add_run_flags(*compare, cmp_ro);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve) return cmd_solve(solve_io, solve_ro, solver, seed, trace_path, out);
    return cmd_compare(cmp_io, cmp_ro, solvers, seed_spec, trace_dir, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace asl1::cli
