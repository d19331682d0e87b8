// Command-line driver for single runs, experiment sweeps and the y0 solver.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qgsqpo/harness.hpp"
#include "qgsqpo/qmath.hpp"
#include "qgsqpo/report.hpp"

namespace {

using namespace qgsqpo;

// Run count used by the full-scale failure and diversity grids.
constexpr std::size_t kFullScaleRuns = 10000;

struct Flags {
  std::string config;
  std::string objective;
  std::size_t dim = 0;
  std::size_t particles = 0;
  std::vector<double> q;
  std::vector<double> amplitude;
  std::size_t runs = 0;
  double p0 = 0, g = 0, omega = 0, epsilon = 0;
  std::size_t max_iter = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::size_t threads = 0;
  bool full_scale = false;
};

// Registers the shared experiment flags on a subcommand.
void add_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--config", f.config, "JSON file with ExperimentSpec fields")->check(CLI::ExistingFile);
  cmd.add_option("--objective", f.objective, "griewank, rastrigin, ackley or sphere");
  cmd.add_option("--dim", f.dim, "search-space dimension")->check(CLI::PositiveNumber);
  cmd.add_option("--particles", f.particles, "swarm size")->check(CLI::PositiveNumber);
  cmd.add_option("--q", f.q, "entropic index, repeatable");
  cmd.add_option("--amplitude", f.amplitude, "beta schedule amplitude A, repeatable");
  cmd.add_option("--runs", f.runs, "runs per (q, A) cell")->check(CLI::PositiveNumber);
  cmd.add_option("--p0", f.p0, "transition probability floor");
  cmd.add_option("--g", f.g, "width gain");
  cmd.add_option("--omega", f.omega, "beta schedule frequency");
  cmd.add_option("--epsilon", f.epsilon, "success threshold on the final best score");
  cmd.add_option("--max-iter", f.max_iter, "iteration cap")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", f.seed, "base seed");
  cmd.add_option("--out", f.out, "output base path; files are <out>_runs.csv etc.");
  cmd.add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
  cmd.add_flag("--full-scale", f.full_scale, "use 10000 runs per cell unless --runs is given");
}

ExperimentSpec build_spec(const CLI::App& cmd, const Flags& f) {
  ExperimentSpec s;
  if (!f.config.empty()) s = load_spec_file(f.config);
  const auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (f.full_scale) s.num_runs = kFullScaleRuns;
  if (given("--objective")) s.objective_name = f.objective;
  if (given("--dim")) s.dimension = f.dim;
  if (given("--particles")) s.num_particles = f.particles;
  if (given("--q")) s.q_values = f.q;
  if (given("--amplitude")) s.a_values = f.amplitude;
  if (given("--runs")) s.num_runs = f.runs;
  if (given("--p0")) s.p0 = f.p0;
  if (given("--g")) s.g = f.g;
  if (given("--omega")) s.omega = f.omega;
  if (given("--epsilon")) s.success_epsilon = f.epsilon;
  if (given("--max-iter")) s.max_iterations = f.max_iter;
  if (given("--seed")) s.base_seed = f.seed;
  if (given("--out")) s.output_path = f.out;
  if (given("--threads")) s.threads = f.threads;
  s.validate();
  return s;
}

void print_summary(const ExperimentResult& r, const char* experiment) {
  if (r.spec.output_path.empty()) {
    write_summary_csv(std::cout, r, experiment);
  } else {
    std::cout << "wrote " << r.spec.output_path << "_runs.csv, _summary.csv, _summary.json\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-behaved particle swarm optimizer with q-Gaussian sampling"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Flags f;
  auto* run_cmd = app.add_subcommand("run", "single run; prints the run record as JSON");
  auto* failure_cmd = app.add_subcommand("failure-sweep", "failure rate per (q, A) cell");
  auto* a_cmd = app.add_subcommand("a-sweep", "mean best score per (q, A) cell");
  auto* div_cmd = app.add_subcommand("diversity-trace", "mean diversity per iteration and q");
  auto* cpu_cmd = app.add_subcommand("cpu-bench", "wall time normalized by q = 1");
  for (auto* cmd : {run_cmd, failure_cmd, a_cmd, div_cmd, cpu_cmd}) add_flags(*cmd, f);

  auto* y0_cmd = app.add_subcommand("solve-y0", "y0 for the given P0 and q values");
  double y0_p0 = 0.75;
  std::vector<double> y0_q{1.0};
  y0_cmd->add_option("--p0", y0_p0, "transition probability floor");
  y0_cmd->add_option("--q", y0_q, "entropic index, repeatable");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*y0_cmd) {
      for (double q : y0_q) {
        std::cout << "q=" << format_double(q) << " p0=" << format_double(y0_p0)
                  << " y0=" << format_significant(solve_y0_q(y0_p0, q), 12) << '\n';
      }
      return 0;
    }

    CLI::App* cmd = app.get_subcommands().front();
    ExperimentSpec spec = build_spec(*cmd, f);

    if (*run_cmd) {
      spec.num_runs = 1;
      spec.q_values.resize(1);
      spec.a_values.resize(1);
      const auto records = execute_runs(spec);
      std::cout << run_record_json(records.front()) << '\n';
    } else if (*failure_cmd) {
      print_summary(run_failure_experiment(spec), "failure-sweep");
    } else if (*a_cmd) {
      print_summary(run_a_sweep(spec), "a-sweep");
    } else if (*div_cmd) {
      const auto r = run_diversity_trace(spec);
      if (spec.output_path.empty()) {
        write_diversity_csv(std::cout, r);
      } else {
        std::cout << "wrote " << spec.output_path << "_diversity.csv\n";
      }
    } else if (*cpu_cmd) {
      const auto r = run_cpu_bench(spec);
      if (spec.output_path.empty()) {
        write_cpu_csv(std::cout, r);
      } else {
        std::cout << "wrote " << spec.output_path << "_cpu.csv\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
