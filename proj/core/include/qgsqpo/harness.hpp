#pragma once

// Experiment orchestration: grids of seeded runs over (q, A) cells and the
// aggregate statistics reported per cell.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qgsqpo/swarm.hpp"

namespace qgsqpo {

struct ExperimentSpec {
  std::string objective_name = "rastrigin";
  std::size_t dimension = 2;
  std::size_t num_particles = 20;
  std::vector<double> q_values{1.0};
  std::vector<double> a_values{0.2};
  std::size_t num_runs = 200;
  double p0 = 0.75;
  double g = 0.5;
  double omega = 0.1;
  double diversity_tol = 1e-5;
  std::size_t max_iterations = 5000;
  double w_cap = 1.71;
  double success_epsilon = 1e-4;
  std::uint64_t base_seed = 1;
  std::string output_path;  // base path; empty means in-memory only
  std::size_t threads = 1;

  void validate() const;

  /// Config of one run; the seed depends only on (base_seed, q_index, a_index, run).
  SwarmConfig swarm_config(std::size_t q_index, std::size_t a_index, std::size_t run) const;
};

struct RunRecord {
  std::size_t run_id = 0;
  double q = 1.0;
  double a = 0.0;
  std::size_t dimension = 0;
  std::size_t num_particles = 0;
  std::uint64_t seed = 0;
  std::size_t iterations_used = 0;
  double best_score = 0.0;
  bool success = false;
  Termination termination = Termination::cap;
  double wall_ms = 0.0;
  std::vector<double> diversity_trace;  // filled only by the diversity experiment
};

struct CellSummary {
  double q = 1.0;
  double a = 0.0;
  std::size_t runs = 0;
  std::size_t failures = 0;
  double failure_rate_pct = 0.0;
  double mean_iterations = 0.0;
  double mean_best_score = 0.0;
  double stderr_best_score = 0.0;  // sample std / sqrt(runs)
  double mean_wall_ms = 0.0;
  double mean_ms_per_iteration = 0.0;
  std::optional<double> cpu_ratio_vs_q1;            // mean_wall_ms / q = 1 value at same A
  std::optional<double> per_iteration_ratio_vs_q1;  // same, per iteration
};

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<RunRecord> runs;  // sorted by (q, a, run_id)
  std::vector<CellSummary> cells;
};

struct DiversityRow {
  std::size_t iteration = 0;
  double q = 1.0;
  double mean_diversity = 0.0;
};

struct DiversityResult {
  ExperimentResult experiment;
  std::vector<DiversityRow> rows;  // sorted by (q, iteration)
};

// Aggregates over a set of run records. Each rejects empty input.
double failure_rate(std::span<const RunRecord> records);  // percent
double success_rate(std::span<const RunRecord> records);  // percent
double mean_iterations(std::span<const RunRecord> records);
double mean_best_score(std::span<const RunRecord> records);

/// 1 + 1/sqrt(d); rejects d < 1.
double q_critical(long long dimension);

/// Executes every (q, A, run) of the grid, optionally recording diversity
/// traces. Runs are distributed over spec.threads workers; the output order
/// does not depend on scheduling.
std::vector<RunRecord> execute_runs(const ExperimentSpec& spec, bool record_traces = false);

/// Per-cell statistics in (q, A) order. CPU ratios are filled when the grid
/// contains q = 1.
std::vector<CellSummary> summarize(const ExperimentSpec& spec, std::span<const RunRecord> runs);

/// Failure rate and mean iteration count per (q, A) cell. Writes
/// <output_path>_runs.csv, _summary.csv and _summary.json when output_path is set.
ExperimentResult run_failure_experiment(const ExperimentSpec& spec);

/// Mean best score per (q, A) cell; same outputs as run_failure_experiment.
ExperimentResult run_a_sweep(const ExperimentSpec& spec);

/// Per-iteration diversity averaged across runs, per q. Needs exactly one A.
/// Runs that stop early contribute their final diversity to later iterations.
/// Writes <output_path>_diversity.csv.
DiversityResult run_diversity_trace(const ExperimentSpec& spec);

/// Wall time per cell normalized by q = 1 at the same A. Needs q = 1 in the
/// grid. Writes <output_path>_cpu.csv and the run/summary files.
ExperimentResult run_cpu_bench(const ExperimentSpec& spec);

}  // namespace qgsqpo
