#include "qgsqpo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <sstream>
#include <thread>

#include "qgsqpo/objectives.hpp"
#include "qgsqpo/qmath.hpp"
#include "qgsqpo/report.hpp"

namespace qgsqpo {
namespace {

void require_nonempty(std::span<const RunRecord> records) {
  if (records.empty()) throw std::invalid_argument("aggregate over an empty set of runs");
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          fn(k);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  workers.clear();
  if (error) std::rethrow_exception(error);
}

std::optional<std::size_t> baseline_q_index(const ExperimentSpec& spec) {
  for (std::size_t i = 0; i < spec.q_values.size(); ++i) {
    if (spec.q_values[i] == 1.0) return i;
  }
  return std::nullopt;
}

}  // namespace

void ExperimentSpec::validate() const {
  if (num_runs < 1) throw std::invalid_argument("num_runs must be >= 1");
  if (q_values.empty()) throw std::invalid_argument("q_values must not be empty");
  if (a_values.empty()) throw std::invalid_argument("a_values must not be empty");
  if (!(success_epsilon > 0.0)) throw std::invalid_argument("success_epsilon must be positive");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  // Resolving the objective and building one config checks the rest.
  make_objective(objective_name, dimension);
  for (std::size_t qi = 0; qi < q_values.size(); ++qi) {
    for (std::size_t ai = 0; ai < a_values.size(); ++ai) swarm_config(qi, ai, 0).validate();
  }
}

SwarmConfig ExperimentSpec::swarm_config(std::size_t q_index, std::size_t a_index,
                                         std::size_t run) const {
  SwarmConfig c;
  c.num_particles = num_particles;
  c.dimension = dimension;
  c.q = q_values.at(q_index);
  c.p0 = p0;
  c.g = g;
  c.amplitude_a = a_values.at(a_index);
  c.omega = omega;
  c.diversity_tol = diversity_tol;
  c.max_iterations = max_iterations;
  c.w_cap = w_cap;
  c.seed = derive_seed(base_seed, q_index, a_index, run);
  c.record_diversity_trace = false;
  return c;
}

double failure_rate(std::span<const RunRecord> records) {
  require_nonempty(records);
  const auto failures = std::count_if(records.begin(), records.end(),
                                      [](const RunRecord& r) { return !r.success; });
  return 100.0 * static_cast<double>(failures) / static_cast<double>(records.size());
}

double success_rate(std::span<const RunRecord> records) {
  require_nonempty(records);
  const auto successes = std::count_if(records.begin(), records.end(),
                                       [](const RunRecord& r) { return r.success; });
  return 100.0 * static_cast<double>(successes) / static_cast<double>(records.size());
}

double mean_iterations(std::span<const RunRecord> records) {
  require_nonempty(records);
  double sum = 0.0;
  for (const auto& r : records) sum += static_cast<double>(r.iterations_used);
  return sum / static_cast<double>(records.size());
}

double mean_best_score(std::span<const RunRecord> records) {
  require_nonempty(records);
  double sum = 0.0;
  for (const auto& r : records) sum += r.best_score;
  return sum / static_cast<double>(records.size());
}

double q_critical(long long dimension) {
  if (dimension < 1) throw std::invalid_argument("q_critical needs dimension >= 1");
  return 1.0 + 1.0 / std::sqrt(static_cast<double>(dimension));
}

std::vector<RunRecord> execute_runs(const ExperimentSpec& spec, bool record_traces) {
  spec.validate();
  const ObjectiveFunction objective = make_objective(spec.objective_name, spec.dimension);

  std::vector<double> y0(spec.q_values.size());
  for (std::size_t qi = 0; qi < y0.size(); ++qi) y0[qi] = solve_y0_q(spec.p0, spec.q_values[qi]);

  const std::size_t per_q = spec.a_values.size() * spec.num_runs;
  std::vector<RunRecord> records(spec.q_values.size() * per_q);

  parallel_for(records.size(), spec.threads, [&](std::size_t k) {
    const std::size_t qi = k / per_q;
    const std::size_t ai = (k % per_q) / spec.num_runs;
    const std::size_t run_id = k % spec.num_runs;
    SwarmConfig config = spec.swarm_config(qi, ai, run_id);
    config.record_diversity_trace = record_traces;

    RunResult result = run(config, objective, y0[qi]);

    RunRecord& rec = records[k];
    rec.run_id = run_id;
    rec.q = config.q;
    rec.a = config.amplitude_a;
    rec.dimension = config.dimension;
    rec.num_particles = config.num_particles;
    rec.seed = config.seed;
    rec.iterations_used = result.iterations_used;
    rec.best_score = result.best_score;
    rec.success = result.best_score < spec.success_epsilon;
    rec.termination = result.termination;
    rec.wall_ms = result.wall_time_ms;
    rec.diversity_trace = std::move(result.diversity_trace);
  });

  std::stable_sort(records.begin(), records.end(), [](const RunRecord& l, const RunRecord& r) {
    if (l.q != r.q) return l.q < r.q;
    if (l.a != r.a) return l.a < r.a;
    return l.run_id < r.run_id;
  });
  return records;
}

std::vector<CellSummary> summarize(const ExperimentSpec& spec, std::span<const RunRecord> runs) {
  std::map<std::pair<double, double>, std::vector<RunRecord>> cells;
  for (const auto& r : runs) cells[{r.q, r.a}].push_back(r);

  std::vector<CellSummary> out;
  out.reserve(cells.size());
  for (const auto& [key, records] : cells) {
    CellSummary s;
    s.q = key.first;
    s.a = key.second;
    s.runs = records.size();
    s.failure_rate_pct = failure_rate(records);
    s.failures = static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const RunRecord& r) { return !r.success; }));
    s.mean_iterations = mean_iterations(records);
    s.mean_best_score = mean_best_score(records);
    if (records.size() > 1) {
      double ss = 0.0;
      for (const auto& r : records) ss += (r.best_score - s.mean_best_score) * (r.best_score - s.mean_best_score);
      const double n = static_cast<double>(records.size());
      s.stderr_best_score = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    double wall = 0.0;
    double per_iter = 0.0;
    for (const auto& r : records) {
      wall += r.wall_ms;
      per_iter += r.wall_ms / static_cast<double>(std::max<std::size_t>(r.iterations_used, 1));
    }
    s.mean_wall_ms = wall / static_cast<double>(records.size());
    s.mean_ms_per_iteration = per_iter / static_cast<double>(records.size());
    out.push_back(s);
  }

  if (baseline_q_index(spec)) {
    for (auto& s : out) {
      const auto base = std::find_if(out.begin(), out.end(), [&](const CellSummary& b) {
        return b.q == 1.0 && b.a == s.a;
      });
      if (base == out.end()) continue;
      if (base->mean_wall_ms > 0.0) s.cpu_ratio_vs_q1 = s.mean_wall_ms / base->mean_wall_ms;
      if (base->mean_ms_per_iteration > 0.0) {
        s.per_iteration_ratio_vs_q1 = s.mean_ms_per_iteration / base->mean_ms_per_iteration;
      }
    }
  }
  return out;
}

ExperimentResult run_failure_experiment(const ExperimentSpec& spec) {
  ExperimentResult result{spec, execute_runs(spec), {}};
  result.cells = summarize(spec, result.runs);
  write_experiment_files(result, "failure-sweep");
  return result;
}

ExperimentResult run_a_sweep(const ExperimentSpec& spec) {
  ExperimentResult result{spec, execute_runs(spec), {}};
  result.cells = summarize(spec, result.runs);
  write_experiment_files(result, "a-sweep");
  return result;
}

DiversityResult run_diversity_trace(const ExperimentSpec& spec) {
  if (spec.a_values.size() != 1) {
    throw std::invalid_argument("diversity trace needs exactly one amplitude A");
  }
  DiversityResult out;
  out.experiment = ExperimentResult{spec, execute_runs(spec, true), {}};
  out.experiment.cells = summarize(spec, out.experiment.runs);

  std::map<double, std::vector<const RunRecord*>> by_q;
  for (const auto& r : out.experiment.runs) by_q[r.q].push_back(&r);

  for (const auto& [q, records] : by_q) {
    std::size_t length = 0;
    for (const auto* r : records) length = std::max(length, r->diversity_trace.size());
    for (std::size_t k = 0; k < length; ++k) {
      double sum = 0.0;
      for (const auto* r : records) {
        const auto& trace = r->diversity_trace;
        sum += trace[std::min(k, trace.size() - 1)];
      }
      out.rows.push_back({k, q, sum / static_cast<double>(records.size())});
    }
  }

  if (!spec.output_path.empty()) {
    write_experiment_files(out.experiment, "diversity-trace");
    std::ostringstream csv;
    write_diversity_csv(csv, out);
    write_text_file(output_file(spec.output_path, "diversity.csv"), csv.str());
  }
  return out;
}

ExperimentResult run_cpu_bench(const ExperimentSpec& spec) {
  if (!baseline_q_index(spec)) {
    throw std::invalid_argument("cpu bench needs q = 1 in q_values as the normalization baseline");
  }
  ExperimentResult result{spec, execute_runs(spec), {}};
  result.cells = summarize(spec, result.runs);
  if (!spec.output_path.empty()) {
    write_experiment_files(result, "cpu-bench");
    std::ostringstream csv;
    write_cpu_csv(csv, result);
    write_text_file(output_file(spec.output_path, "cpu.csv"), csv.str());
  }
  return result;
}

}  // namespace qgsqpo
