#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <sstream>

#include "csv_util.hpp"
#include "qgsqpo/harness.hpp"
#include "qgsqpo/report.hpp"

namespace {

using namespace qgsqpo;
namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("qgsqpo_test_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string base(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

RunRecord record(bool success, std::size_t iterations = 10) {
  RunRecord r;
  r.success = success;
  r.iterations_used = iterations;
  return r;
}

ExperimentSpec small_spec() {
  ExperimentSpec s;
  s.objective_name = "rastrigin";
  s.dimension = 2;
  s.num_particles = 8;
  s.q_values = {1.0, 1.32};
  s.a_values = {0.1, 0.4};
  s.num_runs = 6;
  s.max_iterations = 300;
  s.base_seed = 77;
  return s;
}

TEST(Aggregates, FailureRate) {
  std::vector<RunRecord> all(4, record(true));
  EXPECT_EQ(failure_rate(all), 0.0);
  std::vector<RunRecord> half;
  for (int i = 0; i < 10; ++i) half.push_back(record(i % 2 == 0));
  EXPECT_EQ(failure_rate(half), 50.0);
  std::vector<RunRecord> eighth(8, record(true));
  eighth[3].success = false;
  EXPECT_EQ(failure_rate(eighth), 12.5);
  EXPECT_EQ(failure_rate(eighth) + success_rate(eighth), 100.0);
  EXPECT_THROW(failure_rate(std::vector<RunRecord>{}), std::invalid_argument);
}

TEST(Aggregates, MeanIterations) {
  EXPECT_EQ(mean_iterations(std::vector<RunRecord>{record(true, 10)}), 10.0);
  std::vector<RunRecord> three{record(true, 10), record(true, 20), record(false, 30)};
  EXPECT_EQ(mean_iterations(three), 20.0);
  std::reverse(three.begin(), three.end());
  EXPECT_EQ(mean_iterations(three), 20.0);
  std::swap(three[0], three[1]);
  EXPECT_EQ(mean_iterations(three), 20.0);
  EXPECT_THROW(mean_iterations(std::vector<RunRecord>{}), std::invalid_argument);
}

TEST(QCritical, Examples) {
  EXPECT_EQ(q_critical(1), 2.0);
  EXPECT_EQ(q_critical(4), 1.5);
  EXPECT_NEAR(q_critical(50), 1.141421, 1e-6);
  EXPECT_THROW(q_critical(0), std::invalid_argument);
  EXPECT_THROW(q_critical(-3), std::invalid_argument);
}

TEST(Experiment, SingleRunSingleCell) {
  TempDir tmp;
  ExperimentSpec s = small_spec();
  s.q_values = {1.0};
  s.a_values = {0.0};
  s.num_runs = 1;
  s.output_path = tmp.base("one");
  const auto result = run_failure_experiment(s);
  EXPECT_EQ(result.runs.size(), 1u);
  EXPECT_EQ(result.cells.size(), 1u);
  const auto runs = testutil::parse_csv(testutil::read_file(s.output_path + "_runs.csv"));
  const auto summary = testutil::parse_csv(testutil::read_file(s.output_path + "_summary.csv"));
  EXPECT_EQ(runs.rows.size(), 1u);
  EXPECT_EQ(summary.rows.size(), 1u);
  EXPECT_EQ(runs.header, testutil::split("run_id,q,a,dim,particles,seed,iterations,best_score,"
                                         "success,termination,wall_ms"));
  EXPECT_EQ(summary.header, testutil::split("q,a,runs,failure_rate_pct,mean_iterations,"
                                            "mean_best_score,mean_wall_ms,cpu_ratio_vs_q1"));
  EXPECT_TRUE(fs::exists(s.output_path + "_summary.json"));
}

TEST(Experiment, AccountingAndSuccessConsistency) {
  const ExperimentSpec s = small_spec();
  const auto result = run_failure_experiment(s);
  EXPECT_EQ(result.runs.size(), s.q_values.size() * s.a_values.size() * s.num_runs);
  EXPECT_EQ(result.cells.size(), s.q_values.size() * s.a_values.size());
  for (const auto& r : result.runs) {
    EXPECT_EQ(r.success, r.best_score < s.success_epsilon);
    EXPECT_LE(r.iterations_used, s.max_iterations);
  }
  for (const auto& c : result.cells) {
    EXPECT_GE(c.failure_rate_pct, 0.0);
    EXPECT_LE(c.failure_rate_pct, 100.0);
    EXPECT_EQ(c.runs, s.num_runs);
  }
  EXPECT_TRUE(std::is_sorted(result.runs.begin(), result.runs.end(), [](const auto& l, const auto& r) {
    return std::tie(l.q, l.a, l.run_id) < std::tie(r.q, r.a, r.run_id);
  }));
}

TEST(Experiment, ReproducibleModuloTiming) {
  TempDir tmp;
  ExperimentSpec s = small_spec();
  s.output_path = tmp.base("first");
  run_failure_experiment(s);
  s.output_path = tmp.base("second");
  s.threads = 3;
  run_failure_experiment(s);

  const auto a = testutil::read_file(tmp.base("first") + "_runs.csv");
  const auto b = testutil::read_file(tmp.base("second") + "_runs.csv");
  EXPECT_EQ(testutil::drop_column(a, "wall_ms"), testutil::drop_column(b, "wall_ms"));
  EXPECT_FALSE(testutil::parse_csv(a).rows.empty());
}

TEST(Experiment, AddingCellsKeepsExistingStreams) {
  ExperimentSpec s = small_spec();
  s.q_values = {1.0};
  s.a_values = {0.1};
  const auto narrow = execute_runs(s);
  s.q_values = {1.0, 1.625};
  s.a_values = {0.1, 0.9};
  const auto wide = execute_runs(s);
  std::vector<RunRecord> subset;
  std::copy_if(wide.begin(), wide.end(), std::back_inserter(subset),
               [](const RunRecord& r) { return r.q == 1.0 && r.a == 0.1; });
  ASSERT_EQ(subset.size(), narrow.size());
  for (std::size_t k = 0; k < narrow.size(); ++k) {
    EXPECT_EQ(subset[k].seed, narrow[k].seed);
    EXPECT_EQ(subset[k].best_score, narrow[k].best_score);
    EXPECT_EQ(subset[k].iterations_used, narrow[k].iterations_used);
  }
}

TEST(Experiment, SummaryMatchesIndependentReaggregation) {
  TempDir tmp;
  ExperimentSpec s = small_spec();
  s.output_path = tmp.base("audit");
  run_failure_experiment(s);
  const auto runs = testutil::parse_csv(testutil::read_file(s.output_path + "_runs.csv"));
  const auto summary = testutil::parse_csv(testutil::read_file(s.output_path + "_summary.csv"));

  struct Acc {
    double n = 0, fails = 0, iters = 0, best = 0, wall = 0;
  };
  std::map<std::pair<std::string, std::string>, Acc> acc;
  for (const auto& row : runs.rows) {
    auto& a = acc[{row[runs.column("q")], row[runs.column("a")]}];
    a.n += 1;
    a.fails += row[runs.column("success")] == "0" ? 1 : 0;
    a.iters += std::stod(row[runs.column("iterations")]);
    a.best += std::stod(row[runs.column("best_score")]);
    a.wall += std::stod(row[runs.column("wall_ms")]);
  }
  ASSERT_EQ(summary.rows.size(), acc.size());
  for (const auto& row : summary.rows) {
    const auto& a = acc.at({row[summary.column("q")], row[summary.column("a")]});
    EXPECT_EQ(std::stod(row[summary.column("runs")]), a.n);
    EXPECT_NEAR(std::stod(row[summary.column("failure_rate_pct")]), 100.0 * a.fails / a.n, 1e-12);
    EXPECT_NEAR(std::stod(row[summary.column("mean_iterations")]), a.iters / a.n, 1e-9);
    EXPECT_NEAR(std::stod(row[summary.column("mean_best_score")]), a.best / a.n,
                1e-12 * std::max(1.0, a.best / a.n));
    EXPECT_NEAR(std::stod(row[summary.column("mean_wall_ms")]), a.wall / a.n,
                1e-9 * std::max(1.0, a.wall / a.n));
  }
}

TEST(Experiment, ErrorPaths) {
  ExperimentSpec s = small_spec();
  s.objective_name = "himmelblau";
  EXPECT_THROW(run_failure_experiment(s), std::invalid_argument);
  s = small_spec();
  s.num_runs = 0;
  EXPECT_THROW(run_failure_experiment(s), std::invalid_argument);
  s = small_spec();
  s.q_values.clear();
  EXPECT_THROW(run_a_sweep(s), std::invalid_argument);
  s = small_spec();
  s.success_epsilon = 0.0;
  EXPECT_THROW(run_a_sweep(s), std::invalid_argument);
  s = small_spec();
  s.num_runs = 1;
  s.output_path = "/nonexistent-dir/for/sure/out";
  EXPECT_THROW(run_failure_experiment(s), std::runtime_error);
}

TEST(ASweep, OnePointPerQForSingleA) {
  ExperimentSpec s = small_spec();
  s.a_values = {0.3};
  const auto result = run_a_sweep(s);
  ASSERT_EQ(result.cells.size(), s.q_values.size());
  for (std::size_t i = 0; i < s.q_values.size(); ++i) EXPECT_EQ(result.cells[i].q, s.q_values[i]);
}

TEST(DiversityTrace, RowsAndBoundaryValues) {
  TempDir tmp;
  ExperimentSpec s = small_spec();
  s.a_values = {0.2};
  s.max_iterations = 5000;
  s.output_path = tmp.base("div");
  const auto result = run_diversity_trace(s);

  const auto objective = make_objective(s.objective_name, s.dimension);
  for (std::size_t qi = 0; qi < s.q_values.size(); ++qi) {
    const double q = s.q_values[qi];
    std::vector<DiversityRow> rows;
    std::copy_if(result.rows.begin(), result.rows.end(), std::back_inserter(rows),
                 [&](const DiversityRow& r) { return r.q == q; });
    ASSERT_FALSE(rows.empty());
    EXPECT_EQ(rows.front().iteration, 0u);

    // iteration 0: mean over runs of the initialization diversity
    double init = 0.0;
    bool all_converged = true;
    for (const auto& r : result.experiment.runs) {
      if (r.q != q) continue;
      init += Swarm(s.swarm_config(qi, 0, r.run_id), objective).current_diversity();
      all_converged = all_converged && r.termination == Termination::converged;
    }
    EXPECT_NEAR(rows.front().mean_diversity, init / static_cast<double>(s.num_runs), 1e-12);
    if (all_converged) {
      EXPECT_LT(rows.back().mean_diversity, s.diversity_tol);
    }
  }

  const auto csv = testutil::parse_csv(testutil::read_file(s.output_path + "_diversity.csv"));
  EXPECT_EQ(csv.header, testutil::split("iteration,q,mean_diversity"));
  EXPECT_EQ(csv.rows.size(), result.rows.size());

  s.a_values = {0.1, 0.2};
  EXPECT_THROW(run_diversity_trace(s), std::invalid_argument);
}

TEST(CpuBench, NormalizedToGaussianBaseline) {
  TempDir tmp;
  ExperimentSpec s = small_spec();
  s.output_path = tmp.base("cpu");
  const auto result = run_cpu_bench(s);
  for (const auto& c : result.cells) {
    ASSERT_TRUE(c.cpu_ratio_vs_q1.has_value());
    ASSERT_TRUE(c.per_iteration_ratio_vs_q1.has_value());
    if (c.q == 1.0) {
      EXPECT_EQ(*c.cpu_ratio_vs_q1, 1.0);
      EXPECT_EQ(*c.per_iteration_ratio_vs_q1, 1.0);
    }
  }
  const auto csv = testutil::parse_csv(testutil::read_file(s.output_path + "_cpu.csv"));
  EXPECT_EQ(csv.header, testutil::split("q,a,runs,mean_wall_ms,mean_ms_per_iteration,"
                                        "cpu_ratio_vs_q1,per_iteration_ratio_vs_q1"));
  for (const auto& row : csv.rows) {
    EXPECT_EQ(row[csv.column("runs")], std::to_string(s.num_runs));
    if (row[0] == "1") {
      EXPECT_EQ(row[csv.column("cpu_ratio_vs_q1")], "1");
    }
  }
  EXPECT_EQ(format_significant(1.23456789, 6), "1.23457");

  s.q_values = {1.32};
  EXPECT_THROW(run_cpu_bench(s), std::invalid_argument);
}

TEST(Report, MetadataEchoesSpec) {
  const ExperimentSpec s = small_spec();
  std::ostringstream out;
  write_metadata(out, s, "a-sweep");
  const std::string text = out.str();
  EXPECT_NE(text.find("# experiment=a-sweep"), std::string::npos);
  EXPECT_NE(text.find("success_epsilon=" + format_double(1e-4)), std::string::npos);
  EXPECT_NE(text.find("base_seed=77"), std::string::npos);
  EXPECT_NE(text.find("q_values=1;1.32"), std::string::npos);
}

TEST(Report, FormatDoubleRoundTrips) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(gen) * std::pow(10.0, i % 40 - 20);
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
  EXPECT_EQ(format_double(0.25), "0.25");
}

TEST(Config, JsonOverlay) {
  ExperimentSpec s;
  apply_json_config(s, R"({"objective_name": "ackley", "dimension": 5, "q_values": [1, 1.32],
                           "a_values": [0.05], "num_runs": 7, "base_seed": 99,
                           "success_epsilon": 0.001, "threads": 2})");
  EXPECT_EQ(s.objective_name, "ackley");
  EXPECT_EQ(s.dimension, 5u);
  EXPECT_EQ(s.q_values, (std::vector<double>{1.0, 1.32}));
  EXPECT_EQ(s.a_values, std::vector<double>{0.05});
  EXPECT_EQ(s.num_runs, 7u);
  EXPECT_EQ(s.base_seed, 99u);
  EXPECT_EQ(s.success_epsilon, 0.001);
  EXPECT_EQ(s.threads, 2u);
  EXPECT_EQ(s.num_particles, ExperimentSpec{}.num_particles);

  EXPECT_THROW(apply_json_config(s, R"({"bogus": 1})"), std::invalid_argument);
  EXPECT_THROW(apply_json_config(s, R"({"dimension": "five"})"), std::invalid_argument);
  EXPECT_THROW(apply_json_config(s, "[1, 2]"), std::invalid_argument);
  EXPECT_THROW(apply_json_config(s, "{not json"), std::invalid_argument);
  EXPECT_THROW(load_spec_file("/nonexistent/config.json"), std::runtime_error);
}

}  // namespace
