#pragma once

// CSV / JSON persistence for experiment results and JSON experiment configs.
//
// Every CSV starts with '#'-prefixed metadata lines echoing the experiment
// spec, followed by one header row and the data rows:
//   runs:      run_id,q,a,dim,particles,seed,iterations,best_score,success,termination,wall_ms
//   summary:   q,a,runs,failure_rate_pct,mean_iterations,mean_best_score,mean_wall_ms,cpu_ratio_vs_q1
//   diversity: iteration,q,mean_diversity
//   cpu:       q,a,runs,mean_wall_ms,mean_ms_per_iteration,cpu_ratio_vs_q1,per_iteration_ratio_vs_q1

#include <iosfwd>
#include <string>
#include <string_view>

#include "qgsqpo/harness.hpp"

namespace qgsqpo {

inline constexpr std::string_view kVersion = "0.1.0";

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);
/// Fixed number of significant digits.
std::string format_significant(double value, int digits);

void write_metadata(std::ostream& out, const ExperimentSpec& spec, std::string_view experiment);
void write_runs_csv(std::ostream& out, const ExperimentResult& result, std::string_view experiment);
void write_summary_csv(std::ostream& out, const ExperimentResult& result,
                       std::string_view experiment);
void write_summary_json(std::ostream& out, const ExperimentResult& result,
                        std::string_view experiment);
void write_diversity_csv(std::ostream& out, const DiversityResult& result);
void write_cpu_csv(std::ostream& out, const ExperimentResult& result);

/// Path of an output file: "<base>_<suffix>". Throws std::runtime_error if
/// the file cannot be opened for writing.
std::string output_file(const std::string& base, std::string_view suffix);
void write_text_file(const std::string& path, const std::string& contents);

/// Runs + summary CSV and summary JSON under spec.output_path (no-op if empty).
void write_experiment_files(const ExperimentResult& result, std::string_view experiment);

/// Overlays the keys of a JSON object (named after ExperimentSpec fields) on
/// `spec`. Unknown keys are rejected.
void apply_json_config(ExperimentSpec& spec, std::string_view json_text);
ExperimentSpec load_spec_file(const std::string& path, const ExperimentSpec& defaults = {});

/// One-line JSON rendering of a run record.
std::string run_record_json(const RunRecord& record);

}  // namespace qgsqpo
