#include "qgsqpo/report.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifdef QGSQPO_VENDORED_JSON
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif

namespace qgsqpo {
namespace {

using nlohmann::json;

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ';';
    out += format_double(values[i]);
  }
  return out;
}

std::string optional_field(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string{};
}

json cells_json(const ExperimentResult& result) {
  json cells = json::array();
  for (const auto& c : result.cells) {
    json cell = {{"q", c.q},
                 {"a", c.a},
                 {"runs", c.runs},
                 {"failures", c.failures},
                 {"failure_rate_pct", c.failure_rate_pct},
                 {"mean_iterations", c.mean_iterations},
                 {"mean_best_score", c.mean_best_score},
                 {"stderr_best_score", c.stderr_best_score},
                 {"mean_wall_ms", c.mean_wall_ms},
                 {"mean_ms_per_iteration", c.mean_ms_per_iteration}};
    cell["cpu_ratio_vs_q1"] = c.cpu_ratio_vs_q1 ? json(*c.cpu_ratio_vs_q1) : json(nullptr);
    cell["per_iteration_ratio_vs_q1"] =
        c.per_iteration_ratio_vs_q1 ? json(*c.per_iteration_ratio_vs_q1) : json(nullptr);
    cells.push_back(std::move(cell));
  }
  return cells;
}

json spec_json(const ExperimentSpec& spec) {
  return {{"objective_name", spec.objective_name},
          {"dimension", spec.dimension},
          {"num_particles", spec.num_particles},
          {"q_values", spec.q_values},
          {"a_values", spec.a_values},
          {"num_runs", spec.num_runs},
          {"p0", spec.p0},
          {"g", spec.g},
          {"omega", spec.omega},
          {"diversity_tol", spec.diversity_tol},
          {"max_iterations", spec.max_iterations},
          {"w_cap", spec.w_cap},
          {"success_epsilon", spec.success_epsilon},
          {"base_seed", spec.base_seed}};
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

std::string format_significant(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

void write_metadata(std::ostream& out, const ExperimentSpec& spec, std::string_view experiment) {
  out << "# qgsqpo " << kVersion << '\n'
      << "# experiment=" << experiment << '\n'
      << "# objective=" << spec.objective_name << " dim=" << spec.dimension
      << " particles=" << spec.num_particles << " runs=" << spec.num_runs << '\n'
      << "# q_values=" << join(spec.q_values) << " a_values=" << join(spec.a_values) << '\n'
      << "# p0=" << format_double(spec.p0) << " g=" << format_double(spec.g)
      << " omega=" << format_double(spec.omega)
      << " diversity_tol=" << format_double(spec.diversity_tol)
      << " max_iterations=" << spec.max_iterations << " w_cap=" << format_double(spec.w_cap)
      << '\n'
      << "# success_epsilon=" << format_double(spec.success_epsilon)
      << " base_seed=" << spec.base_seed << '\n';
}

void write_runs_csv(std::ostream& out, const ExperimentResult& result,
                    std::string_view experiment) {
  write_metadata(out, result.spec, experiment);
  out << "run_id,q,a,dim,particles,seed,iterations,best_score,success,termination,wall_ms\n";
  for (const auto& r : result.runs) {
    out << r.run_id << ',' << format_double(r.q) << ',' << format_double(r.a) << ','
        << r.dimension << ',' << r.num_particles << ',' << r.seed << ',' << r.iterations_used
        << ',' << format_double(r.best_score) << ',' << (r.success ? 1 : 0) << ','
        << to_string(r.termination) << ',' << format_double(r.wall_ms) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const ExperimentResult& result,
                       std::string_view experiment) {
  write_metadata(out, result.spec, experiment);
  out << "q,a,runs,failure_rate_pct,mean_iterations,mean_best_score,mean_wall_ms,cpu_ratio_vs_q1\n";
  for (const auto& c : result.cells) {
    out << format_double(c.q) << ',' << format_double(c.a) << ',' << c.runs << ','
        << format_double(c.failure_rate_pct) << ',' << format_double(c.mean_iterations) << ','
        << format_double(c.mean_best_score) << ',' << format_double(c.mean_wall_ms) << ','
        << optional_field(c.cpu_ratio_vs_q1) << '\n';
  }
}

void write_summary_json(std::ostream& out, const ExperimentResult& result,
                        std::string_view experiment) {
  const json doc = {{"tool", "qgsqpo"},
                    {"version", kVersion},
                    {"experiment", experiment},
                    {"spec", spec_json(result.spec)},
                    {"cells", cells_json(result)}};
  out << doc.dump(2) << '\n';
}

void write_diversity_csv(std::ostream& out, const DiversityResult& result) {
  write_metadata(out, result.experiment.spec, "diversity-trace");
  out << "iteration,q,mean_diversity\n";
  for (const auto& row : result.rows) {
    out << row.iteration << ',' << format_double(row.q) << ',' << format_double(row.mean_diversity)
        << '\n';
  }
}

void write_cpu_csv(std::ostream& out, const ExperimentResult& result) {
  write_metadata(out, result.spec, "cpu-bench");
  out << "q,a,runs,mean_wall_ms,mean_ms_per_iteration,cpu_ratio_vs_q1,per_iteration_ratio_vs_q1\n";
  const auto sig = [](const std::optional<double>& v) {
    return v ? format_significant(*v, 6) : std::string{};
  };
  for (const auto& c : result.cells) {
    out << format_double(c.q) << ',' << format_double(c.a) << ',' << c.runs << ','
        << format_significant(c.mean_wall_ms, 6) << ','
        << format_significant(c.mean_ms_per_iteration, 6) << ',' << sig(c.cpu_ratio_vs_q1) << ','
        << sig(c.per_iteration_ratio_vs_q1) << '\n';
  }
}

std::string output_file(const std::string& base, std::string_view suffix) {
  return base + "_" + std::string(suffix);
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "' for writing");
  file << contents;
  if (!file) throw std::runtime_error("failed writing output file '" + path + "'");
}

void write_experiment_files(const ExperimentResult& result, std::string_view experiment) {
  const auto& base = result.spec.output_path;
  if (base.empty()) return;
  std::ostringstream runs, summary, js;
  write_runs_csv(runs, result, experiment);
  write_summary_csv(summary, result, experiment);
  write_summary_json(js, result, experiment);
  write_text_file(output_file(base, "runs.csv"), runs.str());
  write_text_file(output_file(base, "summary.csv"), summary.str());
  write_text_file(output_file(base, "summary.json"), js.str());
}

void apply_json_config(ExperimentSpec& spec, std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");

  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "objective_name") spec.objective_name = value.get<std::string>();
      else if (key == "dimension") spec.dimension = value.get<std::size_t>();
      else if (key == "num_particles") spec.num_particles = value.get<std::size_t>();
      else if (key == "q_values") spec.q_values = value.get<std::vector<double>>();
      else if (key == "a_values") spec.a_values = value.get<std::vector<double>>();
      else if (key == "num_runs") spec.num_runs = value.get<std::size_t>();
      else if (key == "p0") spec.p0 = value.get<double>();
      else if (key == "g") spec.g = value.get<double>();
      else if (key == "omega") spec.omega = value.get<double>();
      else if (key == "diversity_tol") spec.diversity_tol = value.get<double>();
      else if (key == "max_iterations") spec.max_iterations = value.get<std::size_t>();
      else if (key == "w_cap") spec.w_cap = value.get<double>();
      else if (key == "success_epsilon") spec.success_epsilon = value.get<double>();
      else if (key == "base_seed") spec.base_seed = value.get<std::uint64_t>();
      else if (key == "output_path") spec.output_path = value.get<std::string>();
      else if (key == "threads") spec.threads = value.get<std::size_t>();
      else throw std::invalid_argument("unknown config key '" + key + "'");
    } catch (const json::type_error& e) {
      throw std::invalid_argument("config key '" + key + "' has the wrong type: " + e.what());
    }
  }
}

ExperimentSpec load_spec_file(const std::string& path, const ExperimentSpec& defaults) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << file.rdbuf();
  ExperimentSpec spec = defaults;
  apply_json_config(spec, text.str());
  return spec;
}

std::string run_record_json(const RunRecord& r) {
  const json doc = {{"run_id", r.run_id},
                    {"q", r.q},
                    {"a", r.a},
                    {"dim", r.dimension},
                    {"particles", r.num_particles},
                    {"seed", r.seed},
                    {"iterations", r.iterations_used},
                    {"best_score", r.best_score},
                    {"success", r.success},
                    {"termination", to_string(r.termination)},
                    {"wall_ms", r.wall_ms}};
  return doc.dump();
}

}  // namespace qgsqpo
