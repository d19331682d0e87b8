#include "qgsqpo/objectives.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgsqpo {
namespace {

void require_nonempty(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("objective evaluated on an empty vector");
}

}  // namespace

ObjectiveFunction::ObjectiveFunction(std::string name, std::size_t dimension,
                                     std::vector<double> lower_bound,
                                     std::vector<double> upper_bound, double optimum_value,
                                     std::vector<double> optimum_point, ObjectiveFn fn)
    : name_(std::move(name)),
      dimension_(dimension),
      lower_(std::move(lower_bound)),
      upper_(std::move(upper_bound)),
      optimum_value_(optimum_value),
      optimum_point_(std::move(optimum_point)),
      fn_(std::move(fn)) {
  if (dimension_ == 0) throw std::invalid_argument("objective dimension must be positive");
  if (lower_.size() != dimension_ || upper_.size() != dimension_ ||
      optimum_point_.size() != dimension_) {
    throw std::invalid_argument("objective bounds/optimum do not match its dimension");
  }
  for (std::size_t j = 0; j < dimension_; ++j) {
    if (!(lower_[j] < upper_[j])) throw std::invalid_argument("objective box is empty");
  }
  if (!fn_) throw std::invalid_argument("objective has no evaluation function");
}

double ObjectiveFunction::evaluate(std::span<const double> x) const {
  if (x.size() != dimension_) {
    throw std::invalid_argument("point of dimension " + std::to_string(x.size()) +
                                " passed to " + name_ + " of dimension " +
                                std::to_string(dimension_));
  }
  return fn_(x);
}

double griewank(std::span<const double> x) {
  require_nonempty(x);
  double sum = 0.0;
  double prod = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += x[i] * x[i];
    prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return sum / 400.0 - prod + 1.0;
}

double rastrigin(std::span<const double> x) {
  require_nonempty(x);
  double sum = 0.0;
  for (const double xi : x) {
    sum += 10.0 + xi * xi - 10.0 * std::cos(2.0 * std::numbers::pi * xi);
  }
  return sum;
}

double ackley(std::span<const double> x) {
  require_nonempty(x);
  const double d = static_cast<double>(x.size());
  double sq = 0.0;
  double cs = 0.0;
  for (const double xi : x) {
    sq += xi * xi;
    cs += std::cos(2.0 * std::numbers::pi * xi);
  }
  const double value =
      -20.0 * std::exp(-0.2 * std::sqrt(sq / d)) - std::exp(cs / d) + 20.0 + std::numbers::e;
  // The three terms cancel to within rounding at the origin; the function is
  // nonnegative, so clip the residue.
  return value < 0.0 ? 0.0 : value;
}

double sphere(std::span<const double> x) {
  require_nonempty(x);
  double sum = 0.0;
  for (const double xi : x) sum += xi * xi;
  return sum;
}

ObjectiveFunction make_objective(std::string_view name, std::size_t dimension) {
  if (dimension == 0) throw std::invalid_argument("objective dimension must be positive");
  ObjectiveFn fn;
  if (name == "griewank") {
    fn = griewank;
  } else if (name == "rastrigin") {
    fn = rastrigin;
  } else if (name == "ackley") {
    fn = ackley;
  } else if (name == "sphere") {
    fn = sphere;
  } else {
    throw std::invalid_argument("unknown objective '" + std::string(name) + "'");
  }
  return ObjectiveFunction(std::string(name), dimension,
                           std::vector<double>(dimension, -kDefaultBound),
                           std::vector<double>(dimension, kDefaultBound), 0.0,
                           std::vector<double>(dimension, 0.0), std::move(fn));
}

std::vector<std::string> objective_names() { return {"griewank", "rastrigin", "ackley", "sphere"}; }

}  // namespace qgsqpo
