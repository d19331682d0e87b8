#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qgsqpo {

using ObjectiveFn = std::function<double(std::span<const double>)>;

/// A d-dimensional test function with its search box and known optimum.
class ObjectiveFunction {
 public:
  ObjectiveFunction(std::string name, std::size_t dimension, std::vector<double> lower_bound,
                    std::vector<double> upper_bound, double optimum_value,
                    std::vector<double> optimum_point, ObjectiveFn fn);

  const std::string& name() const { return name_; }
  std::size_t dimension() const { return dimension_; }
  const std::vector<double>& lower_bound() const { return lower_; }
  const std::vector<double>& upper_bound() const { return upper_; }
  double optimum_value() const { return optimum_value_; }
  const std::vector<double>& optimum_point() const { return optimum_point_; }

  /// Throws std::invalid_argument on a dimension mismatch.
  double evaluate(std::span<const double> x) const;
  double operator()(std::span<const double> x) const { return evaluate(x); }

 private:
  std::string name_;
  std::size_t dimension_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  double optimum_value_;
  std::vector<double> optimum_point_;
  ObjectiveFn fn_;
};

// Raw formulas. Each rejects an empty vector.
double griewank(std::span<const double> x);
double rastrigin(std::span<const double> x);
double ackley(std::span<const double> x);
double sphere(std::span<const double> x);

/// Box used by all built-in functions: [-6 pi, 6 pi] per coordinate.
inline constexpr double kDefaultBound = 6.0 * 3.14159265358979323846;

/// Resolves "griewank", "rastrigin", "ackley" or "sphere"; throws
/// std::invalid_argument for anything else or for dimension 0.
ObjectiveFunction make_objective(std::string_view name, std::size_t dimension);

std::vector<std::string> objective_names();

}  // namespace qgsqpo
