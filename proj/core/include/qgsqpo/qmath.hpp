#pragma once

// q-Gaussian densities, special functions and the characteristic-length
// root solves used by the Gaussian (q = 1) and q-Gaussian swarm updates.
//
// Density convention: f(x) = A0 * e_q(-alpha^2 x^2), where e_q is the
// Tsallis q-exponential. At q = 1 this is the Gaussian alpha/sqrt(pi) *
// exp(-alpha^2 x^2).

#include <optional>

#include "qgsqpo/rng.hpp"

namespace qgsqpo {

/// Supported entropic indices: the density is normalizable for 1 <= q < 3.
inline constexpr double kMinQ = 1.0;
inline constexpr double kMaxQ = 3.0;

struct SolverSettings {
  double abs_tol = 1e-10;       // bisection bracket width
  double quad_rel_tol = 1e-10;  // adaptive quadrature target
  int max_iterations = 200;     // bisection cap

  void validate() const;
};

class QGaussianParams {
 public:
  /// Throws std::invalid_argument unless 1 <= q < 3 and alpha > 0.
  explicit QGaussianParams(double q, double alpha = 1.0);

  double q() const { return q_; }
  double alpha() const { return alpha_; }
  /// Normalization constant A0.
  double a0() const { return a0_; }
  bool gaussian() const { return q_ == 1.0; }

 private:
  double q_;
  double alpha_;
  double a0_;
};

/// Parameters of the deviates produced by sample_q_gaussian: the generalized
/// Box-Muller transform yields e_q(-x^2 / (3 - q)), i.e. alpha = 1/sqrt(3 - q).
/// At q = 1 this is the standard normal.
QGaussianParams deviate_params(double q);

/// Tsallis q-exponential [1 + (1 - q) x]^(1/(1 - q)), 0 where the bracket is
/// non-positive; exp(x) at q = 1.
double q_exponential(double x, double q);

/// Tsallis q-logarithm (x^(1 - q) - 1) / (1 - q); log(x) at q = 1. x > 0.
double q_logarithm(double x, double q);

/// ln Gamma(x) for x > 0 (Lanczos, g = 7).
double log_gamma(double x);
/// Gamma(x) for real x that is not a non-positive integer.
double gamma_function(double x);

/// Error function, absolute accuracy better than 1e-12 on the real line.
double erf(double x);

/// Gauss hypergeometric 2F1(a, b; c; z) by direct series. Only |z| < 1.
double hypergeometric_2f1(double a, double b, double c, double z);

double q_gaussian_pdf(double x, const QGaussianParams& params);

/// Integral of the density over [0, r]. Monotone in r, tends to 1/2.
double q_gaussian_cdf_half(double r, const QGaussianParams& params,
                           const SolverSettings& settings = {});

/// Mass of the density below r (r >= 0): 1/2 + q_gaussian_cdf_half(r).
double transition_probability(double r, const QGaussianParams& params,
                              const SolverSettings& settings = {});

/// Closed-form transition probability through 2F1. Returns nullopt where the
/// hypergeometric argument -(q - 1)(alpha r)^2 leaves the unit disc. Used only
/// to cross-check the quadrature route.
std::optional<double> transition_probability_closed_form(double r,
                                                         const QGaussianParams& params);

/// Root y of erf(y) = 2 p0 - 1 for 1/2 < p0 < 1.
double solve_y0_gaussian(double p0, const SolverSettings& settings = {});

/// Root y of q_gaussian_cdf_half(y; q, alpha = 1) = p0 - 1/2. Delegates to
/// solve_y0_gaussian at q = 1.
double solve_y0_q(double p0, double q, const SolverSettings& settings = {});

/// Classical Box-Muller standard normal. Consumes two uniforms.
double sample_standard_normal(Rng& rng);

/// Generalized Box-Muller q-Gaussian deviate:
///   z = sqrt(-2 ln_q'(u1)) cos(2 pi u2),  q' = (1 + q) / (3 - q).
/// Consumes exactly two uniforms. Identical to sample_standard_normal at q = 1.
double sample_q_gaussian(Rng& rng, double q);

}  // namespace qgsqpo
