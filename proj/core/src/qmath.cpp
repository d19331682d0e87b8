#include "qgsqpo/qmath.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qgsqpo/quadrature.hpp"

namespace qgsqpo {
namespace {

void require_q(double q) {
  if (!(q >= kMinQ && q < kMaxQ)) {
    throw std::invalid_argument("entropic index q must lie in [1, 3), got " + std::to_string(q));
  }
}

void require_p0(double p0) {
  if (!(p0 > 0.5 && p0 < 1.0)) {
    throw std::invalid_argument("transition probability p0 must lie in (0.5, 1), got " +
                                std::to_string(p0));
  }
}

double normalization(double q, double alpha) {
  if (q == 1.0) return alpha / std::sqrt(std::numbers::pi);
  // Gamma(1/(q-1)) / Gamma((3-q)/(2(q-1))) through log-gamma: near q = 1 both
  // arguments are huge and the plain ratio overflows.
  const double a = 1.0 / (q - 1.0);
  const double b = (3.0 - q) / (2.0 * (q - 1.0));
  return alpha / std::sqrt(std::numbers::pi) * std::sqrt(q - 1.0) *
         std::exp(log_gamma(a) - log_gamma(b));
}

// Bisection on a nondecreasing g with g(0) <= target. The upper end of the
// bracket is doubled from 1 until it straddles the target.
template <typename F>
double bracket_and_bisect(F&& g, double target, const SolverSettings& settings) {
  double lo = 0.0;
  double hi = 1.0;
  while (g(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw std::runtime_error("root bracket expansion failed");
  }
  for (int it = 0; it < settings.max_iterations && hi - lo > settings.abs_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void SolverSettings::validate() const {
  if (!(abs_tol > 0.0) || !(quad_rel_tol > 0.0)) {
    throw std::invalid_argument("solver tolerances must be positive");
  }
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
}

QGaussianParams::QGaussianParams(double q, double alpha) : q_(q), alpha_(alpha) {
  require_q(q);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("q-Gaussian inverse width alpha must be positive");
  }
  a0_ = normalization(q, alpha);
}

QGaussianParams deviate_params(double q) {
  require_q(q);
  return QGaussianParams(q, 1.0 / std::sqrt(3.0 - q));
}

double q_exponential(double x, double q) {
  require_q(q);
  if (q == 1.0) return std::exp(x);
  const double bracket = 1.0 + (1.0 - q) * x;
  if (bracket <= 0.0) return 0.0;
  return std::pow(bracket, 1.0 / (1.0 - q));
}

double q_logarithm(double x, double q) {
  if (!(x > 0.0)) throw std::invalid_argument("q-logarithm needs a positive argument");
  if (q == 1.0) return std::log(x);
  return std::expm1((1.0 - q) * std::log(x)) / (1.0 - q);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("log_gamma needs a positive argument");
  if (x < 0.5) {
    // Reflection keeps the Lanczos sum in its accurate range.
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
  }
  static constexpr std::array<double, 9> kCoeffs = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double kG = 7.0;
  const double z = x - 1.0;
  double sum = kCoeffs[0];
  for (std::size_t k = 1; k < kCoeffs.size(); ++k) sum += kCoeffs[k] / (z + static_cast<double>(k));
  const double t = z + kG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

double gamma_function(double x) {
  if (x <= 0.0 && x == std::floor(x)) {
    throw std::invalid_argument("gamma function has poles at non-positive integers");
  }
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_function(1.0 - x));
  }
  return std::exp(log_gamma(x));
}

double erf(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  double value;
  if (ax >= 6.0) {
    value = 1.0;
  } else if (ax <= 3.0) {
    // erf(x) = 2/sqrt(pi) e^{-x^2} sum_n 2^n x^{2n+1} / (2n+1)!!, all terms positive.
    const double two_x2 = 2.0 * ax * ax;
    double term = ax;
    double sum = ax;
    for (int n = 1; n < 200; ++n) {
      term *= two_x2 / (2.0 * n + 1.0);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    value = 2.0 / std::sqrt(std::numbers::pi) * std::exp(-ax * ax) * sum;
  } else {
    // erfc continued fraction, evaluated bottom-up.
    double t = ax;
    for (int k = 80; k >= 1; --k) t = ax + 0.5 * k / t;
    value = 1.0 - std::exp(-ax * ax) / (std::sqrt(std::numbers::pi) * t);
  }
  return x < 0.0 ? -value : value;
}

double hypergeometric_2f1(double a, double b, double c, double z) {
  if (!(std::abs(z) < 1.0)) {
    throw std::domain_error("2F1 series only converges for |z| < 1");
  }
  // Pfaff: 2F1(a, b; c; z) = (1 - z)^-a 2F1(a, c - b; c; z / (z - 1)) maps
  // z < 0 into [0, 1/2), where the series converges fast without cancellation.
  if (z < 0.0) {
    return std::pow(1.0 - z, -a) * hypergeometric_2f1(a, c - b, c, z / (z - 1.0));
  }
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < 1000000; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) return sum;
  }
  throw std::runtime_error("2F1 series did not converge");
}

double q_gaussian_pdf(double x, const QGaussianParams& params) {
  const double s = params.alpha() * x;
  return params.a0() * q_exponential(-s * s, params.q());
}

double q_gaussian_cdf_half(double r, const QGaussianParams& params,
                           const SolverSettings& settings) {
  if (!(r >= 0.0)) throw std::invalid_argument("cdf_half needs a non-negative radius");
  settings.validate();
  if (r == 0.0) return 0.0;

  const auto pdf = [&params](double x) { return q_gaussian_pdf(x, params); };
  const double scale = 1.0 / params.alpha();
  const double cutoff = 1e-16 * params.a0();

  // Geometric panels [0, s], [s, 2s], [2s, 4s], ... clipped at r. Integration
  // stops once the density at a panel's left edge drops below the cutoff.
  double total = 0.0;
  double lo = 0.0;
  double width = scale;
  while (lo < r) {
    if (lo > 0.0 && pdf(lo) < cutoff) break;
    const double hi = std::min(r, lo + width);
    const double tol = settings.quad_rel_tol * params.a0() * std::min(hi - lo, scale);
    total += integrate_adaptive_simpson(pdf, lo, hi, tol);
    lo = hi;
    if (lo >= scale) width = lo;
  }
  return std::min(total, 0.5);
}

double transition_probability(double r, const QGaussianParams& params,
                              const SolverSettings& settings) {
  return 0.5 + q_gaussian_cdf_half(r, params, settings);
}

std::optional<double> transition_probability_closed_form(double r,
                                                         const QGaussianParams& params) {
  if (!(r >= 0.0)) throw std::invalid_argument("transition probability needs r >= 0");
  const double s = params.alpha() * r;
  if (params.gaussian()) return 0.5 + 0.5 * erf(s);
  const double q = params.q();
  const double z = -(q - 1.0) * s * s;
  if (!(std::abs(z) < 1.0)) return std::nullopt;
  // int_0^r (1 + (q-1) alpha^2 x^2)^(-1/(q-1)) dx = r 2F1(1/2, 1/(q-1); 3/2; z)
  return 0.5 + params.a0() * r * hypergeometric_2f1(0.5, 1.0 / (q - 1.0), 1.5, z);
}

double solve_y0_gaussian(double p0, const SolverSettings& settings) {
  require_p0(p0);
  settings.validate();
  return bracket_and_bisect([](double y) { return erf(y); }, 2.0 * p0 - 1.0, settings);
}

double solve_y0_q(double p0, double q, const SolverSettings& settings) {
  require_p0(p0);
  require_q(q);
  settings.validate();
  if (q == 1.0) return solve_y0_gaussian(p0, settings);
  const QGaussianParams params(q, 1.0);
  return bracket_and_bisect(
      [&](double y) { return q_gaussian_cdf_half(y, params, settings); }, p0 - 0.5, settings);
}

double sample_standard_normal(Rng& rng) {
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_q_gaussian(Rng& rng, double q) {
  require_q(q);
  if (q == 1.0) return sample_standard_normal(rng);
  // Rng::uniform() is open on (0, 1), so ln_q'(u1) is always finite and no
  // draw has to be rejected.
  const double q_prime = (1.0 + q) / (3.0 - q);
  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * q_logarithm(u1, q_prime)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace qgsqpo
