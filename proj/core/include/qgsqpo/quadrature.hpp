#pragma once

#include <functional>

namespace qgsqpo {

using Integrand = std::function<double(double)>;

/// Adaptive Simpson quadrature of f over [a, b] with Richardson correction.
/// abs_tol is the target absolute error for the whole interval.
double integrate_adaptive_simpson(const Integrand& f, double a, double b, double abs_tol,
                                  int max_depth = 48);

}  // namespace qgsqpo
