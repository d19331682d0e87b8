#include "qgsqpo/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace qgsqpo {
namespace {

struct Panel {
  double a, fa;
  double m, fm;
  double b, fb;
  double whole;
};

double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const Integrand& f, const Panel& p, double tol, int depth) {
  const double lm = 0.5 * (p.a + p.m);
  const double rm = 0.5 * (p.m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, p.fa, flm, p.m, p.fm);
  const double right = simpson(p.m, p.fm, frm, p.b, p.fb);
  const double delta = left + right - p.whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return refine(f, {p.a, p.fa, lm, flm, p.m, p.fm, left}, 0.5 * tol, depth - 1) +
         refine(f, {p.m, p.fm, rm, frm, p.b, p.fb, right}, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive_simpson(const Integrand& f, double a, double b, double abs_tol,
                                  int max_depth) {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  if (a == b) return 0.0;

  // Seed with 8 panels so narrow peaks cannot slip between the first samples.
  constexpr int kSeedPanels = 8;
  const double h = (b - a) / kSeedPanels;
  double total = 0.0;
  for (int k = 0; k < kSeedPanels; ++k) {
    const double lo = a + k * h;
    const double hi = (k + 1 == kSeedPanels) ? b : lo + h;
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo), fmid = f(mid), fhi = f(hi);
    total += refine(f, {lo, flo, mid, fmid, hi, fhi, simpson(lo, flo, fmid, hi, fhi)},
                    abs_tol / kSeedPanels, max_depth);
  }
  return total;
}

}  // namespace qgsqpo
