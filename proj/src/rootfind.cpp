#include "srmaser/rootfind.hpp"

#include <cmath>
#include <stdexcept>

namespace srmaser {

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const RootOptions& opt) {
  if (!(lo <= hi)) throw std::runtime_error("find_root: empty bracket");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi))
    throw std::runtime_error("find_root: f(lo) and f(hi) have the same sign");

  const double scale = std::max(std::abs(lo), std::abs(hi));
  for (int i = 0; i < opt.max_iter; ++i) {
    // secant candidate, fall back to bisection when it leaves the bracket
    double mid = lo - flo * (hi - lo) / (fhi - flo);
    const double width = hi - lo;
    if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
    // keep the bracket shrinking geometrically even when the secant
    // step hugs one endpoint
    const double guard = 0.01 * width;
    if (mid - lo < guard) mid = lo + guard;
    if (hi - mid < guard) mid = hi - guard;

    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
    if (hi - lo <= opt.rel_tol * std::max(scale, std::abs(mid)))
      return 0.5 * (lo + hi);
  }
  throw std::runtime_error("find_root: no convergence within iteration budget");
}

double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double rel_tol, int max_iter) {
  if (!(lo <= hi)) throw std::runtime_error("golden_section_max: empty interval");
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  const double scale = std::max(std::abs(lo), std::abs(hi));
  for (int i = 0; i < max_iter && (b - a) > rel_tol * scale; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace srmaser
