// rootfind.hpp - bracketed 1-D root finding and maximization helpers

#pragma once

#include <functional>

namespace srmaser {

struct RootOptions {
  double rel_tol = 1e-12;
  int max_iter = 200;
};

// Finds x in [lo, hi] with f(x) = 0, given f(lo) and f(hi) of opposite
// sign (or zero at an endpoint). Bisection with secant acceleration;
// converges to rel_tol on the bracket width. Throws std::runtime_error
// if the bracket is invalid or the iteration budget is exhausted.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const RootOptions& opt = {});

// Golden-section maximizer for a unimodal f on [lo, hi]; returns argmax.
double golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, double rel_tol = 1e-10, int max_iter = 400);

}  // namespace srmaser
