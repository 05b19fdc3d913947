#pragma once

#include <cmath>
#include <utility>

namespace normbound {

// Golden-section minimization of f on [lo, hi]; returns (argmin, min).
// Assumes f is unimodal on the bracket.
template <typename F>
std::pair<double, double> golden_min(F&& f, double lo, double hi,
                                     double tol) {
  constexpr double kGr = 0.6180339887498948482;  // (sqrt(5)-1)/2
  double a = lo, b = hi;
  double x1 = b - kGr * (b - a);
  double x2 = a + kGr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (std::fabs(b - a) > tol * (std::fabs(x1) + std::fabs(x2) + 1)) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGr * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi,
                                     double tol) {
  auto [x, v] = golden_min([&](double t) { return -f(t); }, lo, hi, tol);
  return {x, -v};
}

}  // namespace normbound
