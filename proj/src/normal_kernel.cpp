#include "normbound/normal_kernel.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace normbound {
namespace {

constexpr long double kInvSqrt2Pi = 0.3989422804014326779399460599343818685L;
constexpr long double kInvSqrt2 = 0.7071067811865475244008443621048490393L;

// The Mills continued fraction converges quickly past this point.
constexpr long double kLargeT = 8.0L;

// Switch for the moment evaluation. Below it the downward recursion in long
// double keeps the t^10-amplified cancellation under ~1e-11 relative; above
// it the descending series is already accurate to ~1e-14 or better (its
// optimal-truncation error falls off like exp(-t^2), still 5e-8 at t = 8 but
// negligible by t = 10).
constexpr long double kSeriesT = 10.0L;

void require_finite(double t) {
  if (!std::isfinite(t)) {
    throw std::domain_error("normal_kernel: non-finite argument");
  }
}

long double phi_l(long double t) { return kInvSqrt2Pi * std::exp(-t * t / 2); }

long double psi_l(long double t) { return std::erfc(t * kInvSqrt2) / 2; }

// Mills ratio via the Laplace continued fraction
//   Psi(t)/phi(t) = 1/(t + 1/(t + 2/(t + 3/(...)))),  t > 0,
// evaluated with the modified Lentz algorithm.
long double mills_cf(long double t) {
  const long double tiny = 1e-300L;
  long double f = t, c = t, d = 0;
  if (f == 0) f = tiny;
  for (int n = 1; n < 200; ++n) {
    const long double a = static_cast<long double>(n);
    d = t + a * d;
    if (d == 0) d = tiny;
    c = t + a / c;
    if (c == 0) c = tiny;
    d = 1 / d;
    const long double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1) < 1e-19L) break;
  }
  return 1 / f;
}

// Descending series for t > 0:
//   m_a(t) = phi(t) t^{-(a+1)} sum_k (-1)^k Gamma(a+2k+1) / (k! (2 t^2)^k).
// The series is asymptotic; it is truncated at the first negligible or
// non-decreasing term. The optimal-truncation error falls off like
// exp(-t^2): about 5e-8 relative at t = 8 but below 1e-13 from t = 10 on.
long double moment_series(int alpha, long double t) {
  long double term = 1;
  for (int j = 1; j <= alpha; ++j) term *= j;  // Gamma(alpha+1)
  long double sum = term;
  const long double two_t2 = 2 * t * t;
  for (int k = 0; k < 400; ++k) {
    const long double next = -term * (alpha + 2 * k + 1) * (alpha + 2 * k + 2) /
                             ((k + 1) * two_t2);
    if (std::fabs(next) >= std::fabs(term)) break;
    term = next;
    sum += term;
    if (std::fabs(term) < 1e-21L * std::fabs(sum)) break;
  }
  return phi_l(t) * sum / std::pow(t, static_cast<long double>(alpha + 1));
}

std::array<long double, 6> moments_by_recursion(long double t) {
  std::array<long double, 6> m;
  m[0] = psi_l(t);
  m[1] = phi_l(t) - t * m[0];
  for (int a = 2; a <= 5; ++a) m[a] = (a - 1) * m[a - 2] - t * m[a - 1];
  return m;
}

long double moment_l(int alpha, long double t) {
  if (t > kSeriesT) return moment_series(alpha, t);
  return moments_by_recursion(t)[alpha];
}

}  // namespace

double phi(double t) {
  require_finite(t);
  return static_cast<double>(phi_l(t));
}

double upper_tail(double t) {
  require_finite(t);
  return static_cast<double>(psi_l(t));
}

double mills_ratio(double t) {
  require_finite(t);
  if (t >= kLargeT) return static_cast<double>(mills_cf(t));
  const long double p = phi_l(t);
  if (p == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(psi_l(t) / p);
}

double truncated_moment(int alpha, double t) {
  require_finite(t);
  if (alpha < 0 || alpha > 5) {
    throw std::domain_error("truncated_moment: alpha must be in {0,...,5}");
  }
  return static_cast<double>(moment_l(alpha, t));
}

double closed_form_R(double t) {
  require_finite(t);
  if (t > kSeriesT) return static_cast<double>(moment_series(5, t));
  const long double x = t;
  const long double p = 8 + 9 * x * x + x * x * x * x;
  const long double q = x * (15 + 10 * x * x + x * x * x * x);
  return static_cast<double>(p * phi_l(x) - q * psi_l(x));
}

double scaled_moment(double s, double t, int alpha) {
  require_finite(t);
  if (!(s > 0) || !std::isfinite(s)) {
    throw std::domain_error("scaled_moment: scale must be positive");
  }
  return static_cast<double>(
      std::pow(static_cast<long double>(s), static_cast<long double>(alpha)) *
      moment_l(alpha, static_cast<long double>(t) / s));
}

}  // namespace normbound
