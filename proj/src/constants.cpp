#include "normbound/constants.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "normbound/minimize.hpp"
#include "normbound/quadrature.hpp"

namespace normbound {
namespace {

void require_order(AlphaBeta ab) {
  if (!std::isfinite(ab.alpha) || !std::isfinite(ab.beta) ||
      !(ab.beta >= 0) || !(ab.beta <= ab.alpha)) {
    throw std::domain_error("constants: need 0 <= beta <= alpha");
  }
}

void require_alpha_gt1(AlphaBeta ab) {
  if (!(ab.alpha > 1)) {
    throw std::domain_error("constants: need alpha > 1");
  }
}

// log of Gamma(x+1)(e/x)^x, with the x = 0 limit 0.
long double log_h(long double x) {
  if (x == 0) return 0;
  return std::lgamma(x + 1) + x * (1 - std::log(x));
}

// Inner integral I(sigma) = int_0^sigma beta s^{beta-1}/(1+s) ds, split at
// s = 1. For beta < 1 the head uses the s = v^{1/beta} substitution, which
// removes the endpoint singularity; the tail integrates on the log axis so
// that very large sigma stays cheap.
long double k1_inner(long double beta, long double log_sigma) {
  const long double sigma = std::exp(log_sigma);
  const long double head_cap = std::min(sigma, 1.0L);
  long double head;
  if (beta < 1) {
    const long double vmax = std::pow(head_cap, beta);
    head = integrate(
        [beta](long double v) { return 1 / (1 + std::pow(v, 1 / beta)); }, 0,
        vmax);
  } else {
    head = integrate(
        [beta](long double s) {
          return beta * std::pow(s, beta - 1) / (1 + s);
        },
        0, head_cap);
  }
  if (sigma <= 1) return head;
  const long double tail = integrate(
      [beta](long double w) {
        return beta * std::exp(beta * w) / (1 + std::exp(w));
      },
      0, log_sigma);
  return head + tail;
}

// log of the k1 objective at log sigma.
double k1_objective(double alpha, double beta, double log_sigma) {
  return static_cast<double>(
      alpha * std::log(k1_inner(beta, static_cast<long double>(log_sigma))) -
      static_cast<long double>(beta) * (alpha - 1) * log_sigma);
}

struct AbKey {
  double a, b;
  bool operator<(const AbKey& o) const {
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
};

std::mutex k1_memo_mutex;
std::map<AbKey, K1Result> k1_memo;

}  // namespace

double c_const(AlphaBeta ab) {
  require_order(ab);
  if (!(ab.alpha > 0)) throw std::domain_error("c_const: need alpha > 0");
  return static_cast<double>(std::exp(log_h(ab.alpha) - log_h(ab.beta)));
}

double k_const(AlphaBeta ab) {
  require_order(ab);
  if (!(ab.alpha > 0)) throw std::domain_error("k_const: need alpha > 0");
  const long double a = ab.alpha, b = ab.beta;
  auto xlogx = [](long double x) -> long double {
    return x == 0 ? 0 : x * std::log(x);
  };
  return static_cast<double>(
      std::exp(xlogx(b) + xlogx(a - b) - xlogx(a)));
}

double k2_const(AlphaBeta ab) {
  require_order(ab);
  require_alpha_gt1(ab);
  if (ab.beta == ab.alpha) {
    throw std::domain_error("k2_const: Gamma(0) pole at beta = alpha");
  }
  const long double a = ab.alpha, b = ab.beta;
  return static_cast<double>(
      std::exp(std::lgamma(1 + b) + std::lgamma(a - b) - std::lgamma(a)));
}

double k3_const(AlphaBeta ab) {
  require_order(ab);
  require_alpha_gt1(ab);
  const long double a = ab.alpha;
  return static_cast<double>(
      k_const(ab) * std::pow(a / (a - 1), a));
}

K1Result k1_with_maximizer(AlphaBeta ab) {
  require_order(ab);
  require_alpha_gt1(ab);
  if (ab.beta == 0) {
    return {1.0, std::numeric_limits<double>::quiet_NaN()};
  }
  {
    std::lock_guard<std::mutex> lock(k1_memo_mutex);
    auto it = k1_memo.find({ab.alpha, ab.beta});
    if (it != k1_memo.end()) return it->second;
  }
  // The objective vanishes at both ends of the sigma axis and has a unique
  // interior maximizer for beta < alpha; for beta = alpha it increases to its
  // supremum, so the bracket must reach far enough right for the stated
  // endpoint accuracy.
  const double lo = -14.0, hi = 36.0;
  const int kScan = 251;
  double best_ls = lo, best_val = -1e308;
  for (int i = 0; i < kScan; ++i) {
    const double ls = lo + (hi - lo) * i / (kScan - 1);
    const double v = k1_objective(ab.alpha, ab.beta, ls);
    if (v > best_val) {
      best_val = v;
      best_ls = ls;
    }
  }
  const double step = (hi - lo) / (kScan - 1);
  const double a = std::max(lo, best_ls - step);
  const double b = std::min(hi, best_ls + step);
  auto [ls_star, val] = golden_max(
      [&](double ls) { return k1_objective(ab.alpha, ab.beta, ls); }, a, b,
      1e-12);
  K1Result res{std::exp(val), std::exp(ls_star)};
  std::lock_guard<std::mutex> lock(k1_memo_mutex);
  k1_memo.insert({{ab.alpha, ab.beta}, res});
  return res;
}

double k1_const(AlphaBeta ab) { return k1_with_maximizer(ab).value; }

double sigma_star(double d0, double var) {
  if (!(d0 > 0) || !(var >= 0) || !std::isfinite(d0) || !std::isfinite(var)) {
    throw std::domain_error("sigma_star: need d0 > 0 and var >= 0");
  }
  const double sigma = std::sqrt(var);
  if (sigma >= d0) return sigma;
  return (d0 + var / d0) / 2;
}

StepScale step_scale(double d, double var) {
  if (!(d > 0) || !(var >= 0) || !std::isfinite(d) || !std::isfinite(var)) {
    throw std::domain_error("step_scale: need d > 0 and var >= 0");
  }
  return {d, var, (d + var / d) / 2};
}

ScaleVector aggregate(const std::vector<double>& scales) {
  if (scales.empty()) {
    throw std::domain_error("aggregate: empty scale list");
  }
  double sum = 0, comp = 0;  // Kahan
  for (double s : scales) {
    if (!(s > 0) || !std::isfinite(s)) {
      throw std::domain_error("aggregate: scales must be positive");
    }
    const double y = s * s - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return {scales, std::sqrt(sum)};
}

double variance_cap(double c, double d) {
  if (!(c < 0) || !(d > 0)) {
    throw std::domain_error("variance_cap: need c < 0 < d");
  }
  return -c * d;
}

}  // namespace normbound
