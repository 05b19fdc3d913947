#include "normbound/tail_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "normbound/minimize.hpp"
#include "normbound/normal_kernel.hpp"

namespace normbound {
namespace {

void require_query(BoundQuery q) {
  if (!(q.scale > 0) || !std::isfinite(q.scale) || !std::isfinite(q.x)) {
    throw std::domain_error("bound: need finite x and scale > 0");
  }
}

constexpr double kC50 = 5.6990653095389416;  // 5!(e/5)^5

}  // namespace

double c50() { return kC50; }

double hoeffding_bound(BoundQuery q) {
  require_query(q);
  if (q.x <= 0) return 1.0;
  const double z = q.x / q.scale;
  return std::exp(-z * z / 2);
}

double pinelis_bound(BoundQuery q) {
  require_query(q);
  return kC50 * upper_tail(q.x / q.scale);
}

double combined_bound(BoundQuery q) {
  return std::min({1.0, hoeffding_bound(q), pinelis_bound(q)});
}

OptimalBound optimal_bound(BoundQuery q) {
  require_query(q);
  // Objective in terms of j with t = x - s*10^j; the scan covers
  // j in [-6, 6] and a golden-section pass refines around the best cell.
  auto objective = [&](double j) {
    const double t = q.x - q.scale * std::pow(10.0, j);
    return scaled_moment(q.scale, t, 5) / std::pow(q.x - t, 5);
  };
  const double j_lo = -6, j_hi = 6, j_step = 0.1;
  double best_j = j_lo, best_v = objective(j_lo);
  for (double j = j_lo + j_step; j <= j_hi + 1e-12; j += j_step) {
    const double v = objective(j);
    if (v < best_v) {
      best_v = v;
      best_j = j;
    }
  }
  const bool at_edge = best_j >= j_hi - 1e-12;
  const double a = std::max(j_lo, best_j - j_step);
  const double b = std::min(j_hi, best_j + j_step);
  auto [j_star, value] = golden_min(objective, a, b, 1e-10);
  if (value > best_v) {  // keep the scan value if refinement stalled
    j_star = best_j;
    value = best_v;
  }
  return {value, q.x - q.scale * std::pow(10.0, j_star), at_edge};
}

BoundReport bound_report(BoundQuery q) {
  BoundReport r;
  r.hoeffding = hoeffding_bound(q);
  r.pinelis = pinelis_bound(q);
  r.combined = std::min({1.0, r.hoeffding, r.pinelis});
  const OptimalBound opt = optimal_bound(q);
  r.optimal = opt.value;
  r.optimal_t = opt.arg_t;
  r.boundary_limit = opt.boundary_limit;
  return r;
}

double truncation_bound(const TruncationInput& inp) {
  double sum = 0, comp = 0;
  for (double p : inp.exceed_probs) {
    if (!(p >= 0) || !(p <= 1)) {
      throw std::domain_error("truncation_bound: probability outside [0,1]");
    }
    const double y = p - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return std::min(1.0, sum + combined_bound(inp.query));
}

double maximal_tail_bound(BoundQuery q) { return combined_bound(q); }

double maximal_moment_bound(AlphaBeta ab, double x, double t,
                            double snapshot_moment) {
  if (!(x > t)) throw std::domain_error("maximal_moment_bound: need x > t");
  if (!(snapshot_moment >= 0)) {
    throw std::domain_error("maximal_moment_bound: negative moment");
  }
  return k1_const(ab) * snapshot_moment /
         std::pow(x - t, ab.alpha - ab.beta);
}

double snapshot_moment_bound(AlphaBeta ab, double x, double t,
                             double snapshot_moment) {
  if (!(x > t)) throw std::domain_error("snapshot_moment_bound: need x > t");
  if (!(snapshot_moment >= 0)) {
    throw std::domain_error("snapshot_moment_bound: negative moment");
  }
  return k_const(ab) * snapshot_moment /
         std::pow(x - t, ab.alpha - ab.beta);
}

bool pointwise_k_check(AlphaBeta ab, double x, double t, double u) {
  if (!(x > t)) throw std::domain_error("pointwise_k_check: need x > t");
  // positive-part power with the convention 0^0 = 0
  auto pos_pow = [](double v, double p) {
    return v <= 0 ? 0.0 : std::pow(v, p);
  };
  const double lhs = pos_pow(u - x, ab.beta);
  const double rhs = k_const(ab) * pos_pow(u - t, ab.alpha) /
                     std::pow(x - t, ab.alpha - ab.beta);
  return lhs <= rhs + 1e-12;
}

double rademacher_discrete_bound(int n, double x) {
  if (n < 1) throw std::domain_error("rademacher_discrete_bound: need n >= 1");
  if (n > 62) {
    throw std::range_error(
        "rademacher_discrete_bound: n > 62 overflows exact coefficients");
  }
  // Sum of eps_i takes value n - 2k with weight C(n, k).
  const double threshold = x * std::sqrt(static_cast<double>(n));
  std::uint64_t binom = 1;  // C(n, 0)
  std::uint64_t count = 0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      binom = binom * static_cast<std::uint64_t>(n - k + 1) / k;
    }
    if (n - 2 * k >= threshold - 1e-9) count += binom;
  }
  const long double tail =
      static_cast<long double>(count) / std::exp2(static_cast<long double>(n));
  const long double c30 = 2 * std::exp(3.0L) / 9;
  return static_cast<double>(c30 * tail);
}

}  // namespace normbound
