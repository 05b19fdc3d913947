#pragma once

#include <vector>

#include "normbound/constants.hpp"

namespace normbound {

struct BoundQuery {
  double x;      // threshold
  double scale;  // s, s_hat, or r; must be positive
};

struct OptimalBound {
  double value;
  double arg_t;
  bool boundary_limit;  // infimum approached at the scan boundary
};

struct BoundReport {
  double hoeffding;
  double pinelis;
  double combined;
  double optimal;
  double optimal_t;
  bool boundary_limit;
};

struct TruncationInput {
  std::vector<double> exceed_probs;  // P(X_i >= D_{i-1}) per step
  BoundQuery query;
};

// The constant c_{5,0} = 5!(e/5)^5 = 5.69906...
double c50();

// exp(-x^2 / (2 s^2)); 1 for x <= 0 (tail bounds are vacuous there).
double hoeffding_bound(BoundQuery q);

// c_{5,0} Psi(x/s); deliberately not clamped, may exceed 1 for small x.
double pinelis_bound(BoundQuery q);

// min(1, hoeffding, pinelis).
double combined_bound(BoundQuery q);

// inf over t < x of E(sZ - t)_+^5 / (x - t)^5, by log-spaced scan plus
// golden-section refinement.
OptimalBound optimal_bound(BoundQuery q);

BoundReport bound_report(BoundQuery q);

// min(1, sum of exceedance probabilities + combined_bound(query)).
double truncation_bound(const TruncationInput& inp);

// Same value as combined_bound; tagged for the running maximum M_n of a
// martingale with S_0 = 0.
double maximal_tail_bound(BoundQuery q);

// k_{1;alpha,beta} * snapshot_moment / (x-t)^{alpha-beta}, an upper bound on
// E(M_n - x)_+^beta given snapshot_moment >= E(S_n - t)_+^alpha; x > t,
// alpha > 1.
double maximal_moment_bound(AlphaBeta ab, double x, double t,
                            double snapshot_moment);

// k_{alpha,beta} * snapshot_moment / (x-t)^{alpha-beta}, bounding
// E(S_n - x)_+^beta; x > t.
double snapshot_moment_bound(AlphaBeta ab, double x, double t,
                             double snapshot_moment);

// True iff (u-x)_+^beta <= k_{alpha,beta} (u-t)_+^alpha / (x-t)^{alpha-beta}
// holds at u, within 1e-12 absolute slack.
bool pointwise_k_check(AlphaBeta ab, double x, double t, double u);

// (2e^3/9) * P(n^{-1/2}(eps_1+...+eps_n) >= x), with the symmetric +-1
// convolution computed exactly from binomial coefficients; n <= 62.
double rademacher_discrete_bound(int n, double x);

}  // namespace normbound
