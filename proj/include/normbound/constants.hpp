#pragma once

#include <vector>

namespace normbound {

// Order pair for the constant families; 0 <= beta <= alpha.
struct AlphaBeta {
  double alpha;
  double beta;
};

// One-step scale data: one-sided increment bound d, conditional variance
// bound, and the derived scale s_hat = (d + variance/d)/2.
struct StepScale {
  double d;
  double variance;
  double s_hat;
};

struct ScaleVector {
  std::vector<double> entries;
  double aggregate;  // sqrt(sum of squares)
};

struct K1Result {
  double value;
  double sigma;  // maximizer of the defining sup
};

// c_{alpha,beta} = Gamma(alpha+1)(e/alpha)^alpha / (Gamma(beta+1)(e/beta)^beta),
// with the beta = 0 denominator taken as its limit 1.
double c_const(AlphaBeta ab);

// k_{alpha,beta} = beta^beta (alpha-beta)^{alpha-beta} / alpha^alpha, 0^0 = 1.
double k_const(AlphaBeta ab);

// k_{1;alpha,beta} = sup_{sigma>0} sigma^{-beta(alpha-1)}
//                    (int_0^sigma beta s^{beta-1}/(1+s) ds)^alpha,
// alpha > 1; k_1(alpha, 0) = 1 by convention.
double k1_const(AlphaBeta ab);
K1Result k1_with_maximizer(AlphaBeta ab);

// k_{2;alpha,beta} = Gamma(1+beta) Gamma(alpha-beta) / Gamma(alpha),
// alpha > 1, beta < alpha (Gamma(0) pole at beta = alpha).
double k2_const(AlphaBeta ab);

// k_{3;alpha,beta} = k_{alpha,beta} (alpha/(alpha-1))^alpha, alpha > 1.
double k3_const(AlphaBeta ab);

// sigma_*(d0, sigma^2) = (1/2) inf_{d>=d0} (d + sigma^2/d).
double sigma_star(double d0, double var);

// s_hat = (d + var/d)/2 packaged with its inputs.
StepScale step_scale(double d, double var);

// Euclidean norm of a non-empty list of positive scales; compensated
// summation keeps the result independent of entry order.
ScaleVector aggregate(const std::vector<double>& scales);

// Maximal variance |c| d of a mean-zero r.v. supported on [c, d], c < 0 < d.
double variance_cap(double c, double d);

}  // namespace normbound
