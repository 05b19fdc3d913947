#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "normbound/constants.hpp"

namespace normbound {

// A coordinate value; scalar corpora use one component, the Banach-sum
// corpus uses fixed-dimension vectors.
using Point = std::vector<double>;

struct DiscreteVariable {
  std::vector<Point> support;
  std::vector<double> probs;
};

struct LipschitzProfile {
  std::vector<double> rho_sups;
  std::vector<double> radii;  // rho_sups / 2
  double radius;              // Euclidean norm of radii
};

struct ConcentrationTail {
  double plain;    // min(1, c50 Psi(x/r))
  double tighter;  // min(plain, exp(-x^2/(2 r^2)))
};

// Per-coordinate enumeration output: the tightest prefix-free constant
// bounding Xi_i from above, the sup over prefixes of E Xi_i(prefix, X_i)^2,
// the relaxed radius r_hat_i, and the induced scale s_i.
struct XiAnalysis {
  double d_sup;
  double second_moment_sup;
  double r_hat;
  double s_i;
};

using CorpusFunction = std::function<double(const std::vector<Point>&)>;

LipschitzProfile profile_radius(const std::vector<double>& rho_sups);

ConcentrationTail concentration_tail(double radius, double x);

// Exact enumeration of Xi_i(prefix, x_i) over all prefixes and coordinate
// values; product of support sizes capped at 1e6. The coordinate index is
// zero-based.
XiAnalysis exact_xi_analysis(const CorpusFunction& g,
                             const std::vector<DiscreteVariable>& vars,
                             int coord);

// min over support points x of E rho(X, x)^2. Restricting the inf to the
// support may overshoot the unrestricted inf; callers are told so.
double rho_second_moment_bound(
    const std::function<double(const Point&, const Point&)>& rho,
    const DiscreteVariable& var);

// s_i = (d_i + m_i/d_i)/2 per coordinate, aggregated in Euclidean norm.
ScaleVector banach_scales(const std::vector<double>& d,
                          const std::vector<double>& second_moments);

// Named corpus functions: sum, abs-sum, max, norm1-of-sums.
enum class BuiltinG { sum, abs_sum, max_coord, norm1_of_sums };
BuiltinG builtin_g_from_name(const std::string& name);
CorpusFunction builtin_g(BuiltinG which);

// Full law of Y = g(X_1,...,X_n) by enumeration: (value, prob) ascending,
// probabilities of equal values merged. Budget 1e6 product states.
std::vector<std::pair<double, double>> enumerate_function_law(
    const CorpusFunction& g, const std::vector<DiscreteVariable>& vars);

// E Y from an enumerated law.
double law_mean(const std::vector<std::pair<double, double>>& law);

}  // namespace normbound
