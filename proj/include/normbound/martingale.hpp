#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "normbound/constants.hpp"

namespace normbound {

// The extremal mean-zero two-valued law with range 2:
// 2r with probability 1-r, 2r-2 with probability r.
struct TwoPointIncrement {
  double r;
  double hi;  // 2r
  double lo;  // 2r - 2
};
TwoPointIncrement two_point_increment(double r);

struct DiscreteDist {
  std::vector<double> support;
  std::vector<double> probs;
};

// Declared per-node scale data: either adapted brackets C <= X <= D with
// D - C <= 2 s_i, or a one-sided bound X <= D with conditional variance
// bound var and (D + var/D)/2 <= s_hat.
struct ScaleDecl {
  enum class Kind { bracket, variance };
  Kind kind = Kind::bracket;
  double c = 0;    // bracket lower bound
  double d = 0;    // bracket upper bound / one-sided bound
  double var = 0;  // conditional variance bound (variance kind)
};

struct NodeLaw {
  DiscreteDist dist;
  ScaleDecl decl;
};

struct ModelStep {
  NodeLaw base;  // default branch
  // adapted overrides keyed by the history (support-point indices of the
  // preceding steps)
  std::map<std::vector<int>, NodeLaw> branches;
  double s = 0;  // s_i or s_hat_i, a per-step constant
  bool adapted() const { return !branches.empty(); }
};

struct MartingaleModel {
  enum class Kind { martingale, supermartingale };
  Kind kind = Kind::martingale;
  double initial = 0;  // S_0 <= 0
  std::vector<ModelStep> steps;

  double aggregate_scale() const;  // sqrt(sum s_i^2)
};

// Validation error carrying JSON-style paths of the offending nodes.
class ModelValidationError : public std::runtime_error {
 public:
  explicit ModelValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Node-by-node check of the declared conditions; empty result means valid.
std::vector<std::string> validate(const MartingaleModel& model);

// Independent-increment martingale with X_i = a_i * eps_i and declared
// C = -|a_i|, D = |a_i|, s_i = |a_i|.
MartingaleModel rademacher_model(const std::vector<double>& weights);

// Single-step model carrying the extremal two-point increment, s_1 = 1.
MartingaleModel two_point_model(double r);

// Exact joint law of (S_n, M_n) with M_n = max_{0<=k<=n} S_k; path budget
// 2^20.
struct EnumerationResult {
  std::vector<std::pair<double, double>> sn_law;  // (value, prob), ascending
  std::vector<std::pair<double, double>> mn_law;

  double tail(double x) const;      // P(S_n >= x)
  double max_tail(double x) const;  // P(M_n >= x)
  double moment(double t, double alpha) const;      // E(S_n - t)_+^alpha
  double max_moment(double x, double beta) const;   // E(M_n - x)_+^beta
};
EnumerationResult enumerate_exact(const MartingaleModel& model);

// Streamed Monte Carlo with per-path keyed randomness; estimates are
// independent of the worker count, bit for bit.
struct McTailEstimate {
  double x;
  double sn_tail;
  double sn_halfwidth;  // 99% normal-approximation half-width
  double mn_tail;
  double mn_halfwidth;
};
std::vector<McTailEstimate> simulate_mc(const MartingaleModel& model,
                                        std::uint64_t n_paths,
                                        std::uint64_t seed,
                                        const std::vector<double>& x_grid,
                                        int threads = 1);

// Domination-check reports. slack = bound - observed; pass means the
// observed quantity never exceeds the bound beyond the additive tolerance.
struct SlackReport {
  bool pass = true;
  double min_slack = 0;
  double at_primary = 0;    // grid location of the minimal slack (t, x or r)
  double at_secondary = 0;  // second coordinate when the grid is 2-D
  std::vector<std::string> violations;
};

// E(S_n - t)_+^5 <= E(s Z - t)_+^5 on the grid; tolerance
// 1e-10 * max(1, rhs).
SlackReport verify_moment_domination(const MartingaleModel& model,
                                     const std::vector<double>& t_grid);

// P(S_n >= x) <= combined bound; for martingale models also
// P(M_n >= x) <= combined bound.
SlackReport verify_tail_domination(const MartingaleModel& model,
                                   const std::vector<double>& x_grid);

// L(r,t) = r(2r-2-t)_+^5 + (1-r)(2r-t)_+^5 <= R(t) on the product grid;
// tolerance 1e-9 * max(1, |R|).
SlackReport verify_lemma_LR(const std::vector<double>& r_grid,
                            const std::vector<double>& t_grid);
double lemma_L(double r, double t);

// E(M_n - x)_+^beta against the k1-based bound fed with the enumerated
// E(S_n - t)_+^alpha; also the beta = 0 Doob case and the snapshot
// inequality.
SlackReport verify_maximal_moment(const MartingaleModel& model, AlphaBeta ab,
                                  double x, double t);

}  // namespace normbound
