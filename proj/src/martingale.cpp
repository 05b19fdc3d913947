#include "normbound/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "normbound/normal_kernel.hpp"
#include "normbound/rng.hpp"
#include "normbound/tail_bounds.hpp"

namespace normbound {
namespace {

constexpr std::uint64_t kPathBudget = 1u << 20;
constexpr double kNodeTol = 1e-12;

double kahan_total(const std::vector<double>& v) {
  double sum = 0, comp = 0;
  for (double x : v) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

std::string node_path(int step, const std::vector<int>& prefix) {
  std::ostringstream os;
  os << "/steps/" << step;
  if (!prefix.empty()) {
    os << " (history [";
    for (size_t i = 0; i < prefix.size(); ++i) {
      if (i) os << ",";
      os << prefix[i];
    }
    os << "])";
  }
  return os.str();
}

const NodeLaw& law_at(const ModelStep& step, const std::vector<int>& prefix) {
  auto it = step.branches.find(prefix);
  return it == step.branches.end() ? step.base : it->second;
}

void check_node(const MartingaleModel& model, int step_idx,
                const std::vector<int>& prefix, const NodeLaw& law, double s,
                std::vector<std::string>& out) {
  const auto& d = law.dist;
  const std::string where = node_path(step_idx, prefix);
  if (d.support.empty() || d.support.size() != d.probs.size()) {
    out.push_back(where + ": support/probs size mismatch or empty");
    return;
  }
  double psum = 0, mean = 0, m2 = 0;
  for (size_t i = 0; i < d.support.size(); ++i) {
    if (!(d.probs[i] >= 0)) {
      out.push_back(where + ": negative probability");
      return;
    }
    psum += d.probs[i];
    mean += d.probs[i] * d.support[i];
  }
  if (std::fabs(psum - 1) > kNodeTol) {
    out.push_back(where + ": probabilities sum to " + std::to_string(psum));
  }
  for (size_t i = 0; i < d.support.size(); ++i) {
    const double c = d.support[i] - mean;
    m2 += d.probs[i] * c * c;
  }
  if (model.kind == MartingaleModel::Kind::martingale) {
    if (std::fabs(mean) > kNodeTol) {
      out.push_back(where + ": conditional mean " + std::to_string(mean) +
                    " != 0 for martingale kind");
    }
  } else if (mean > kNodeTol) {
    out.push_back(where + ": conditional mean " + std::to_string(mean) +
                  " > 0 for supermartingale kind");
  }
  const ScaleDecl& sd = law.decl;
  if (sd.kind == ScaleDecl::Kind::bracket) {
    for (double v : d.support) {
      if (v < sd.c - kNodeTol || v > sd.d + kNodeTol) {
        out.push_back(where + ": support point outside declared [C, D]");
        break;
      }
    }
    if (sd.d - sd.c > 2 * s + kNodeTol) {
      out.push_back(where + ": D - C exceeds 2 s_i");
    }
  } else {
    for (double v : d.support) {
      if (v > sd.d + kNodeTol) {
        out.push_back(where + ": support point above declared D");
        break;
      }
    }
    if (m2 > sd.var + kNodeTol) {
      out.push_back(where + ": conditional variance exceeds declared bound");
    }
    if (!(sd.d > 0)) {
      out.push_back(where + ": variance-kind D must be positive");
    } else if ((sd.d + sd.var / sd.d) / 2 > s + kNodeTol) {
      out.push_back(where + ": (D + var/D)/2 exceeds s_hat_i");
    }
  }
}

// Recursion over histories is needed only while adapted steps remain ahead;
// past the last one every node carries the prefix-independent base law, so
// each remaining step is checked once instead of once per history.
void validate_rec(const MartingaleModel& model, int step_idx, int last_adapted,
                  std::vector<int>& prefix, std::vector<std::string>& out) {
  if (static_cast<size_t>(step_idx) == model.steps.size()) return;
  if (step_idx > last_adapted) {
    const std::vector<int> no_prefix;
    for (size_t i = step_idx; i < model.steps.size(); ++i) {
      check_node(model, static_cast<int>(i), no_prefix, model.steps[i].base,
                 model.steps[i].s, out);
    }
    return;
  }
  const ModelStep& step = model.steps[step_idx];
  const NodeLaw& law = law_at(step, prefix);
  check_node(model, step_idx, prefix, law, step.s, out);
  if (out.size() > 64) return;  // enough to report
  for (int i = 0; i < static_cast<int>(law.dist.support.size()); ++i) {
    prefix.push_back(i);
    validate_rec(model, step_idx + 1, last_adapted, prefix, out);
    prefix.pop_back();
  }
}

struct PathAccum {
  std::map<double, double> sn;
  std::map<double, double> mn;
};

void enumerate_rec(const MartingaleModel& model, int step_idx,
                   std::vector<int>& prefix, double s_cur, double m_cur,
                   double prob, std::uint64_t& paths, PathAccum& acc) {
  if (static_cast<size_t>(step_idx) == model.steps.size()) {
    if (++paths > kPathBudget) {
      throw std::range_error("enumerate_exact: path budget 2^20 exceeded");
    }
    acc.sn[s_cur] += prob;
    acc.mn[m_cur] += prob;
    return;
  }
  const NodeLaw& law = law_at(model.steps[step_idx], prefix);
  for (int i = 0; i < static_cast<int>(law.dist.support.size()); ++i) {
    const double s_next = s_cur + law.dist.support[i];
    prefix.push_back(i);
    enumerate_rec(model, step_idx + 1, prefix, s_next,
                  std::max(m_cur, s_next), prob * law.dist.probs[i], paths,
                  acc);
    prefix.pop_back();
  }
}

double law_tail(const std::vector<std::pair<double, double>>& law, double x) {
  double sum = 0, comp = 0;
  for (auto it = law.rbegin(); it != law.rend(); ++it) {
    if (it->first < x) break;
    const double y = it->second - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return std::min(1.0, sum);
}

double law_plus_moment(const std::vector<std::pair<double, double>>& law,
                       double t, double alpha) {
  double sum = 0, comp = 0;
  for (const auto& [v, p] : law) {
    if (v <= t) continue;
    const double y = p * std::pow(v - t, alpha) - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum;
}

}  // namespace

TwoPointIncrement two_point_increment(double r) {
  if (!(r >= 0) || !(r <= 1)) {
    throw std::domain_error("two_point_increment: r must lie in [0,1]");
  }
  return {r, 2 * r, 2 * r - 2};
}

double MartingaleModel::aggregate_scale() const {
  std::vector<double> s;
  s.reserve(steps.size());
  for (const auto& st : steps) s.push_back(st.s);
  return aggregate(s).aggregate;
}

ModelValidationError::ModelValidationError(std::vector<std::string> violations)
    : std::runtime_error(violations.empty()
                             ? "model validation failed"
                             : "model validation failed: " + violations[0]),
      violations_(std::move(violations)) {}

std::vector<std::string> validate(const MartingaleModel& model) {
  std::vector<std::string> out;
  if (model.initial > 0) {
    out.push_back("/initial: S_0 must be <= 0");
  }
  if (model.steps.empty()) {
    out.push_back("/steps: empty");
    return out;
  }
  for (size_t i = 0; i < model.steps.size(); ++i) {
    if (!(model.steps[i].s > 0)) {
      out.push_back("/steps/" + std::to_string(i) + "/s: must be positive");
    }
  }
  int last_adapted = -1;
  for (size_t i = 0; i < model.steps.size(); ++i) {
    if (model.steps[i].adapted()) last_adapted = static_cast<int>(i);
  }
  std::vector<int> prefix;
  validate_rec(model, 0, last_adapted, prefix, out);
  return out;
}

MartingaleModel rademacher_model(const std::vector<double>& weights) {
  if (weights.empty()) {
    throw std::domain_error("rademacher_model: empty weight list");
  }
  MartingaleModel m;
  m.kind = MartingaleModel::Kind::martingale;
  m.initial = 0;
  for (double w : weights) {
    const double a = std::fabs(w);
    if (!(a > 0)) {
      throw std::domain_error("rademacher_model: weights must be nonzero");
    }
    ModelStep step;
    step.base.dist = {{a, -a}, {0.5, 0.5}};
    step.base.decl = {ScaleDecl::Kind::bracket, -a, a, 0};
    step.s = a;
    m.steps.push_back(std::move(step));
  }
  return m;
}

MartingaleModel two_point_model(double r) {
  const TwoPointIncrement inc = two_point_increment(r);
  MartingaleModel m;
  m.kind = MartingaleModel::Kind::martingale;
  m.initial = 0;
  ModelStep step;
  if (r == 0) {
    step.base.dist = {{inc.hi}, {1.0}};
  } else if (r == 1) {
    step.base.dist = {{inc.lo}, {1.0}};
  } else {
    step.base.dist = {{inc.hi, inc.lo}, {1 - r, r}};
  }
  step.base.decl = {ScaleDecl::Kind::bracket, inc.lo, inc.hi, 0};
  step.s = 1;
  m.steps.push_back(std::move(step));
  return m;
}

double EnumerationResult::tail(double x) const { return law_tail(sn_law, x); }

double EnumerationResult::max_tail(double x) const {
  return law_tail(mn_law, x);
}

double EnumerationResult::moment(double t, double alpha) const {
  return law_plus_moment(sn_law, t, alpha);
}

double EnumerationResult::max_moment(double x, double beta) const {
  if (beta == 0) return law_tail(mn_law, x);
  return law_plus_moment(mn_law, x, beta);
}

EnumerationResult enumerate_exact(const MartingaleModel& model) {
  auto violations = validate(model);
  if (!violations.empty()) throw ModelValidationError(std::move(violations));
  PathAccum acc;
  std::vector<int> prefix;
  std::uint64_t paths = 0;
  const double s0 = model.initial;
  enumerate_rec(model, 0, prefix, s0, s0, 1.0, paths, acc);
  EnumerationResult res;
  res.sn_law.assign(acc.sn.begin(), acc.sn.end());
  res.mn_law.assign(acc.mn.begin(), acc.mn.end());
  return res;
}

std::vector<McTailEstimate> simulate_mc(const MartingaleModel& model,
                                        std::uint64_t n_paths,
                                        std::uint64_t seed,
                                        const std::vector<double>& x_grid,
                                        int threads) {
  auto violations = validate(model);
  if (!violations.empty()) throw ModelValidationError(std::move(violations));
  if (n_paths < 10000) {
    throw std::domain_error("simulate_mc: need at least 1e4 paths");
  }
  if (threads < 1) threads = 1;
  const size_t nx = x_grid.size();
  std::vector<std::vector<std::uint64_t>> sn_counts(
      threads, std::vector<std::uint64_t>(nx, 0));
  std::vector<std::vector<std::uint64_t>> mn_counts = sn_counts;

  auto run_range = [&](int worker, std::uint64_t begin, std::uint64_t end) {
    auto& sc = sn_counts[worker];
    auto& mc = mn_counts[worker];
    std::vector<int> prefix(model.steps.size());
    for (std::uint64_t p = begin; p < end; ++p) {
      PathRng rng(seed, p);
      prefix.clear();
      double s = model.initial, m = model.initial;
      for (size_t i = 0; i < model.steps.size(); ++i) {
        const NodeLaw& law = law_at(model.steps[i], prefix);
        const double u = rng.next_unit();
        double cum = 0;
        int pick = static_cast<int>(law.dist.support.size()) - 1;
        for (int j = 0; j < static_cast<int>(law.dist.probs.size()); ++j) {
          cum += law.dist.probs[j];
          if (u < cum) {
            pick = j;
            break;
          }
        }
        prefix.push_back(pick);
        s += law.dist.support[pick];
        m = std::max(m, s);
      }
      for (size_t k = 0; k < nx; ++k) {
        if (s >= x_grid[k]) ++sc[k];
        if (m >= x_grid[k]) ++mc[k];
      }
    }
  };

  if (threads == 1) {
    run_range(0, 0, n_paths);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = n_paths / threads;
    for (int w = 0; w < threads; ++w) {
      const std::uint64_t b = w * chunk;
      const std::uint64_t e = (w == threads - 1) ? n_paths : b + chunk;
      pool.emplace_back(run_range, w, b, e);
    }
    for (auto& th : pool) th.join();
  }

  // integer counts make the merge order irrelevant
  std::vector<McTailEstimate> out(nx);
  const double z99 = 2.5758293035489004;  // 99.5% normal quantile
  for (size_t k = 0; k < nx; ++k) {
    std::uint64_t sc = 0, mc = 0;
    for (int w = 0; w < threads; ++w) {
      sc += sn_counts[w][k];
      mc += mn_counts[w][k];
    }
    const double n = static_cast<double>(n_paths);
    const double ps = static_cast<double>(sc) / n;
    const double pm = static_cast<double>(mc) / n;
    out[k] = {x_grid[k], ps, z99 * std::sqrt(ps * (1 - ps) / n), pm,
              z99 * std::sqrt(pm * (1 - pm) / n)};
  }
  return out;
}

SlackReport verify_moment_domination(const MartingaleModel& model,
                                     const std::vector<double>& t_grid) {
  const EnumerationResult law = enumerate_exact(model);
  const double s = model.aggregate_scale();
  SlackReport rep;
  bool first = true;
  for (double t : t_grid) {
    const double lhs = law.moment(t, 5.0);
    const double rhs = scaled_moment(s, t, 5);
    const double slack = rhs - lhs;
    if (first || slack < rep.min_slack) {
      rep.min_slack = slack;
      rep.at_primary = t;
      first = false;
    }
    if (lhs > rhs + 1e-10 * std::max(1.0, rhs)) {
      rep.pass = false;
      rep.violations.push_back("t=" + std::to_string(t) + ": E(S_n-t)_+^5=" +
                               std::to_string(lhs) + " > " +
                               std::to_string(rhs));
    }
  }
  return rep;
}

SlackReport verify_tail_domination(const MartingaleModel& model,
                                   const std::vector<double>& x_grid) {
  const EnumerationResult law = enumerate_exact(model);
  const double s = model.aggregate_scale();
  SlackReport rep;
  bool first = true;
  const bool check_max = model.kind == MartingaleModel::Kind::martingale;
  for (double x : x_grid) {
    const double bound = combined_bound({x, s});
    const double tails[2] = {law.tail(x), check_max ? law.max_tail(x) : 0};
    for (int which = 0; which < (check_max ? 2 : 1); ++which) {
      const double slack = bound - tails[which];
      if (first || slack < rep.min_slack) {
        rep.min_slack = slack;
        rep.at_primary = x;
        first = false;
      }
      if (tails[which] > bound + 1e-10 * std::max(1.0, bound)) {
        rep.pass = false;
        rep.violations.push_back(
            std::string(which ? "P(M_n>=x)" : "P(S_n>=x)") +
            " at x=" + std::to_string(x) + ": " +
            std::to_string(tails[which]) + " > " + std::to_string(bound));
      }
    }
  }
  return rep;
}

double lemma_L(double r, double t) {
  auto p5 = [](double v) {
    if (v <= 0) return 0.0;
    const double v2 = v * v;
    return v2 * v2 * v;
  };
  return r * p5(2 * r - 2 - t) + (1 - r) * p5(2 * r - t);
}

SlackReport verify_lemma_LR(const std::vector<double>& r_grid,
                            const std::vector<double>& t_grid) {
  if (r_grid.empty() || t_grid.empty()) {
    throw std::domain_error("verify_lemma_LR: empty grid");
  }
  SlackReport rep;
  bool first = true;
  for (double t : t_grid) {
    const double big_r = closed_form_R(t);
    const double tol = 1e-9 * std::max(1.0, std::fabs(big_r));
    for (double r : r_grid) {
      const double l = lemma_L(r, t);
      const double slack = big_r - l;
      if (first || slack < rep.min_slack) {
        rep.min_slack = slack;
        rep.at_primary = r;
        rep.at_secondary = t;
        first = false;
      }
      if (l > big_r + tol) {
        rep.pass = false;
        rep.violations.push_back("(r,t)=(" + std::to_string(r) + "," +
                                 std::to_string(t) + "): L=" +
                                 std::to_string(l) + " > R=" +
                                 std::to_string(big_r));
      }
    }
  }
  return rep;
}

SlackReport verify_maximal_moment(const MartingaleModel& model, AlphaBeta ab,
                                  double x, double t) {
  if (!(x > t)) throw std::domain_error("verify_maximal_moment: need x > t");
  if (model.kind != MartingaleModel::Kind::martingale) {
    throw std::domain_error("verify_maximal_moment: martingale kind required");
  }
  const EnumerationResult law = enumerate_exact(model);
  const double snapshot = law.moment(t, ab.alpha);
  SlackReport rep;
  bool first = true;
  auto check = [&](const char* what, double lhs, double rhs) {
    const double slack = rhs - lhs;
    if (first || slack < rep.min_slack) {
      rep.min_slack = slack;
      rep.at_primary = x;
      first = false;
    }
    if (lhs > rhs + 1e-10 * std::max(1.0, rhs)) {
      rep.pass = false;
      rep.violations.push_back(std::string(what) + ": " +
                               std::to_string(lhs) + " > " +
                               std::to_string(rhs));
    }
  };
  check("E(M_n-x)_+^beta vs k1 bound", law.max_moment(x, ab.beta),
        maximal_moment_bound(ab, x, t, snapshot));
  check("P(M_n>=x) vs Doob", law.max_tail(x),
        snapshot / std::pow(x - t, ab.alpha));
  const double snapshot_lhs =
      ab.beta == 0 ? law.tail(x) : law.moment(x, ab.beta);
  check("E(S_n-x)_+^beta vs k bound", snapshot_lhs,
        snapshot_moment_bound(ab, x, t, snapshot));
  return rep;
}

}  // namespace normbound
