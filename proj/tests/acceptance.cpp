// Acceptance gate: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "normbound/constants.hpp"
#include "normbound/lipschitz.hpp"
#include "normbound/martingale.hpp"
#include "normbound/model_io.hpp"
#include "normbound/normal_kernel.hpp"
#include "normbound/quadrature.hpp"
#include "normbound/tail_bounds.hpp"

using namespace normbound;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

void report(int criterion, bool pass, double elapsed,
            const std::string& detail) {
  std::printf("criterion %d: %s (%.2fs) %s\n", criterion,
              pass ? "PASS" : "FAIL", elapsed, detail.c_str());
  if (!pass) ++g_failures;
}

// Quadrature oracle for E (Z - t)_+^alpha in the factored form
// phi(t) int_0^inf u^alpha exp(-t u - u^2/2) du, long double throughout.
long double moment_oracle(int alpha, long double t) {
  const auto f = [&](long double u) {
    long double p = 1;
    for (int i = 0; i < alpha; ++i) p *= u;
    return p * expl(-t * u - u * u / 2);
  };
  const long double hi = 60 + 8 * fabsl(t);
  return expl(-t * t / 2) * integrate(f, 0.0L, hi, 1e-13L) /
         sqrtl(2 * acosl(-1.0L));
}

void criterion1() {
  Timer tm;
  const bool pass =
      std::fabs(c_const({5, 0}) - 5.699) < 1e-3 &&
      std::fabs(c_const({3, 0}) - 4.4634) < 1e-4;
  report(1, pass, tm.seconds(), "constant reproduction c_{5,0}, c_{3,0}");
}

void criterion2() {
  Timer tm;
  bool pass = true;
  double worst = 0;
  for (int alpha = 0; alpha <= 5 && pass; ++alpha) {
    for (double t = -10; t <= 10.0001; t += 0.1) {
      const long double want = moment_oracle(alpha, t);
      const long double got = truncated_moment(alpha, t);
      const double rel =
          static_cast<double>(fabsl(got - want) / fmaxl(fabsl(want), 1e-300L));
      worst = std::max(worst, rel);
      if (rel > 1e-9) pass = false;
    }
  }
  for (double t = -10; t <= 40.0001; t += 0.1) {
    const long double want = moment_oracle(5, t);
    const double got = closed_form_R(t);
    if (want < 1e-300L) {
      if (std::fabs(got) > 1e-300) pass = false;
      continue;
    }
    const double rel = static_cast<double>(fabsl(got - want) / want);
    worst = std::max(worst, rel);
    if (rel > 1e-9) pass = false;
  }
  const double el = tm.seconds();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", worst);
  report(2, pass && el < 5, el,
         std::string("kernel vs quadrature oracle, worst rel err ") + buf);
}

void criterion3() {
  Timer tm;
  std::vector<double> rs, ts;
  for (int i = 0; i <= 200; ++i) rs.push_back(i / 200.0);
  for (int i = 0; i <= 3200; ++i) ts.push_back(-30 + i * 0.01);
  const SlackReport rep = verify_lemma_LR(rs, ts);
  const double el = tm.seconds();
  report(3, rep.pass && rep.min_slack > 0 && el < 30, el,
         "lemma grid, min slack " + std::to_string(rep.min_slack) + " at (r,t)=(" +
             std::to_string(rep.at_primary) + "," +
             std::to_string(rep.at_secondary) + ")");
}

void criterion4() {
  Timer tm;
  bool pass = true;
  double min_slack = HUGE_VAL;
  for (double alpha : {1.5, 2.0, 3.0, 5.0}) {
    for (double beta = 0; beta < alpha - 1e-9; beta += 0.25) {
      const AlphaBeta ab{alpha, beta};
      const double k1 = k1_const(ab);
      const double s1 = k1 - k_const(ab);
      const double s2 = std::min(k2_const(ab), k3_const(ab)) - k1;
      min_slack = std::min({min_slack, s1, s2});
      if (s1 < -1e-8 || s2 < -1e-8) pass = false;
    }
    if (std::fabs(k1_const({alpha, alpha}) -
                  std::pow(alpha / (alpha - 1), alpha)) > 1e-6) {
      pass = false;
    }
  }
  const double el = tm.seconds();
  report(4, pass && el < 60, el,
         "constant chain, min slack " + std::to_string(min_slack));
}

bool dominated(const MartingaleModel& m) {
  const double s = m.aggregate_scale();
  std::vector<double> ts;
  for (double t = -6 * s; t <= 6 * s + 1e-12; t += 0.25 * s) ts.push_back(t);
  if (!verify_moment_domination(m, ts).pass) return false;
  const EnumerationResult law = enumerate_exact(m);
  std::vector<double> xs;
  for (const auto& [v, p] : law.sn_law) xs.push_back(v);
  for (const auto& [v, p] : law.mn_law) xs.push_back(v);
  return verify_tail_domination(m, xs).pass;
}

void criterion5() {
  Timer tm;
  bool pass = true;
  std::string where;
  for (int n = 1; n <= 12 && pass; ++n) {
    std::vector<double> equal(n, 1.0), lin(n);
    for (int i = 0; i < n; ++i) lin[i] = i + 1;
    if (!dominated(rademacher_model(equal)) ||
        !dominated(rademacher_model(lin))) {
      pass = false;
      where = "rademacher n=" + std::to_string(n);
    }
  }
  for (int i = 0; i <= 10 && pass; ++i) {
    if (!dominated(two_point_model(i / 10.0))) {
      pass = false;
      where = "twopoint r=" + std::to_string(i / 10.0);
    }
  }
  if (pass) {
    const MartingaleModel adapted =
        load_model_file(std::string(NORMBOUND_DATA_DIR) +
                        "/model_adapted.json");
    if (!dominated(adapted)) {
      pass = false;
      where = "adapted model";
    }
  }
  const double el = tm.seconds();
  report(5, pass && el < 60, el,
         pass ? "enumeration domination over all model families" : where);
}

void criterion6() {
  Timer tm;
  bool pass = true;
  for (double x = 0; x <= 8.0001; x += 0.1) {
    if (optimal_bound({x, 1}).value > combined_bound({x, 1}) + 1e-10) {
      pass = false;
    }
  }
  const double lo = pinelis_bound({1.88, 1}) - hoeffding_bound({1.88, 1});
  const double hi = pinelis_bound({1.90, 1}) - hoeffding_bound({1.90, 1});
  if (!(lo > 0 && hi < 0)) pass = false;
  const double el = tm.seconds();
  report(6, pass && el < 5, el,
         "bound chain and crossover bracket [1.88, 1.90]");
}

void criterion7() {
  Timer tm;
  bool pass = true;
  for (int n : {2, 4, 8, 16}) {
    const MartingaleModel m = rademacher_model(
        std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))));
    const EnumerationResult law = enumerate_exact(m);
    for (const auto& [x, p] : law.sn_law) {
      if (law.tail(x) > rademacher_discrete_bound(n, x) + 1e-12) {
        pass = false;
      }
    }
  }
  const double el = tm.seconds();
  report(7, pass && el < 10, el, "discrete rademacher comparison");
}

// sup over assignments of the swing of g in coordinate i
double rho_sup(const CorpusFunction& g,
               const std::vector<DiscreteVariable>& vars, size_t i) {
  std::vector<size_t> idx(vars.size(), 0);
  std::vector<Point> args(vars.size());
  double sup = 0;
  for (;;) {
    for (size_t k = 0; k < vars.size(); ++k) {
      args[k] = vars[k].support[idx[k]];
    }
    double lo = HUGE_VAL, hi = -HUGE_VAL;
    for (const Point& v : vars[i].support) {
      args[i] = v;
      const double y = g(args);
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
    sup = std::max(sup, hi - lo);
    size_t k = 0;
    for (; k < vars.size(); ++k) {
      if (k == i) continue;
      if (++idx[k] < vars[k].support.size()) break;
      idx[k] = 0;
    }
    if (k == vars.size()) return sup;
  }
}

double l1_dist(const Point& a, const Point& b) {
  double d = 0;
  for (size_t k = 0; k < a.size(); ++k) d += std::fabs(a[k] - b[k]);
  return d;
}

// Per-prefix checks of the conditional shift function Xi_i: zero mean and
// the convex-case pointwise bound Xi_i(prefix, x) <= rho(x, E X_i).
bool xi_prefix_checks(const CorpusFunction& g,
                      const std::vector<DiscreteVariable>& vars, size_t i,
                      bool convex_check) {
  const size_t n = vars.size();
  const DiscreteVariable& vi = vars[i];
  Point mean_x(vi.support[0].size(), 0.0);
  for (size_t j = 0; j < vi.support.size(); ++j) {
    for (size_t k = 0; k < mean_x.size(); ++k) {
      mean_x[k] += vi.probs[j] * vi.support[j][k];
    }
  }
  std::vector<size_t> idx(n, 0);
  std::vector<Point> args(n);
  bool ok = true;
  for (;;) {
    // h(v) = E g(prefix, v, suffix) for the current prefix; average over
    // suffix assignments by a nested odometer
    std::vector<double> h(vi.support.size(), 0.0);
    for (size_t j = 0; j < vi.support.size(); ++j) {
      std::vector<size_t> sfx(n, 0);
      double acc = 0;
      for (;;) {
        double prob = 1;
        for (size_t k = 0; k < n; ++k) {
          if (k < i) {
            args[k] = vars[k].support[idx[k]];
          } else if (k == i) {
            args[k] = vi.support[j];
          } else {
            args[k] = vars[k].support[sfx[k]];
            prob *= vars[k].probs[sfx[k]];
          }
        }
        acc += prob * g(args);
        size_t k = i + 1;
        for (; k < n; ++k) {
          if (++sfx[k] < vars[k].support.size()) break;
          sfx[k] = 0;
        }
        if (k == n) break;
      }
      h[j] = acc;
    }
    double mean_h = 0, xi_mean = 0;
    for (size_t j = 0; j < h.size(); ++j) mean_h += vi.probs[j] * h[j];
    for (size_t j = 0; j < h.size(); ++j) {
      const double xi = h[j] - mean_h;
      xi_mean += vi.probs[j] * xi;
      if (convex_check && xi > l1_dist(vi.support[j], mean_x) + 1e-12) {
        ok = false;
      }
    }
    if (std::fabs(xi_mean) > 1e-12) ok = false;
    size_t k = 0;
    for (; k < i; ++k) {
      if (++idx[k] < vars[k].support.size()) break;
      idx[k] = 0;
    }
    if (k == i) return ok;
  }
}

void criterion8() {
  Timer tm;
  bool pass = true;
  std::string where;
  const char* files[] = {"corpus_sum.json", "corpus_abs_sum.json",
                         "corpus_max.json", "corpus_norm1.json",
                         "corpus_trinomial.json"};
  for (const char* file : files) {
    const LipschitzCorpus c = load_lipschitz_corpus_file(
        std::string(NORMBOUND_DATA_DIR) + "/" + file);
    const CorpusFunction g = builtin_g(c.g);
    const size_t n = c.variables.size();
    std::vector<double> rho(n), scales;
    bool ok = true;
    for (size_t i = 0; i < n; ++i) {
      rho[i] = rho_sup(g, c.variables, i);
      const XiAnalysis xi =
          exact_xi_analysis(g, c.variables, static_cast<int>(i));
      if (xi.r_hat > rho[i] / 2 + 1e-12) ok = false;
      if (!xi_prefix_checks(g, c.variables, i, true)) ok = false;
      if (xi.s_i > 0) scales.push_back(xi.s_i);
    }
    const double r = profile_radius(rho).radius;
    const double s_hat =
        scales.empty() ? 0 : aggregate(scales).aggregate;
    const auto law = enumerate_function_law(g, c.variables);
    const double mean = law_mean(law);
    double cum = 0;
    for (auto it = law.rbegin(); it != law.rend(); ++it) {
      cum += it->second;
      const double x = it->first - mean;
      if (x <= 0) break;
      if (cum > concentration_tail(r, x).plain + 1e-12) ok = false;
      if (s_hat > 0 && cum > combined_bound({x, s_hat}) + 1e-12) ok = false;
    }
    if (!ok) {
      pass = false;
      where = file;
    }
  }
  const double el = tm.seconds();
  report(8, pass && el < 60, el,
         pass ? "lipschitz corpus end-to-end" : where);
}

void criterion9() {
  Timer tm;
  const MartingaleModel m = rademacher_model(std::vector<double>(30, 1.0));
  const double s = m.aggregate_scale();
  const std::vector<double> xs{0, s, 2 * s, 3 * s};
  const auto one = simulate_mc(m, 1000000, 42, xs, 1);
  const auto eight = simulate_mc(m, 1000000, 42, xs, 8);
  bool pass = one.size() == eight.size();
  for (size_t i = 0; pass && i < one.size(); ++i) {
    pass = one[i].sn_tail == eight[i].sn_tail &&
           one[i].mn_tail == eight[i].mn_tail &&
           one[i].sn_halfwidth == eight[i].sn_halfwidth &&
           one[i].mn_halfwidth == eight[i].mn_halfwidth;
  }
  const double el = tm.seconds();
  report(9, pass && el < 30, el,
         "monte carlo determinism across 1 and 8 workers, 1e6 paths");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
