#include "normbound/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "normbound/normal_kernel.hpp"
#include "normbound/tail_bounds.hpp"

namespace normbound {
namespace {

constexpr double kBudget = 1e6;

void require_variable(const DiscreteVariable& v) {
  if (v.support.empty() || v.support.size() != v.probs.size()) {
    throw std::domain_error("lipschitz: support/probs size mismatch or empty");
  }
  double sum = 0;
  for (double p : v.probs) {
    if (!(p >= 0)) throw std::domain_error("lipschitz: negative probability");
    sum += p;
  }
  if (std::fabs(sum - 1) > 1e-12) {
    throw std::domain_error("lipschitz: probabilities do not sum to 1");
  }
}

double product_states(const std::vector<DiscreteVariable>& vars) {
  double prod = 1;
  for (const auto& v : vars) prod *= static_cast<double>(v.support.size());
  return prod;
}

// Iterates over the product of supports of vars[from..to), invoking
// fn(indices, prob).
template <typename Fn>
void for_each_combo(const std::vector<DiscreteVariable>& vars, size_t from,
                    size_t to, std::vector<int>& idx, double prob, Fn&& fn) {
  if (from == to) {
    fn(idx, prob);
    return;
  }
  const auto& v = vars[from];
  for (int i = 0; i < static_cast<int>(v.support.size()); ++i) {
    idx.push_back(i);
    for_each_combo(vars, from + 1, to, idx, prob * v.probs[i], fn);
    idx.pop_back();
  }
}

}  // namespace

LipschitzProfile profile_radius(const std::vector<double>& rho_sups) {
  if (rho_sups.empty()) {
    throw std::domain_error("profile_radius: empty list");
  }
  LipschitzProfile p;
  p.rho_sups = rho_sups;
  double sum = 0, comp = 0;
  for (double rs : rho_sups) {
    if (!(rs >= 0)) {
      throw std::domain_error("profile_radius: negative rho sup");
    }
    const double r = rs / 2;
    p.radii.push_back(r);
    const double y = r * r - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  p.radius = std::sqrt(sum);
  return p;
}

ConcentrationTail concentration_tail(double radius, double x) {
  if (!(radius > 0)) {
    throw std::domain_error("concentration_tail: radius must be positive");
  }
  const double plain = std::min(1.0, c50() * upper_tail(x / radius));
  const double expo = x <= 0 ? 1.0 : std::exp(-x * x / (2 * radius * radius));
  return {plain, std::min(plain, expo)};
}

XiAnalysis exact_xi_analysis(const CorpusFunction& g,
                             const std::vector<DiscreteVariable>& vars,
                             int coord) {
  if (coord < 0 || static_cast<size_t>(coord) >= vars.size()) {
    throw std::domain_error("exact_xi_analysis: coordinate out of range");
  }
  for (const auto& v : vars) require_variable(v);
  if (product_states(vars) > kBudget) {
    throw std::range_error("exact_xi_analysis: enumeration budget exceeded");
  }
  const size_t n = vars.size();
  const size_t i = static_cast<size_t>(coord);
  const auto& vi = vars[i];

  XiAnalysis out{0, 0, 0, 0};
  bool first_prefix = true;
  std::vector<int> prefix_idx;
  std::vector<Point> args(n);

  for_each_combo(vars, 0, i, prefix_idx, 1.0, [&](const std::vector<int>& pfx,
                                                  double) {
    for (size_t k = 0; k < i; ++k) args[k] = vars[k].support[pfx[k]];
    // h(v) = E g(prefix, v, X_{i+1},...,X_n)
    std::vector<double> h(vi.support.size(), 0.0);
    for (size_t vi_idx = 0; vi_idx < vi.support.size(); ++vi_idx) {
      args[i] = vi.support[vi_idx];
      double acc = 0;
      std::vector<int> suffix_idx;
      for_each_combo(vars, i + 1, n, suffix_idx, 1.0,
                     [&](const std::vector<int>& sfx, double prob) {
                       for (size_t k = i + 1; k < n; ++k) {
                         args[k] = vars[k].support[sfx[k - i - 1]];
                       }
                       acc += prob * g(args);
                     });
      h[vi_idx] = acc;
    }
    double mean_h = 0;
    for (size_t j = 0; j < h.size(); ++j) mean_h += vi.probs[j] * h[j];
    double xi_max = h[0] - mean_h, h_min = h[0], h_max = h[0], m2 = 0;
    for (size_t j = 0; j < h.size(); ++j) {
      const double xi = h[j] - mean_h;
      xi_max = std::max(xi_max, xi);
      h_min = std::min(h_min, h[j]);
      h_max = std::max(h_max, h[j]);
      m2 += vi.probs[j] * xi * xi;
    }
    if (first_prefix) {
      out.d_sup = xi_max;
      out.second_moment_sup = m2;
      out.r_hat = (h_max - h_min) / 2;
      first_prefix = false;
    } else {
      out.d_sup = std::max(out.d_sup, xi_max);
      out.second_moment_sup = std::max(out.second_moment_sup, m2);
      out.r_hat = std::max(out.r_hat, (h_max - h_min) / 2);
    }
  });

  out.s_i =
      out.d_sup > 0 ? (out.d_sup + out.second_moment_sup / out.d_sup) / 2 : 0;
  return out;
}

double rho_second_moment_bound(
    const std::function<double(const Point&, const Point&)>& rho,
    const DiscreteVariable& var) {
  require_variable(var);
  double best = 0;
  bool first = true;
  for (const auto& center : var.support) {
    double acc = 0;
    for (size_t j = 0; j < var.support.size(); ++j) {
      const double d = rho(var.support[j], center);
      acc += var.probs[j] * d * d;
    }
    if (first || acc < best) {
      best = acc;
      first = false;
    }
  }
  return best;
}

ScaleVector banach_scales(const std::vector<double>& d,
                          const std::vector<double>& second_moments) {
  if (d.size() != second_moments.size()) {
    throw std::domain_error("banach_scales: length mismatch");
  }
  std::vector<double> s;
  s.reserve(d.size());
  for (size_t i = 0; i < d.size(); ++i) {
    const StepScale st = step_scale(d[i], second_moments[i]);
    s.push_back(st.s_hat);
  }
  return aggregate(s);
}

BuiltinG builtin_g_from_name(const std::string& name) {
  if (name == "sum") return BuiltinG::sum;
  if (name == "abs-sum") return BuiltinG::abs_sum;
  if (name == "max") return BuiltinG::max_coord;
  if (name == "norm1-of-sums") return BuiltinG::norm1_of_sums;
  throw std::domain_error("unknown corpus function: " + name);
}

CorpusFunction builtin_g(BuiltinG which) {
  switch (which) {
    case BuiltinG::sum:
      return [](const std::vector<Point>& xs) {
        double s = 0;
        for (const auto& x : xs) s += x.at(0);
        return s;
      };
    case BuiltinG::abs_sum:
      return [](const std::vector<Point>& xs) {
        double s = 0;
        for (const auto& x : xs) s += x.at(0);
        return std::fabs(s);
      };
    case BuiltinG::max_coord:
      return [](const std::vector<Point>& xs) {
        double m = xs.at(0).at(0);
        for (const auto& x : xs) m = std::max(m, x.at(0));
        return m;
      };
    case BuiltinG::norm1_of_sums:
      return [](const std::vector<Point>& xs) {
        std::vector<double> sums(xs.at(0).size(), 0.0);
        for (const auto& x : xs) {
          for (size_t j = 0; j < sums.size(); ++j) sums[j] += x.at(j);
        }
        double n1 = 0;
        for (double v : sums) n1 += std::fabs(v);
        return n1;
      };
  }
  throw std::domain_error("builtin_g: unreachable");
}

std::vector<std::pair<double, double>> enumerate_function_law(
    const CorpusFunction& g, const std::vector<DiscreteVariable>& vars) {
  for (const auto& v : vars) require_variable(v);
  if (product_states(vars) > kBudget) {
    throw std::range_error("enumerate_function_law: budget exceeded");
  }
  std::map<double, double> law;
  std::vector<int> idx;
  std::vector<Point> args(vars.size());
  for_each_combo(vars, 0, vars.size(), idx, 1.0,
                 [&](const std::vector<int>& ix, double prob) {
                   for (size_t k = 0; k < vars.size(); ++k) {
                     args[k] = vars[k].support[ix[k]];
                   }
                   law[g(args)] += prob;
                 });
  return {law.begin(), law.end()};
}

double law_mean(const std::vector<std::pair<double, double>>& law) {
  double sum = 0, comp = 0;
  for (const auto& [v, p] : law) {
    const double y = v * p - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace normbound
