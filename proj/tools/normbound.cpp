// normbound: tail/moment bound calculator and verification front end.
//
// Subcommands: constants, bound, bound-sequence, rademacher, verify,
// simulate, lipschitz. Output is JSON (default) or CSV; numbers carry 17
// significant digits. Exit codes: 0 pass, 1 inequality violation, 2 usage,
// 3 schema, 4 resource.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "normbound/constants.hpp"
#include "normbound/lipschitz.hpp"
#include "normbound/martingale.hpp"
#include "normbound/model_io.hpp"
#include "normbound/normal_kernel.hpp"
#include "normbound/tail_bounds.hpp"

namespace {

using namespace normbound;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// A flat output row. JSON values are stored pre-serialized so numbers keep
// the fixed 17-digit form in both formats.
struct Record {
  struct Field {
    std::string key;
    std::string json;  // serialized JSON value
    std::string csv;   // unquoted projection
  };
  std::vector<Field> fields;

  void num(const std::string& k, double v) {
    fields.push_back({k, fmt17(v), fmt17(v)});
  }
  void integer(const std::string& k, long long v) {
    fields.push_back({k, std::to_string(v), std::to_string(v)});
  }
  void str(const std::string& k, const std::string& v) {
    fields.push_back({k, json_quote(v), v});
  }
  void boolean(const std::string& k, bool v) {
    fields.push_back({k, v ? "true" : "false", v ? "true" : "false"});
  }
  void list(const std::string& k, const std::vector<double>& v) {
    std::string j = "[", c;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) {
        j += ",";
        c += ";";
      }
      j += fmt17(v[i]);
      c += fmt17(v[i]);
    }
    fields.push_back({k, j + "]", c});
  }
  void str_list(const std::string& k, const std::vector<std::string>& v) {
    std::string j = "[", c;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) {
        j += ",";
        c += ";";
      }
      j += json_quote(v[i]);
      c += v[i];
    }
    fields.push_back({k, j + "]", c});
  }
};

struct Output {
  std::string format = "json";
  std::string out_path;
  std::vector<Record> records;

  void emit() const {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) throw std::range_error("cannot open output file: " + out_path);
      os = &file;
    }
    if (format == "csv") {
      if (records.empty()) return;
      for (size_t i = 0; i < records[0].fields.size(); ++i) {
        *os << (i ? "," : "") << records[0].fields[i].key;
      }
      *os << "\n";
      for (const auto& r : records) {
        for (size_t i = 0; i < r.fields.size(); ++i) {
          *os << (i ? "," : "") << r.fields[i].csv;
        }
        *os << "\n";
      }
      return;
    }
    const bool many = records.size() != 1;
    if (many) *os << "[\n";
    for (size_t ri = 0; ri < records.size(); ++ri) {
      *os << (many ? "  {" : "{");
      for (size_t i = 0; i < records[ri].fields.size(); ++i) {
        *os << (i ? ", " : "") << json_quote(records[ri].fields[i].key) << ": "
            << records[ri].fields[i].json;
      }
      *os << "}";
      if (many && ri + 1 < records.size()) *os << ",";
      *os << "\n";
    }
    if (many) *os << "]\n";
  }
};

int default_threads() {
  if (const char* env = std::getenv("NORMBOUND_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

std::vector<double> parse_num_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) {
      throw std::domain_error("bad number in list: " + tok);
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::domain_error("empty number list");
  return out;
}

// Model spec: "rademacher:N", "rademacher:N:linear", "twopoint:r",
// "adapted-demo", or a JSON file path.
MartingaleModel model_from_spec(const std::string& spec) {
  if (spec.rfind("rademacher:", 0) == 0) {
    std::string rest = spec.substr(11);
    bool linear = false;
    if (const size_t colon = rest.find(':'); colon != std::string::npos) {
      const std::string mode = rest.substr(colon + 1);
      if (mode != "linear") {
        throw std::domain_error("unknown rademacher weight mode: " + mode);
      }
      linear = true;
      rest = rest.substr(0, colon);
    }
    const int n = std::atoi(rest.c_str());
    if (n < 1 || n > 20) {
      throw std::domain_error("rademacher model size must be in 1..20");
    }
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = linear ? i + 1 : 1.0;
    return rademacher_model(w);
  }
  if (spec.rfind("twopoint:", 0) == 0) {
    const double r = std::stod(spec.substr(9));
    return two_point_model(r);
  }
  if (spec == "adapted-demo") {
    // Three steps; the middle one halves its swing after a down move.
    MartingaleModel m;
    m.kind = MartingaleModel::Kind::martingale;
    ModelStep s0;
    s0.base.dist = {{1, -1}, {0.5, 0.5}};
    s0.base.decl = {ScaleDecl::Kind::bracket, -1, 1, 0};
    s0.s = 1;
    ModelStep s1 = s0;
    NodeLaw calm;
    calm.dist = {{0.5, -0.5}, {0.5, 0.5}};
    calm.decl = {ScaleDecl::Kind::bracket, -0.5, 0.5, 0};
    s1.branches[{1}] = calm;  // history index 1 = the -1 outcome
    m.steps.push_back(s0);
    m.steps.push_back(s1);
    m.steps.push_back(s0);
    return m;
  }
  return load_model_file(spec);
}

MartingaleModel validated_model(const std::string& spec) {
  MartingaleModel m = model_from_spec(spec);
  if (auto v = validate(m); !v.empty()) throw ModelValidationError(v);
  return m;
}

void add_slack(Record& rec, const SlackReport& rep) {
  rec.boolean("pass", rep.pass);
  rec.num("min_slack", rep.min_slack);
  rec.num("at", rep.at_primary);
  rec.num("at2", rep.at_secondary);
  if (!rep.violations.empty()) rec.str_list("violations", rep.violations);
}

int run_constants(double alpha, double beta, Output& out) {
  const AlphaBeta ab{alpha, beta};
  Record r;
  r.num("alpha", alpha);
  r.num("beta", beta);
  r.num("c", c_const(ab));
  r.num("k", k_const(ab));
  if (alpha > 1) {
    const K1Result k1 = k1_with_maximizer(ab);
    r.num("k1", k1.value);
    if (beta > 0) r.num("k1_sigma", k1.sigma);
    if (beta < alpha) {
      r.num("k2", k2_const(ab));
    } else {
      r.str("k2_note", "undefined at beta = alpha (Gamma(0) pole)");
    }
    r.num("k3", k3_const(ab));
  }
  out.records.push_back(std::move(r));
  return 0;
}

int run_bound(double x, double s, const std::string& method, Output& out) {
  const BoundQuery q{x, s};
  Record r;
  r.num("x", x);
  r.num("s", s);
  r.str("method", method);
  if (method == "hoeffding") {
    r.num("value", hoeffding_bound(q));
  } else if (method == "pinelis") {
    r.num("value", pinelis_bound(q));
  } else if (method == "combined") {
    r.num("value", combined_bound(q));
  } else if (method == "optimal") {
    const OptimalBound b = optimal_bound(q);
    r.num("value", b.value);
    r.num("optimal_t", b.arg_t);
    r.boolean("boundary_limit", b.boundary_limit);
  } else if (method == "all") {
    const BoundReport rep = bound_report(q);
    r.num("hoeffding", rep.hoeffding);
    r.num("pinelis", rep.pinelis);
    r.num("combined", rep.combined);
    r.num("optimal", rep.optimal);
    r.num("optimal_t", rep.optimal_t);
    r.boolean("boundary_limit", rep.boundary_limit);
  } else {
    throw std::domain_error("unknown method: " + method);
  }
  out.records.push_back(std::move(r));
  return 0;
}

int run_bound_sequence(const std::string& file, double x, Output& out) {
  const BoundSequence seq = load_bound_sequence_file(file);
  const ScaleVector agg = aggregate(seq.step_scales);
  Record r;
  r.num("x", x);
  r.list("step_scales", seq.step_scales);
  r.num("s", agg.aggregate);
  r.num("combined", combined_bound({x, agg.aggregate}));
  if (!seq.exceed_probs.empty()) {
    r.list("exceed_probs", seq.exceed_probs);
    r.num("truncation",
          truncation_bound({seq.exceed_probs, {x, agg.aggregate}}));
  }
  out.records.push_back(std::move(r));
  return 0;
}

int run_rademacher(int n, double x, Output& out) {
  const MartingaleModel m =
      rademacher_model(std::vector<double>(n, 1.0 / std::sqrt(double(n))));
  const EnumerationResult law = enumerate_exact(m);
  Record r;
  r.integer("n", n);
  r.num("x", x);
  r.num("exact_tail", law.tail(x));
  r.num("discrete_bound", rademacher_discrete_bound(n, x));
  r.num("combined", combined_bound({x, 1.0}));
  out.records.push_back(std::move(r));
  return 0;
}

std::vector<double> linspace(double lo, double hi, double step) {
  std::vector<double> g;
  for (double v = lo; v <= hi + step * 1e-9; v += step) g.push_back(v);
  return g;
}

int run_verify(const std::string& suite, const std::string& model_spec,
               int r_steps, double t_min, double t_max, double t_step,
               const std::string& alphas_csv, double alpha, double beta,
               double x, double t, Output& out) {
  Record rec;
  rec.str("suite", suite);
  if (suite == "lemma") {
    std::vector<double> r_grid;
    for (int i = 0; i <= r_steps; ++i) {
      r_grid.push_back(double(i) / r_steps);
    }
    const SlackReport rep =
        verify_lemma_LR(r_grid, linspace(t_min, t_max, t_step));
    add_slack(rec, rep);
    out.records.push_back(std::move(rec));
    return rep.pass ? 0 : 1;
  }
  if (suite == "moments") {
    const MartingaleModel m = validated_model(model_spec);
    const double s = m.aggregate_scale();
    const SlackReport rep =
        verify_moment_domination(m, linspace(-6 * s, 6 * s, 0.25 * s));
    rec.str("model", model_spec);
    add_slack(rec, rep);
    out.records.push_back(std::move(rec));
    return rep.pass ? 0 : 1;
  }
  if (suite == "tails") {
    const MartingaleModel m = validated_model(model_spec);
    const EnumerationResult law = enumerate_exact(m);
    std::set<double> xs;
    for (const auto& [v, p] : law.sn_law) xs.insert(v);
    for (const auto& [v, p] : law.mn_law) xs.insert(v);
    const SlackReport rep =
        verify_tail_domination(m, {xs.begin(), xs.end()});
    rec.str("model", model_spec);
    add_slack(rec, rep);
    out.records.push_back(std::move(rec));
    return rep.pass ? 0 : 1;
  }
  if (suite == "maximal") {
    const MartingaleModel m = validated_model(model_spec);
    const SlackReport rep = verify_maximal_moment(m, {alpha, beta}, x, t);
    rec.str("model", model_spec);
    rec.num("alpha", alpha);
    rec.num("beta", beta);
    rec.num("x", x);
    rec.num("t", t);
    add_slack(rec, rep);
    out.records.push_back(std::move(rec));
    return rep.pass ? 0 : 1;
  }
  if (suite == "constants-chain") {
    bool pass = true;
    double min_slack = HUGE_VAL, at_a = 0, at_b = 0;
    std::vector<std::string> violations;
    for (double a : parse_num_list(alphas_csv)) {
      for (double b = 0; b < a - 1e-12; b += 0.25) {
        const AlphaBeta ab{a, b};
        const double k1 = k1_const(ab);
        const double chain[2] = {k1 - k_const(ab),
                                 std::min(k2_const(ab), k3_const(ab)) - k1};
        for (double slack : chain) {
          if (slack < min_slack) {
            min_slack = slack;
            at_a = a;
            at_b = b;
          }
          if (slack < -1e-8) {
            pass = false;
            violations.push_back("chain broken at alpha=" + fmt17(a) +
                                 " beta=" + fmt17(b));
          }
        }
      }
      const double endpoint =
          std::fabs(k1_const({a, a}) - std::pow(a / (a - 1), a));
      if (endpoint > 1e-6) {
        pass = false;
        violations.push_back("k1(alpha,alpha) endpoint off by " +
                             fmt17(endpoint) + " at alpha=" + fmt17(a));
      }
    }
    rec.boolean("pass", pass);
    rec.num("min_slack", min_slack);
    rec.num("at", at_a);
    rec.num("at2", at_b);
    if (!violations.empty()) rec.str_list("violations", violations);
    out.records.push_back(std::move(rec));
    return pass ? 0 : 1;
  }
  throw std::domain_error("unknown verify suite: " + suite);
}

int run_simulate(const std::string& model_spec, std::uint64_t n_paths,
                 std::uint64_t seed, const std::string& x_csv, int threads,
                 Output& out) {
  const MartingaleModel m = validated_model(model_spec);
  std::vector<double> xs;
  if (!x_csv.empty()) {
    xs = parse_num_list(x_csv);
  } else {
    const double s = m.aggregate_scale();
    xs = {s, 2 * s, 3 * s};
  }
  for (const McTailEstimate& e : simulate_mc(m, n_paths, seed, xs, threads)) {
    Record r;
    r.num("x", e.x);
    r.num("sn_tail", e.sn_tail);
    r.num("sn_halfwidth", e.sn_halfwidth);
    r.num("mn_tail", e.mn_tail);
    r.num("mn_halfwidth", e.mn_halfwidth);
    out.records.push_back(std::move(r));
  }
  return 0;
}

// sup over all argument assignments of |g(..., v, ...) - g(..., v', ...)|,
// v, v' ranging over the support of coordinate i.
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

int run_lipschitz(const std::string& file, const std::string& x_csv,
                  Output& out) {
  const LipschitzCorpus corpus = load_lipschitz_corpus_file(file);
  const CorpusFunction g = builtin_g(corpus.g);
  const size_t n = corpus.variables.size();

  double states = 1;
  for (const auto& v : corpus.variables) {
    states *= static_cast<double>(v.support.size());
  }
  if (states * static_cast<double>(n) > 2e7) {
    throw std::range_error("lipschitz corpus enumeration budget exceeded");
  }

  std::vector<double> rho_sups(n), r_hats(n), scales(n);
  for (size_t i = 0; i < n; ++i) {
    rho_sups[i] = rho_sup(g, corpus.variables, i);
    const XiAnalysis xi =
        exact_xi_analysis(g, corpus.variables, static_cast<int>(i));
    r_hats[i] = xi.r_hat;
    scales[i] = xi.s_i;
  }
  const LipschitzProfile prof = profile_radius(rho_sups);
  const ScaleVector agg = aggregate(scales);

  Record head;
  head.str("g", corpus.g_name);
  head.list("r_i", prof.radii);
  head.num("r", prof.radius);
  head.list("r_hat_i", r_hats);
  head.list("s_i", scales);
  head.num("s", agg.aggregate);

  const auto law = enumerate_function_law(g, corpus.variables);
  const double mean = law_mean(law);

  bool dominated = true;
  double min_slack = HUGE_VAL, min_at = 0;
  double cum = 0;
  for (auto it = law.rbegin(); it != law.rend(); ++it) {
    cum += it->second;
    const double xc = it->first - mean;
    if (xc <= 0) break;
    const double bound = std::min(concentration_tail(prof.radius, xc).plain,
                                  combined_bound({xc, agg.aggregate}));
    const double slack = bound - cum;
    if (slack < min_slack) {
      min_slack = slack;
      min_at = xc;
    }
    if (slack < -1e-12) dominated = false;
  }
  head.boolean("dominated", dominated);
  if (min_slack < HUGE_VAL) {
    head.num("min_slack", min_slack);
    head.num("min_slack_at", min_at);
  }
  out.records.push_back(std::move(head));

  if (!x_csv.empty()) {
    for (double x : parse_num_list(x_csv)) {
      Record r;
      r.num("x", x);
      const ConcentrationTail ct = concentration_tail(prof.radius, x);
      r.num("radius_bound", ct.plain);
      r.num("radius_bound_tight", ct.tighter);
      r.num("scale_bound", combined_bound({x, agg.aggregate}));
      out.records.push_back(std::move(r));
    }
  }
  return dominated ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sharp normal-domination tail and moment bounds"};
  app.require_subcommand(1);

  Output out;
  app.add_option("--format", out.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", out.out_path, "write records to a file");

  double alpha = 5, beta = 0, x = 0, s = 1, t = 0;
  double t_min = -30, t_max = 2, t_step = 0.01;
  int r_steps = 200, n = 4;
  int threads = default_threads();
  std::uint64_t n_paths = 100000, seed = 0;
  std::string method = "all", file, model_spec = "rademacher:4";
  std::string suite, x_csv, alphas_csv = "1.5,2,3,5";

  CLI::App* c_constants = app.add_subcommand(
      "constants", "constant family c, k, k1, k2, k3 at (alpha, beta)");
  c_constants->add_option("--alpha", alpha)->required();
  c_constants->add_option("--beta", beta)->required();

  CLI::App* c_bound =
      app.add_subcommand("bound", "tail bound at threshold x, scale s");
  c_bound->add_option("--x", x)->required();
  c_bound->add_option("--s", s)->required();
  c_bound->add_option("--method", method,
                      "hoeffding|pinelis|combined|optimal|all");

  CLI::App* c_seq = app.add_subcommand(
      "bound-sequence", "aggregate a per-step scale file and bound at x");
  c_seq->add_option("--file", file)->required();
  c_seq->add_option("--x", x)->required();

  CLI::App* c_rad = app.add_subcommand(
      "rademacher", "exact normalized Rademacher tail vs its discrete bound");
  c_rad->add_option("--n", n)->check(CLI::Range(1, 62));
  c_rad->add_option("--x", x)->required();

  CLI::App* c_verify =
      app.add_subcommand("verify", "run a verification suite");
  c_verify->add_option("suite", suite,
                       "lemma|moments|tails|maximal|constants-chain")
      ->required();
  c_verify->add_option("--model", model_spec,
                       "rademacher:N[:linear], twopoint:r, adapted-demo, or "
                       "a model file");
  c_verify->add_option("--r-steps", r_steps);
  c_verify->add_option("--t-min", t_min);
  c_verify->add_option("--t-max", t_max);
  c_verify->add_option("--t-step", t_step);
  c_verify->add_option("--alphas", alphas_csv);
  c_verify->add_option("--alpha", alpha);
  double v_beta = 1;
  c_verify->add_option("--beta", v_beta);
  double v_x = 2, v_t = 0;
  c_verify->add_option("--x", v_x);
  c_verify->add_option("--t", v_t);

  CLI::App* c_sim =
      app.add_subcommand("simulate", "Monte Carlo tails with 99% half-widths");
  c_sim->add_option("--model", model_spec);
  c_sim->add_option("--paths", n_paths);
  c_sim->add_option("--seed", seed);
  c_sim->add_option("--x", x_csv, "comma-separated thresholds");
  c_sim->add_option("--threads", threads);

  CLI::App* c_lip = app.add_subcommand(
      "lipschitz", "scales and tail bounds for a separately Lipschitz corpus");
  c_lip->add_option("--file", file)->required();
  c_lip->add_option("--x", x_csv, "comma-separated thresholds");

  for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; })) {
    sc->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    int status = 0;
    if (c_constants->parsed()) {
      status = run_constants(alpha, beta, out);
    } else if (c_bound->parsed()) {
      status = run_bound(x, s, method, out);
    } else if (c_seq->parsed()) {
      status = run_bound_sequence(file, x, out);
    } else if (c_rad->parsed()) {
      status = run_rademacher(n, x, out);
    } else if (c_verify->parsed()) {
      status = run_verify(suite, model_spec, r_steps, t_min, t_max, t_step,
                          alphas_csv, alpha, v_beta, v_x, v_t, out);
    } else if (c_sim->parsed()) {
      status = run_simulate(model_spec, n_paths, seed, x_csv, threads, out);
    } else if (c_lip->parsed()) {
      status = run_lipschitz(file, x_csv, out);
    }
    out.emit();
    return status;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 3;
  } catch (const ModelValidationError& e) {
    for (const auto& v : e.violations()) std::cerr << v << "\n";
    return 3;
  } catch (const std::range_error& e) {
    std::cerr << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
