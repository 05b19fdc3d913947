#include "normbound/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace normbound {
namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SchemaError("/", "not valid JSON");
  return j;
}

void require_schema(const json& j) {
  if (!j.is_object()) throw SchemaError("/", "expected an object");
  if (!j.contains("schema") || j["schema"] != kSchemaTag) {
    throw SchemaError("/schema", std::string("expected \"") + kSchemaTag +
                                     "\"");
  }
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

std::vector<double> number_list(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) {
    throw SchemaError(path, "expected a non-empty array of numbers");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(number_at(j[i], path + "/" + std::to_string(i)));
  }
  return out;
}

ScaleDecl parse_decl(const json& j, const std::string& path) {
  ScaleDecl d;
  const bool has_bracket = j.contains("C");
  const bool has_var = j.contains("var");
  if (has_bracket == has_var) {
    throw SchemaError(path, "expected either C/D (bracket) or D/var");
  }
  if (!j.contains("D")) throw SchemaError(path + "/D", "missing");
  d.d = number_at(j["D"], path + "/D");
  if (has_bracket) {
    d.kind = ScaleDecl::Kind::bracket;
    d.c = number_at(j["C"], path + "/C");
  } else {
    d.kind = ScaleDecl::Kind::variance;
    d.var = number_at(j["var"], path + "/var");
  }
  return d;
}

NodeLaw parse_law(const json& j, const std::string& path) {
  NodeLaw law;
  if (!j.contains("support")) throw SchemaError(path + "/support", "missing");
  if (!j.contains("probs")) throw SchemaError(path + "/probs", "missing");
  law.dist.support = number_list(j["support"], path + "/support");
  law.dist.probs = number_list(j["probs"], path + "/probs");
  if (law.dist.support.size() != law.dist.probs.size()) {
    throw SchemaError(path, "support and probs lengths differ");
  }
  law.decl = parse_decl(j, path);
  return law;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("/", "cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

MartingaleModel parse_model(const std::string& json_text) {
  const json j = parse_json(json_text);
  require_schema(j);
  MartingaleModel m;
  if (!j.contains("kind")) throw SchemaError("/kind", "missing");
  const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>()
                                                 : std::string();
  if (kind == "martingale") {
    m.kind = MartingaleModel::Kind::martingale;
  } else if (kind == "supermartingale") {
    m.kind = MartingaleModel::Kind::supermartingale;
  } else {
    throw SchemaError("/kind", "expected martingale or supermartingale");
  }
  m.initial = j.contains("initial") ? number_at(j["initial"], "/initial") : 0;
  if (!j.contains("steps") || !j["steps"].is_array() || j["steps"].empty()) {
    throw SchemaError("/steps", "expected a non-empty array");
  }
  for (size_t si = 0; si < j["steps"].size(); ++si) {
    const std::string sp = "/steps/" + std::to_string(si);
    const json& js = j["steps"][si];
    if (!js.is_object()) throw SchemaError(sp, "expected an object");
    const std::string type =
        js.contains("type") && js["type"].is_string()
            ? js["type"].get<std::string>()
            : "iid";
    if (type != "iid" && type != "adapted") {
      throw SchemaError(sp + "/type", "expected iid or adapted");
    }
    ModelStep step;
    step.base = parse_law(js, sp);
    if (js.contains("s")) {
      step.s = number_at(js["s"], sp + "/s");
    } else if (js.contains("s_hat")) {
      step.s = number_at(js["s_hat"], sp + "/s_hat");
    } else if (step.base.decl.kind == ScaleDecl::Kind::bracket) {
      step.s = (step.base.decl.d - step.base.decl.c) / 2;
    } else {
      step.s = (step.base.decl.d +
                step.base.decl.var / step.base.decl.d) /
               2;
    }
    if (type == "adapted") {
      if (!js.contains("branches") || !js["branches"].is_array()) {
        throw SchemaError(sp + "/branches", "expected an array");
      }
      for (size_t bi = 0; bi < js["branches"].size(); ++bi) {
        const std::string bp = sp + "/branches/" + std::to_string(bi);
        const json& jb = js["branches"][bi];
        if (!jb.is_object() || !jb.contains("prefix") ||
            !jb["prefix"].is_array()) {
          throw SchemaError(bp + "/prefix", "expected an index array");
        }
        std::vector<int> prefix;
        for (size_t k = 0; k < jb["prefix"].size(); ++k) {
          const json& je = jb["prefix"][k];
          if (!je.is_number_integer()) {
            throw SchemaError(bp + "/prefix/" + std::to_string(k),
                              "expected an integer");
          }
          prefix.push_back(je.get<int>());
        }
        if (prefix.size() != si) {
          throw SchemaError(bp + "/prefix",
                            "length must equal the step index");
        }
        step.branches[prefix] = parse_law(jb, bp);
      }
    } else if (js.contains("branches")) {
      throw SchemaError(sp + "/branches", "only valid for adapted steps");
    }
    m.steps.push_back(std::move(step));
  }
  return m;
}

std::string serialize_model(const MartingaleModel& model) {
  json j;
  j["schema"] = kSchemaTag;
  j["kind"] = model.kind == MartingaleModel::Kind::martingale
                  ? "martingale"
                  : "supermartingale";
  j["initial"] = model.initial;
  j["steps"] = json::array();
  auto law_to_json = [](const NodeLaw& law) {
    json o;
    o["support"] = law.dist.support;
    o["probs"] = law.dist.probs;
    o["D"] = law.decl.d;
    if (law.decl.kind == ScaleDecl::Kind::bracket) {
      o["C"] = law.decl.c;
    } else {
      o["var"] = law.decl.var;
    }
    return o;
  };
  for (const auto& step : model.steps) {
    json o = law_to_json(step.base);
    o["type"] = step.adapted() ? "adapted" : "iid";
    if (step.base.decl.kind == ScaleDecl::Kind::bracket) {
      o["s"] = step.s;
    } else {
      o["s_hat"] = step.s;
    }
    if (step.adapted()) {
      o["branches"] = json::array();
      for (const auto& [prefix, law] : step.branches) {
        json b = law_to_json(law);
        b["prefix"] = prefix;
        o["branches"].push_back(std::move(b));
      }
    }
    j["steps"].push_back(std::move(o));
  }
  return j.dump(2);
}

MartingaleModel load_model_file(const std::string& path) {
  return parse_model(read_text_file(path));
}

BoundSequence parse_bound_sequence(const std::string& json_text) {
  const json j = parse_json(json_text);
  require_schema(j);
  if (!j.contains("steps") || !j["steps"].is_array() || j["steps"].empty()) {
    throw SchemaError("/steps", "expected a non-empty array");
  }
  BoundSequence seq;
  for (size_t i = 0; i < j["steps"].size(); ++i) {
    const std::string sp = "/steps/" + std::to_string(i);
    const json& js = j["steps"][i];
    if (!js.is_object()) throw SchemaError(sp, "expected an object");
    const ScaleDecl d = parse_decl(js, sp);
    double s;
    if (js.contains("s")) {
      s = number_at(js["s"], sp + "/s");
    } else if (js.contains("s_hat")) {
      s = number_at(js["s_hat"], sp + "/s_hat");
    } else if (d.kind == ScaleDecl::Kind::bracket) {
      s = (d.d - d.c) / 2;
    } else {
      if (!(d.d > 0)) throw SchemaError(sp + "/D", "must be positive");
      s = (d.d + d.var / d.d) / 2;
    }
    if (!(s > 0)) throw SchemaError(sp, "derived scale must be positive");
    seq.step_scales.push_back(s);
  }
  if (j.contains("exceed_probs")) {
    seq.exceed_probs = number_list(j["exceed_probs"], "/exceed_probs");
    for (size_t i = 0; i < seq.exceed_probs.size(); ++i) {
      const double p = seq.exceed_probs[i];
      if (!(p >= 0) || !(p <= 1)) {
        throw SchemaError("/exceed_probs/" + std::to_string(i),
                          "probability outside [0,1]");
      }
    }
  }
  return seq;
}

BoundSequence load_bound_sequence_file(const std::string& path) {
  return parse_bound_sequence(read_text_file(path));
}

LipschitzCorpus parse_lipschitz_corpus(const std::string& json_text) {
  const json j = parse_json(json_text);
  require_schema(j);
  LipschitzCorpus c;
  if (!j.contains("g") || !j["g"].is_string()) {
    throw SchemaError("/g", "expected a function name string");
  }
  c.g_name = j["g"].get<std::string>();
  try {
    c.g = builtin_g_from_name(c.g_name);
  } catch (const std::domain_error& e) {
    throw SchemaError("/g", e.what());
  }
  if (!j.contains("variables") || !j["variables"].is_array() ||
      j["variables"].empty()) {
    throw SchemaError("/variables", "expected a non-empty array");
  }
  size_t dim = 0;
  for (size_t vi = 0; vi < j["variables"].size(); ++vi) {
    const std::string vp = "/variables/" + std::to_string(vi);
    const json& jv = j["variables"][vi];
    if (!jv.is_object() || !jv.contains("support") || !jv.contains("probs")) {
      throw SchemaError(vp, "expected {support, probs}");
    }
    DiscreteVariable var;
    const json& sup = jv["support"];
    if (!sup.is_array() || sup.empty()) {
      throw SchemaError(vp + "/support", "expected a non-empty array");
    }
    for (size_t si = 0; si < sup.size(); ++si) {
      const std::string pp = vp + "/support/" + std::to_string(si);
      Point pt;
      if (sup[si].is_number()) {
        pt.push_back(sup[si].get<double>());
      } else if (sup[si].is_array()) {
        for (size_t k = 0; k < sup[si].size(); ++k) {
          pt.push_back(
              number_at(sup[si][k], pp + "/" + std::to_string(k)));
        }
      } else {
        throw SchemaError(pp, "expected a number or an array of numbers");
      }
      if (dim == 0) dim = pt.size();
      if (pt.size() != dim) {
        throw SchemaError(pp, "inconsistent point dimension");
      }
      var.support.push_back(std::move(pt));
    }
    var.probs = number_list(jv["probs"], vp + "/probs");
    if (var.probs.size() != var.support.size()) {
      throw SchemaError(vp, "support and probs lengths differ");
    }
    c.variables.push_back(std::move(var));
  }
  return c;
}

LipschitzCorpus load_lipschitz_corpus_file(const std::string& path) {
  return parse_lipschitz_corpus(read_text_file(path));
}

}  // namespace normbound
