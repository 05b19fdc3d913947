#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "normbound/lipschitz.hpp"
#include "normbound/martingale.hpp"

namespace normbound {

// Schema violation with the JSON path of the offending element.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

inline constexpr const char* kSchemaTag = "normbound/1";

// Martingale model files:
// {"schema":"normbound/1", "kind":"martingale"|"supermartingale",
//  "initial":0, "steps":[{"type":"iid"|"adapted", "support":[...],
//  "probs":[...], "C":..,"D":..,"s":.. | "D":..,"var":..,"s_hat":..,
//  "branches":[{"prefix":[...], "support":[...], "probs":[...], ...}]}]}
MartingaleModel parse_model(const std::string& json_text);
std::string serialize_model(const MartingaleModel& model);
MartingaleModel load_model_file(const std::string& path);

// Bound-sequence files:
// {"schema":"normbound/1", "steps":[{"C":..,"D":..} | {"C":..,"D":..,"s":..}
//  | {"D":..,"var":..} | {"D":..,"var":..,"s_hat":..}],
//  "exceed_probs":[...]? }
struct BoundSequence {
  std::vector<double> step_scales;   // s_i or s_hat_i per step
  std::vector<double> exceed_probs;  // optional, empty if absent
};
BoundSequence parse_bound_sequence(const std::string& json_text);
BoundSequence load_bound_sequence_file(const std::string& path);

// Lipschitz corpus files:
// {"schema":"normbound/1", "g":"sum"|"abs-sum"|"max"|"norm1-of-sums",
//  "variables":[{"support":[num or [num,...] ...], "probs":[...]}]}
struct LipschitzCorpus {
  std::string g_name;
  BuiltinG g;
  std::vector<DiscreteVariable> variables;
};
LipschitzCorpus parse_lipschitz_corpus(const std::string& json_text);
LipschitzCorpus load_lipschitz_corpus_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace normbound
