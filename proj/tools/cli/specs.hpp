#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "paa/paa.hpp"

namespace paa::cli {

using json = nlohmann::json;

inline bool is_inline_json(const std::string& arg) {
  const auto pos = arg.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && (arg[pos] == '{' || arg[pos] == '[');
}

/// Inline JSON text or the path of a JSON file.
inline json read_json_arg(const std::string& arg) {
  if (is_inline_json(arg)) return json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw ArgumentError("cannot open '" + arg + "'");
  return json::parse(in);
}

/// Accepts inline JSON, existing files and the given shorthand prefixes.
inline std::string check_source(const std::string& arg, const std::vector<std::string>& prefixes = {}) {
  if (is_inline_json(arg)) return {};
  for (const auto& p : prefixes) {
    if (arg.rfind(p, 0) == 0) return {};
  }
  if (!std::filesystem::is_regular_file(arg)) return "file does not exist: " + arg;
  return {};
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ArgumentError(std::string("missing field '") + key + "'");
  return j.at(key);
}

/// A string, or an array of one-character strings.
inline std::string symbols(const json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (!j.is_array()) throw ArgumentError(std::string(what) + " must be a string or an array of characters");
  std::string out;
  for (const auto& s : j) {
    const auto str = s.get<std::string>();
    if (str.size() != 1) throw ArgumentError(std::string(what) + " entries must be single characters");
    out += str;
  }
  return out;
}

inline std::size_t state_index(const json& j, const std::vector<std::string>& states) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  const auto name = j.get<std::string>();
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] == name) return i;
  }
  throw ArgumentError("unknown HMM state '" + name + "'");
}

}  // namespace detail

/// {"type":"hmm","alphabet":"ab","states":[...],"start":name|index,
///  "transitions":[[...]],"emissions":[[...]]}; rows are dense.
inline Hmm hmm_from_json(const json& j) {
  Hmm hmm;
  hmm.alphabet = detail::symbols(detail::field(j, "alphabet"), "alphabet");
  hmm.states = detail::field(j, "states").get<std::vector<std::string>>();
  hmm.start = j.contains("start") ? detail::state_index(j.at("start"), hmm.states) : 0;
  const auto dense = detail::field(j, "transitions").get<std::vector<std::vector<double>>>();
  for (const auto& row : dense) {
    if (row.size() != hmm.states.size()) throw ArgumentError("HMM transition rows need one entry per state");
    SparseRow sparse;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] != 0.0) sparse.emplace_back(c, row[c]);
    }
    hmm.transitions.push_back(std::move(sparse));
  }
  hmm.emissions = detail::field(j, "emissions").get<std::vector<std::vector<double>>>();
  hmm.validate();
  return hmm;
}

inline json hmm_to_json(const Hmm& hmm) {
  std::vector<std::vector<double>> dense(hmm.states.size(), std::vector<double>(hmm.states.size(), 0.0));
  for (std::size_t c = 0; c < hmm.transitions.size(); ++c) {
    for (const auto& [c2, p] : hmm.transitions[c]) dense[c][c2] += p;
  }
  return {{"type", "hmm"},          {"alphabet", hmm.alphabet},   {"states", hmm.states},
          {"start", hmm.start},     {"transitions", dense},       {"emissions", hmm.emissions}};
}

/// Text model from its JSON description:
///   {"type":"iid","alphabet":"ACGT","probabilities":[...]}  (uniform if omitted)
///   {"type":"markov","alphabet":"01","order":1,"conditionals":{"":[...],"0":[...],"1":[...]}}
///   {"type":"hmm", ...}  (see hmm_from_json)
inline TextModel model_from_json(const json& j) {
  const auto type = detail::field(j, "type").get<std::string>();
  if (type == "hmm") return from_hmm(hmm_from_json(j));
  const auto alphabet = detail::symbols(detail::field(j, "alphabet"), "alphabet");
  if (type == "iid") {
    if (!j.contains("probabilities")) return uniform_model(alphabet);
    return iid_model(alphabet, j.at("probabilities").get<std::vector<double>>());
  }
  if (type == "markov") {
    const auto order = detail::field(j, "order").get<std::size_t>();
    const auto rows = detail::field(j, "conditionals").get<std::map<std::string, std::vector<double>>>();
    return markov_model(order, alphabet, rows);
  }
  throw ArgumentError("unknown model type '" + type + "'");
}

/// Model argument: inline JSON, a JSON file, or "uniform:<alphabet>".
inline TextModel load_model(const std::string& arg) {
  if (arg.rfind("uniform:", 0) == 0) {
    const auto alphabet = arg.substr(8);
    if (alphabet.empty()) throw ArgumentError("uniform model needs an alphabet");
    return uniform_model(alphabet);
  }
  return model_from_json(read_json_arg(arg));
}

struct PatternInput {
  PatternSpec spec;
  std::optional<CountingScheme> scheme;
  std::optional<std::int64_t> bound;
};

/// {"strings":[...]} | {"generalized":[["abc","ac"],...]} | {"prosite":"A-x(2,3)-C"},
/// optionally with "scheme" and "M".
inline PatternInput pattern_from_json(const json& j) {
  if (!j.is_object()) throw ArgumentError("pattern spec must be a JSON object");
  PatternInput out{PatternSpec::strings({}), std::nullopt, std::nullopt};
  const int kinds = int(j.contains("strings")) + int(j.contains("generalized")) + int(j.contains("prosite"));
  if (kinds != 1) throw ArgumentError("pattern spec needs exactly one of strings, generalized, prosite");
  if (j.contains("strings")) {
    out.spec = PatternSpec::strings(j.at("strings").get<std::vector<std::string>>());
  } else if (j.contains("generalized")) {
    out.spec = PatternSpec::generalized(j.at("generalized").get<std::vector<GeneralizedString>>());
  } else {
    out.spec = PatternSpec::prosite(j.at("prosite").get<std::string>());
  }
  if (j.contains("scheme")) out.scheme = parse_scheme(j.at("scheme").get<std::string>());
  if (j.contains("M")) out.bound = j.at("M").get<std::int64_t>();
  return out;
}

inline PatternInput load_patterns(const std::string& arg) { return pattern_from_json(read_json_arg(arg)); }

inline Method parse_method(const std::string& s) {
  if (s == "basic") return Method::basic;
  if (s == "doubling") return Method::doubling;
  throw ArgumentError("unknown method '" + s + "'");
}

namespace detail {

inline std::vector<double> number_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ArgumentError("malformed number '" + item + "' in " + what);
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

/// "ungapped:p", "gapped:p0,p1,pg", or JSON {"type":"ungapped","p":..} /
/// {"type":"gapped","p0":..,"p1":..,"pg":..}.
inline TextModel homology_model(const std::string& arg) {
  if (is_inline_json(arg)) {
    const auto j = json::parse(arg);
    const auto type = detail::field(j, "type").get<std::string>();
    if (type == "ungapped") return ungapped_homology_model(detail::field(j, "p").get<double>());
    if (type == "gapped") {
      return gapped_homology_model(detail::field(j, "p0").get<double>(), detail::field(j, "p1").get<double>(),
                                   detail::field(j, "pg").get<double>());
    }
    throw ArgumentError("unknown homology type '" + type + "'");
  }
  const auto colon = arg.find(':');
  if (colon == std::string::npos) throw ArgumentError("homology must look like ungapped:p or gapped:p0,p1,pg");
  const auto type = arg.substr(0, colon);
  const auto values = detail::number_list(arg.substr(colon + 1), "homology parameters");
  if (type == "ungapped" && values.size() == 1) return ungapped_homology_model(values[0]);
  if (type == "gapped" && values.size() == 3) return gapped_homology_model(values[0], values[1], values[2]);
  throw ArgumentError("homology must look like ungapped:p or gapped:p0,p1,pg");
}

/// {"gamma":"KR","pi":"P"}; either field may also be an array of characters.
inline CleavageRule rule_from_json(const json& j, const std::string& alphabet) {
  CleavageRule rule{detail::symbols(detail::field(j, "gamma"), "gamma"),
                    j.contains("pi") ? detail::symbols(j.at("pi"), "pi") : std::string(), alphabet};
  rule.validate();
  return rule;
}

inline CleavageRule enzyme_rule(const std::string& name, const std::string& alphabet) {
  if (name == "trypsin") {
    auto rule = CleavageRule::trypsin();
    rule.alphabet = alphabet;
    rule.validate();
    return rule;
  }
  throw ArgumentError("unknown enzyme '" + name + "'");
}

/// "R:shift:probability", e.g. "M:15.9949:0.1".
inline MassTable apply_ptm_arg(MassTable table, const std::string& arg) {
  const auto a = arg.find(':');
  const auto b = a == std::string::npos ? a : arg.find(':', a + 1);
  if (a != 1 || b == std::string::npos) throw ArgumentError("PTM must look like R:shift:probability");
  const auto shift = detail::number_list(arg.substr(a + 1, b - a - 1), "PTM shift");
  const auto prob = detail::number_list(arg.substr(b + 1), "PTM probability");
  if (shift.size() != 1 || prob.size() != 1) throw ArgumentError("PTM must look like R:shift:probability");
  return apply_ptm(std::move(table), arg[0], shift[0], prob[0]);
}

}  // namespace paa::cli
