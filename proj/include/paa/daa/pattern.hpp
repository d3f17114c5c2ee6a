#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "paa/daa/aho_corasick.hpp"
#include "paa/daa/counting_dfa.hpp"
#include "paa/daa/nfa.hpp"
#include "paa/daa/prosite.hpp"
#include "paa/error.hpp"

namespace paa {

/// A pattern given as a finite string set, a set of generalized strings, or
/// a Prosite pattern.
struct PatternSpec {
  struct Strings {
    std::vector<std::string> items;
  };
  struct Generalized {
    std::vector<GeneralizedString> items;
  };
  struct Prosite {
    std::string pattern;
  };

  std::variant<Strings, Generalized, Prosite> kind;

  static PatternSpec strings(std::vector<std::string> s) { return {Strings{std::move(s)}}; }
  static PatternSpec generalized(std::vector<GeneralizedString> g) { return {Generalized{std::move(g)}}; }
  static PatternSpec prosite(std::string p) { return {Prosite{std::move(p)}}; }

  /// Generalized strings denoted by the pattern (literal strings become
  /// singleton classes).
  std::vector<GeneralizedString> generalized_strings(const std::string& alphabet) const {
    if (const auto* s = std::get_if<Strings>(&kind)) {
      std::vector<GeneralizedString> out;
      for (const auto& str : s->items) {
        GeneralizedString g;
        for (char ch : str) g.emplace_back(1, ch);
        out.push_back(std::move(g));
      }
      return out;
    }
    if (const auto* g = std::get_if<Generalized>(&kind)) return g->items;
    return expand_prosite(std::get<Prosite>(kind).pattern, alphabet);
  }

  /// Lengths of the (generalized) strings in the pattern.
  std::vector<std::size_t> lengths(const std::string& alphabet) const {
    std::vector<std::size_t> out;
    for (const auto& g : generalized_strings(alphabet)) out.push_back(g.size());
    return out;
  }
};

struct PipelineOptions {
  bool minimize = true;
};

/// Counting DFA with overlapping multiplicities: Aho-Corasick for string
/// sets, NFA plus subset construction otherwise; Hopcroft minimization on
/// request.
inline CountingDfa build_counting_dfa(const PatternSpec& spec, const std::string& alphabet,
                                      PipelineOptions options = {}) {
  CountingDfa dfa;
  if (const auto* s = std::get_if<PatternSpec::Strings>(&spec.kind)) {
    dfa = aho_corasick(s->items, alphabet);
  } else {
    dfa = subset_construction(nfa_from_generalized(spec.generalized_strings(alphabet), alphabet));
  }
  return options.minimize ? minimize(dfa) : dfa;
}

/// Pattern automaton with the counting scheme applied.
inline CountingDfa build_scheme_dfa(const PatternSpec& spec, const std::string& alphabet, CountingScheme scheme,
                                    PipelineOptions options = {}) {
  return apply_scheme(build_counting_dfa(spec, alphabet, options), scheme);
}

}  // namespace paa
