#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "paa/daa/counting_dfa.hpp"
#include "paa/error.hpp"

namespace paa {

/// A generalized string: one character class per position, each class given
/// as the string of its member characters.
using GeneralizedString = std::vector<std::string>;

/// NFA over an alphabet of at most 64 characters. Character classes are bit
/// masks over alphabet indices.
struct Nfa {
  struct Edge {
    std::uint64_t symbols;
    std::size_t target;
  };

  std::string alphabet;
  std::vector<std::size_t> start;
  std::vector<std::vector<Edge>> edges;
  std::vector<std::uint32_t> final_count;

  std::size_t size() const noexcept { return edges.size(); }
};

inline std::uint64_t class_mask(const std::string& members, const std::string& alphabet) {
  if (members.empty()) throw ArgumentError("character class is empty");
  std::uint64_t mask = 0;
  for (char ch : members) {
    const auto a = alphabet.find(ch);
    if (a == std::string::npos) throw ArgumentError(std::string("character '") + ch + "' is not in the alphabet");
    mask |= std::uint64_t{1} << a;
  }
  return mask;
}

/// One linear chain per generalized string sharing a common start state that
/// carries a self-loop over the whole alphabet.
inline Nfa nfa_from_generalized(const std::vector<GeneralizedString>& patterns, const std::string& alphabet) {
  if (alphabet.empty() || alphabet.size() > 64) throw ArgumentError("NFA alphabets must have 1 to 64 characters");
  if (patterns.empty()) throw ArgumentError("pattern set is empty");
  const std::uint64_t all = alphabet.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << alphabet.size()) - 1;
  Nfa nfa;
  nfa.alphabet = alphabet;
  nfa.start = {0};
  nfa.edges.push_back({{all, 0}});
  nfa.final_count.push_back(0);
  for (const auto& pattern : patterns) {
    if (pattern.empty()) throw ArgumentError("generalized strings must be nonempty");
    std::size_t prev = 0;
    for (const auto& cls : pattern) {
      const std::size_t state = nfa.edges.size();
      nfa.edges.emplace_back();
      nfa.final_count.push_back(0);
      nfa.edges[prev].push_back({class_mask(cls, alphabet), state});
      prev = state;
    }
    nfa.final_count[prev] = 1;
  }
  return nfa;
}

/// Subset construction over the reachable state sets. eta of a DFA state is
/// the total final count of its NFA states, i.e. the number of generalized
/// strings ending there.
inline CountingDfa subset_construction(const Nfa& nfa, std::size_t max_states = 5'000'000) {
  const std::size_t k = nfa.alphabet.size();
  using Set = std::vector<std::uint32_t>;
  std::map<Set, std::size_t> index;
  std::vector<Set> sets;
  Set init(nfa.start.begin(), nfa.start.end());
  std::sort(init.begin(), init.end());
  init.erase(std::unique(init.begin(), init.end()), init.end());
  index.emplace(init, 0);
  sets.push_back(init);

  CountingDfa dfa;
  dfa.alphabet = nfa.alphabet;
  dfa.start = 0;
  dfa.multiplicities = true;
  std::vector<char> seen(nfa.size(), 0);
  Set next;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::uint32_t eta = 0;
    for (auto s : sets[i]) eta += nfa.final_count[s];
    dfa.emissions.push_back(eta);
    for (std::size_t a = 0; a < k; ++a) {
      const std::uint64_t bit = std::uint64_t{1} << a;
      next.clear();
      for (auto s : sets[i]) {
        for (const auto& e : nfa.edges[s]) {
          if ((e.symbols & bit) && !seen[e.target]) {
            seen[e.target] = 1;
            next.push_back(static_cast<std::uint32_t>(e.target));
          }
        }
      }
      for (auto s : next) seen[s] = 0;
      std::sort(next.begin(), next.end());
      auto [it, inserted] = index.emplace(next, sets.size());
      if (inserted) {
        if (sets.size() >= max_states) throw ResourceError("subset construction exceeds the state limit");
        sets.push_back(next);
      }
      dfa.delta.push_back(it->second);
    }
  }
  return dfa;
}

}  // namespace paa
