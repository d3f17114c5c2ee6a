#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "paa/daa/counting_dfa.hpp"
#include "paa/error.hpp"

namespace paa {

/// Aho-Corasick automaton for a finite string set, flattened into a total
/// counting DFA. States are the distinct pattern prefixes (numbered in trie
/// insertion order); eta(q) is the number of patterns that are suffixes of q.
inline CountingDfa aho_corasick(const std::vector<std::string>& patterns, const std::string& alphabet) {
  if (patterns.empty()) throw ArgumentError("pattern set is empty");
  if (alphabet.empty()) throw ArgumentError("alphabet is empty");
  const std::size_t k = alphabet.size();
  constexpr std::size_t none = static_cast<std::size_t>(-1);

  std::vector<std::vector<std::size_t>> go{std::vector<std::size_t>(k, none)};
  std::vector<std::uint32_t> out{0};
  std::set<std::string> seen;
  for (const auto& p : patterns) {
    if (p.empty()) throw ArgumentError("pattern strings must be nonempty");
    if (!seen.insert(p).second) continue;
    std::size_t q = 0;
    for (char ch : p) {
      const auto a = alphabet.find(ch);
      if (a == std::string::npos) throw ArgumentError("pattern '" + p + "' uses a character outside the alphabet");
      if (go[q][a] == none) {
        go[q][a] = go.size();
        go.emplace_back(k, none);
        out.push_back(0);
      }
      q = go[q][a];
    }
    ++out[q];
  }

  const std::size_t n = go.size();
  std::vector<std::size_t> fail(n, 0);
  CountingDfa dfa;
  dfa.alphabet = alphabet;
  dfa.start = 0;
  dfa.multiplicities = true;
  dfa.delta.assign(n * k, 0);
  std::queue<std::size_t> bfs;
  for (std::size_t a = 0; a < k; ++a) {
    if (go[0][a] != none) {
      dfa.delta[a] = go[0][a];
      fail[go[0][a]] = 0;
      bfs.push(go[0][a]);
    } else {
      dfa.delta[a] = 0;
    }
  }
  while (!bfs.empty()) {
    const std::size_t q = bfs.front();
    bfs.pop();
    out[q] += out[fail[q]];
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t child = go[q][a];
      if (child != none) {
        fail[child] = dfa.delta[fail[q] * k + a];
        dfa.delta[q * k + a] = child;
        bfs.push(child);
      } else {
        dfa.delta[q * k + a] = dfa.delta[fail[q] * k + a];
      }
    }
  }
  dfa.emissions = std::move(out);
  return dfa;
}

}  // namespace paa
