#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "paa/core/paa.hpp"
#include "paa/daa/daa.hpp"
#include "paa/error.hpp"

namespace paa {

enum class CountingScheme { match_position, overlapping, nonoverlapping };

inline std::string to_string(CountingScheme s) {
  switch (s) {
    case CountingScheme::match_position:
      return "match_position";
    case CountingScheme::overlapping:
      return "overlapping";
    case CountingScheme::nonoverlapping:
      return "nonoverlapping";
  }
  return "?";
}

inline CountingScheme parse_scheme(const std::string& s) {
  if (s == "match_position" || s == "match-position") return CountingScheme::match_position;
  if (s == "overlapping") return CountingScheme::overlapping;
  if (s == "nonoverlapping" || s == "non-overlapping") return CountingScheme::nonoverlapping;
  throw ArgumentError("unknown counting scheme '" + s + "'");
}

/// DFA whose states carry match-count emissions. `multiplicities` is true
/// when eta counts every pattern ending at the state (overlapping counts),
/// false when it only flags match positions.
struct CountingDfa {
  std::string alphabet;
  std::size_t start = 0;
  std::vector<std::size_t> delta;  // delta[q * |Sigma| + a]
  std::vector<std::uint32_t> emissions;
  bool multiplicities = true;

  std::size_t size() const noexcept { return emissions.size(); }
  std::size_t next(std::size_t q, std::size_t a) const { return delta[q * alphabet.size() + a]; }
  bool accepting(std::size_t q) const { return emissions[q] > 0; }

  std::size_t symbol_index(char ch) const {
    auto pos = alphabet.find(ch);
    if (pos == std::string::npos) throw ArgumentError(std::string("character '") + ch + "' is not in the alphabet");
    return pos;
  }

  /// Cumulative count: sum of eta over the states visited after the start.
  std::uint64_t count(const std::string& s) const {
    std::size_t q = start;
    std::uint64_t total = 0;
    for (char ch : s) {
      q = next(q, symbol_index(ch));
      total += emissions[q];
    }
    return total;
  }

  void validate() const {
    if (alphabet.empty()) throw ArgumentError("counting DFA alphabet is empty");
    if (emissions.empty() || delta.size() != emissions.size() * alphabet.size()) {
      throw ArgumentError("counting DFA tables have inconsistent sizes");
    }
    if (start >= emissions.size()) throw ArgumentError("counting DFA start out of range");
    for (std::size_t t : delta) {
      if (t >= emissions.size()) throw ArgumentError("counting DFA transition out of range");
    }
  }
};

/// Rewrites emissions and transitions for the requested counting scheme.
inline CountingDfa apply_scheme(const CountingDfa& dfa, CountingScheme scheme) {
  CountingDfa out = dfa;
  switch (scheme) {
    case CountingScheme::overlapping:
      if (!dfa.multiplicities) {
        throw ArgumentError("overlapping counts need an automaton with match multiplicities");
      }
      return out;
    case CountingScheme::match_position:
      break;
    case CountingScheme::nonoverlapping: {
      const std::size_t k = dfa.alphabet.size();
      for (std::size_t q = 0; q < dfa.size(); ++q) {
        if (!dfa.accepting(q)) continue;
        for (std::size_t a = 0; a < k; ++a) out.delta[q * k + a] = dfa.next(dfa.start, a);
      }
      break;
    }
  }
  for (auto& e : out.emissions) e = std::min<std::uint32_t>(e, 1);
  out.multiplicities = false;
  return out;
}

/// DAA with V = {0..M}, v0 = 0 and truncated addition in every state.
inline Daa<std::int64_t, std::int64_t> counting_daa(const CountingDfa& dfa, std::int64_t bound) {
  if (bound < 1) throw ArgumentError("truncation bound M must be at least 1");
  dfa.validate();
  std::vector<std::int64_t> emissions(dfa.emissions.begin(), dfa.emissions.end());
  std::vector<Operation<std::int64_t, std::int64_t>> ops(dfa.size(),
                                                          ops::truncated_add<std::int64_t, std::int64_t>(bound));
  return Daa<std::int64_t, std::int64_t>(dfa.alphabet, dfa.start, dfa.delta,
                                         ValueDomain<std::int64_t>::integer_range(0, bound), 0, std::move(emissions),
                                         std::move(ops));
}

namespace detail {

/// Relabels states in BFS order from the start (symbols in alphabet order)
/// and drops unreachable ones.
inline CountingDfa canonical_order(const CountingDfa& dfa) {
  const std::size_t k = dfa.alphabet.size();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(dfa.size(), unset);
  std::vector<std::size_t> order{dfa.start};
  label[dfa.start] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t t = dfa.next(order[i], a);
      if (label[t] == unset) {
        label[t] = order.size();
        order.push_back(t);
      }
    }
  }
  CountingDfa out;
  out.alphabet = dfa.alphabet;
  out.start = 0;
  out.multiplicities = dfa.multiplicities;
  out.emissions.resize(order.size());
  out.delta.resize(order.size() * k);
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.emissions[i] = dfa.emissions[order[i]];
    for (std::size_t a = 0; a < k; ++a) out.delta[i * k + a] = label[dfa.next(order[i], a)];
  }
  return out;
}

}  // namespace detail

/// Hopcroft minimization with the partition by emission value as the
/// initial partition. Unreachable states are removed first and the result is
/// numbered in BFS order.
inline CountingDfa minimize(const CountingDfa& input) {
  input.validate();
  const CountingDfa dfa = detail::canonical_order(input);
  const std::size_t n = dfa.size();
  const std::size_t k = dfa.alphabet.size();

  // Inverse transitions: for symbol a and state t, the states q with delta(q,a)=t.
  std::vector<std::vector<std::size_t>> inv_start(k, std::vector<std::size_t>(n + 1, 0));
  std::vector<std::vector<std::size_t>> inv(k, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t q = 0; q < n; ++q) ++inv_start[a][dfa.next(q, a) + 1];
    for (std::size_t t = 0; t < n; ++t) inv_start[a][t + 1] += inv_start[a][t];
    std::vector<std::size_t> fill(inv_start[a].begin(), inv_start[a].end() - 1);
    for (std::size_t q = 0; q < n; ++q) inv[a][fill[dfa.next(q, a)]++] = q;
  }

  // Refinable partition: elements grouped by block in `elems`.
  std::vector<std::size_t> elems(n), pos(n), block(n);
  std::vector<std::size_t> first, last, marked;
  {
    std::map<std::uint32_t, std::vector<std::size_t>> groups;
    for (std::size_t q = 0; q < n; ++q) groups[dfa.emissions[q]].push_back(q);
    std::size_t i = 0;
    for (const auto& [e, members] : groups) {
      first.push_back(i);
      for (std::size_t q : members) {
        elems[i] = q;
        pos[q] = i;
        block[q] = first.size() - 1;
        ++i;
      }
      last.push_back(i);
      marked.push_back(0);
    }
  }

  std::vector<std::vector<bool>> in_work;
  std::queue<std::pair<std::size_t, std::size_t>> work;
  for (std::size_t b = 0; b < first.size(); ++b) {
    in_work.emplace_back(k, true);
    for (std::size_t a = 0; a < k; ++a) work.emplace(b, a);
  }

  std::vector<std::size_t> touched;
  std::vector<std::size_t> splitter;
  while (!work.empty()) {
    const auto [b, a] = work.front();
    work.pop();
    in_work[b][a] = false;
    splitter.assign(elems.begin() + static_cast<std::ptrdiff_t>(first[b]),
                    elems.begin() + static_cast<std::ptrdiff_t>(last[b]));
    for (std::size_t t : splitter) {
      for (std::size_t j = inv_start[a][t]; j < inv_start[a][t + 1]; ++j) {
        const std::size_t q = inv[a][j];
        const std::size_t y = block[q];
        const std::size_t mpos = first[y] + marked[y];
        if (pos[q] < mpos) continue;  // already marked
        if (marked[y] == 0) touched.push_back(y);
        const std::size_t other = elems[mpos];
        std::swap(elems[pos[q]], elems[mpos]);
        pos[other] = pos[q];
        pos[q] = mpos;
        ++marked[y];
      }
    }
    for (std::size_t y : touched) {
      const std::size_t size = last[y] - first[y];
      if (marked[y] == size) {
        marked[y] = 0;
        continue;
      }
      // Split y into the marked part (new block) and the rest (stays y).
      const std::size_t nb = first.size();
      first.push_back(first[y]);
      last.push_back(first[y] + marked[y]);
      marked.push_back(0);
      first[y] += marked[y];
      marked[y] = 0;
      for (std::size_t i = first[nb]; i < last[nb]; ++i) block[elems[i]] = nb;
      in_work.emplace_back(k, false);
      const bool new_smaller = (last[nb] - first[nb]) <= (last[y] - first[y]);
      for (std::size_t c = 0; c < k; ++c) {
        if (in_work[y][c]) {
          in_work[nb][c] = true;
          work.emplace(nb, c);
        } else {
          const std::size_t pick = new_smaller ? nb : y;
          in_work[pick][c] = true;
          work.emplace(pick, c);
        }
      }
    }
    touched.clear();
  }

  CountingDfa out;
  out.alphabet = dfa.alphabet;
  out.multiplicities = dfa.multiplicities;
  out.start = block[dfa.start];
  out.emissions.resize(first.size());
  out.delta.resize(first.size() * k);
  for (std::size_t b = 0; b < first.size(); ++b) {
    const std::size_t rep = elems[first[b]];
    out.emissions[b] = dfa.emissions[rep];
    for (std::size_t a = 0; a < k; ++a) out.delta[b * k + a] = block[dfa.next(rep, a)];
  }
  return detail::canonical_order(out);
}

/// Structural isomorphism (same alphabet, bijection of states preserving
/// start, transitions and emissions).
inline bool isomorphic(const CountingDfa& x, const CountingDfa& y) {
  if (x.alphabet != y.alphabet || x.size() != y.size()) return false;
  const std::size_t k = x.alphabet.size();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> map(x.size(), unset), back(y.size(), unset);
  std::queue<std::size_t> bfs;
  map[x.start] = y.start;
  back[y.start] = x.start;
  bfs.push(x.start);
  while (!bfs.empty()) {
    const std::size_t q = bfs.front();
    bfs.pop();
    if (x.emissions[q] != y.emissions[map[q]]) return false;
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t s = x.next(q, a), t = y.next(map[q], a);
      if (map[s] == unset && back[t] == unset) {
        map[s] = t;
        back[t] = s;
        bfs.push(s);
      } else if (map[s] != t || back[t] != s) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace paa
