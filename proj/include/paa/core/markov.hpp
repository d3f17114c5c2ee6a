#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include "paa/core/paa.hpp"
#include "paa/distribution.hpp"
#include "paa/error.hpp"

namespace paa {

struct StationaryOptions {
  double tolerance = 1e-12;
  std::size_t max_iterations = 1'000'000;
};

namespace detail {

/// Strongly connected components (iterative Tarjan); returns component ids.
inline std::vector<std::size_t> strong_components(const MarkovChain& chain, std::size_t& count) {
  const std::size_t n = chain.size();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t next_index = 0;
  count = 0;
  struct Frame {
    std::size_t v;
    std::size_t edge;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    std::vector<Frame> calls{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!calls.empty()) {
      auto& f = calls.back();
      const auto& row = chain.rows[f.v];
      if (f.edge < row.size()) {
        const auto [w, p] = row[f.edge++];
        if (p == 0.0) continue;
        if (index[w] == unset) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          calls.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
      calls.pop_back();
      if (!calls.empty()) low[calls.back().v] = std::min(low[calls.back().v], low[v]);
    }
  }
  return comp;
}

}  // namespace detail

/// Stationary distribution pi = pi T by power iteration.
///
/// The chain must have exactly one closed communicating class and that class
/// must be aperiodic. Transient states (e.g. short start contexts) receive
/// probability zero.
inline std::vector<double> stationary_distribution(const MarkovChain& chain, StationaryOptions options = {}) {
  const std::size_t n = chain.size();
  if (n == 0) throw ArgumentError("empty chain");
  validate_stochastic(chain.rows, 1e-9);

  std::size_t count = 0;
  auto comp = detail::strong_components(chain, count);
  std::vector<bool> closed(count, true);
  for (std::size_t v = 0; v < n; ++v) {
    for (const auto& [w, p] : chain.rows[v]) {
      if (p > 0.0 && comp[w] != comp[v]) closed[comp[v]] = false;
    }
  }
  const auto closed_count = static_cast<std::size_t>(std::count(closed.begin(), closed.end(), true));
  if (closed_count != 1) {
    throw ChainPropertyError("chain is reducible: " + std::to_string(closed_count) + " closed classes");
  }
  const auto cls = static_cast<std::size_t>(std::find(closed.begin(), closed.end(), true) - closed.begin());

  // Period of the closed class: gcd of level differences along its edges.
  std::size_t root = 0;
  while (comp[root] != cls) ++root;
  std::vector<long long> level(n, -1);
  level[root] = 0;
  std::queue<std::size_t> bfs;
  bfs.push(root);
  long long period = 0;
  while (!bfs.empty()) {
    const std::size_t v = bfs.front();
    bfs.pop();
    for (const auto& [w, p] : chain.rows[v]) {
      if (p == 0.0 || comp[w] != cls) continue;
      if (level[w] < 0) {
        level[w] = level[v] + 1;
        bfs.push(w);
      } else {
        period = std::gcd(period, std::abs(level[v] + 1 - level[w]));
      }
    }
  }
  if (period != 1) throw ChainPropertyError("chain is periodic with period " + std::to_string(period));

  std::vector<double> pi(n, 0.0), next(n);
  std::size_t members = 0;
  for (std::size_t v = 0; v < n; ++v) members += comp[v] == cls;
  for (std::size_t v = 0; v < n; ++v) {
    if (comp[v] == cls) pi[v] = 1.0 / static_cast<double>(members);
  }
  double change = 0.0;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      if (pi[v] == 0.0) continue;
      for (const auto& [w, p] : chain.rows[v]) next[w] += pi[v] * p;
    }
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    change = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      next[v] /= total;
      change = std::max(change, std::abs(next[v] - pi[v]));
    }
    pi.swap(next);
    if (change < options.tolerance) return pi;
  }
  throw ConvergenceError("stationary distribution did not converge", change);
}

/// Waiting time W'_S for the chain (Q, T, alpha) via the aggregation state
/// (replacing S) and the absorbing flush state. Returns P(W = t) for
/// t = 0..tmax with tail P(W > tmax).
inline Distribution<std::size_t> waiting_time_states(const MarkovChain& chain, const std::vector<double>& alpha,
                                                     const std::vector<bool>& targets, std::size_t tmax) {
  const std::size_t n = chain.size();
  if (alpha.size() != n || targets.size() != n) throw ArgumentError("alpha and target mask must match the chain size");
  if (std::none_of(targets.begin(), targets.end(), [](bool b) { return b; })) {
    throw ArgumentError("target state set is empty");
  }
  const double alpha_sum = std::accumulate(alpha.begin(), alpha.end(), 0.0);
  if (std::abs(alpha_sum - 1.0) > 1e-9) throw ArgumentError("alpha does not sum to one");

  // Reduced chain over Q \ S plus aggregate (hit) and flush states.
  std::vector<std::size_t> reduced(n, 0);
  std::size_t m = 0;
  for (std::size_t q = 0; q < n; ++q) {
    if (!targets[q]) reduced[q] = m++;
  }
  const std::size_t hit = m, flush = m + 1;
  TransitionMatrix rows(m + 2);
  for (std::size_t q = 0; q < n; ++q) {
    if (targets[q]) continue;
    double to_hit = 0.0;
    for (const auto& [w, p] : chain.rows[q]) {
      if (targets[w]) {
        to_hit += p;
      } else {
        rows[reduced[q]].emplace_back(reduced[w], p);
      }
    }
    if (to_hit > 0.0) rows[reduced[q]].emplace_back(hit, to_hit);
  }
  rows[hit] = {{flush, 1.0}};
  rows[flush] = {{flush, 1.0}};

  std::vector<double> x(m + 2, 0.0), next(m + 2);
  for (std::size_t q = 0; q < n; ++q) x[targets[q] ? hit : reduced[q]] += alpha[q];

  Distribution<std::size_t> out;
  for (std::size_t t = 0;; ++t) {
    out.add(t, x[hit]);
    if (t == tmax) break;
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < m + 1; ++i) {
      if (x[i] == 0.0) continue;
      for (const auto& [j, p] : rows[i]) next[j] += x[i] * p;
    }
    x.swap(next);
  }
  double remaining = 0.0;
  for (std::size_t i = 0; i < m; ++i) remaining += x[i];
  out.add_tail(remaining);
  return out;
}

/// Return time min{t >= 1 : Q_t in S} for a chain started from alpha.
/// With alpha the stationary distribution restricted to S this is the
/// waiting time for a subsequent visit.
inline Distribution<std::size_t> return_time_states(const MarkovChain& chain, const std::vector<double>& alpha,
                                                    const std::vector<bool>& targets, std::size_t tmax) {
  if (tmax == 0) throw ArgumentError("tmax must be at least 1");
  std::vector<double> beta(chain.size(), 0.0);
  for (std::size_t q = 0; q < chain.size(); ++q) {
    for (const auto& [w, p] : chain.rows[q]) beta[w] += alpha[q] * p;
  }
  auto shifted = waiting_time_states(chain, beta, targets, tmax - 1);
  Distribution<std::size_t> out;
  for (const auto& [t, p] : shifted) out.add(t + 1, p);
  out.add_tail(shifted.tail());
  return out;
}

/// Stationary distribution restricted to the mask and renormalized.
inline std::vector<double> restrict_to(const std::vector<double>& pi, const std::vector<bool>& mask) {
  std::vector<double> out(pi.size(), 0.0);
  double s = 0.0;
  for (std::size_t q = 0; q < pi.size(); ++q) {
    if (mask[q]) s += pi[q];
  }
  if (s <= 0.0) throw ChainPropertyError("target states carry no stationary mass");
  for (std::size_t q = 0; q < pi.size(); ++q) {
    if (mask[q]) out[q] = pi[q] / s;
  }
  return out;
}

}  // namespace paa
