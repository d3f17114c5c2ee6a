#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "paa/core.hpp"
#include "paa/daa.hpp"
#include "paa/textmodel.hpp"

namespace paa {

using CountPaa = ProductPaa<std::int64_t, std::int64_t>;

/// Product PAA of the counting DAA (truncated at M) and the text model.
inline CountPaa pattern_paa(const PatternSpec& spec, const TextModel& model, std::int64_t bound,
                            CountingScheme scheme = CountingScheme::overlapping, PipelineOptions options = {}) {
  const auto dfa = build_scheme_dfa(spec, model.alphabet(), scheme, options);
  return paa_from_daa(counting_daa(dfa, bound), model);
}

/// States of a count PAA whose emission is positive.
inline std::vector<bool> match_states(const Paa<std::int64_t, std::int64_t>& paa) {
  std::vector<bool> mask(paa.size(), false);
  for (std::size_t q = 0; q < paa.size(); ++q) {
    for (const auto& [e, p] : paa.emissions(q)) {
      if (e > 0 && p > 0.0) mask[q] = true;
    }
  }
  return mask;
}

/// Distribution of min{M, number of matches} in a random text of length n.
inline Distribution<std::int64_t> occurrence_distribution(const PatternSpec& spec, const TextModel& model,
                                                          std::size_t n, std::int64_t bound,
                                                          CountingScheme scheme = CountingScheme::overlapping,
                                                          Method method = Method::basic, PipelineOptions options = {}) {
  const auto product = pattern_paa(spec, model, bound, scheme, options);
  return value_distribution(product.paa, n, method);
}

enum class WaitingMode { first, subsequent };

inline WaitingMode parse_waiting_mode(const std::string& s) {
  if (s == "first") return WaitingMode::first;
  if (s == "subsequent") return WaitingMode::subsequent;
  throw ArgumentError("unknown waiting mode '" + s + "'");
}

/// Waiting time for the first match (from the start of the text) or for the
/// next match after a match drawn from the equilibrium. Returns P(W = t) for
/// t <= tmax with tail P(W > tmax).
inline Distribution<std::size_t> pattern_waiting_time(const PatternSpec& spec, const TextModel& model,
                                                      std::size_t tmax, WaitingMode mode,
                                                      CountingScheme scheme = CountingScheme::overlapping,
                                                      PipelineOptions options = {}) {
  if (tmax < 1) throw ArgumentError("tmax must be at least 1");
  const auto product = pattern_paa(spec, model, 1, scheme, options);
  const auto chain = product.paa.chain();
  const auto mask = match_states(product.paa);
  if (std::none_of(mask.begin(), mask.end(), [](bool b) { return b; })) {
    throw ArgumentError("pattern can never match under this text model");
  }
  if (mode == WaitingMode::first) {
    std::vector<double> alpha(chain.size(), 0.0);
    alpha[product.paa.start_state()] = 1.0;
    return waiting_time_states(chain, alpha, mask, tmax);
  }
  const auto pi = stationary_distribution(chain);
  return return_time_states(chain, restrict_to(pi, mask), mask, tmax);
}

namespace detail {

/// Common length m of all (generalized) strings; rejects patterns that
/// violate the clump preconditions.
inline std::size_t clump_pattern_length(const PatternSpec& spec, const std::string& alphabet) {
  const auto patterns = spec.generalized_strings(alphabet);
  const std::size_t m = patterns.front().size();
  for (const auto& g : patterns) {
    if (g.size() != m) throw ArgumentError("clump statistics need all pattern strings to have the same length");
    std::string first = g.front();
    std::sort(first.begin(), first.end());
    first.erase(std::unique(first.begin(), first.end()), first.end());
    if (first.size() == alphabet.size()) {
      throw UnsupportedFeature("clump statistics are not defined for patterns starting with a wildcard");
    }
  }
  if (m < 2) throw ArgumentError("clump statistics need pattern length at least 2");
  return m;
}

}  // namespace detail

struct ClumpStartResult {
  std::vector<double> gamma;  // over the states of `product`
  CountPaa product;
  std::size_t iterations = 0;
};

/// gamma(q) = lim_t P(Q_t = q | L_t >= m, E_t > 0), where L_t is the number
/// of steps since the previous match (infinite before the first one). The
/// joint law of (Q_t, L_t) is iterated until gamma changes by less than tol
/// in the max norm, but not before every reachable (q, l) pair has had time
/// to appear; early iterates can repeat while part of the support is still
/// unreached.
inline ClumpStartResult clump_start_distribution(const PatternSpec& spec, const TextModel& model, double tol = 1e-12,
                                                 std::size_t max_iterations = 1'000'000,
                                                 PipelineOptions options = {}) {
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
  const std::size_t m = detail::clump_pattern_length(spec, model.alphabet());
  auto product = pattern_paa(spec, model, 1, CountingScheme::overlapping, options);
  const auto& paa = product.paa;
  const std::size_t n = paa.size();
  const auto match = match_states(paa);

  // x[q * w + l]: l = 0 encodes L = infinity, l in 1..m encodes min(L, m).
  const std::size_t w = m + 1;
  std::vector<double> x(n * w, 0.0), next(n * w);
  x[paa.start_state() * w] = 1.0;
  std::vector<double> gamma(n, 0.0), previous(n, 0.0);
  bool have_previous = false;
  for (std::size_t t = 1; t <= max_iterations; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t l = 0; l < w; ++l) {
        const double p = x[q * w + l];
        if (p == 0.0) continue;
        const std::size_t l2 = match[q] ? 1 : (l == 0 ? 0 : std::min(m, l + 1));
        for (const auto& [q2, pt] : paa.transitions(q)) next[q2 * w + l2] += p * pt;
      }
    }
    x.swap(next);

    double z = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
      gamma[q] = match[q] ? x[q * w + m] : 0.0;
      z += gamma[q];
    }
    if (z <= 0.0) continue;
    for (auto& g : gamma) g /= z;
    if (have_previous && t > n * w) {
      double diff = 0.0;
      for (std::size_t q = 0; q < n; ++q) diff = std::max(diff, std::abs(gamma[q] - previous[q]));
      if (diff < tol) return {std::move(gamma), std::move(product), t};
    }
    previous = gamma;
    have_previous = true;
  }
  throw ConvergenceError("clump start distribution did not converge", 0.0);
}

/// Value of the clump PAA: h matches so far and x steps since the last
/// match, or x = kEnded once the clump can no longer be extended.
struct ClumpValue {
  static constexpr std::int64_t kEnded = -1;
  std::int64_t h = 0;
  std::int64_t x = 0;
  auto operator<=>(const ClumpValue&) const = default;
};

/// Operation of every clump PAA state for pattern length m.
inline Operation<ClumpValue, std::int64_t> clump_operation(std::int64_t m) {
  return {"clump(m=" + std::to_string(m) + ")", [m](const ClumpValue& v, const std::int64_t& e) {
            if (v.x == ClumpValue::kEnded || v.x >= m - 1) return ClumpValue{v.h, ClumpValue::kEnded};
            if (e > 0) return ClumpValue{v.h + e, 0};
            return ClumpValue{v.h, v.x + 1};
          }};
}

/// Clump PAA: a fresh start state whose row is gamma, followed by the count
/// PAA with clump operations.
inline Paa<ClumpValue, std::int64_t> clump_paa(const ClumpStartResult& start, std::size_t m) {
  const auto& base = start.product.paa;
  const std::size_t n = base.size();
  TransitionMatrix rows;
  SparseRow first;
  for (std::size_t q = 0; q < n; ++q) {
    if (start.gamma[q] > 0.0) first.emplace_back(q + 1, start.gamma[q]);
  }
  rows.push_back(std::move(first));
  std::vector<Paa<ClumpValue, std::int64_t>::EmissionTable> emissions{{{0, 1.0}}};
  for (std::size_t q = 0; q < n; ++q) {
    SparseRow row;
    for (const auto& [q2, p] : base.transitions(q)) row.emplace_back(q2 + 1, p);
    rows.push_back(std::move(row));
    emissions.push_back(base.emissions(q));
  }
  std::vector<Operation<ClumpValue, std::int64_t>> ops(n + 1, clump_operation(static_cast<std::int64_t>(m)));
  return Paa<ClumpValue, std::int64_t>(0, std::move(rows), ValueDomain<ClumpValue>::unbounded("clump values"),
                                       ClumpValue{0, 0}, std::move(emissions), std::move(ops));
}

struct ClumpResult {
  Distribution<std::int64_t> psi;  // sizes 1..M, M meaning >= M
  double residual = 1.0;
  std::size_t iterations = 0;
};

/// Clump size distribution Psi truncated at M. A clump ends after m - 1
/// steps without a match; mass reaching h >= M is settled in the M bucket
/// at once since its truncated size can no longer change.
inline ClumpResult clump_size_distribution(const PatternSpec& spec, const TextModel& model, std::int64_t bound,
                                           double epsilon = 1e-9, double gamma_tol = 1e-12,
                                           PipelineOptions options = {}) {
  if (bound < 1) throw ArgumentError("truncation bound M must be at least 1");
  if (!(epsilon > 0.0)) throw ArgumentError("epsilon must be positive");
  const std::size_t m = detail::clump_pattern_length(spec, model.alphabet());
  const auto start = clump_start_distribution(spec, model, gamma_tol, 1'000'000, options);
  const auto paa = clump_paa(start, m);
  const auto mi = static_cast<std::int64_t>(m);
  const std::size_t cap = 10 * static_cast<std::size_t>(bound) * m;

  ClumpResult result;
  Propagator<ClumpValue, std::int64_t> prop(paa);
  for (std::size_t t = 1; t <= cap; ++t) {
    prop.step();
    const auto settled =
        prop.extract([&](const ClumpValue& v) { return v.h >= bound || (v.h > 0 && v.x == mi - 1); });
    for (const auto& [v, p] : settled) result.psi.add(std::min(v.h, bound), p);
    result.residual = std::max(0.0, prop.mass());
    result.iterations = t;
    if (result.residual < epsilon) {
      result.psi.add_tail(result.residual);
      return result;
    }
  }
  throw ConvergenceError("clump size iteration did not converge within " + std::to_string(cap) + " steps",
                         result.residual);
}

}  // namespace paa
