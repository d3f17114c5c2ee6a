#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "paa/daa/pattern.hpp"
#include "paa/distribution.hpp"
#include "paa/error.hpp"
#include "paa/textmodel.hpp"

// Reference implementations used to check the automaton-based results.
// Nothing here goes through automata: texts are enumerated or sampled and
// scanned naively.

namespace paa::oracle {

/// SplitMix64: counter-based 64-bit generator.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::uint64_t seed_state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

inline constexpr double kMaxEnumeration = 1e7;

/// Sum over all s in Sigma^n of P(s) * Dirac(evaluator(s)).
template <class F>
auto enumerate_exact(F&& evaluator, const TextModel& model, std::size_t n) {
  using V = std::decay_t<decltype(evaluator(std::string{}))>;
  const double count = std::pow(static_cast<double>(model.alphabet_size()), static_cast<double>(n));
  if (count > kMaxEnumeration) throw ResourceError("exhaustive enumeration over more than 1e7 texts refused");
  Distribution<V> out;
  std::string s;
  std::vector<std::vector<double>> forward(n + 1, std::vector<double>(model.size(), 0.0));
  forward[0][model.start()] = 1.0;
  auto rec = [&](auto& self, std::size_t depth) -> void {
    if (depth == n) {
      double p = 0.0;
      for (double x : forward[n]) p += x;
      if (p > 0.0) out.add(evaluator(s), p);
      return;
    }
    for (std::size_t a = 0; a < model.alphabet_size(); ++a) {
      auto& next = forward[depth + 1];
      std::fill(next.begin(), next.end(), 0.0);
      double mass = 0.0;
      for (std::size_t c = 0; c < model.size(); ++c) {
        if (forward[depth][c] == 0.0) continue;
        for (const auto& t : model.row(c)) {
          if (t.symbol == a) {
            next[t.next] += forward[depth][c] * t.probability;
            mass += forward[depth][c] * t.probability;
          }
        }
      }
      if (mass == 0.0) continue;
      s.push_back(model.alphabet()[a]);
      self(self, depth + 1);
      s.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Walks the context chain, drawing each character from phi.
inline std::string sample_text(const TextModel& model, std::size_t n, SplitMix64& rng) {
  std::string s;
  s.reserve(n);
  std::size_t c = model.start();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = model.row(c);
    double u = rng.uniform();
    const ContextTransition* pick = &row.back();
    for (const auto& t : row) {
      if (u < t.probability) {
        pick = &t;
        break;
      }
      u -= t.probability;
    }
    s.push_back(model.alphabet()[pick->symbol]);
    c = pick->next;
  }
  return s;
}

inline std::string sample_text(const TextModel& model, std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return sample_text(model, n, rng);
}

struct MatchResult {
  std::int64_t occurrences = 0;
  std::int64_t cost = 0;
};

/// Horspool as usually written: compare right to left, shift by the table
/// entry of the window's last character.
inline MatchResult horspool(const std::string& pattern, const std::string& text) {
  const std::size_t m = pattern.size();
  if (m == 0) throw ArgumentError("pattern is empty");
  std::map<char, std::size_t> shift;
  for (std::size_t i = 0; i + 1 < m; ++i) shift[pattern[i]] = m - 1 - i;
  MatchResult r;
  std::size_t t = m - 1;
  while (t < text.size()) {
    std::size_t i = 0;
    while (i < m) {
      ++r.cost;
      if (text[t - i] != pattern[m - 1 - i]) break;
      ++i;
    }
    if (i == m) ++r.occurrences;
    auto it = shift.find(text[t]);
    t += it == shift.end() ? m : it->second;
  }
  return r;
}

/// Sunday with a window of m + 1 characters: the first m are compared right
/// to left and the following character decides the shift. A window is only
/// processed when that following character exists.
inline MatchResult sunday(const std::string& pattern, const std::string& text) {
  const std::size_t m = pattern.size();
  if (m == 0) throw ArgumentError("pattern is empty");
  std::map<char, std::size_t> shift;
  for (std::size_t i = 0; i < m; ++i) shift[pattern[i]] = m - i;
  MatchResult r;
  std::size_t t = m - 1;
  while (t + 1 < text.size()) {
    std::size_t i = 0;
    while (i < m) {
      ++r.cost;
      if (text[t - i] != pattern[m - 1 - i]) break;
      ++i;
    }
    if (i == m) ++r.occurrences;
    auto it = shift.find(text[t + 1]);
    t += it == shift.end() ? m + 1 : it->second;
  }
  return r;
}

inline MatchResult run_matcher(const std::string& algorithm, const std::string& pattern, const std::string& text) {
  if (algorithm == "horspool") return horspool(pattern, text);
  if (algorithm == "sunday") return sunday(pattern, text);
  throw ArgumentError("unknown algorithm '" + algorithm + "'");
}

/// End positions of every occurrence, with multiplicity when several
/// (generalized) strings end at the same position.
inline std::vector<std::size_t> occurrence_ends(const std::vector<GeneralizedString>& patterns,
                                                const std::string& text) {
  std::vector<std::size_t> ends;
  for (std::size_t e = 0; e < text.size(); ++e) {
    for (const auto& g : patterns) {
      if (g.size() > e + 1) continue;
      const std::size_t begin = e + 1 - g.size();
      bool ok = true;
      for (std::size_t i = 0; i < g.size() && ok; ++i) ok = g[i].find(text[begin + i]) != std::string::npos;
      if (ok) ends.push_back(e);
    }
  }
  return ends;
}

inline std::int64_t count_occurrences(const std::vector<std::string>& patterns, const std::string& text) {
  std::int64_t n = 0;
  for (const auto& p : patterns) {
    for (std::size_t pos = text.find(p); pos != std::string::npos; pos = text.find(p, pos + 1)) ++n;
  }
  return n;
}

/// Naive count under a counting scheme: every occurrence, every end
/// position, or end positions of occurrences starting after the previously
/// counted end.
inline std::int64_t count_matches(const std::vector<GeneralizedString>& patterns, const std::string& text,
                                  CountingScheme scheme) {
  std::int64_t n = 0;
  bool counted = false;
  std::size_t last = 0;
  for (std::size_t e = 0; e < text.size(); ++e) {
    std::int64_t here = 0;
    bool fresh = false;
    for (const auto& g : patterns) {
      if (g.empty() || g.size() > e + 1) continue;
      const std::size_t begin = e + 1 - g.size();
      bool ok = true;
      for (std::size_t i = 0; i < g.size() && ok; ++i) ok = g[i].find(text[begin + i]) != std::string::npos;
      if (!ok) continue;
      ++here;
      if (!counted || begin > last) fresh = true;
    }
    if (scheme == CountingScheme::overlapping) {
      n += here;
    } else if (scheme == CountingScheme::match_position) {
      n += here > 0;
    } else if (fresh) {
      ++n;
      counted = true;
      last = e;
    }
  }
  return n;
}

/// Sizes of the maximal groups of overlapping occurrences, left to right.
/// All strings must have the same length m; two occurrences overlap when
/// their end positions differ by less than m.
inline std::vector<std::int64_t> extract_clumps(const std::vector<GeneralizedString>& patterns,
                                                const std::string& text) {
  if (patterns.empty()) throw ArgumentError("pattern set is empty");
  const std::size_t m = patterns.front().size();
  for (const auto& g : patterns) {
    if (g.size() != m) throw ArgumentError("clumps need all strings to have the same length");
  }
  std::vector<std::int64_t> sizes;
  std::size_t last = 0;
  for (std::size_t e : occurrence_ends(patterns, text)) {
    if (!sizes.empty() && e - last < m) {
      ++sizes.back();
    } else {
      sizes.push_back(1);
    }
    last = e;
  }
  return sizes;
}

inline std::vector<std::int64_t> extract_clumps(const std::vector<std::string>& patterns, const std::string& text) {
  return extract_clumps(PatternSpec::strings(patterns).generalized_strings(""), text);
}

/// Clump sizes (truncated at `bound`) from sampled texts of `chunk` characters.
/// The first and last clump of every chunk are dropped since they may
/// extend beyond it.
inline std::vector<std::int64_t> sample_clump_sizes(const std::vector<GeneralizedString>& patterns,
                                                    const TextModel& model, std::size_t count, std::int64_t bound,
                                                    SplitMix64& rng, std::size_t chunk = 1'000'000) {
  std::vector<std::int64_t> out;
  out.reserve(count);
  while (out.size() < count) {
    const auto sizes = extract_clumps(patterns, sample_text(model, chunk, rng));
    for (std::size_t i = 1; i + 1 < sizes.size() && out.size() < count; ++i) out.push_back(std::min(sizes[i], bound));
  }
  return out;
}

/// Number of nucleotides read from `text` with `flows` flows of the cyclic
/// order; characters that are never flowed stop the read.
inline std::size_t simulate_read_length(const std::string& text, const std::string& order, std::int64_t flows) {
  std::size_t p = 0;
  for (std::int64_t k = 0; k < flows; ++k) {
    const char nuc = order[static_cast<std::size_t>(k) % order.size()];
    while (p < text.size() && text[p] == nuc) ++p;
  }
  return p;
}

/// Comparison of an empirical histogram with a reference distribution.
template <class K>
struct OracleReport {
  Distribution<K> reference;
  Distribution<K> empirical;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double max_abs_deviation = 0.0;
  double threshold = 3.0;
  std::map<K, double> z_scores;
  bool passed = true;

  /// Buckets whose |z| exceeds the threshold.
  std::vector<K> failures() const {
    std::vector<K> out;
    for (const auto& [k, z] : z_scores) {
      if (!(std::abs(z) <= threshold)) out.push_back(k);
    }
    return out;
  }
};

/// Two-sided z threshold with family-wise level 2(1 - Phi(3)) split over
/// `buckets` when there are more than 10 of them.
inline double bonferroni_threshold(std::size_t buckets, double sigmas = 3.0) {
  if (buckets <= 10) return sigmas;
  const double alpha = std::erfc(sigmas / std::sqrt(2.0)) / static_cast<double>(buckets);
  double lo = sigmas, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (std::erfc(mid / std::sqrt(2.0)) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// z-score per bucket over the union of supports: (phat - p) / sqrt(p (1 - p) / N).
template <class K>
OracleReport<K> compare_samples(const Distribution<K>& reference, const std::vector<K>& samples, std::uint64_t seed,
                                double sigmas = 3.0) {
  if (samples.empty()) throw ArgumentError("no samples");
  OracleReport<K> report;
  report.reference = reference;
  report.samples = samples.size();
  report.seed = seed;
  const double n = static_cast<double>(samples.size());
  for (const auto& s : samples) report.empirical.add(s, 1.0 / n);
  std::set<K> keys;
  for (const auto& [k, p] : reference) keys.insert(k);
  for (const auto& [k, p] : report.empirical) keys.insert(k);
  report.threshold = bonferroni_threshold(keys.size(), sigmas);
  for (const auto& k : keys) {
    const double p = reference.probability(k), phat = report.empirical.probability(k);
    report.max_abs_deviation = std::max(report.max_abs_deviation, std::abs(p - phat));
    double z;
    if (p <= 0.0 || p >= 1.0) {
      z = phat == p ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
      z = (phat - p) / std::sqrt(p * (1.0 - p) / n);
    }
    report.z_scores[k] = z;
    if (!(std::abs(z) <= report.threshold)) report.passed = false;
  }
  return report;
}

/// Sample mean with its standard error.
struct MeanEstimate {
  double mean = 0.0;
  double standard_error = 0.0;

  double z(double expected) const {
    return standard_error > 0.0 ? (mean - expected) / standard_error
                                : (mean == expected ? 0.0 : std::numeric_limits<double>::infinity());
  }
};

template <class T>
MeanEstimate estimate_mean(const std::vector<T>& xs) {
  if (xs.size() < 2) throw ArgumentError("need at least two samples");
  double s = 0.0, s2 = 0.0;
  for (const auto& x : xs) {
    s += static_cast<double>(x);
    s2 += static_cast<double>(x) * static_cast<double>(x);
  }
  const double n = static_cast<double>(xs.size());
  const double mean = s / n;
  const double var = std::max(0.0, (s2 - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

}  // namespace paa::oracle
