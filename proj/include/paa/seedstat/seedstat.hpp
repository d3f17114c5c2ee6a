#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "paa/core.hpp"
#include "paa/daa.hpp"
#include "paa/patstats.hpp"
#include "paa/textmodel.hpp"

namespace paa {

inline const std::string kUngappedAlphabet = "01";
inline const std::string kGappedAlphabet = "0123";

/// Seed over {1, *, ?}: 1 is a match, * a match or mismatch, ? zero or one
/// alignment character.
struct Seed {
  std::string text;

  explicit Seed(std::string s) : text(std::move(s)) {
    if (text.empty()) throw ArgumentError("seed is empty");
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char ch = text[i];
      if (ch != '1' && ch != '*' && ch != '?') {
        throw ParseError(std::string("seed character '") + ch + "' is not one of 1, *, ?", i);
      }
    }
    if (text.front() != '1' || text.back() != '1') throw ArgumentError("seed must start and end with 1");
  }

  std::size_t length() const noexcept { return text.size(); }
  std::size_t weight() const { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '1')); }
  bool has_indels() const { return text.find('?') != std::string::npos; }
};

namespace detail {

inline void expand_seed(const std::string& seed, std::size_t i, std::string& prefix, bool last_from_gap,
                        const std::string& alphabet, std::set<std::string>& out) {
  if (i == seed.size()) {
    out.insert(prefix);
    return;
  }
  auto emit = [&](char ch, bool from_gap) {
    if (from_gap && last_from_gap && !prefix.empty()) {
      const char prev = prefix.back();
      if ((prev == '2' && ch == '3') || (prev == '3' && ch == '2')) return;
    }
    prefix.push_back(ch);
    expand_seed(seed, i + 1, prefix, from_gap, alphabet, out);
    prefix.pop_back();
  };
  switch (seed[i]) {
    case '1':
      emit('1', false);
      break;
    case '*':
      emit('0', false);
      emit('1', false);
      break;
    default:
      // Skipping keeps the previous character adjacent to the next one.
      expand_seed(seed, i + 1, prefix, last_from_gap, alphabet, out);
      for (char ch : alphabet) emit(ch, true);
  }
}

}  // namespace detail

/// All instances of the seed over the alignment alphabet. Characters that
/// two ? produce next to each other never form the pair 23 or 32.
inline std::vector<std::string> seed_pattern_set(const Seed& seed, const std::string& alphabet = kGappedAlphabet) {
  if (alphabet.find('0') == std::string::npos || alphabet.find('1') == std::string::npos) {
    throw ArgumentError("alignment alphabet must contain 0 and 1");
  }
  std::set<std::string> out;
  std::string prefix;
  detail::expand_seed(seed.text, 0, prefix, false, alphabet, out);
  return {out.begin(), out.end()};
}

/// Set of seeds; hits of any component count.
struct MultipleSeed {
  std::vector<Seed> seeds;

  MultipleSeed(std::vector<Seed> s) : seeds(std::move(s)) {
    if (seeds.empty()) throw ArgumentError("multiple seed is empty");
  }
  MultipleSeed(Seed s) : seeds{std::move(s)} {}

  std::vector<std::string> pattern_set(const std::string& alphabet) const {
    std::set<std::string> all;
    for (const auto& s : seeds) {
      for (auto& p : seed_pattern_set(s, alphabet)) all.insert(std::move(p));
    }
    return {all.begin(), all.end()};
  }

  std::size_t min_weight() const {
    std::size_t w = seeds.front().weight();
    for (const auto& s : seeds) w = std::min(w, s.weight());
    return w;
  }
};

/// i.i.d. alignment model over {0,1} with match probability p.
inline TextModel ungapped_homology_model(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("match probability must lie in [0,1]");
  return iid_model(kUngappedAlphabet, {1.0 - p, p});
}

/// First-order alignment model over {0,1,2,3} (mismatch, match, insertion
/// in either sequence); consecutive 23 and 32 are impossible and the
/// corresponding gap mass is moved to 0 and 1. The first character is drawn
/// from (p0, p1, pg, pg).
inline TextModel gapped_homology_model(double p0, double p1, double pg) {
  if (p0 < 0.0 || p1 < 0.0 || pg < 0.0) throw ArgumentError("homology parameters must be nonnegative");
  if (std::abs(p0 + p1 + 2.0 * pg - 1.0) > 1e-12) throw ArgumentError("p0 + p1 + 2 pg must equal 1");
  if (p0 + p1 <= 0.0) throw ArgumentError("p0 + p1 must be positive");
  const double s0 = p0 + pg * p0 / (p0 + p1);
  const double s1 = p1 + pg * p1 / (p0 + p1);
  const std::vector<double> base{p0, p1, pg, pg};
  return markov_model(1, kGappedAlphabet,
                      {{"", base}, {"0", base}, {"1", base}, {"2", {s0, s1, pg, 0.0}}, {"3", {s0, s1, 0.0, pg}}});
}

/// Distribution of the number of hits for k = 0..K in an alignment of
/// length n; the tail holds P(more than K hits).
inline Distribution<std::int64_t> seed_hit_distribution(const MultipleSeed& seeds, const TextModel& model,
                                                        std::size_t n, std::int64_t max_hits,
                                                        CountingScheme scheme = CountingScheme::overlapping,
                                                        Method method = Method::basic) {
  if (n < 1) throw ArgumentError("alignment length must be at least 1");
  if (max_hits < 1) throw ArgumentError("K must be at least 1");
  const auto spec = PatternSpec::strings(seeds.pattern_set(model.alphabet()));
  const auto counts = occurrence_distribution(spec, model, n, max_hits + 1, scheme, method);
  Distribution<std::int64_t> out;
  for (const auto& [k, p] : counts) {
    if (k <= max_hits) {
      out.add(k, p);
    } else {
      out.add_tail(p);
    }
  }
  return out;
}

/// P(at least one hit), propagated with the value set {0, 1}.
inline double seed_sensitivity(const MultipleSeed& seeds, const TextModel& model, std::size_t n) {
  if (n < 1) throw ArgumentError("alignment length must be at least 1");
  const auto spec = PatternSpec::strings(seeds.pattern_set(model.alphabet()));
  const auto product = pattern_paa(spec, model, 1, CountingScheme::match_position);
  return value_distribution(product.paa, n).probability(1);
}

}  // namespace paa
