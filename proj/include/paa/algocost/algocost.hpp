#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "paa/core.hpp"
#include "paa/textmodel.hpp"

namespace paa {

/// Largest window space |Sigma|^z accepted; PAA_MAX_STATES overrides 2^20.
inline std::size_t max_window_states() {
  if (const char* env = std::getenv("PAA_MAX_STATES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::size_t{1} << 20;
}

/// Window algorithm over Sigma^z. Windows are coded in base |Sigma| with the
/// first window character most significant.
struct AlgorithmSpec {
  std::string name;
  std::string pattern;
  std::string alphabet;
  std::size_t z = 0;
  std::vector<std::int64_t> cost;
  std::vector<std::int64_t> shift;
  std::int64_t max_cost = 0;
  std::int64_t max_shift = 0;

  std::size_t windows() const noexcept { return cost.size(); }

  std::string decode(std::size_t code) const {
    std::string w(z, alphabet[0]);
    for (std::size_t i = z; i-- > 0;) {
      w[i] = alphabet[code % alphabet.size()];
      code /= alphabet.size();
    }
    return w;
  }

  std::size_t encode(const std::string& w) const {
    if (w.size() != z) throw ArgumentError("window has the wrong length");
    std::size_t code = 0;
    for (char ch : w) {
      const auto a = alphabet.find(ch);
      if (a == std::string::npos) throw ArgumentError(std::string("character '") + ch + "' is not in the alphabet");
      code = code * alphabet.size() + a;
    }
    return code;
  }

  void validate() const {
    if (z == 0 || alphabet.empty()) throw ArgumentError("algorithm needs a window size and an alphabet");
    if (cost.size() != shift.size()) throw ArgumentError("cost and shift tables differ in size");
    for (std::size_t w = 0; w < cost.size(); ++w) {
      if (shift[w] < 1 || shift[w] > max_shift) throw ArgumentError("shift outside 1.." + std::to_string(max_shift));
      if (cost[w] < 0 || cost[w] > max_cost) throw ArgumentError("window cost outside 0.." + std::to_string(max_cost));
    }
  }
};

namespace detail {

inline std::size_t window_space(std::size_t k, std::size_t z) {
  const std::size_t limit = max_window_states();
  std::size_t s = 1;
  for (std::size_t i = 0; i < z; ++i) {
    if (s > limit / k) throw ResourceError("window space |Sigma|^z exceeds " + std::to_string(limit) + " states");
    s *= k;
  }
  if (s > limit) throw ResourceError("window space |Sigma|^z exceeds " + std::to_string(limit) + " states");
  return s;
}

inline void check_pattern(const std::string& pattern, const std::string& alphabet) {
  if (pattern.empty()) throw ArgumentError("pattern is empty");
  for (char ch : pattern) {
    if (alphabet.find(ch) == std::string::npos) {
      throw ArgumentError(std::string("pattern character '") + ch + "' is not in the alphabet");
    }
  }
}

// Right-to-left comparisons of the first m window characters against the
// pattern, stopping at the first mismatch.
inline std::int64_t comparisons(const std::string& pattern, const std::string& window) {
  const std::size_t m = pattern.size();
  std::int64_t c = 0;
  for (std::size_t i = m; i-- > 0;) {
    ++c;
    if (window[i] != pattern[i]) break;
  }
  return c;
}

}  // namespace detail

/// Horspool: z = m, shift = (m-1) - right(w) where right(w) is the last
/// position of w[m-1] in pattern[0..m-2] (or -1).
inline AlgorithmSpec horspool_spec(const std::string& pattern, const std::string& alphabet) {
  detail::check_pattern(pattern, alphabet);
  const std::size_t m = pattern.size();
  AlgorithmSpec spec{"horspool", pattern, alphabet, m, {}, {}, static_cast<std::int64_t>(m),
                     static_cast<std::int64_t>(m)};
  const std::size_t space = detail::window_space(alphabet.size(), m);
  spec.cost.resize(space);
  spec.shift.resize(space);
  for (std::size_t code = 0; code < space; ++code) {
    const std::string w = spec.decode(code);
    spec.cost[code] = detail::comparisons(pattern, w);
    const auto right = pattern.substr(0, m - 1).rfind(w[m - 1]);
    const std::int64_t r = right == std::string::npos ? -1 : static_cast<std::int64_t>(right);
    spec.shift[code] = static_cast<std::int64_t>(m) - 1 - r;
  }
  return spec;
}

/// Sunday: z = m + 1. The first m characters are compared right to left;
/// the extra character decides the shift m - last(w[m]) (m + 1 if absent).
/// Reading the extra character is not charged.
inline AlgorithmSpec sunday_spec(const std::string& pattern, const std::string& alphabet) {
  detail::check_pattern(pattern, alphabet);
  const std::size_t m = pattern.size();
  AlgorithmSpec spec{"sunday", pattern, alphabet, m + 1, {}, {}, static_cast<std::int64_t>(m),
                     static_cast<std::int64_t>(m + 1)};
  const std::size_t space = detail::window_space(alphabet.size(), m + 1);
  spec.cost.resize(space);
  spec.shift.resize(space);
  for (std::size_t code = 0; code < space; ++code) {
    const std::string w = spec.decode(code);
    spec.cost[code] = detail::comparisons(pattern, w);
    const auto last = pattern.rfind(w[m]);
    spec.shift[code] = last == std::string::npos ? static_cast<std::int64_t>(m + 1)
                                                 : static_cast<std::int64_t>(m - last);
  }
  return spec;
}

inline AlgorithmSpec algorithm_spec(const std::string& name, const std::string& pattern, const std::string& alphabet) {
  if (name == "horspool") return horspool_spec(pattern, alphabet);
  if (name == "sunday") return sunday_spec(pattern, alphabet);
  throw ArgumentError("unknown algorithm '" + name + "'");
}

/// Same windows and shifts with every window costing 1: the cost becomes
/// the number of windows processed.
inline AlgorithmSpec with_unit_cost(AlgorithmSpec spec) {
  std::fill(spec.cost.begin(), spec.cost.end(), 1);
  spec.max_cost = 1;
  spec.name += "+unit";
  return spec;
}

namespace detail {

inline std::vector<std::size_t> symbol_map(const AlgorithmSpec& spec, const TextModel& model) {
  if (spec.alphabet.size() != model.alphabet_size()) throw ArgumentError("algorithm and text model alphabets differ");
  std::vector<std::size_t> map(model.alphabet_size());
  for (std::size_t a = 0; a < model.alphabet_size(); ++a) {
    const auto pos = spec.alphabet.find(model.alphabet()[a]);
    if (pos == std::string::npos) throw ArgumentError("algorithm and text model alphabets differ");
    map[a] = pos;
  }
  return map;
}

}  // namespace detail

/// Exact distribution of the total cost of running the algorithm on a random
/// text of length n. The text is swept one character at a time; each path
/// carries the last z characters, the context, the number of characters
/// until the current window is complete and the cost so far. A window whose
/// end would lie beyond the text is never charged.
inline Distribution<std::int64_t> cost_distribution(const AlgorithmSpec& spec, const TextModel& model, std::size_t n) {
  spec.validate();
  if (n < spec.z) throw ArgumentError("text length must be at least the window size z");
  const auto sym = detail::symbol_map(spec, model);
  const std::size_t k = spec.alphabet.size();
  const std::size_t space = spec.windows();
  const std::size_t contexts = model.size();
  const std::size_t states = space * contexts;
  const std::size_t dmax = static_cast<std::size_t>(std::max<std::int64_t>(spec.max_shift, spec.z));
  const std::size_t cmax = static_cast<std::size_t>(spec.max_cost) * (n - spec.z + 1);
  const std::size_t cells = (dmax + 1) * (cmax + 1);
  if (states > (std::size_t{1} << 40) / cells) throw ResourceError("cost sweep needs too much memory");

  // Rows are allocated lazily; rows[s][d * (cmax + 1) + c].
  std::vector<std::vector<double>> cur(states), next(states);
  cur[model.start()].assign(cells, 0.0);
  cur[model.start()][spec.z * (cmax + 1)] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& row : next) row.clear();
    for (std::size_t s = 0; s < states; ++s) {
      if (cur[s].empty()) continue;
      const std::size_t code = s / contexts, ctx = s % contexts;
      for (const auto& t : model.row(ctx)) {
        if (t.probability == 0.0) continue;
        const std::size_t code2 = (code * k + sym[t.symbol]) % space;
        auto& out = next[code2 * contexts + t.next];
        if (out.empty()) out.assign(cells, 0.0);
        for (std::size_t d = 1; d <= dmax; ++d) {
          const double* src = &cur[s][d * (cmax + 1)];
          if (d > 1) {
            double* dst = &out[(d - 1) * (cmax + 1)];
            for (std::size_t c = 0; c <= cmax; ++c) dst[c] += t.probability * src[c];
          } else {
            const auto add = static_cast<std::size_t>(spec.cost[code2]);
            double* dst = &out[static_cast<std::size_t>(spec.shift[code2]) * (cmax + 1)];
            for (std::size_t c = 0; c + add <= cmax; ++c) dst[c + add] += t.probability * src[c];
          }
        }
      }
    }
    cur.swap(next);
  }
  std::vector<double> total(cmax + 1, 0.0);
  for (const auto& row : cur) {
    for (std::size_t j = 0; j < row.size(); ++j) total[j % (cmax + 1)] += row[j];
  }
  Distribution<std::int64_t> out;
  for (std::size_t c = 0; c <= cmax; ++c) {
    if (total[c] != 0.0) out.add(static_cast<std::int64_t>(c), total[c]);
  }
  return out;
}

/// Value of the explicit cost PAA: end position t of the next window to be
/// processed (kDone once it lies beyond the text) and the cost so far.
struct CostValue {
  static constexpr std::int64_t kDone = -1;
  std::int64_t t = 0;
  std::int64_t cost = 0;
  auto operator<=>(const CostValue&) const = default;
};

/// Emission of a window state: its cost and shift.
struct WindowEmission {
  std::int64_t cost = 0;
  std::int64_t shift = 0;
  auto operator<=>(const WindowEmission&) const = default;
};

struct CostPaa {
  Paa<CostValue, WindowEmission> paa;
  std::vector<std::pair<std::size_t, std::size_t>> origin;  // (window code, context); start is (-1, start context)
  std::size_t steps = 0;                                      // steps after which every path is done
};

/// PAA whose steps are windows: from window w the chain moves to a window w'
/// that agrees with w shifted by shift(w), with the probability of the newly
/// generated characters. Intended for small instances and for checking
/// cost_distribution.
inline CostPaa cost_paa(const AlgorithmSpec& spec, const TextModel& model, std::size_t n) {
  spec.validate();
  if (n < spec.z) throw ArgumentError("text length must be at least the window size z");
  const auto sym = detail::symbol_map(spec, model);
  const std::size_t k = spec.alphabet.size();
  const std::size_t space = spec.windows();
  constexpr std::size_t none = static_cast<std::size_t>(-1);

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> origin{{none, model.start()}};
  index[origin[0]] = 0;
  TransitionMatrix rows;
  for (std::size_t i = 0; i < origin.size(); ++i) {
    const auto [code, ctx] = origin[i];
    const std::size_t len = code == none ? spec.z : static_cast<std::size_t>(spec.shift[code]);
    std::map<std::size_t, double> row;
    // Depth-first over the len new characters, carrying window code and context.
    std::function<void(std::size_t, std::size_t, std::size_t, double)> walk = [&](std::size_t depth, std::size_t w,
                                                                                   std::size_t c, double p) {
      if (depth == len) {
        auto [it, inserted] = index.emplace(std::pair{w, c}, origin.size());
        if (inserted) origin.emplace_back(w, c);
        row[it->second] += p;
        return;
      }
      for (const auto& t : model.row(c)) {
        if (t.probability == 0.0) continue;
        walk(depth + 1, (w * k + sym[t.symbol]) % space, t.next, p * t.probability);
      }
    };
    walk(0, code == none ? 0 : code, ctx, 1.0);
    rows.emplace_back(row.begin(), row.end());
  }

  std::vector<Paa<CostValue, WindowEmission>::EmissionTable> emissions;
  for (const auto& [code, ctx] : origin) {
    if (code == none) {
      emissions.push_back({{WindowEmission{0, 0}, 1.0}});
    } else {
      emissions.push_back({{WindowEmission{spec.cost[code], spec.shift[code]}, 1.0}});
    }
  }
  const auto len = static_cast<std::int64_t>(n);
  Operation<CostValue, WindowEmission> op{"window-cost(n=" + std::to_string(n) + ")",
                                          [len](const CostValue& v, const WindowEmission& e) {
                                            if (v.t == CostValue::kDone) return v;
                                            const std::int64_t t = v.t + e.shift;
                                            return CostValue{t < len ? t : CostValue::kDone, v.cost + e.cost};
                                          }};
  std::vector<Operation<CostValue, WindowEmission>> ops(origin.size(), op);
  Paa<CostValue, WindowEmission> paa(0, std::move(rows), ValueDomain<CostValue>::unbounded("window values"),
                                     CostValue{static_cast<std::int64_t>(spec.z) - 1, 0}, std::move(emissions),
                                     std::move(ops));
  return {std::move(paa), std::move(origin), n - spec.z + 1};
}

/// Cost distribution read off the explicit PAA after its last window.
inline Distribution<std::int64_t> cost_distribution_paa(const AlgorithmSpec& spec, const TextModel& model,
                                                        std::size_t n) {
  const auto built = cost_paa(spec, model, n);
  const auto values = value_distribution(built.paa, built.steps);
  Distribution<std::int64_t> out;
  for (const auto& [v, p] : values) {
    if (v.t != CostValue::kDone) throw DomainError("cost PAA has unfinished paths after the last window");
    out.add(v.cost, p);
  }
  return out;
}

}  // namespace paa
