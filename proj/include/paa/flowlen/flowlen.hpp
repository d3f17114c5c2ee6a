#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "paa/core.hpp"
#include "paa/daa.hpp"
#include "paa/textmodel.hpp"

namespace paa {

inline const std::string kNucleotides = "ACGT";

/// Cyclic nucleotide flow order and flow budget f.
struct Dispensation {
  std::string order;
  std::int64_t flows = 0;

  Dispensation(std::string d, std::int64_t f) : order(std::move(d)), flows(f) { validate(); }

  std::size_t length() const noexcept { return order.size(); }

  void validate() const {
    if (flows < 1) throw ArgumentError("flow budget must be at least 1");
    if (order.empty()) throw ArgumentError("dispensation order is empty");
    for (char ch : order) {
      if (kNucleotides.find(ch) == std::string::npos) {
        throw ArgumentError(std::string("dispensation character '") + ch + "' is not a nucleotide");
      }
    }
    for (char ch : kNucleotides) {
      if (order.find(ch) == std::string::npos) {
        throw ArgumentError(std::string("dispensation order never flows '") + ch + "'");
      }
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (order[i] == order[(i + 1) % order.size()]) {
        throw ArgumentError("dispensation order flows '" + std::string(1, order[i]) + "' twice in a row");
      }
    }
  }

  /// Smallest i >= 0 with order[(j + i) mod l] == ch.
  std::size_t forward(std::size_t j, char ch) const {
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (order[(j + i) % order.size()] == ch) return i;
    }
    throw ArgumentError(std::string("nucleotide '") + ch + "' is never flowed");
  }
};

/// Flow-count DAA. States: start, (eps, j) for j < l, (i, j) for the
/// dispensation positions of the previous and the current sequenced
/// nucleotide, and a stop state for characters that are never flowed.
/// (eps, j) emits j + 1, (i, j) emits (j - i) mod l, stop emits f + 1; every
/// state adds with truncation at f + 1.
inline Daa<std::int64_t, std::int64_t> flow_daa(const Dispensation& d, const std::string& alphabet = kNucleotides) {
  d.validate();
  const std::size_t l = d.length();
  const std::size_t k = alphabet.size();
  const std::size_t first = 1, pairs = 1 + l, stop = 1 + l + l * l, n = stop + 1;
  const std::int64_t cap = d.flows + 1;
  std::vector<std::size_t> delta(n * k);
  std::vector<std::int64_t> emissions(n, 0);
  for (std::size_t j = 0; j < l; ++j) emissions[first + j] = static_cast<std::int64_t>(j) + 1;
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) emissions[pairs + i * l + j] = static_cast<std::int64_t>((j + l - i) % l);
  }
  emissions[stop] = cap;
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t a = 0; a < k; ++a) {
      const char ch = alphabet[a];
      std::size_t to = stop;
      if (q != stop && d.order.find(ch) != std::string::npos) {
        if (q == 0) {
          to = first + d.forward(0, ch);
        } else {
          const std::size_t j = q < pairs ? q - first : (q - pairs) % l;
          to = pairs + j * l + (j + d.forward(j, ch)) % l;
        }
      }
      delta[q * k + a] = to;
    }
  }
  std::vector<Operation<std::int64_t, std::int64_t>> ops(n, ops::truncated_add<std::int64_t, std::int64_t>(cap));
  return Daa<std::int64_t, std::int64_t>(alphabet, 0, std::move(delta), ValueDomain<std::int64_t>::integer_range(0, cap),
                                         0, std::move(emissions), std::move(ops));
}

/// L(L) for reads of at most nmax nucleotides, L = W_{f+1} - 1; the tail
/// holds P(L > nmax).
inline Distribution<std::size_t> read_length_distribution(const TextModel& model, const Dispensation& d,
                                                          std::size_t nmax) {
  if (nmax < 1) throw ArgumentError("nmax must be at least 1");
  const auto product = paa_from_daa(flow_daa(d, model.alphabet()), model);
  const std::int64_t cap = d.flows + 1;
  const auto w = waiting_time_values<std::int64_t, std::int64_t>(
      product.paa, [cap](const std::int64_t& v) { return v == cap; }, nmax + 1);
  Distribution<std::size_t> out;
  for (const auto& [t, p] : w) {
    if (t >= 1) out.add(t - 1, p);
  }
  out.add_tail(w.tail());
  return out;
}

inline double expected_read_length(const Distribution<std::size_t>& lengths, double max_tail = 1e-9) {
  if (lengths.tail() >= max_tail) {
    throw ArgumentError("read length tail " + std::to_string(lengths.tail()) + " is not negligible; increase nmax");
  }
  double e = 0.0;
  for (const auto& [l, p] : lengths) e += static_cast<double>(l) * p;
  return e;
}

inline double expected_read_length(const TextModel& model, const Dispensation& d, std::size_t nmax) {
  return expected_read_length(read_length_distribution(model, d, nmax));
}

/// All valid dispensation orders with length in [min_length, max_length],
/// in lexicographic order per length.
inline std::vector<std::string> dispensation_orders(std::size_t min_length, std::size_t max_length) {
  if (min_length < 4 || max_length < min_length) throw ArgumentError("order lengths must satisfy 4 <= min <= max");
  std::vector<std::string> out;
  std::string cur;
  auto rec = [&](auto& self, std::size_t length) -> void {
    if (cur.size() == length) {
      if (cur.front() == cur.back()) return;
      for (char ch : kNucleotides) {
        if (cur.find(ch) == std::string::npos) return;
      }
      out.push_back(cur);
      return;
    }
    for (char ch : kNucleotides) {
      if (!cur.empty() && cur.back() == ch) continue;
      cur.push_back(ch);
      self(self, length);
      cur.pop_back();
    }
  };
  for (std::size_t l = min_length; l <= max_length; ++l) rec(rec, l);
  return out;
}

struct OrderResult {
  std::string order;
  double expected_length = 0.0;
};

/// Expected read length for every order, sorted by decreasing expectation
/// (ties by order string). Orders are split across `jobs` threads.
inline std::vector<OrderResult> sweep_orders(const TextModel& model, const std::vector<std::string>& orders,
                                             std::int64_t flows, std::size_t nmax, std::size_t jobs = 1) {
  std::vector<OrderResult> results(orders.size());
  std::vector<std::exception_ptr> errors(std::max<std::size_t>(jobs, 1));
  auto work = [&](std::size_t worker, std::size_t stride) {
    try {
      for (std::size_t i = worker; i < orders.size(); i += stride) {
        results[i] = {orders[i], expected_read_length(model, Dispensation(orders[i], flows), nmax)};
      }
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };
  const std::size_t stride = std::max<std::size_t>(jobs, 1);
  if (stride == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < stride; ++w) threads.emplace_back(work, w, stride);
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::sort(results.begin(), results.end(), [](const OrderResult& a, const OrderResult& b) {
    if (a.expected_length != b.expected_length) return a.expected_length > b.expected_length;
    return a.order < b.order;
  });
  return results;
}

}  // namespace paa
