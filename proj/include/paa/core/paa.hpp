#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paa/error.hpp"

namespace paa {

/// Sparse row of a stochastic matrix: (target index, probability).
using SparseRow = std::vector<std::pair<std::size_t, double>>;
using TransitionMatrix = std::vector<SparseRow>;

inline constexpr double kRowTolerance = 1e-12;

inline double row_sum(const SparseRow& row) {
  double s = 0.0;
  for (const auto& [j, p] : row) s += p;
  return s;
}

/// Checks that every row is stochastic and every target index is in range.
inline void validate_stochastic(const TransitionMatrix& rows, double tolerance = kRowTolerance) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [j, p] : rows[i]) {
      if (j >= rows.size()) throw ArgumentError("transition target out of range in row " + std::to_string(i));
      if (!(p >= 0.0)) throw ArgumentError("negative transition probability in row " + std::to_string(i));
    }
    if (std::abs(row_sum(rows[i]) - 1.0) > tolerance) {
      throw ArgumentError("transition row " + std::to_string(i) + " does not sum to one");
    }
  }
}

/// State process of a PAA (or any finite Markov chain) as sparse rows.
struct MarkovChain {
  TransitionMatrix rows;

  std::size_t size() const noexcept { return rows.size(); }
};

/// Binary operation theta_q : V x E -> V carrying a stable, comparable tag.
template <class V, class E>
struct Operation {
  std::string tag;
  std::function<V(const V&, const E&)> apply;

  V operator()(const V& v, const E& e) const { return apply(v, e); }
  friend bool operator==(const Operation& a, const Operation& b) { return a.tag == b.tag; }
};

namespace ops {

template <class V, class E>
Operation<V, E> add() {
  return {"add", [](const V& v, const E& e) { return static_cast<V>(v + e); }};
}

/// min(v + e, M)
template <class V, class E>
Operation<V, E> truncated_add(V bound) {
  return {"truncated-add(" + std::to_string(bound) + ")", [bound](const V& v, const E& e) {
            V s = static_cast<V>(v + e);
            return s >= bound ? bound : s;
          }};
}

template <class V, class E>
Operation<V, E> maximum() {
  return {"max", [](const V& v, const E& e) { return v < static_cast<V>(e) ? static_cast<V>(e) : v; }};
}

/// Parses the bound out of a "truncated-add(M)" tag.
inline std::optional<long long> truncated_add_bound(const std::string& tag) {
  const std::string prefix = "truncated-add(";
  if (tag.rfind(prefix, 0) != 0 || tag.back() != ')') return std::nullopt;
  try {
    return std::stoll(tag.substr(prefix.size(), tag.size() - prefix.size() - 1));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace ops

/// Descriptor of the value set V.
template <class V>
struct ValueDomain {
  std::string name = "unbounded";
  std::function<bool(const V&)> contains;  // empty means every V is admitted
  std::vector<V> elements;                 // nonempty when the domain is enumerable

  bool admits(const V& v) const { return !contains || contains(v); }
  bool enumerable() const { return !elements.empty(); }

  static ValueDomain unbounded(std::string name = "unbounded") { return {std::move(name), {}, {}}; }

  static ValueDomain integer_range(V lo, V hi)
    requires std::integral<V>
  {
    ValueDomain d;
    d.name = "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
    d.contains = [lo, hi](const V& v) { return lo <= v && v <= hi; };
    if (hi - lo < 1'000'000) {
      for (V v = lo; v <= hi; ++v) d.elements.push_back(v);
    }
    return d;
  }

  static ValueDomain enumerated(std::vector<V> values, std::string name = "enumerated") {
    ValueDomain d;
    d.name = std::move(name);
    auto shared = std::make_shared<std::vector<V>>(values);
    d.contains = [shared](const V& v) {
      for (const auto& x : *shared) {
        if (x == v) return true;
      }
      return false;
    };
    d.elements = std::move(values);
    return d;
  }
};

/// Probabilistic arithmetic automaton (Q, q0, T, V, v0, E, mu, theta).
template <class V, class E = std::int64_t>
class Paa {
 public:
  using value_type = V;
  using emission_type = E;
  using EmissionTable = std::vector<std::pair<E, double>>;
  using Op = Operation<V, E>;

  Paa(std::size_t start_state, TransitionMatrix transitions, ValueDomain<V> domain, V start_value,
      std::vector<EmissionTable> emissions, std::vector<Op> operations)
      : start_state_(start_state),
        transitions_(std::move(transitions)),
        domain_(std::move(domain)),
        start_value_(std::move(start_value)),
        emissions_(std::move(emissions)),
        operations_(std::move(operations)) {
    validate();
  }

  std::size_t size() const noexcept { return transitions_.size(); }
  std::size_t start_state() const noexcept { return start_state_; }
  const V& start_value() const noexcept { return start_value_; }
  const ValueDomain<V>& domain() const noexcept { return domain_; }
  const TransitionMatrix& transitions() const noexcept { return transitions_; }
  const SparseRow& transitions(std::size_t q) const { return transitions_.at(q); }
  const EmissionTable& emissions(std::size_t q) const { return emissions_.at(q); }
  const std::vector<EmissionTable>& emission_tables() const noexcept { return emissions_; }
  const Op& operation(std::size_t q) const { return operations_.at(q); }
  const std::vector<Op>& operations() const noexcept { return operations_; }

  MarkovChain chain() const { return {transitions_}; }

  /// Common bound M when every operation is truncated-add(M) and every
  /// emission is a nonnegative integer; the doubling kernel can then fix v1=0.
  std::optional<long long> additive_bound() const {
    if constexpr (std::integral<V> && std::integral<E>) {
      std::optional<long long> bound;
      for (const auto& op : operations_) {
        auto b = ops::truncated_add_bound(op.tag);
        if (!b || (bound && *bound != *b)) return std::nullopt;
        bound = b;
      }
      for (const auto& table : emissions_) {
        for (const auto& [e, p] : table) {
          if (e < 0) return std::nullopt;
        }
      }
      if (!bound || start_value_ < 0 || start_value_ > *bound) return std::nullopt;
      return bound;
    } else {
      return std::nullopt;
    }
  }

  Paa with_transitions(TransitionMatrix transitions) const {
    return Paa(start_state_, std::move(transitions), domain_, start_value_, emissions_, operations_);
  }

  Paa with_emissions(std::vector<EmissionTable> emissions) const {
    return Paa(start_state_, transitions_, domain_, start_value_, std::move(emissions), operations_);
  }

 private:
  void validate() const {
    const std::size_t n = transitions_.size();
    if (n == 0) throw ArgumentError("PAA needs at least one state");
    if (start_state_ >= n) throw ArgumentError("start state out of range");
    if (emissions_.size() != n || operations_.size() != n) {
      throw ArgumentError("emission and operation tables must have one entry per state");
    }
    validate_stochastic(transitions_);
    for (std::size_t q = 0; q < n; ++q) {
      double s = 0.0;
      for (const auto& [e, p] : emissions_[q]) {
        if (!(p >= 0.0)) throw ArgumentError("negative emission probability in state " + std::to_string(q));
        s += p;
      }
      if (std::abs(s - 1.0) > 1e-9) {
        throw ArgumentError("emission distribution of state " + std::to_string(q) + " does not sum to one");
      }
      if (!operations_[q].apply) throw ArgumentError("missing operation in state " + std::to_string(q));
    }
    if (!domain_.admits(start_value_)) throw DomainError("start value outside the value domain");
    if (domain_.enumerable()) {
      for (std::size_t q = 0; q < n; ++q) {
        for (const auto& v : domain_.elements) {
          for (const auto& [e, p] : emissions_[q]) {
            if (!domain_.admits(operations_[q](v, e))) {
              throw DomainError("operation '" + operations_[q].tag + "' of state " + std::to_string(q) +
                                " leaves the value domain " + domain_.name);
            }
          }
        }
      }
    }
  }

  std::size_t start_state_;
  TransitionMatrix transitions_;
  ValueDomain<V> domain_;
  V start_value_;
  std::vector<EmissionTable> emissions_;
  std::vector<Op> operations_;
};

}  // namespace paa
