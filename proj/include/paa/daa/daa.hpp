#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "paa/core/paa.hpp"
#include "paa/error.hpp"
#include "paa/textmodel/text_model.hpp"

namespace paa {

/// Deterministic arithmetic automaton. delta is stored row-major:
/// delta[q * |Sigma| + a].
template <class V, class E = std::int64_t>
class Daa {
 public:
  using Op = Operation<V, E>;

  Daa(std::string alphabet, std::size_t start, std::vector<std::size_t> delta, ValueDomain<V> domain, V start_value,
      std::vector<E> emissions, std::vector<Op> operations)
      : alphabet_(std::move(alphabet)),
        start_(start),
        delta_(std::move(delta)),
        domain_(std::move(domain)),
        start_value_(std::move(start_value)),
        emissions_(std::move(emissions)),
        operations_(std::move(operations)) {
    const std::size_t n = emissions_.size();
    if (alphabet_.empty()) throw ArgumentError("DAA alphabet is empty");
    if (n == 0 || operations_.size() != n || delta_.size() != n * alphabet_.size()) {
      throw ArgumentError("DAA tables have inconsistent sizes");
    }
    if (start_ >= n) throw ArgumentError("DAA start state out of range");
    for (std::size_t t : delta_) {
      if (t >= n) throw ArgumentError("DAA transition target out of range");
    }
  }

  const std::string& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return emissions_.size(); }
  std::size_t start() const noexcept { return start_; }
  const V& start_value() const noexcept { return start_value_; }
  const ValueDomain<V>& domain() const noexcept { return domain_; }
  std::size_t next(std::size_t q, std::size_t a) const { return delta_[q * alphabet_.size() + a]; }
  const E& emission(std::size_t q) const { return emissions_[q]; }
  const Op& operation(std::size_t q) const { return operations_[q]; }
  const std::vector<std::size_t>& delta() const noexcept { return delta_; }
  const std::vector<E>& emissions() const noexcept { return emissions_; }
  const std::vector<Op>& operations() const noexcept { return operations_; }

  std::size_t symbol_index(char ch) const {
    auto pos = alphabet_.find(ch);
    if (pos == std::string::npos) throw ArgumentError(std::string("character '") + ch + "' is not in the alphabet");
    return pos;
  }

  /// Joint transition: (delta(q, a), theta_{q'}(v, eta_{q'})).
  std::pair<std::size_t, V> step(std::size_t q, const V& v, std::size_t a) const {
    const std::size_t q2 = next(q, a);
    return {q2, operations_[q2](v, emissions_[q2])};
  }

 private:
  std::string alphabet_;
  std::size_t start_;
  std::vector<std::size_t> delta_;
  ValueDomain<V> domain_;
  V start_value_;
  std::vector<E> emissions_;
  std::vector<Op> operations_;
};

/// value_D(s): the value reached after reading s from (q0, v0).
template <class V, class E>
V daa_value(const Daa<V, E>& daa, const std::string& s) {
  std::size_t q = daa.start();
  V v = daa.start_value();
  for (char ch : s) std::tie(q, v) = daa.step(q, v, daa.symbol_index(ch));
  return v;
}

/// PAA built from a DAA and a text model, with the (DAA state, context)
/// pair behind every PAA state. `virtual_start` marks an extra start state
/// that does not correspond to any pair.
template <class V, class E>
struct ProductPaa {
  Paa<V, E> paa;
  std::vector<std::pair<std::size_t, std::size_t>> origin;
  bool virtual_start = false;

  std::size_t size() const noexcept { return origin.size(); }
};

/// Entry point of a product PAA: start in DAA state `state` and context
/// `context` with the given probability.
struct ProductEntry {
  std::size_t state;
  std::size_t context;
  double probability;
};

namespace detail {

template <class V, class E>
ProductPaa<V, E> build_product(const Daa<V, E>& daa, const TextModel& model, const std::vector<ProductEntry>& entries,
                               bool virtual_start) {
  if (daa.alphabet().size() != model.alphabet().size()) throw ArgumentError("DAA and text model alphabets differ");
  std::vector<std::size_t> symbol_map(model.alphabet_size());
  for (std::size_t a = 0; a < model.alphabet_size(); ++a) {
    auto pos = daa.alphabet().find(model.alphabet()[a]);
    if (pos == std::string::npos) throw ArgumentError("DAA and text model alphabets differ");
    symbol_map[a] = pos;
  }

  std::vector<std::pair<std::size_t, std::size_t>> origin;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  auto intern = [&](std::size_t q, std::size_t c) {
    auto [it, inserted] = index.emplace(std::pair{q, c}, origin.size());
    if (inserted) origin.emplace_back(q, c);
    return it->second;
  };
  const std::size_t offset = virtual_start ? 1 : 0;
  SparseRow start_row;
  if (virtual_start) {
    std::map<std::size_t, double> merged;
    for (const auto& e : entries) {
      if (e.probability > 0.0) merged[intern(e.state, e.context) + offset] += e.probability;
    }
    start_row.assign(merged.begin(), merged.end());
  } else {
    intern(daa.start(), model.start());
  }

  TransitionMatrix rows;
  for (std::size_t i = 0; i < origin.size(); ++i) {
    const auto [q, c] = origin[i];
    std::map<std::size_t, double> row;
    for (const auto& t : model.row(c)) {
      if (t.probability == 0.0) continue;
      row[intern(daa.next(q, symbol_map[t.symbol]), t.next) + offset] += t.probability;
    }
    rows.emplace_back(row.begin(), row.end());
  }

  TransitionMatrix transitions;
  std::vector<typename Paa<V, E>::EmissionTable> emissions;
  std::vector<Operation<V, E>> operations;
  if (virtual_start) {
    transitions.push_back(std::move(start_row));
    emissions.push_back({{E{}, 1.0}});
    operations.push_back(daa.operation(daa.start()));
  }
  for (std::size_t i = 0; i < origin.size(); ++i) {
    transitions.push_back(std::move(rows[i]));
    emissions.push_back({{daa.emission(origin[i].first), 1.0}});
    operations.push_back(daa.operation(origin[i].first));
  }
  if (virtual_start) origin.insert(origin.begin(), {static_cast<std::size_t>(-1), static_cast<std::size_t>(-1)});
  Paa<V, E> paa(0, std::move(transitions), daa.domain(), daa.start_value(), std::move(emissions),
                std::move(operations));
  return {std::move(paa), std::move(origin), virtual_start};
}

}  // namespace detail

/// PAA over Q^D x C restricted to the pairs reachable from (q0^D, c0), with
/// T((q,c),(q',c')) = sum over sigma with delta(q,sigma)=q' of phi(c,sigma,c').
template <class V, class E>
ProductPaa<V, E> paa_from_daa(const Daa<V, E>& daa, const TextModel& model) {
  return detail::build_product(daa, model, {}, false);
}

/// Variant with a virtual start state whose outgoing row is `entries`. The
/// first step enters an entry pair and applies that pair's emission and
/// operation, as if the character leading into it had just been read.
template <class V, class E>
ProductPaa<V, E> paa_from_daa(const Daa<V, E>& daa, const TextModel& model, const std::vector<ProductEntry>& entries) {
  return detail::build_product(daa, model, entries, true);
}

}  // namespace paa
