#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "paa/core/engine.hpp"
#include "paa/core/paa.hpp"
#include "paa/distribution.hpp"
#include "paa/error.hpp"

namespace paa {

/// Target value set given as a membership predicate.
template <class V>
using ValuePredicate = std::function<bool(const V&)>;

template <class V>
ValuePredicate<V> value_set(std::set<V> values) {
  if (values.empty()) throw ArgumentError("target value set is empty");
  return [values = std::move(values)](const V& v) { return values.count(v) > 0; };
}

/// Value of the rewritten PAA: an original value, the hit marker or the
/// flushed marker.
template <class V>
struct Marked {
  enum class Kind { value, hit, flushed };
  Kind kind = Kind::value;
  V value{};

  static Marked hit() { return {Kind::hit, V{}}; }
  static Marked flushed() { return {Kind::flushed, V{}}; }

  friend auto operator<=>(const Marked&, const Marked&) = default;
  friend bool operator==(const Marked&, const Marked&) = default;
};

/// Rewrites a PAA so that entering the target set yields the hit marker once
/// and the flushed marker forever after: P(W = t) = P(V'_t = hit).
template <class V, class E>
Paa<Marked<V>, E> mark_targets(const Paa<V, E>& paa, ValuePredicate<V> targets) {
  using M = Marked<V>;
  std::vector<Operation<M, E>> marked_ops;
  marked_ops.reserve(paa.size());
  for (const auto& op : paa.operations()) {
    marked_ops.push_back({"marked(" + op.tag + ")", [op, targets](const M& v, const E& e) {
                            if (v.kind != M::Kind::value) return M::flushed();
                            V out = op(v.value, e);
                            if (targets(out)) return M::hit();
                            return M{M::Kind::value, out};
                          }});
  }
  ValueDomain<M> domain;
  domain.name = "marked(" + paa.domain().name + ")";
  domain.contains = [inner = paa.domain(), targets](const M& v) {
    return v.kind != M::Kind::value || (inner.admits(v.value) && !targets(v.value));
  };
  M start = targets(paa.start_value()) ? M::hit() : M{M::Kind::value, paa.start_value()};
  return Paa<M, E>(paa.start_state(), paa.transitions(), std::move(domain), start, paa.emission_tables(),
                   std::move(marked_ops));
}

/// Waiting time W_T = min{t : V_t in T}. Mass that reaches a target value is
/// removed from the running table at the step it arrives, which is the
/// hit/flush rewrite without materializing the markers.
template <class V, class E>
Distribution<std::size_t> waiting_time_values(const Paa<V, E>& paa, const ValuePredicate<V>& targets,
                                              std::size_t tmax) {
  if (!targets) throw ArgumentError("target value set is empty");
  Distribution<std::size_t> out;
  if (targets(paa.start_value())) {
    out.add(0, 1.0);
    return out;
  }
  Propagator<V, E> prop(paa);
  for (std::size_t t = 1; t <= tmax; ++t) {
    prop.step();
    out.add(t, prop.drain(targets));
  }
  out.add_tail(prop.mass());
  return out;
}

/// Same quantity computed on the explicitly rewritten PAA.
template <class V, class E>
Distribution<std::size_t> waiting_time_values_marked(const Paa<V, E>& paa, const ValuePredicate<V>& targets,
                                                     std::size_t tmax) {
  using M = Marked<V>;
  auto marked = mark_targets(paa, targets);
  Propagator<M, E> prop(marked);
  Distribution<std::size_t> out;
  for (std::size_t t = 0;; ++t) {
    const auto values = prop.values();
    const double hit = values.probability(M::hit());
    out.add(t, hit);
    if (t == tmax) {
      out.add_tail(values.mass() - values.probability(M::flushed()) - hit);
      break;
    }
    prop.drain([](const M& v) { return v.kind == M::Kind::flushed; });
    prop.step();
  }
  return out;
}

}  // namespace paa
