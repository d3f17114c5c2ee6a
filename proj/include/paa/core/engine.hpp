#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "paa/core/doubling.hpp"
#include "paa/core/paa.hpp"
#include "paa/distribution.hpp"
#include "paa/error.hpp"

namespace paa {

enum class Method { basic, doubling };

namespace detail {

inline constexpr std::size_t kMaxDenseSpan = std::size_t{1} << 26;

/// Per-state value table. Integral values live in a dense, auto-growing
/// window; everything else in an ordered map.
template <class V>
class ValueRow {
 public:
  void add(const V& v, double p) { map_[v] += p; }
  bool empty() const { return map_.empty(); }
  void clear() { map_.clear(); }

  template <class F>
  void for_each(F&& f) const {
    for (const auto& [v, p] : map_) f(v, p);
  }

  /// Removes and returns the mass of all entries satisfying pred.
  template <class Pred, class Sink>
  double drain(Pred&& pred, Sink&& sink) {
    double s = 0.0;
    for (auto it = map_.begin(); it != map_.end();) {
      if (pred(it->first)) {
        s += it->second;
        sink(it->first, it->second);
        it = map_.erase(it);
      } else {
        ++it;
      }
    }
    return s;
  }

 private:
  std::map<V, double> map_;
};

template <std::integral V>
class ValueRow<V> {
 public:
  void add(V v, double p) {
    if (data_.empty()) {
      lo_ = v;
      data_.assign(1, 0.0);
    } else if (v < lo_) {
      grow(static_cast<std::size_t>(lo_ - v), 0);
      lo_ = v;
    } else if (static_cast<std::size_t>(v - lo_) >= data_.size()) {
      grow(0, static_cast<std::size_t>(v - lo_) + 1 - data_.size());
    }
    data_[static_cast<std::size_t>(v - lo_)] += p;
  }

  bool empty() const { return data_.empty(); }
  void clear() { data_.clear(); }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (data_[i] != 0.0) f(static_cast<V>(lo_ + static_cast<V>(i)), data_[i]);
    }
  }

  template <class Pred, class Sink>
  double drain(Pred&& pred, Sink&& sink) {
    double s = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (data_[i] == 0.0) continue;
      const auto v = static_cast<V>(lo_ + static_cast<V>(i));
      if (pred(v)) {
        s += data_[i];
        sink(v, data_[i]);
        data_[i] = 0.0;
      } else {
        any = true;
      }
    }
    if (!any) data_.clear();
    return s;
  }

 private:
  void grow(std::size_t front, std::size_t back) {
    if (data_.size() + front + back > kMaxDenseSpan) {
      throw ResourceError("value range exceeds the dense table limit");
    }
    if (front) data_.insert(data_.begin(), front, 0.0);
    if (back) data_.resize(data_.size() + back, 0.0);
  }

  V lo_{};
  std::vector<double> data_;
};

}  // namespace detail

/// Joint state-value distribution f_t, advanced one step at a time with the
/// push strategy.
template <class V, class E>
class Propagator {
 public:
  explicit Propagator(const Paa<V, E>& paa) : paa_(&paa), rows_(paa.size()) {
    rows_[paa.start_state()].add(paa.start_value(), 1.0);
  }

  std::size_t time() const noexcept { return time_; }

  void step() {
    const auto& paa = *paa_;
    std::vector<detail::ValueRow<V>> next(paa.size());
    for (std::size_t q = 0; q < paa.size(); ++q) {
      if (rows_[q].empty()) continue;
      for (const auto& [q2, pt] : paa.transitions(q)) {
        if (pt == 0.0) continue;
        const auto& op = paa.operation(q2);
        for (const auto& [e, pe] : paa.emissions(q2)) {
          if (pe == 0.0) continue;
          const double w = pt * pe;
          rows_[q].for_each([&](const V& v, double pv) {
            V out = op(v, e);
            if (!paa.domain().admits(out)) {
              throw DomainError("operation '" + op.tag + "' produced a value outside " + paa.domain().name);
            }
            next[q2].add(out, pv * w);
          });
        }
      }
    }
    rows_ = std::move(next);
    ++time_;
  }

  void advance(std::size_t steps) {
    for (std::size_t i = 0; i < steps; ++i) step();
  }

  /// Removes all mass whose value satisfies pred; returns the removed mass.
  template <class Pred>
  double drain(Pred&& pred) {
    double s = 0.0;
    for (auto& row : rows_) s += row.drain(pred, [](const V&, double) {});
    return s;
  }

  /// Removes all mass whose value satisfies pred and returns it per value.
  template <class Pred>
  Distribution<V> extract(Pred&& pred) {
    Distribution<V> out;
    for (auto& row : rows_) row.drain(pred, [&](const V& v, double p) { out.add(v, p); });
    return out;
  }

  /// Removes and returns the value distribution held by state q.
  Distribution<V> take(std::size_t q) {
    Distribution<V> out;
    rows_.at(q).for_each([&](const V& v, double p) { out.add(v, p); });
    rows_[q] = detail::ValueRow<V>();
    return out;
  }

  double mass() const {
    double s = 0.0;
    for (const auto& row : rows_) row.for_each([&](const V&, double p) { s += p; });
    return s;
  }

  Distribution<std::pair<std::size_t, V>> joint() const {
    Distribution<std::pair<std::size_t, V>> out;
    for (std::size_t q = 0; q < rows_.size(); ++q) {
      rows_[q].for_each([&](const V& v, double p) { out.add({q, v}, p); });
    }
    return out;
  }

  Distribution<V> values() const {
    Distribution<V> out;
    for (const auto& row : rows_) row.for_each([&](const V& v, double p) { out.add(v, p); });
    return out;
  }

  /// Marginal over values: P(Q_t = q).
  std::vector<double> states() const {
    std::vector<double> out(rows_.size(), 0.0);
    for (std::size_t q = 0; q < rows_.size(); ++q) rows_[q].for_each([&](const V&, double p) { out[q] += p; });
    return out;
  }

 private:
  const Paa<V, E>* paa_;
  std::vector<detail::ValueRow<V>> rows_;
  std::size_t time_ = 0;
};

/// f_n(q, v) = P(Q_n = q, V_n = v).
template <class V, class E>
Distribution<std::pair<std::size_t, V>> state_value_distribution(const Paa<V, E>& paa, std::size_t n,
                                                                 Method method = Method::basic) {
  if (method == Method::doubling) return doubling_state_value_distribution(paa, n);
  Propagator<V, E> prop(paa);
  prop.advance(n);
  return prop.joint();
}

/// L(V_n).
template <class V, class E>
Distribution<V> value_distribution(const Paa<V, E>& paa, std::size_t n, Method method = Method::basic) {
  if (method == Method::doubling) {
    return doubling_state_value_distribution(paa, n).marginal([](const auto& qv) { return qv.second; });
  }
  Propagator<V, E> prop(paa);
  prop.advance(n);
  return prop.values();
}

}  // namespace paa
