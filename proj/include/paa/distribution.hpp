#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <functional>
#include <map>
#include <utility>

#include "paa/error.hpp"

namespace paa {

/// Finite probability distribution with an explicit residual tail.
///
/// The tail holds mass that was truncated or not yet accounted for, e.g. the
/// probability that a waiting time exceeds the computed horizon.
template <class Key>
class Distribution {
 public:
  using key_type = Key;
  using map_type = std::map<Key, double>;
  using const_iterator = typename map_type::const_iterator;

  Distribution() = default;

  explicit Distribution(map_type support, double tail = 0.0)
      : support_(std::move(support)), tail_(tail) {
    prune();
  }

  static Distribution dirac(const Key& key) { return Distribution(map_type{{key, 1.0}}); }

  double operator[](const Key& key) const { return probability(key); }

  double probability(const Key& key) const {
    auto it = support_.find(key);
    return it == support_.end() ? 0.0 : it->second;
  }

  const map_type& support() const noexcept { return support_; }
  double tail() const noexcept { return tail_; }
  std::size_t size() const noexcept { return support_.size(); }
  bool empty() const noexcept { return support_.empty(); }

  const_iterator begin() const { return support_.begin(); }
  const_iterator end() const { return support_.end(); }

  /// Sum over the support, excluding the tail.
  double mass() const {
    double s = 0.0;
    for (const auto& [k, p] : support_) s += p;
    return s;
  }

  double total() const { return mass() + tail_; }

  void add(const Key& key, double p) {
    if (p != 0.0) support_[key] += p;
  }

  void add_tail(double p) { tail_ += p; }

  /// Drops zero entries.
  void prune() {
    std::erase_if(support_, [](const auto& kv) { return kv.second == 0.0; });
  }

  /// P(X <= key) over the support.
  double cdf(const Key& key) const {
    double s = 0.0;
    for (auto it = support_.begin(); it != support_.end() && !(key < it->first); ++it) s += it->second;
    return s;
  }

  /// P(X >= key) over the support (the tail is not included).
  double survival(const Key& key) const {
    double s = 0.0;
    for (auto it = support_.lower_bound(key); it != support_.end(); ++it) s += it->second;
    return s;
  }

  double mean() const
    requires std::is_arithmetic_v<Key>
  {
    double m = 0.0;
    for (const auto& [k, p] : support_) m += static_cast<double>(k) * p;
    return m;
  }

  template <class F>
  auto marginal(F&& project) const {
    using Out = std::decay_t<std::invoke_result_t<F, const Key&>>;
    Distribution<Out> out;
    for (const auto& [k, p] : support_) out.add(project(k), p);
    out.add_tail(tail_);
    return out;
  }

  /// Checks the probability invariants; throws ArgumentError on violation.
  void validate(double tolerance = 1e-9) const {
    for (const auto& [k, p] : support_) {
      if (!(p >= 0.0 && p <= 1.0 + tolerance)) throw ArgumentError("probability outside [0,1]");
    }
    if (tail_ < -tolerance) throw ArgumentError("negative tail mass");
    if (std::abs(total() - 1.0) > tolerance) throw ArgumentError("distribution does not sum to one");
  }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  map_type support_;
  double tail_ = 0.0;
};

/// Largest absolute per-key difference over the union of both supports.
template <class Key>
double max_abs_difference(const Distribution<Key>& a, const Distribution<Key>& b) {
  double d = 0.0;
  for (const auto& [k, p] : a) d = std::max(d, std::abs(p - b.probability(k)));
  for (const auto& [k, p] : b) d = std::max(d, std::abs(p - a.probability(k)));
  return d;
}

}  // namespace paa
