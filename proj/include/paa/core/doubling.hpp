#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "paa/core/paa.hpp"
#include "paa/distribution.hpp"
#include "paa/error.hpp"

namespace paa {

namespace detail {

inline constexpr std::size_t kMaxDoublingStates = 200'000;

/// Sparse square matrix over an indexed state set.
struct SparseMatrix {
  std::vector<SparseRow> rows;

  SparseMatrix multiply(const SparseMatrix& other) const {
    const std::size_t n = rows.size();
    SparseMatrix out;
    out.rows.resize(n);
    std::vector<double> acc(n, 0.0);
    std::vector<std::size_t> touched;
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& [k, a] : rows[i]) {
        for (const auto& [j, b] : other.rows[k]) {
          if (acc[j] == 0.0) touched.push_back(j);
          acc[j] += a * b;
        }
      }
      std::sort(touched.begin(), touched.end());
      for (std::size_t j : touched) {
        if (acc[j] != 0.0) out.rows[i].emplace_back(j, acc[j]);
        acc[j] = 0.0;
      }
      touched.clear();
    }
    return out;
  }

  std::vector<double> left_multiply(const std::vector<double>& x) const {
    std::vector<double> y(rows.size(), 0.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (x[i] == 0.0) continue;
      for (const auto& [j, p] : rows[i]) y[j] += x[i] * p;
    }
    return y;
  }
};

/// Product states (q, v) reachable from (q0, v0) within `horizon` steps,
/// together with the one-step kernel U^(1) restricted to them.
template <class V, class E>
struct ProductSpace {
  std::vector<std::pair<std::size_t, V>> states;
  std::map<std::pair<std::size_t, V>, std::size_t> index;
  SparseMatrix one_step;
  bool closed = false;  // true when the set is closed under transitions

  ProductSpace(const Paa<V, E>& paa, std::size_t horizon) {
    auto intern = [&](std::size_t q, const V& v) {
      auto [it, inserted] = index.emplace(std::pair<std::size_t, V>{q, v}, states.size());
      if (inserted) {
        states.emplace_back(q, v);
        if (states.size() > kMaxDoublingStates) {
          throw ResourceError("doubling kernel exceeds the product-state limit");
        }
      }
      return it->second;
    };
    intern(paa.start_state(), paa.start_value());
    std::size_t frontier_begin = 0;
    std::size_t level = 0;
    while (frontier_begin < states.size() && level < horizon) {
      const std::size_t frontier_end = states.size();
      for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
        const auto [q, v] = states[i];
        for (const auto& [q2, pt] : paa.transitions(q)) {
          if (pt == 0.0) continue;
          for (const auto& [e, pe] : paa.emissions(q2)) {
            if (pe == 0.0) continue;
            V out = paa.operation(q2)(v, e);
            if (!paa.domain().admits(out)) {
              throw DomainError("operation '" + paa.operation(q2).tag + "' produced a value outside " +
                                paa.domain().name);
            }
            intern(q2, out);
          }
        }
      }
      frontier_begin = frontier_end;
      ++level;
    }
    closed = frontier_begin == states.size();
    one_step.rows.resize(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto& [q, v] = states[i];
      std::map<std::size_t, double> row;
      for (const auto& [q2, pt] : paa.transitions(q)) {
        for (const auto& [e, pe] : paa.emissions(q2)) {
          if (pt * pe == 0.0) continue;
          auto it = index.find({q2, paa.operation(q2)(v, e)});
          if (it != index.end()) row[it->second] += pt * pe;
        }
      }
      one_step.rows[i].assign(row.begin(), row.end());
    }
  }
};

/// U^(t) for truncated-add PAAs: entry [q1][q2][d] is the probability of
/// moving from q1 to q2 in t steps while the value grows by d (clamped at M).
struct AdditiveKernel {
  std::size_t bound = 0;
  std::vector<std::map<std::size_t, std::vector<double>>> rows;

  static std::vector<double> clamp_convolve(const std::vector<double>& a, const std::vector<double>& b,
                                            std::size_t bound) {
    std::vector<double> c(bound + 1, 0.0);
    for (std::size_t i = 0; i <= bound; ++i) {
      if (a[i] == 0.0) continue;
      for (std::size_t j = 0; j <= bound; ++j) {
        if (b[j] == 0.0) continue;
        c[std::min(bound, i + j)] += a[i] * b[j];
      }
    }
    return c;
  }

  AdditiveKernel compose(const AdditiveKernel& other) const {
    AdditiveKernel out;
    out.bound = bound;
    out.rows.resize(rows.size());
    for (std::size_t q1 = 0; q1 < rows.size(); ++q1) {
      for (const auto& [mid, a] : rows[q1]) {
        for (const auto& [q2, b] : other.rows[mid]) {
          auto c = clamp_convolve(a, b, bound);
          auto [it, inserted] = out.rows[q1].emplace(q2, std::vector<double>(bound + 1, 0.0));
          for (std::size_t d = 0; d <= bound; ++d) it->second[d] += c[d];
        }
      }
    }
    return out;
  }

  template <class V, class E>
  static AdditiveKernel one_step(const Paa<V, E>& paa, std::size_t bound) {
    AdditiveKernel k;
    k.bound = bound;
    k.rows.resize(paa.size());
    for (std::size_t q1 = 0; q1 < paa.size(); ++q1) {
      for (const auto& [q2, pt] : paa.transitions(q1)) {
        if (pt == 0.0) continue;
        auto [it, inserted] = k.rows[q1].emplace(q2, std::vector<double>(bound + 1, 0.0));
        for (const auto& [e, pe] : paa.emissions(q2)) {
          it->second[std::min<std::size_t>(bound, static_cast<std::size_t>(e))] += pt * pe;
        }
      }
    }
    return k;
  }
};

}  // namespace detail

/// t-step conditional kernel U^(t)(q1, q2, v1, v2), computed by repeated
/// Chapman-Kolmogorov composition over the product states reachable from
/// (q0, v0). When that set is not closed within t steps, rows of states near
/// the horizon are truncated to the computed set.
template <class V>
class DoublingKernel {
 public:
  DoublingKernel() = default;
  DoublingKernel(std::vector<std::pair<std::size_t, V>> states, std::map<std::pair<std::size_t, V>, std::size_t> index,
                 detail::SparseMatrix matrix, std::size_t steps, bool closed)
      : states_(std::move(states)), index_(std::move(index)), matrix_(std::move(matrix)), steps_(steps), closed_(closed) {}

  double operator()(std::size_t q1, std::size_t q2, const V& v1, const V& v2) const {
    auto a = index_.find({q1, v1});
    auto b = index_.find({q2, v2});
    if (a == index_.end() || b == index_.end()) return 0.0;
    for (const auto& [j, p] : matrix_.rows[a->second]) {
      if (j == b->second) return p;
    }
    return 0.0;
  }

  /// All (q2, v2) -> probability entries reachable from (q1, v1).
  Distribution<std::pair<std::size_t, V>> row(std::size_t q1, const V& v1) const {
    Distribution<std::pair<std::size_t, V>> out;
    auto a = index_.find({q1, v1});
    if (a == index_.end()) return out;
    for (const auto& [j, p] : matrix_.rows[a->second]) out.add(states_[j], p);
    return out;
  }

  std::size_t steps() const noexcept { return steps_; }
  std::size_t size() const noexcept { return states_.size(); }
  bool closed() const noexcept { return closed_; }

 private:
  std::vector<std::pair<std::size_t, V>> states_;
  std::map<std::pair<std::size_t, V>, std::size_t> index_;
  detail::SparseMatrix matrix_;
  std::size_t steps_ = 0;
  bool closed_ = false;
};

template <class V, class E>
DoublingKernel<V> doubling_kernel(const Paa<V, E>& paa, std::size_t t) {
  detail::ProductSpace<V, E> space(paa, std::max<std::size_t>(t, 1));
  detail::SparseMatrix result;
  result.rows.resize(space.states.size());
  for (std::size_t i = 0; i < space.states.size(); ++i) result.rows[i] = {{i, 1.0}};
  detail::SparseMatrix power = space.one_step;
  for (std::size_t rest = t; rest > 0; rest >>= 1) {
    if (rest & 1) result = result.multiply(power);
    if (rest > 1) power = power.multiply(power);
  }
  return DoublingKernel<V>(std::move(space.states), std::move(space.index), std::move(result), t, space.closed);
}

/// f_n via the doubling technique. Truncated-add PAAs use the shift-invariant
/// kernel with v1 fixed to zero; other PAAs use the full product kernel.
template <class V, class E>
Distribution<std::pair<std::size_t, V>> doubling_state_value_distribution(const Paa<V, E>& paa, std::size_t n) {
  Distribution<std::pair<std::size_t, V>> out;
  if constexpr (std::integral<V> && std::integral<E>) {
    if (auto bound = paa.additive_bound()) {
      const auto m = static_cast<std::size_t>(*bound);
      auto power = detail::AdditiveKernel::one_step(paa, m);
      std::vector<std::vector<double>> x(paa.size());
      x[paa.start_state()].assign(m + 1, 0.0);
      x[paa.start_state()][0] = 1.0;
      for (std::size_t rest = n; rest > 0; rest >>= 1) {
        if (rest & 1) {
          std::vector<std::vector<double>> y(paa.size());
          for (std::size_t q1 = 0; q1 < paa.size(); ++q1) {
            if (x[q1].empty()) continue;
            for (const auto& [q2, b] : power.rows[q1]) {
              auto c = detail::AdditiveKernel::clamp_convolve(x[q1], b, m);
              if (y[q2].empty()) y[q2].assign(m + 1, 0.0);
              for (std::size_t d = 0; d <= m; ++d) y[q2][d] += c[d];
            }
          }
          x = std::move(y);
        }
        if (rest > 1) power = power.compose(power);
      }
      const auto v0 = static_cast<std::size_t>(paa.start_value());
      for (std::size_t q = 0; q < paa.size(); ++q) {
        for (std::size_t d = 0; d < x[q].size(); ++d) {
          if (x[q][d] != 0.0) out.add({q, static_cast<V>(std::min(m, v0 + d))}, x[q][d]);
        }
      }
      return out;
    }
  }

  detail::ProductSpace<V, E> space(paa, n);
  std::vector<double> x(space.states.size(), 0.0);
  x[0] = 1.0;
  detail::SparseMatrix power = space.one_step;
  for (std::size_t rest = n; rest > 0; rest >>= 1) {
    if (rest & 1) x = power.left_multiply(x);
    if (rest > 1) power = power.multiply(power);
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) out.add(space.states[i], x[i]);
  }
  return out;
}

}  // namespace paa
