#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "paa/error.hpp"

namespace paa {

/// One nonzero entry phi(c, sigma, c') of a context row.
struct ContextTransition {
  std::size_t symbol;
  std::size_t next;
  double probability;
};

/// Finite-memory text model (C, c0, Sigma, phi). Symbols are single
/// characters; contexts are named and indexed.
class TextModel {
 public:
  using Row = std::vector<ContextTransition>;

  TextModel(std::string alphabet, std::vector<std::string> contexts, std::size_t start, std::vector<Row> kernel)
      : alphabet_(std::move(alphabet)), contexts_(std::move(contexts)), start_(start), kernel_(std::move(kernel)) {
    validate();
  }

  const std::string& alphabet() const noexcept { return alphabet_; }
  std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
  std::size_t size() const noexcept { return contexts_.size(); }
  std::size_t start() const noexcept { return start_; }
  const std::string& context_name(std::size_t c) const { return contexts_.at(c); }
  const std::vector<std::string>& context_names() const noexcept { return contexts_; }
  const Row& row(std::size_t c) const { return kernel_.at(c); }

  std::size_t symbol_index(char ch) const {
    auto pos = alphabet_.find(ch);
    if (pos == std::string::npos) throw ArgumentError(std::string("character '") + ch + "' is not in the alphabet");
    return pos;
  }

  bool has_symbol(char ch) const { return alphabet_.find(ch) != std::string::npos; }

  double phi(std::size_t c, std::size_t symbol, std::size_t next) const {
    double s = 0.0;
    for (const auto& t : kernel_.at(c)) {
      if (t.symbol == symbol && t.next == next) s += t.probability;
    }
    return s;
  }

  /// True when every (c, sigma) has at most one successor context.
  bool deterministic_successors() const {
    for (const auto& row : kernel_) {
      std::map<std::size_t, std::size_t> seen;
      for (const auto& t : row) {
        if (t.probability <= 0.0) continue;
        auto [it, inserted] = seen.emplace(t.symbol, t.next);
        if (!inserted && it->second != t.next) return false;
      }
    }
    return true;
  }

 private:
  void validate() const {
    if (alphabet_.empty()) throw ArgumentError("alphabet is empty");
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
      if (alphabet_.find(alphabet_[i], i + 1) != std::string::npos) {
        throw ArgumentError(std::string("duplicate alphabet character '") + alphabet_[i] + "'");
      }
    }
    if (contexts_.empty() || kernel_.size() != contexts_.size()) {
      throw ArgumentError("text model needs one kernel row per context");
    }
    if (start_ >= contexts_.size()) throw ArgumentError("start context out of range");
    for (std::size_t c = 0; c < kernel_.size(); ++c) {
      double s = 0.0;
      for (const auto& t : kernel_[c]) {
        if (t.symbol >= alphabet_.size() || t.next >= contexts_.size()) {
          throw ArgumentError("kernel of context '" + contexts_[c] + "' references an unknown symbol or context");
        }
        if (!(t.probability >= 0.0 && t.probability <= 1.0)) {
          throw ArgumentError("probability outside [0,1] in context '" + contexts_[c] + "'");
        }
        s += t.probability;
      }
      if (std::abs(s - 1.0) > 1e-12) {
        throw ArgumentError("kernel row of context '" + contexts_[c] + "' does not sum to one");
      }
    }
  }

  std::string alphabet_;
  std::vector<std::string> contexts_;
  std::size_t start_;
  std::vector<Row> kernel_;
};

namespace detail {

inline void check_probability_vector(const std::vector<double>& p, std::size_t expected, const std::string& what) {
  if (p.size() != expected) throw ArgumentError(what + ": expected " + std::to_string(expected) + " probabilities");
  double s = 0.0;
  for (double x : p) {
    if (!(x >= 0.0 && x <= 1.0)) throw ArgumentError(what + ": probability outside [0,1]");
    s += x;
  }
  if (std::abs(s - 1.0) > 1e-12) throw ArgumentError(what + ": probabilities do not sum to one");
}

}  // namespace detail

/// Single context with phi(eps, sigma, eps) = p_sigma.
inline TextModel iid_model(const std::string& alphabet, const std::vector<double>& probabilities) {
  detail::check_probability_vector(probabilities, alphabet.size(), "i.i.d. model");
  TextModel::Row row;
  for (std::size_t a = 0; a < alphabet.size(); ++a) {
    if (probabilities[a] > 0.0) row.push_back({a, 0, probabilities[a]});
  }
  return TextModel(alphabet, {""}, 0, {row});
}

inline TextModel uniform_model(const std::string& alphabet) {
  return iid_model(alphabet, std::vector<double>(alphabet.size(), 1.0 / static_cast<double>(alphabet.size())));
}

/// Order-r Markov model. `conditionals` maps a history (of length r, or
/// shorter for the first characters of the text) to next-character
/// probabilities in alphabet order. Contexts are the histories reachable from
/// the empty one; each reachable history needs a row.
inline TextModel markov_model(std::size_t order, const std::string& alphabet,
                              const std::map<std::string, std::vector<double>>& conditionals) {
  for (const auto& [history, probs] : conditionals) {
    if (history.size() > order) throw ArgumentError("history '" + history + "' is longer than the model order");
    for (char ch : history) {
      if (alphabet.find(ch) == std::string::npos) throw ArgumentError("history '" + history + "' uses a foreign symbol");
    }
    detail::check_probability_vector(probs, alphabet.size(), "history '" + history + "'");
  }
  std::vector<std::string> names{""};
  std::map<std::string, std::size_t> index{{"", 0}};
  std::vector<TextModel::Row> kernel;
  for (std::size_t c = 0; c < names.size(); ++c) {
    const std::string history = names[c];
    auto it = conditionals.find(history);
    if (it == conditionals.end()) {
      throw ArgumentError("missing conditional probabilities for reachable history '" + history + "'");
    }
    TextModel::Row row;
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
      if (it->second[a] <= 0.0) continue;
      std::string next = history + alphabet[a];
      if (next.size() > order) next.erase(0, next.size() - order);
      auto [pos, inserted] = index.emplace(next, names.size());
      if (inserted) names.push_back(next);
      row.push_back({a, pos->second, it->second[a]});
    }
    kernel.push_back(std::move(row));
  }
  return TextModel(alphabet, std::move(names), 0, std::move(kernel));
}

/// Emits `text` once and then repeats `padding` forever.
inline TextModel deterministic_text_model(const std::string& text, std::string alphabet, char padding = '$') {
  if (alphabet.find(padding) == std::string::npos) alphabet.push_back(padding);
  std::vector<std::string> names;
  std::vector<TextModel::Row> kernel;
  const std::size_t pad = alphabet.find(padding);
  for (std::size_t i = 0; i <= text.size(); ++i) {
    names.push_back(std::to_string(i));
    if (i < text.size()) {
      auto a = alphabet.find(text[i]);
      if (a == std::string::npos) throw ArgumentError(std::string("text character '") + text[i] + "' not in alphabet");
      kernel.push_back({{a, i + 1, 1.0}});
    } else {
      kernel.push_back({{pad, i, 1.0}});
    }
  }
  return TextModel(std::move(alphabet), std::move(names), 0, std::move(kernel));
}

/// Forward evaluation: P(C_n = c, S_0..S_{n-1} = s) for every context c.
inline std::vector<double> forward_contexts(const TextModel& model, const std::string& s) {
  std::vector<double> x(model.size(), 0.0), next(model.size());
  x[model.start()] = 1.0;
  for (char ch : s) {
    const std::size_t a = model.symbol_index(ch);
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t c = 0; c < model.size(); ++c) {
      if (x[c] == 0.0) continue;
      for (const auto& t : model.row(c)) {
        if (t.symbol == a) next[t.next] += x[c] * t.probability;
      }
    }
    x.swap(next);
  }
  return x;
}

/// P(S_0..S_{|s|-1} = s).
inline double sequence_probability(const TextModel& model, const std::string& s) {
  double p = 0.0;
  for (double x : forward_contexts(model, s)) p += x;
  return p;
}

/// Probability of producing `s` while moving from context `from` to `to`.
inline double path_probability(const TextModel& model, std::size_t from, const std::string& s, std::size_t to) {
  std::vector<double> x(model.size(), 0.0), next(model.size());
  x[from] = 1.0;
  for (char ch : s) {
    const std::size_t a = model.symbol_index(ch);
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t c = 0; c < model.size(); ++c) {
      if (x[c] == 0.0) continue;
      for (const auto& t : model.row(c)) {
        if (t.symbol == a) next[t.next] += x[c] * t.probability;
      }
    }
    x.swap(next);
  }
  return x[to];
}

}  // namespace paa
