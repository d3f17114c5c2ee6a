#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "paa/core/paa.hpp"
#include "paa/error.hpp"
#include "paa/textmodel/text_model.hpp"

namespace paa {

/// Character-emitting HMM. The chain starts in `start`; every subsequent
/// state emits one character on entry.
struct Hmm {
  std::string alphabet;
  std::vector<std::string> states;
  std::size_t start = 0;
  TransitionMatrix transitions;
  std::vector<std::vector<double>> emissions;  // [state][symbol]

  void validate() const {
    if (states.empty() || transitions.size() != states.size() || emissions.size() != states.size()) {
      throw ArgumentError("HMM tables must have one row per state");
    }
    if (start >= states.size()) throw ArgumentError("HMM start state out of range");
    validate_stochastic(transitions);
    for (std::size_t q = 0; q < emissions.size(); ++q) {
      detail::check_probability_vector(emissions[q], alphabet.size(), "HMM emissions of state '" + states[q] + "'");
    }
  }
};

/// phi(c, sigma, c') = T(c, c') * mu_{c'}(sigma), same state space.
inline TextModel from_hmm(const Hmm& hmm) {
  hmm.validate();
  std::vector<TextModel::Row> kernel(hmm.states.size());
  for (std::size_t c = 0; c < hmm.states.size(); ++c) {
    for (const auto& [c2, t] : hmm.transitions[c]) {
      for (std::size_t a = 0; a < hmm.alphabet.size(); ++a) {
        const double p = t * hmm.emissions[c2][a];
        if (p > 0.0) kernel[c].push_back({a, c2, p});
      }
    }
  }
  return TextModel(hmm.alphabet, hmm.states, hmm.start, std::move(kernel));
}

/// HMM over C x C. State (c1, c2) stands for the step c1 -> c2; moving from
/// (c1, c2) to (c2, c2') has probability sum_sigma phi(c2, sigma, c2'), and
/// (c1, c2) emits sigma with probability proportional to phi(c1, sigma, c2).
/// The emission row is normalized so that the product of transition and
/// emission reproduces phi; pairs that are never entered emit uniformly.
inline Hmm to_hmm(const TextModel& model) {
  const std::size_t n = model.size();
  const std::size_t k = model.alphabet_size();
  std::vector<std::vector<double>> mass(n * n, std::vector<double>(k, 0.0));
  for (std::size_t c = 0; c < n; ++c) {
    for (const auto& t : model.row(c)) mass[c * n + t.next][t.symbol] += t.probability;
  }
  Hmm hmm;
  hmm.alphabet = model.alphabet();
  hmm.start = model.start() * n + model.start();
  hmm.states.reserve(n * n);
  hmm.transitions.resize(n * n);
  hmm.emissions.resize(n * n);
  for (std::size_t c1 = 0; c1 < n; ++c1) {
    for (std::size_t c2 = 0; c2 < n; ++c2) {
      const std::size_t q = c1 * n + c2;
      hmm.states.push_back("(" + model.context_name(c1) + "," + model.context_name(c2) + ")");
      for (std::size_t c3 = 0; c3 < n; ++c3) {
        double s = 0.0;
        for (double x : mass[c2 * n + c3]) s += x;
        if (s > 0.0) hmm.transitions[q].emplace_back(c2 * n + c3, s);
      }
      double total = 0.0;
      for (double x : mass[q]) total += x;
      auto& em = hmm.emissions[q];
      em.assign(k, 1.0 / static_cast<double>(k));
      if (total > 0.0) {
        for (std::size_t a = 0; a < k; ++a) em[a] = mass[q][a] / total;
      }
    }
  }
  return hmm;
}

/// Forward algorithm: probability that the HMM emits `s` in its first |s| steps.
inline double hmm_sequence_probability(const Hmm& hmm, const std::string& s) {
  std::vector<double> x(hmm.states.size(), 0.0), next(hmm.states.size());
  x[hmm.start] = 1.0;
  for (char ch : s) {
    const auto a = hmm.alphabet.find(ch);
    if (a == std::string::npos) throw ArgumentError(std::string("character '") + ch + "' is not in the alphabet");
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t q = 0; q < x.size(); ++q) {
      if (x[q] == 0.0) continue;
      for (const auto& [q2, t] : hmm.transitions[q]) next[q2] += x[q] * t * hmm.emissions[q2][a];
    }
    x.swap(next);
  }
  double p = 0.0;
  for (double v : x) p += v;
  return p;
}

}  // namespace paa
