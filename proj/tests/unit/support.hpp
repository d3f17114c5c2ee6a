#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "paa/paa.hpp"

namespace paa::testing {

template <class K>
::testing::AssertionResult near(const Distribution<K>& a, const Distribution<K>& b, double tol) {
  const double d = max_abs_difference(a, b);
  if (d <= tol && std::abs(a.tail() - b.tail()) <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "max deviation " << d << ", tails " << a.tail() << " vs " << b.tail();
}

/// All strings of length n over the alphabet, in lexicographic order.
inline std::vector<std::string> all_strings(const std::string& alphabet, std::size_t n) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> next;
    for (const auto& s : out) {
      for (char ch : alphabet) next.push_back(s + ch);
    }
    out.swap(next);
  }
  return out;
}

inline TextModel binary_markov() {
  return markov_model(1, "01", {{"", {0.3, 0.7}}, {"0", {0.6, 0.4}}, {"1", {0.2, 0.8}}});
}

inline TextModel binary_hmm_model() {
  Hmm hmm;
  hmm.alphabet = "01";
  hmm.states = {"begin", "x", "y"};
  hmm.start = 0;
  hmm.transitions = {{{1, 0.5}, {2, 0.5}}, {{1, 0.9}, {2, 0.1}}, {{1, 0.25}, {2, 0.75}}};
  hmm.emissions = {{0.5, 0.5}, {0.8, 0.2}, {0.1, 0.9}};
  return from_hmm(hmm);
}

}  // namespace paa::testing
