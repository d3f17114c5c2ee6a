#include <cmath>

#include "support.hpp"

using namespace paa;
using paa::testing::all_strings;

namespace {

// Textbook forward algorithm, kept apart from forward_contexts.
double hmm_forward(const Hmm& hmm, const std::string& s) {
  std::vector<double> a(hmm.states.size(), 0.0);
  a[hmm.start] = 1.0;
  for (char ch : s) {
    const auto sym = hmm.alphabet.find(ch);
    std::vector<double> next(hmm.states.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (const auto& [j, t] : hmm.transitions[i]) next[j] += a[i] * t * hmm.emissions[j][sym];
    }
    a.swap(next);
  }
  double p = 0.0;
  for (double x : a) p += x;
  return p;
}

Hmm cpg_hmm() {
  Hmm hmm;
  hmm.alphabet = "ACGT";
  hmm.states = {"begin", "island", "background"};
  hmm.transitions = {{{1, 0.1}, {2, 0.9}}, {{1, 0.8}, {2, 0.2}}, {{1, 0.05}, {2, 0.95}}};
  hmm.emissions = {{0.25, 0.25, 0.25, 0.25}, {0.1, 0.4, 0.4, 0.1}, {0.3, 0.2, 0.2, 0.3}};
  return hmm;
}

std::vector<TextModel> corpus() {
  return {uniform_model("ACGT"), iid_model("01", {0.3, 0.7}), paa::testing::binary_markov(),
          markov_model(2, "ab", {{"", {0.5, 0.5}}, {"a", {0.1, 0.9}}, {"b", {0.6, 0.4}}, {"aa", {0.2, 0.8}},
                                 {"ab", {0.7, 0.3}}, {"ba", {0.4, 0.6}}, {"bb", {0.9, 0.1}}}),
          from_hmm(cpg_hmm()), paa::testing::binary_hmm_model(), gapped_homology_model(0.2, 0.7, 0.05)};
}

}  // namespace

TEST(TextModel, IidProbabilities) {
  EXPECT_NEAR(sequence_probability(uniform_model("ACGT"), "ACG"), 1.0 / 64, 1e-15);
  EXPECT_NEAR(sequence_probability(iid_model("01", {0.3, 0.7}), "11"), 0.49, 1e-15);
  EXPECT_DOUBLE_EQ(sequence_probability(uniform_model("ACGT"), ""), 1.0);
}

TEST(TextModel, RejectsForeignCharacters) {
  EXPECT_THROW(sequence_probability(uniform_model("ACGT"), "ACX"), ArgumentError);
}

TEST(TextModel, RejectsBadProbabilities) {
  EXPECT_THROW(iid_model("01", {0.4, 0.4}), ArgumentError);
  EXPECT_THROW(iid_model("01", {-0.1, 1.1}), ArgumentError);
  EXPECT_THROW(iid_model("01", {1.0}), ArgumentError);
}

TEST(TextModel, MarkovHandProduct) {
  const double p0 = 0.35;
  const auto m = markov_model(1, "01", {{"", {p0, 1 - p0}}, {"0", {0.8, 0.2}}, {"1", {0.1, 0.9}}});
  EXPECT_NEAR(sequence_probability(m, "011"), p0 * 0.2 * 0.9, 1e-15);
  EXPECT_EQ(m.size(), 3u);
}

TEST(TextModel, MarkovOrderZeroIsIid) {
  const auto m = markov_model(0, "01", {{"", {0.3, 0.7}}});
  const auto iid = iid_model("01", {0.3, 0.7});
  EXPECT_EQ(m.size(), 1u);
  for (const auto& s : all_strings("01", 5)) EXPECT_NEAR(sequence_probability(m, s), sequence_probability(iid, s), 1e-15);
}

TEST(TextModel, MarkovMissingReachableHistory) {
  EXPECT_THROW(markov_model(1, "01", {{"", {0.5, 0.5}}, {"0", {0.5, 0.5}}}), ArgumentError);
}

TEST(TextModel, MarkovSuccessorsAreDeterministic) {
  EXPECT_TRUE(paa::testing::binary_markov().deterministic_successors());
  EXPECT_TRUE(gapped_homology_model(0.2, 0.7, 0.05).deterministic_successors());
  EXPECT_FALSE(from_hmm(cpg_hmm()).deterministic_successors());
}

TEST(TextModel, ProbabilitiesSumToOne) {
  for (const auto& m : corpus()) {
    for (std::size_t n = 0; n <= 6; ++n) {
      double s = 0.0;
      for (const auto& str : all_strings(m.alphabet(), n)) s += sequence_probability(m, str);
      EXPECT_NEAR(s, 1.0, 1e-9) << "n=" << n;
    }
  }
}

TEST(Hmm, OneStateHmmIsIid) {
  Hmm hmm;
  hmm.alphabet = "01";
  hmm.states = {"only"};
  hmm.transitions = {{{0, 1.0}}};
  hmm.emissions = {{0.25, 0.75}};
  const auto m = from_hmm(hmm);
  const auto iid = iid_model("01", {0.25, 0.75});
  for (const auto& s : all_strings("01", 5)) EXPECT_NEAR(sequence_probability(m, s), sequence_probability(iid, s), 1e-15);
}

TEST(Hmm, FromHmmMatchesForwardAlgorithm) {
  const auto hmm = cpg_hmm();
  const auto m = from_hmm(hmm);
  for (std::size_t n = 0; n <= 5; ++n) {
    for (const auto& s : all_strings("ACGT", n)) EXPECT_NEAR(sequence_probability(m, s), hmm_forward(hmm, s), 1e-15);
  }
}

TEST(Hmm, ToHmmSizes) {
  EXPECT_EQ(to_hmm(iid_model("01", {0.3, 0.7})).states.size(), 1u);
  const auto markov = paa::testing::binary_markov();
  EXPECT_EQ(markov.size(), 3u);
  EXPECT_EQ(to_hmm(markov).states.size(), 9u);
}

TEST(Hmm, RoundTripsPreserveProbabilities) {
  for (const auto& m : corpus()) {
    const auto hmm = to_hmm(m);
    const auto back = from_hmm(hmm);
    for (std::size_t n = 0; n <= 4; ++n) {
      for (const auto& s : all_strings(m.alphabet(), n)) {
        EXPECT_NEAR(sequence_probability(back, s), sequence_probability(m, s), 1e-12);
        EXPECT_NEAR(hmm_forward(hmm, s), sequence_probability(m, s), 1e-12);
      }
    }
  }
}

TEST(Hmm, RejectsInvalidTables) {
  auto hmm = cpg_hmm();
  hmm.emissions[1] = {0.5, 0.5, 0.5, 0.5};
  EXPECT_THROW(from_hmm(hmm), ArgumentError);
  hmm = cpg_hmm();
  hmm.start = 7;
  EXPECT_THROW(from_hmm(hmm), ArgumentError);
}
