#include <algorithm>
#include <map>

#include "support.hpp"

using namespace paa;

TEST(Enumerate, EmptyTextIsDirac) {
  const auto d = oracle::enumerate_exact([](const std::string& s) { return static_cast<std::int64_t>(s.size()); },
                                         uniform_model("01"), 0);
  EXPECT_EQ(d.probability(0), 1.0);
}

TEST(Enumerate, TotalsAreOne) {
  const std::vector<TextModel> models{uniform_model("ACGT"), paa::testing::binary_markov(),
                                      paa::testing::binary_hmm_model()};
  for (const auto& model : models) {
    for (std::size_t n : {1u, 5u, 8u}) {
      const auto d = oracle::enumerate_exact([](const std::string& s) { return static_cast<std::int64_t>(s[0]); },
                                             model, n);
      EXPECT_NEAR(d.total(), 1.0, 1e-12);
    }
  }
}

TEST(Enumerate, HmmProbabilitiesSumOverPaths) {
  // P(first char = 1) = 0.5 * 0.2 + 0.5 * 0.9.
  const auto d = oracle::enumerate_exact([](const std::string& s) { return s[0] == '1'; },
                                         paa::testing::binary_hmm_model(), 3);
  EXPECT_NEAR(d.probability(true), 0.55, 1e-12);
}

TEST(Enumerate, RefusesHugeSpaces) {
  EXPECT_THROW(oracle::enumerate_exact([](const std::string&) { return 0; }, uniform_model("ACGT"), 12),
               ResourceError);
}

TEST(Sample, DegenerateModel) {
  EXPECT_EQ(oracle::sample_text(iid_model("01", {0.0, 1.0}), 50, 7), std::string(50, '1'));
}

TEST(Sample, FrequenciesMatchModel) {
  const auto model = iid_model("ACGT", {0.1, 0.2, 0.3, 0.4});
  const auto text = oracle::sample_text(model, 100000, 11);
  const std::map<char, double> p{{'A', 0.1}, {'C', 0.2}, {'G', 0.3}, {'T', 0.4}};
  for (const auto& [c, q] : p) {
    const double f = static_cast<double>(std::count(text.begin(), text.end(), c)) / text.size();
    EXPECT_NEAR(f, q, 3 * std::sqrt(q * (1 - q) / text.size())) << c;
  }
}

TEST(Sample, MarkovTransitionFrequencies) {
  const auto text = oracle::sample_text(paa::testing::binary_markov(), 100000, 5);
  std::size_t after_zero = 0, zero_zero = 0;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (text[i - 1] == '0') {
      ++after_zero;
      zero_zero += text[i] == '0';
    }
  }
  const double f = static_cast<double>(zero_zero) / after_zero;
  EXPECT_NEAR(f, 0.6, 3 * std::sqrt(0.24 / after_zero));
}

TEST(Sample, DeterministicBySeed) {
  const auto model = uniform_model("ACGT");
  EXPECT_EQ(oracle::sample_text(model, 200, 42), oracle::sample_text(model, 200, 42));
  EXPECT_NE(oracle::sample_text(model, 200, 42), oracle::sample_text(model, 200, 43));
}

TEST(Matcher, TrivialCases) {
  const auto h = oracle::run_matcher("horspool", "AC", "A");
  EXPECT_EQ(h.occurrences, 0);
  EXPECT_EQ(h.cost, 0);
  const auto full = oracle::run_matcher("horspool", "ACA", "ACACA");
  EXPECT_EQ(full.occurrences, 2);
  // Sunday needs the character after the window, so a match at the very end is not seen.
  EXPECT_EQ(oracle::run_matcher("sunday", "ACA", "ACACA").occurrences, 1);
  EXPECT_EQ(oracle::run_matcher("sunday", "ACA", "ACACAT").occurrences, 2);
  EXPECT_EQ(oracle::run_matcher("sunday", "AAAAA", "AAAAAAA").occurrences, 2);
  EXPECT_THROW(oracle::run_matcher("kmp", "A", "A"), ArgumentError);
  EXPECT_THROW(oracle::run_matcher("horspool", "", "A"), ArgumentError);
}

TEST(Matcher, FindsEveryOccurrence) {
  for (const char* alg : {"horspool", "sunday"}) {
    for (const auto& text : paa::testing::all_strings("01", 9)) {
      for (const char* pattern : {"0", "01", "110", "1010"}) {
        const std::string scanned = std::string(alg) == "sunday" ? text.substr(0, text.size() - 1) : text;
        ASSERT_EQ(oracle::run_matcher(alg, pattern, text).occurrences, oracle::count_occurrences({pattern}, scanned))
            << alg << " " << pattern << " " << text;
      }
    }
  }
}

TEST(Matcher, AgreesWithCostDistribution) {
  const auto model = uniform_model("ACGT");
  const auto exact = oracle::enumerate_exact(
      [](const std::string& s) { return oracle::run_matcher("horspool", "ACAGC", s).cost; }, model, 6);
  EXPECT_TRUE(paa::testing::near(exact, cost_distribution(horspool_spec("ACAGC", "ACGT"), model, 6), 1e-12));
}

TEST(CountMatches, Schemes) {
  const auto p = PatternSpec::strings({"11", "111"}).generalized_strings("");
  EXPECT_EQ(oracle::count_matches(p, "1111", CountingScheme::overlapping), 5);
  EXPECT_EQ(oracle::count_matches(p, "1111", CountingScheme::match_position), 3);
  EXPECT_EQ(oracle::count_matches(p, "1111", CountingScheme::nonoverlapping), 2);
  EXPECT_EQ(oracle::count_occurrences({"aa"}, "aaaa"), 3);
}

TEST(Clumps, Extraction) {
  EXPECT_EQ(oracle::extract_clumps({"11"}, "0111011"), (std::vector<std::int64_t>{2, 1}));
  EXPECT_TRUE(oracle::extract_clumps({"11"}, "0101").empty());
  EXPECT_EQ(oracle::extract_clumps({"101"}, "10101101"), (std::vector<std::int64_t>{2, 1}));
  EXPECT_EQ(oracle::extract_clumps({"101"}, "1010101"), (std::vector<std::int64_t>{3}));
  EXPECT_THROW(oracle::extract_clumps(std::vector<std::string>{"11", "101"}, "1"), ArgumentError);
}

TEST(Clumps, SampledSizesMatchDistribution) {
  const auto spec = PatternSpec::strings({"11"});
  const auto model = uniform_model("01");
  const auto psi = clump_size_distribution(spec, model, 8).psi;
  oracle::SplitMix64 rng(17);
  const auto samples = oracle::sample_clump_sizes(spec.generalized_strings("01"), model, 50000, 8, rng, 100000);
  const auto report = oracle::compare_samples(psi, samples, 17);
  EXPECT_TRUE(report.passed) << report.max_abs_deviation;
}

TEST(ReadLength, Simulation) {
  EXPECT_EQ(oracle::simulate_read_length("GTCGTATCCC", "TACG", 12), 6u);
  EXPECT_EQ(oracle::simulate_read_length("GTCGTATCCC", "GTCA", 12), 10u);
  EXPECT_EQ(oracle::simulate_read_length("AAAA$", "ACGT", 100), 4u);
  EXPECT_EQ(oracle::simulate_read_length("CA", "ACGT", 1), 0u);
}

TEST(Statistics, BonferroniThreshold) {
  EXPECT_EQ(oracle::bonferroni_threshold(5), 3.0);
  EXPECT_EQ(oracle::bonferroni_threshold(10), 3.0);
  const double t = oracle::bonferroni_threshold(100);
  EXPECT_NEAR(std::erfc(t / std::sqrt(2.0)) * 100, std::erfc(3.0 / std::sqrt(2.0)), 1e-12);
  EXPECT_GT(oracle::bonferroni_threshold(1000), t);
}

TEST(Statistics, CompareSamples) {
  Distribution<int> ref;
  ref.add(0, 0.5);
  ref.add(1, 0.5);
  EXPECT_FALSE(oracle::compare_samples(ref, std::vector<int>(500, 0), 1).passed);
  std::vector<int> balanced;
  for (int i = 0; i < 1000; ++i) balanced.push_back(i % 2);
  const auto r = oracle::compare_samples(ref, balanced, 1);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.z_scores.at(0), 0.0, 1e-12);
  const auto outside = oracle::compare_samples(ref, std::vector<int>{0, 1, 2, 0}, 1);
  EXPECT_EQ(outside.failures(), std::vector<int>{2});
  EXPECT_THROW(oracle::compare_samples(ref, std::vector<int>{}, 1), ArgumentError);
}

TEST(Statistics, MeanEstimate) {
  const auto e = oracle::estimate_mean(std::vector<int>{1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(e.mean, 2.5);
  EXPECT_NEAR(e.standard_error, std::sqrt((5.0 / 3.0) / 4.0), 1e-15);
  EXPECT_THROW(oracle::estimate_mean(std::vector<int>{1}), ArgumentError);
}
