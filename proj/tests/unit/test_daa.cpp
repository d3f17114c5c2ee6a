
#include "support.hpp"

using namespace paa;
using paa::testing::all_strings;

namespace {

// Flows consumed while sequencing `text` with the cyclic order, counted from
// the first flow up to and including the one that adds the last character.
std::int64_t flows_used(const std::string& order, const std::string& text) {
  std::int64_t flows = 0;
  std::size_t j = 0;
  bool started = false;
  for (char ch : text) {
    if (started && order[j] == ch) continue;
    std::size_t i = started ? 1 : 0;
    while (order[(j + i) % order.size()] != ch) ++i;
    flows += static_cast<std::int64_t>(i) + (started ? 0 : 1);
    j = (j + i) % order.size();
    started = true;
  }
  return flows;
}

std::vector<GeneralizedString> literal(const std::vector<std::string>& strings) {
  return PatternSpec::strings(strings).generalized_strings("");
}

std::vector<std::vector<std::string>> binary_sets(std::size_t max_total) {
  std::vector<std::string> words;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& w : all_strings("01", n)) words.push_back(w);
  }
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    out.push_back({words[i]});
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      if (words[i].size() + words[j].size() <= max_total) out.push_back({words[i], words[j]});
    }
  }
  return out;
}

}  // namespace

TEST(Daa, CountingValueOfText) {
  const auto daa = counting_daa(aho_corasick({"101", "111"}, "01"), 10);
  EXPECT_EQ(daa_value(daa, "10101"), 2);
  EXPECT_EQ(daa_value(daa, "1111"), 2);
  EXPECT_EQ(daa_value(daa, ""), 0);
}

TEST(Daa, FlowValueOfText) {
  const Dispensation d("TACG", 100);
  const auto daa = flow_daa(d);
  EXPECT_EQ(daa_value(daa, "GTCGTA"), 10);
  EXPECT_EQ(flows_used("TACG", "GTCGTA"), 10);
  // A homopolymer run costs no extra flows.
  EXPECT_EQ(daa_value(daa, "GTCCGTA"), daa_value(daa, "GTCGTA"));
  for (const auto& s : all_strings("ACGT", 5)) EXPECT_EQ(daa_value(daa, s), flows_used("TACG", s)) << s;
}

TEST(Daa, RejectsInconsistentTables) {
  using D = Daa<std::int64_t, std::int64_t>;
  const auto ops = std::vector<Operation<std::int64_t, std::int64_t>>(2, ops::add<std::int64_t, std::int64_t>());
  EXPECT_THROW(D("01", 0, {0, 1, 1}, ValueDomain<std::int64_t>::unbounded(), 0, {0, 1}, ops), ArgumentError);
  EXPECT_THROW(D("01", 0, {0, 1, 1, 2}, ValueDomain<std::int64_t>::unbounded(), 0, {0, 1}, ops), ArgumentError);
  EXPECT_THROW(D("01", 2, {0, 1, 1, 0}, ValueDomain<std::int64_t>::unbounded(), 0, {0, 1}, ops), ArgumentError);
  EXPECT_THROW(daa_value(counting_daa(aho_corasick({"1"}, "01"), 3), "012"), ArgumentError);
}

TEST(AhoCorasick, StateCounts) {
  EXPECT_EQ(aho_corasick({"101", "111"}, "01").size(), 6u);
  EXPECT_EQ(aho_corasick({"ab"}, "ab").size(), 3u);
  const auto nested = aho_corasick({"aa", "aaa"}, "ab");
  EXPECT_EQ(nested.count("aaa"), 3u);
  EXPECT_EQ(nested.count("aab"), 1u);
}

TEST(AhoCorasick, RejectsBadInput) {
  EXPECT_THROW(aho_corasick({}, "01"), ArgumentError);
  EXPECT_THROW(aho_corasick({""}, "01"), ArgumentError);
  EXPECT_THROW(aho_corasick({"012"}, "01"), ArgumentError);
}

TEST(Nfa, ChainPerGeneralizedString) {
  const auto nfa = nfa_from_generalized({{"abc", "ac", "ab"}}, "abc");
  EXPECT_EQ(nfa.size(), 4u);
  EXPECT_EQ(nfa.final_count[3], 1u);
  EXPECT_THROW(nfa_from_generalized({{"abc", "", "ab"}}, "abc"), ArgumentError);
  EXPECT_THROW(nfa_from_generalized({{"abd"}}, "abc"), ArgumentError);
}

TEST(SubsetConstruction, LiteralSetMatchesAhoCorasick) {
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
      {{"101", "111"}, "01"}, {{"ab", "ba", "aab"}, "ab"}, {{"aaaa"}, "ab"}};
  for (const auto& [set, alphabet] : cases) {
    const auto subset = minimize(subset_construction(nfa_from_generalized(literal(set), alphabet)));
    EXPECT_TRUE(isomorphic(subset, minimize(aho_corasick(set, alphabet))));
  }
}

TEST(SubsetConstruction, GeneralizedCountsMatchNaive) {
  const std::vector<GeneralizedString> patterns{{"ab", "ab"}, {"abc", "ac", "ab"}};
  const auto dfa = subset_construction(nfa_from_generalized(patterns, "abc"));
  for (std::size_t n = 0; n <= 6; ++n) {
    for (const auto& s : all_strings("abc", n)) {
      EXPECT_EQ(static_cast<std::int64_t>(dfa.count(s)), oracle::count_matches(patterns, s, CountingScheme::overlapping));
    }
  }
}

TEST(SubsetConstruction, ResourceGuard) {
  EXPECT_THROW(subset_construction(nfa_from_generalized({{"ab", "ab", "ab", "ab", "ab", "a"}}, "ab"), 3),
               ResourceError);
}

TEST(Prosite, ExpandsRepeats) {
  const auto g = expand_prosite("A-x(2,3)-C");
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].size(), 4u);
  EXPECT_EQ(g[1].size(), 5u);
  EXPECT_EQ(g[0][1], kAminoAcids);
  EXPECT_EQ(expand_prosite("[AC]-D(2).").front(), (GeneralizedString{"AC", "D", "D"}));
  EXPECT_EQ(format_generalized(g[0]), "A-x-x-C");
}

TEST(Prosite, AnchorsAreUnsupported) {
  EXPECT_THROW(expand_prosite("<A-C"), UnsupportedFeature);
  EXPECT_THROW(expand_prosite("A-C>"), UnsupportedFeature);
  EXPECT_THROW(expand_prosite("A-{C}"), UnsupportedFeature);
}

TEST(Prosite, ParseErrorsCarryPositions) {
  try {
    expand_prosite("A-x(2,3-C");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 7u);
  }
  try {
    expand_prosite("A-B");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
  EXPECT_THROW(expand_prosite("A-x(3,2)"), ParseError);
  EXPECT_THROW(expand_prosite("A-[C"), ParseError);
  EXPECT_THROW(expand_prosite(""), ParseError);
}

TEST(Minimize, PreservesCountsOnRandomTexts) {
  const PatternSpec spec = PatternSpec::prosite("C-x(1,2)-[DE]-x(2)-C");
  const auto full = build_counting_dfa(spec, kAminoAcids, {false});
  const auto small = minimize(full);
  EXPECT_LT(small.size(), full.size());
  EXPECT_TRUE(isomorphic(small, minimize(small)));
  oracle::SplitMix64 rng(7);
  const auto model = uniform_model(kAminoAcids);
  for (int i = 0; i < 10000; ++i) {
    const auto s = oracle::sample_text(model, 12, rng);
    ASSERT_EQ(small.count(s), full.count(s)) << s;
  }
}

TEST(Isomorphic, DetectsDifferences) {
  const auto a = minimize(aho_corasick({"11"}, "01"));
  EXPECT_TRUE(isomorphic(a, a));
  EXPECT_FALSE(isomorphic(a, minimize(aho_corasick({"10"}, "01"))));
  EXPECT_FALSE(isomorphic(a, minimize(aho_corasick({"111"}, "01"))));
}

TEST(CountingScheme, OverlappingVersusNonoverlapping) {
  const auto dfa = aho_corasick({"11"}, "01");
  EXPECT_EQ(apply_scheme(dfa, CountingScheme::overlapping).count("111"), 2u);
  EXPECT_EQ(apply_scheme(dfa, CountingScheme::nonoverlapping).count("111"), 1u);
  EXPECT_EQ(apply_scheme(dfa, CountingScheme::nonoverlapping).count("1111"), 2u);
  EXPECT_EQ(apply_scheme(dfa, CountingScheme::match_position).count("111"), 2u);
}

TEST(CountingScheme, OverlappingNeedsMultiplicities) {
  const auto positions = apply_scheme(aho_corasick({"11"}, "01"), CountingScheme::match_position);
  EXPECT_THROW(apply_scheme(positions, CountingScheme::overlapping), ArgumentError);
}

TEST(CountingScheme, ParseAndPrint) {
  for (auto s : {CountingScheme::match_position, CountingScheme::overlapping, CountingScheme::nonoverlapping}) {
    EXPECT_EQ(parse_scheme(to_string(s)), s);
  }
  EXPECT_EQ(parse_scheme("non-overlapping"), CountingScheme::nonoverlapping);
  EXPECT_THROW(parse_scheme("greedy"), ArgumentError);
}

TEST(CountingDaa, ClampsAtBound) {
  const auto daa = counting_daa(aho_corasick({"11"}, "01"), 3);
  EXPECT_EQ(daa_value(daa, "1111111"), 3);
  EXPECT_EQ(daa_value(daa, "111"), 2);
  EXPECT_THROW(counting_daa(aho_corasick({"11"}, "01"), 0), ArgumentError);
}

TEST(Pipeline, AllSchemesMatchNaiveCounts) {
  const auto sets = binary_sets(7);
  std::vector<std::vector<std::string>> texts;
  for (std::size_t n = 0; n <= 8; ++n) texts.push_back(all_strings("01", n));
  for (const auto& set : sets) {
    const auto gs = literal(set);
    for (auto scheme : {CountingScheme::match_position, CountingScheme::overlapping, CountingScheme::nonoverlapping}) {
      for (bool min : {false, true}) {
        const auto dfa = build_scheme_dfa(PatternSpec::strings(set), "01", scheme, {min});
        for (const auto& bucket : texts) {
          for (const auto& s : bucket) {
            ASSERT_EQ(static_cast<std::int64_t>(dfa.count(s)), oracle::count_matches(gs, s, scheme))
                << set.front() << " scheme " << to_string(scheme) << " text " << s;
          }
        }
      }
    }
  }
}

TEST(Pipeline, GeneralizedSchemesMatchNaiveCounts) {
  const std::vector<std::vector<GeneralizedString>> sets{
      {{"ab", "a"}}, {{"a", "ab", "a"}, {"b", "b"}}, {{"abc", "c"}, {"c", "a"}}, {{"ac", "ac", "b"}}};
  for (const auto& gs : sets) {
    for (auto scheme : {CountingScheme::match_position, CountingScheme::overlapping, CountingScheme::nonoverlapping}) {
      const auto dfa = build_scheme_dfa(PatternSpec::generalized(gs), "abc", scheme);
      for (std::size_t n = 0; n <= 6; ++n) {
        for (const auto& s : all_strings("abc", n)) {
          ASSERT_EQ(static_cast<std::int64_t>(dfa.count(s)), oracle::count_matches(gs, s, scheme)) << s;
        }
      }
    }
  }
}

TEST(ProductPaa, MatchesEnumeration) {
  const std::vector<TextModel> models{uniform_model("01"), paa::testing::binary_markov(),
                                      paa::testing::binary_hmm_model()};
  for (const auto& model : models) {
    const auto daa = counting_daa(apply_scheme(aho_corasick({"101", "11"}, "01"), CountingScheme::nonoverlapping), 4);
    const auto product = paa_from_daa(daa, model);
    for (std::size_t n : {0u, 1u, 4u, 9u}) {
      const auto exact = oracle::enumerate_exact([&](const std::string& s) { return daa_value(daa, s); }, model, n);
      EXPECT_TRUE(paa::testing::near(value_distribution(product.paa, n), exact, 1e-12)) << n;
    }
  }
}

TEST(ProductPaa, RejectsAlphabetMismatch) {
  const auto daa = counting_daa(aho_corasick({"11"}, "01"), 3);
  EXPECT_THROW(paa_from_daa(daa, uniform_model("ab")), ArgumentError);
  EXPECT_THROW(paa_from_daa(daa, uniform_model("012")), ArgumentError);
}
