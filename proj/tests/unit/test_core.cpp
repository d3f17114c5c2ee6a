#include <cmath>
#include <map>

#include "support.hpp"

using namespace paa;
using paa::testing::near;

namespace {

// Start state plus a D6, a D12 and a D20, each chosen with probability 1/3;
// the value is the largest face seen so far.
Paa<int, int> dice_paa() {
  TransitionMatrix t(4, SparseRow{{1, 1.0 / 3}, {2, 1.0 / 3}, {3, 1.0 / 3}});
  std::vector<Paa<int, int>::EmissionTable> em(4);
  em[0] = {{0, 1.0}};
  const int faces[3] = {6, 12, 20};
  for (int d = 0; d < 3; ++d) {
    for (int f = 1; f <= faces[d]; ++f) em[d + 1].push_back({f, 1.0 / faces[d]});
  }
  return Paa<int, int>(0, t, ValueDomain<int>::integer_range(0, 20), 0, em,
                       std::vector<Operation<int, int>>(4, ops::maximum<int, int>()));
}

CountPaa pair_paa(std::int64_t bound = 5, const TextModel& model = uniform_model("01")) {
  return pattern_paa(PatternSpec::strings({"101", "111"}), model, bound);
}

// Two-state chain a -> b with probability p, b absorbing.
MarkovChain two_state(double p) { return {{{{0, 1.0 - p}, {1, p}}, {{1, 1.0}}}}; }

}  // namespace

TEST(Distribution, TailAndMass) {
  Distribution<int> d;
  d.add(1, 0.25);
  d.add(2, 0.5);
  d.add(3, 0.0);
  d.add_tail(0.25);
  EXPECT_EQ(d.size(), 2u);
  EXPECT_DOUBLE_EQ(d.mass(), 0.75);
  EXPECT_DOUBLE_EQ(d.total(), 1.0);
  EXPECT_DOUBLE_EQ(d.cdf(1), 0.25);
  EXPECT_DOUBLE_EQ(d.survival(2), 0.5);
}

TEST(StateValueDistribution, DiceOneStep) {
  const auto d = value_distribution(dice_paa(), 1);
  std::map<int, double> expected;
  for (int faces : {6, 12, 20}) {
    for (int f = 1; f <= faces; ++f) expected[f] += 1.0 / 3.0 / faces;
  }
  for (int v = 1; v <= 20; ++v) {
    EXPECT_NEAR(d.probability(v), expected[v], 1e-15) << v;
    const double frozen = v <= 6 ? 1.0 / 10 : v <= 12 ? 2.0 / 45 : 1.0 / 60;
    EXPECT_NEAR(d.probability(v), frozen, 1e-15) << v;
  }
}

TEST(StateValueDistribution, ZeroStepsIsDirac) {
  const auto dice = dice_paa();
  const auto f = state_value_distribution(dice, 0);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_DOUBLE_EQ(f.probability({0, 0}), 1.0);
  const auto counts = pair_paa();
  EXPECT_DOUBLE_EQ(value_distribution(counts.paa, 0).probability(0), 1.0);
  EXPECT_DOUBLE_EQ(value_distribution(counts.paa, 0, Method::doubling).probability(0), 1.0);
}

TEST(StateValueDistribution, PairPatternCounts) {
  const auto product = pair_paa();
  const auto d3 = value_distribution(product.paa, 3);
  EXPECT_DOUBLE_EQ(d3.probability(0), 0.75);
  EXPECT_DOUBLE_EQ(d3.probability(1), 0.25);
  const auto d4 = value_distribution(product.paa, 4);
  EXPECT_DOUBLE_EQ(d4.probability(2), 1.0 / 16);
  EXPECT_DOUBLE_EQ(1.0 - d4.probability(0), 7.0 / 16);
}

TEST(StateValueDistribution, Normalization) {
  const auto dice = dice_paa();
  const auto counts = pair_paa(3, paa::testing::binary_markov());
  for (std::size_t n : {1u, 2u, 5u, 17u, 40u}) {
    EXPECT_NEAR(state_value_distribution(dice, n).mass(), 1.0, 1e-9);
    EXPECT_NEAR(state_value_distribution(counts.paa, n).mass(), 1.0, 1e-9);
  }
}

TEST(StateValueDistribution, DoublingAgreesWithBasic) {
  const auto dice = dice_paa();
  const auto counts = pair_paa(6, paa::testing::binary_markov());
  for (std::size_t n : {1u, 2u, 7u, 13u, 64u}) {
    EXPECT_TRUE(near(state_value_distribution(dice, n), state_value_distribution(dice, n, Method::doubling), 1e-10));
    EXPECT_TRUE(near(state_value_distribution(counts.paa, n),
                     state_value_distribution(counts.paa, n, Method::doubling), 1e-10));
  }
}

TEST(StateValueDistribution, DoublingKernelRowsAreStochastic) {
  const auto dice = dice_paa();
  const auto k = doubling_kernel(dice, 3);
  EXPECT_NEAR(k.row(0, 0).mass(), 1.0, 1e-12);
  for (int v1 : {1, 5, 19}) EXPECT_NEAR(k.row(1, v1).mass(), 1.0, 1e-12);
  // (D6, 0) is never reached from the start.
  EXPECT_EQ(k.row(1, 0).size(), 0u);
}

TEST(Paa, OperationLeavingTheDomainIsRejected) {
  TransitionMatrix t{{{0, 1.0}}};
  std::vector<Paa<int, int>::EmissionTable> em{{{1, 1.0}}};
  EXPECT_THROW((Paa<int, int>(0, t, ValueDomain<int>::integer_range(0, 2), 0, em,
                              std::vector<Operation<int, int>>{ops::add<int, int>()})),
               DomainError);
  EXPECT_NO_THROW((Paa<int, int>(0, t, ValueDomain<int>::integer_range(0, 2), 0, em,
                                 std::vector<Operation<int, int>>{ops::truncated_add<int, int>(2)})));
}

TEST(Paa, RejectsNonStochasticRows) {
  TransitionMatrix t{{{0, 0.5}}};
  std::vector<Paa<int, int>::EmissionTable> em{{{1, 1.0}}};
  EXPECT_THROW((Paa<int, int>(0, t, ValueDomain<int>::unbounded(), 0, em,
                              std::vector<Operation<int, int>>{ops::add<int, int>()})),
               ArgumentError);
}

TEST(WaitingTimeValues, StartInTargetIsDirac) {
  const auto product = pair_paa();
  const auto w = waiting_time_values<std::int64_t, std::int64_t>(product.paa, value_set<std::int64_t>({0}), 10);
  EXPECT_DOUBLE_EQ(w.probability(0), 1.0);
  EXPECT_EQ(w.tail(), 0.0);
}

TEST(WaitingTimeValues, GeometricForSingleCharacter) {
  const double p = 0.3;
  const auto product = pattern_paa(PatternSpec::strings({"1"}), iid_model("01", {1 - p, p}), 1);
  const auto w = waiting_time_values<std::int64_t, std::int64_t>(product.paa, value_set<std::int64_t>({1}), 30);
  for (std::size_t t = 1; t <= 30; ++t) EXPECT_NEAR(w.probability(t), std::pow(1 - p, t - 1) * p, 1e-15);
  EXPECT_NEAR(w.tail(), std::pow(1 - p, 30), 1e-15);
  EXPECT_NEAR(w.total(), 1.0, 1e-9);
}

TEST(WaitingTimeValues, MarkedRewriteAgrees) {
  const auto product = pair_paa(2, paa::testing::binary_markov());
  const auto targets = value_set<std::int64_t>({2});
  const auto a = waiting_time_values<std::int64_t, std::int64_t>(product.paa, targets, 25);
  const auto b = waiting_time_values_marked<std::int64_t, std::int64_t>(product.paa, targets, 25);
  EXPECT_TRUE(near(a, b, 1e-14));
  EXPECT_NEAR(a.total(), 1.0, 1e-9);
}

TEST(WaitingTimeValues, MonotoneTruncation) {
  const auto product = pair_paa(2);
  const auto targets = value_set<std::int64_t>({2});
  const auto short_run = waiting_time_values<std::int64_t, std::int64_t>(product.paa, targets, 8);
  const auto long_run = waiting_time_values<std::int64_t, std::int64_t>(product.paa, targets, 16);
  for (const auto& [t, p] : short_run) EXPECT_EQ(long_run.probability(t), p);
  EXPECT_GE(short_run.tail(), long_run.tail());
}

TEST(WaitingTimeValues, EmptyTargetSetIsRejected) {
  EXPECT_THROW(value_set<std::int64_t>({}), ArgumentError);
}

TEST(WaitingTimeStates, Geometric) {
  const double p = 0.35;
  const auto w = waiting_time_states(two_state(p), {1.0, 0.0}, {false, true}, 40);
  EXPECT_EQ(w.probability(0), 0.0);
  for (std::size_t t = 1; t <= 40; ++t) EXPECT_NEAR(w.probability(t), std::pow(1 - p, t - 1) * p, 1e-15);
  EXPECT_NEAR(w.total(), 1.0, 1e-9);
}

TEST(WaitingTimeStates, StartInTarget) {
  const auto w = waiting_time_states(two_state(0.5), {0.0, 1.0}, {false, true}, 5);
  EXPECT_DOUBLE_EQ(w.probability(0), 1.0);
  EXPECT_EQ(w.tail(), 0.0);
}

TEST(WaitingTimeStates, RejectsBadInput) {
  EXPECT_THROW(waiting_time_states(two_state(0.5), {1.0, 0.0}, {false, false}, 5), ArgumentError);
  EXPECT_THROW(waiting_time_states(two_state(0.5), {0.5, 0.0}, {false, true}, 5), ArgumentError);
}

TEST(WaitingTimeStates, ReturnTimeOfTwoStateChain) {
  // a <-> b with P(a->b) = 0.3, P(b->a) = 0.6; returning to b takes one
  // step with probability 0.4, otherwise 1 + geometric(0.3).
  const MarkovChain chain{{{{0, 0.7}, {1, 0.3}}, {{0, 0.6}, {1, 0.4}}}};
  const auto pi = stationary_distribution(chain);
  const auto w = return_time_states(chain, restrict_to(pi, {false, true}), {false, true}, 30);
  EXPECT_NEAR(w.probability(1), 0.4, 1e-15);
  for (std::size_t t = 2; t <= 30; ++t) EXPECT_NEAR(w.probability(t), 0.6 * std::pow(0.7, t - 2) * 0.3, 1e-15);
  EXPECT_NEAR(w.total(), 1.0, 1e-9);
}

TEST(Stationary, DoublyStochasticIsUniform) {
  const MarkovChain chain{{{{0, 0.2}, {1, 0.5}, {2, 0.3}}, {{0, 0.5}, {1, 0.2}, {2, 0.3}}, {{0, 0.3}, {1, 0.3}, {2, 0.4}}}};
  for (double x : stationary_distribution(chain)) EXPECT_NEAR(x, 1.0 / 3, 1e-12);
}

TEST(Stationary, TwoStateBalance) {
  const MarkovChain chain{{{{0, 0.7}, {1, 0.3}}, {{0, 0.6}, {1, 0.4}}}};
  const auto pi = stationary_distribution(chain);
  EXPECT_NEAR(pi[0], 2.0 / 3, 1e-12);
  EXPECT_NEAR(pi[1], 1.0 / 3, 1e-12);
}

TEST(Stationary, PeriodicChainIsRejected) {
  const MarkovChain chain{{{{1, 1.0}}, {{0, 1.0}}}};
  EXPECT_THROW(stationary_distribution(chain), ChainPropertyError);
}

TEST(Stationary, ChainWithTwoClosedClassesIsRejected) {
  const MarkovChain chain{{{{0, 1.0}}, {{1, 1.0}}}};
  EXPECT_THROW(stationary_distribution(chain), ChainPropertyError);
}
