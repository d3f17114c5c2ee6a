// Tryptic fragment lengths and masses of uniformly random proteins.

#include <cstdio>

#include "paa/paa.hpp"

int main() {
  using namespace paa;
  const auto model = uniform_model(kAminoAcids);
  const auto rule = CleavageRule::trypsin();
  const auto masses = monoisotopic_masses(10.0);

  std::printf("DVCK: %.1f Da\n", daa_value(cleavage_daa(rule, masses), "DVCK") / masses.lambda);

  for (double p_miss : {0.0, 0.2}) {
    const auto lengths = fragment_length_dist(model, rule, FragmentIndex{2}, 60, p_miss);
    double mean = 0.0;
    for (const auto& [l, p] : lengths) mean += static_cast<double>(l) * p;
    std::printf("second fragment, p_miss=%.1f: mean length %.3f, P(length > 60) = %.2e\n", p_miss, mean,
                lengths.tail());
  }

  const auto joint = fragment_length_mass(model, rule, masses, FragmentIndex{1}, 12, 0.0);
  const auto by_mass = joint.marginal([](const auto& lm) { return lm.second / 1000; });
  std::printf("first fragment mass (length <= 12), 100 Da bins:\n");
  for (const auto& [bin, p] : by_mass) {
    if (p > 0.01) std::printf("  %4lld-%4lld Da  %.4f\n", static_cast<long long>(bin * 100), static_cast<long long>(bin * 100 + 99), p);
  }

  const auto [lo, hi] = mass_window(masses, 1000.5, 0.5);
  for (std::size_t n : {50u, 200u, 500u}) {
    std::printf("P(fragment of 1000.5 +- 0.5 Da in a protein of length %zu) = %.4f\n", n,
                mass_occurrence_probability(model, rule, masses, n, lo, hi, 0.0));
  }
  return 0;
}
