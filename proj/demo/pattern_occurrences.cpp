// Occurrences, waiting time and clumps of Prosite motifs in random proteins.

#include <cstdio>

#include "paa/paa.hpp"

int main() {
  using namespace paa;
  const auto model = uniform_model(kAminoAcids);

  const auto rare = PatternSpec::prosite("C-x-H-R-[GAR]-x(7,8)-[GEKVI]-[NERAQ]-x(4,5)-C-x-[FY]-H");
  std::printf("rare motif, minimal automaton: %zu states\n", build_counting_dfa(rare, kAminoAcids).size());
  for (std::size_t n : {100u, 400u, 1000u}) {
    const auto d = occurrence_distribution(rare, model, n, 2);
    std::printf("  n=%-5zu P(0)=%.9f P(1)=%.3e P(>=2)=%.3e\n", n, d.probability(0), d.probability(1),
                d.probability(2));
  }

  const auto common = PatternSpec::prosite("N-x-[ST]");
  const auto w = pattern_waiting_time(common, model, 400, WaitingMode::first);
  double cdf = 0.0;
  std::size_t median = 0;
  for (const auto& [t, p] : w) {
    cdf += p;
    if (cdf >= 0.5) {
      median = t;
      break;
    }
  }
  std::printf("N-x-[ST]: median end of first match %zu, P(none within 400) = %.4f\n", median, w.tail());
  const auto counts = occurrence_distribution(common, model, 300, 6);
  std::printf("  matches in 300 residues:");
  for (const auto& [k, p] : counts) std::printf(" %s%lld:%.3f", k == 6 ? ">=" : "", static_cast<long long>(k), p);
  std::printf("\n");

  const auto clumps = clump_size_distribution(PatternSpec::strings({"ACA", "CAC"}), uniform_model("ACGT"), 8);
  std::printf("clump sizes of {ACA, CAC} in uniform DNA:\n");
  for (const auto& [h, p] : clumps.psi) std::printf("  %s%lld\t%.6f\n", h == 8 ? ">=" : "", static_cast<long long>(h), p);
  return 0;
}
