// Sensitivity of contiguous and spaced seeds of weight 11 on 64-column alignments.

#include <cstdio>
#include <vector>

#include "paa/paa.hpp"

int main() {
  using namespace paa;
  const std::vector<const char*> seeds{"11111111111", "111*1**1*1**11*111", "111*1*11*1**1*111"};
  std::printf("%-5s", "p");
  for (const char* s : seeds) std::printf("  %-20s", s);
  std::printf("  %-20s\n", "two spaced seeds");
  const MultipleSeed pair({Seed(seeds[1]), Seed(seeds[2])});
  for (double p = 0.5; p < 0.96; p += 0.05) {
    const auto model = ungapped_homology_model(p);
    std::printf("%.2f ", p);
    for (const char* s : seeds) std::printf("  %-20.6f", seed_sensitivity(Seed(s), model, 64));
    std::printf("  %-20.6f\n", seed_sensitivity(pair, model, 64));
  }

  const auto gapped = gapped_homology_model(0.26, 0.7, 0.02);
  std::printf("\nwith gaps (p0=0.26 p1=0.7 pg=0.02): contiguous %.6f, spaced %.6f\n",
              seed_sensitivity(Seed(seeds[0]), gapped, 64), seed_sensitivity(Seed(seeds[1]), gapped, 64));
  return 0;
}
