// Expected character comparisons of Horspool and Sunday on uniform DNA.

#include <cmath>
#include <cstdio>

#include "paa/paa.hpp"

namespace {

void summarize(const char* name, const paa::Distribution<std::int64_t>& d) {
  double m = 0.0, m2 = 0.0;
  for (const auto& [c, p] : d) {
    m += static_cast<double>(c) * p;
    m2 += static_cast<double>(c) * static_cast<double>(c) * p;
  }
  std::printf("  %-9s mean %8.3f  sd %6.3f\n", name, m, std::sqrt(m2 - m * m));
}

}  // namespace

int main() {
  using namespace paa;
  const auto model = uniform_model("ACGT");
  for (const char* pattern : {"ACAGC", "AAAAA", "ACGTA", "GATTA"}) {
    std::printf("%s, n=40\n", pattern);
    summarize("horspool", cost_distribution(horspool_spec(pattern, "ACGT"), model, 40));
    summarize("sunday", cost_distribution(sunday_spec(pattern, "ACGT"), model, 40));
  }
  return 0;
}
