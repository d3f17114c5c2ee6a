// Ranks cyclic dispensation orders by expected read length in uniform DNA.

#include <cstdio>
#include <thread>

#include "paa/paa.hpp"

int main() {
  using namespace paa;
  const auto model = uniform_model(kNucleotides);
  const std::int64_t flows = 100;
  const auto orders = dispensation_orders(4, 6);
  const std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  const auto ranked = sweep_orders(model, orders, flows, 400, jobs);
  std::printf("%zu orders, %lld flows\n", orders.size(), static_cast<long long>(flows));
  for (std::size_t i = 0; i < ranked.size() && i < 8; ++i) {
    std::printf("  %-8s %.3f\n", ranked[i].order.c_str(), ranked[i].expected_length);
  }
  std::printf("  ...\n  %-8s %.3f\n", ranked.back().order.c_str(), ranked.back().expected_length);
  std::printf("TACG: %.3f\n", expected_read_length(model, Dispensation("TACG", flows), 400));
  return 0;
}
