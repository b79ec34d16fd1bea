// Walks the five-elector, three-party example by hand: enumerate the tallies,
// weigh them, and compare the ensemble variance with N (1 - sum p^2).

#include <cstdio>

#include "electorate/electorate.hpp"

int main() {
  using namespace electorate;
  const auto sys = validate_system(5, {0.1, 0.3, 0.6});

  double total = 0.0, weighted = 0.0;
  for (const auto& tally : enumerate_compositions(5, 3)) {
    const double g = multiplicity(tally, sys);
    const double xx = directional_self_product(tally, sys);
    std::printf("[%llu, %llu, %llu]  g = %8.4f  {x.x} = %5.2f\n",
                static_cast<unsigned long long>(tally[0]), static_cast<unsigned long long>(tally[1]),
                static_cast<unsigned long long>(tally[2]), g, xx);
    total += g;
    weighted += g * xx;
  }
  std::printf("sum g = %.6f, sum g{x.x} = %.6f, variance = %.6f\n", total, weighted, weighted / total);

  const auto attrs = closed_form_attributes(sys);
  std::printf("closed form: N (1 - sum p^2) = %.6f, F = %.6f, stability = %.6f, rigidity = %.6f\n",
              5.0 * (1.0 - sys.distribution().sum_of_squares()), attrs.fractional_fluctuation,
              attrs.stability, attrs.rigidity);
}
