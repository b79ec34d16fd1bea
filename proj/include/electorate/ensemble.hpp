#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <string>

#include "electorate/combinatorics.hpp"
#include "electorate/distribution.hpp"
#include "electorate/error.hpp"
#include "electorate/model.hpp"
#include "electorate/numeric.hpp"

namespace electorate {

/// {x.x} for one tally. Under isotropic party directions the cross terms
/// average to zero, leaving sum_k (N_k - p_k N)^2.
inline double directional_self_product(const Tally& tally, const ElectoralSystem& sys) {
  double out = 0.0;
  for (double x : excess_coordinates(tally, sys)) out += x * x;
  return out;
}

/// <f>: multiplicity-weighted mean of f over every tally of the system.
/// Streams the composition space; throws EnumerationTooLarge past cap.
template <std::invocable<const Tally&> F>
double magnitudal_average(F&& f, const ElectoralSystem& sys,
                          std::uint64_t cap = kDefaultEnumerationCap) {
  check_enumeration_cap(sys.electors(), sys.parties(), cap);
  CompensatedSum weighted, total;
  for (const auto& counts : CompositionRange(sys.electors(), sys.parties())) {
    const Tally tally(counts);
    const double g = multiplicity(tally, sys);
    if (g == 0.0) continue;
    weighted += g * static_cast<double>(f(tally));
    total += g;
  }
  return weighted.value() / total.value();
}

struct EnsembleReport {
  double variance = 0.0;        // <{x.x}>
  double mean_alignment = 0.0;  // <{N.1}>
  double weighted_sum = 0.0;    // sum g {x.x}
  double total_weight = 0.0;    // sum g, equals M^N
};

/// Exhaustive evaluation of both ensemble averages that make up the
/// fractional fluctuation.
inline EnsembleReport brute_force_report(const ElectoralSystem& sys,
                                         std::uint64_t cap = kDefaultEnumerationCap) {
  check_enumeration_cap(sys.electors(), sys.parties(), cap);
  CompensatedSum weighted, total, alignment;
  for (const auto& counts : CompositionRange(sys.electors(), sys.parties())) {
    const Tally tally(counts);
    const double g = multiplicity(tally, sys);
    if (g == 0.0) continue;
    weighted += g * directional_self_product(tally, sys);
    alignment += g * static_cast<double>(tally.total());
    total += g;
  }
  EnsembleReport report;
  report.weighted_sum = weighted.value();
  report.total_weight = total.value();
  report.variance = report.weighted_sum / report.total_weight;
  report.mean_alignment = alignment.value() / report.total_weight;
  return report;
}

inline constexpr int kDefaultQuadratureResolution = 1024;

/// Isotropic average of cos(phi) over the polar angle of the M-sphere,
///   int_0^pi cos(phi) sin^{m-2}(phi) dphi / int_0^pi sin^{m-2}(phi) dphi,
/// by composite Simpson with `resolution` (even) intervals. This is the
/// average of k.l for two distinct party directions; it should vanish.
inline double spherical_cross_term(int m, int resolution = kDefaultQuadratureResolution) {
  if (m < 2)
    throw Error(ErrorCode::InvalidArguments, "spherical cross term needs m >= 2");
  if (resolution < 64 || resolution % 2 != 0)
    throw Error(ErrorCode::InvalidArguments,
                "quadrature resolution must be even and >= 64, got " + std::to_string(resolution));
  const double h = std::numbers::pi / resolution;
  const double power = m - 2;
  CompensatedSum numerator, denominator;
  for (int i = 0; i <= resolution; ++i) {
    const double weight = (i == 0 || i == resolution) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    // Nodes are evaluated from the nearer endpoint so that mirrored nodes
    // carry identical sines and exactly opposite cosines.
    const int mirrored = std::min(i, resolution - i);
    const double s = mirrored == 0 ? 0.0 : std::sin(mirrored * h);
    double c = 2 * i == resolution ? 0.0 : std::cos(mirrored * h);
    if (2 * i > resolution) c = -c;
    const double kernel = power == 0 ? 1.0 : std::pow(s, power);
    numerator += weight * c * kernel;
    denominator += weight * kernel;
  }
  return numerator.value() / denominator.value();
}

}  // namespace electorate
