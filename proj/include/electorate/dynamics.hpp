#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "electorate/ensemble.hpp"
#include "electorate/error.hpp"
#include "electorate/model.hpp"

namespace electorate {

struct DynamicAttributes {
  double fractional_fluctuation = 0.0;
  double volatility = 0.0;
  double flexibility = 0.0;
  double stability = 0.0;
  double rigidity = 0.0;
};

/// V(N) = 1 / sqrt(N)
inline double volatility(count_t electors) {
  if (electors < 1)
    throw Error(ErrorCode::NonPositiveElectors, "volatility is defined for N >= 1 only");
  return 1.0 / std::sqrt(static_cast<double>(electors));
}

inline double stability(count_t electors) { return 1.0 - volatility(electors); }

/// L(p) = sqrt(1 - sum p_k^2). Clamped at zero: a degenerate distribution
/// can overshoot sum p^2 = 1 by rounding.
inline double flexibility(const PartyDistribution& dist) {
  return std::sqrt(std::max(0.0, 1.0 - dist.sum_of_squares()));
}

inline double rigidity(const PartyDistribution& dist) { return 1.0 - flexibility(dist); }

inline DynamicAttributes closed_form_attributes(const ElectoralSystem& sys) {
  DynamicAttributes a;
  a.volatility = volatility(sys.electors());
  a.flexibility = flexibility(sys.distribution());
  a.stability = 1.0 - a.volatility;
  a.rigidity = 1.0 - a.flexibility;
  a.fractional_fluctuation = a.volatility * a.flexibility;
  return a;
}

/// F = sqrt(<{x.x}>) / <{N.1}> by exhaustive enumeration.
inline double brute_force_fractional_fluctuation(const ElectoralSystem& sys,
                                                 std::uint64_t cap = kDefaultEnumerationCap) {
  const EnsembleReport report = brute_force_report(sys, cap);
  return std::sqrt(report.variance) / report.mean_alignment;
}

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Flexibility over all distributions with m outcomes lies in
/// [0, sqrt((m-1)/m)]; the top is reached at uniform p.
inline Bounds flexibility_bounds(std::int64_t m) {
  if (m < 1) throw Error(ErrorCode::InvalidArguments, "flexibility bounds need m >= 1");
  const auto md = static_cast<double>(m);
  return {0.0, std::sqrt((md - 1.0) / md)};
}

inline Bounds rigidity_bounds(std::int64_t m) {
  const Bounds flex = flexibility_bounds(m);
  return {1.0 - flex.upper, 1.0 - flex.lower};
}

struct FlexibilityGradient {
  std::vector<double> partials;  // dL/dp_k for k = 1..M-1, p_M dependent
};

/// Gradient of L with p_1..p_{M-1} independent and p_M = 1 - sum of the rest:
///   dL/dp_k = (p_M - p_k) / sqrt(1 - sum p_i^2).
inline FlexibilityGradient flexibility_gradient(const PartyDistribution& dist) {
  const double flex_sq = 1.0 - dist.sum_of_squares();
  if (!(flex_sq > 0.0))
    throw Error(ErrorCode::DegenerateDistribution,
                "flexibility gradient is singular where sum p^2 = 1");
  const double flex = std::sqrt(flex_sq);
  const std::size_t m = dist.parties();
  const double pivot = dist[m - 1];
  FlexibilityGradient grad;
  grad.partials.reserve(m - 1);
  for (std::size_t k = 0; k + 1 < m; ++k) grad.partials.push_back((pivot - dist[k]) / flex);
  return grad;
}

}  // namespace electorate
