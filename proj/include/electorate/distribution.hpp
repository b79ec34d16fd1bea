#pragma once

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <string>

#include "electorate/combinatorics.hpp"
#include "electorate/error.hpp"
#include "electorate/model.hpp"

namespace electorate {

/// Above this many electors factorials are evaluated through lgamma; at or
/// below it the exact integer coefficient is converted to double.
inline constexpr count_t kLogSpaceThreshold = 150;

namespace detail {

// sum_k n_k log p_k with 0 log 0 = 0; -inf when some n_k > 0 has p_k = 0.
inline double log_power_product(std::span<const count_t> counts, std::span<const double> probs) {
  double out = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    if (probs[k] == 0.0) return -INFINITY;
    out += static_cast<double>(counts[k]) * std::log(probs[k]);
  }
  return out;
}

inline double log_factorial(count_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// coefficient * prod p_k^{n_k}, exact coefficient when small enough
inline double weighted_coefficient(count_t total, std::span<const count_t> counts,
                                   std::span<const double> probs) {
  const double log_powers = log_power_product(counts, probs);
  if (log_powers == -INFINITY) return 0.0;
  if (total <= kLogSpaceThreshold) {
    double powers = 1.0;
    for (std::size_t k = 0; k < counts.size(); ++k)
      powers *= std::pow(probs[k], static_cast<double>(counts[k]));
    if (powers >= DBL_MIN) return multinomial_coefficient(counts).convert_to<double>() * powers;
  }
  double log_coef = log_factorial(total);
  for (count_t c : counts) log_coef -= log_factorial(c);
  return std::exp(log_coef + log_powers);
}

}  // namespace detail

/// Probability of one tally under the multinomial law:
/// N! prod_k p_k^{N_k} / N_k!.
inline double multinomial_pmf(const Tally& tally, const ElectoralSystem& sys) {
  check_membership(tally, sys);
  return detail::weighted_coefficient(sys.electors(), tally.counts(), sys.probs());
}

/// Multiplicity g = M^N * pmf: the number of occurrences of the tally among
/// the M^N equally weighted elementary votes. Real-valued in general.
inline double multiplicity(const Tally& tally, const ElectoralSystem& sys) {
  const double pmf = multinomial_pmf(tally, sys);
  if (pmf == 0.0) return 0.0;
  const auto m = static_cast<double>(sys.parties());
  const auto n = static_cast<double>(sys.electors());
  const double scale = std::pow(m, n);
  if (std::isfinite(scale)) return pmf * scale;
  return std::exp(std::log(pmf) + n * std::log(m));
}

struct WeightedTally {
  Tally tally;
  double multiplicity = 0.0;
  double pmf = 0.0;
};

inline WeightedTally weigh(const Tally& tally, const ElectoralSystem& sys) {
  return {tally, multiplicity(tally, sys), multinomial_pmf(tally, sys)};
}

/// P(N_k = count) for the 1-based party index k.
inline double binomial_marginal(std::int64_t party, std::int64_t count, const ElectoralSystem& sys) {
  if (party < 1 || static_cast<std::size_t>(party) > sys.parties())
    throw Error(ErrorCode::IndexOutOfRange,
                "party index " + std::to_string(party) + " outside 1.." +
                    std::to_string(sys.parties()));
  if (count < 0 || static_cast<count_t>(count) > sys.electors())
    throw Error(ErrorCode::CountOutOfRange,
                "count " + std::to_string(count) + " outside 0.." + std::to_string(sys.electors()));
  const double p = sys.probs()[static_cast<std::size_t>(party - 1)];
  const count_t hits = static_cast<count_t>(count);
  const count_t counts[2] = {hits, sys.electors() - hits};
  const double probs[2] = {p, 1.0 - p};
  return detail::weighted_coefficient(sys.electors(), counts, probs);
}

}  // namespace electorate
