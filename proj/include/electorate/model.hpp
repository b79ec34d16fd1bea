#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "electorate/error.hpp"

namespace electorate {

using count_t = std::uint64_t;

/// Absolute tolerance on |sum(p) - 1| accepted by validation.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Outcome probabilities p_1..p_M on the simplex. Only constructible through
/// validate_distribution / uniform_distribution; never renormalized.
class PartyDistribution {
 public:
  std::size_t parties() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](std::size_t k) const { return probs_[k]; }

  /// Sum of p_k^2, the quantity every flexibility expression depends on.
  double sum_of_squares() const noexcept {
    double s = 0.0;
    for (double p : probs_) s += p * p;
    return s;
  }

  friend bool operator==(const PartyDistribution&, const PartyDistribution&) = default;

 private:
  explicit PartyDistribution(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;

  friend PartyDistribution validate_distribution(std::vector<double> probs);
};

inline PartyDistribution validate_distribution(std::vector<double> probs) {
  if (probs.empty())
    throw Error(ErrorCode::EmptyDistribution, "distribution has no outcomes");
  double sum = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double p = probs[k];
    // written so that NaN fails too
    if (!(p >= 0.0 && p <= 1.0))
      throw Error(ErrorCode::ProbabilityOutOfRange,
                  "probability p_" + std::to_string(k + 1) + " = " + std::to_string(p) +
                      " is outside [0, 1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance)
    throw Error(ErrorCode::NotNormalized,
                "probabilities sum to " + std::to_string(sum) + ", expected 1");
  return PartyDistribution(std::move(probs));
}

inline PartyDistribution uniform_distribution(std::size_t parties) {
  if (parties == 0) throw Error(ErrorCode::EmptyDistribution, "distribution has no outcomes");
  return validate_distribution(std::vector<double>(parties, 1.0 / static_cast<double>(parties)));
}

/// N electors voting independently over a PartyDistribution.
class ElectoralSystem {
 public:
  ElectoralSystem(count_t electors, PartyDistribution dist)
      : electors_(electors), dist_(std::move(dist)) {
    if (electors_ < 1)
      throw Error(ErrorCode::NonPositiveElectors, "an electoral system needs at least one elector");
  }

  count_t electors() const noexcept { return electors_; }
  std::size_t parties() const noexcept { return dist_.parties(); }
  const PartyDistribution& distribution() const noexcept { return dist_; }
  std::span<const double> probs() const noexcept { return dist_.probs(); }

  friend bool operator==(const ElectoralSystem&, const ElectoralSystem&) = default;

 private:
  count_t electors_;
  PartyDistribution dist_;
};

/// Validates raw user input. Signed on purpose: negative counts are an input
/// error to report, not something to wrap around.
inline ElectoralSystem validate_system(std::int64_t electors, std::vector<double> probs) {
  if (electors < 1)
    throw Error(ErrorCode::NonPositiveElectors,
                "elector count must be >= 1, got " + std::to_string(electors));
  return ElectoralSystem(static_cast<count_t>(electors), validate_distribution(std::move(probs)));
}

/// One vote configuration: counts[k] electors aligned with party k.
class Tally {
 public:
  Tally() = default;
  explicit Tally(std::vector<count_t> counts) : counts_(std::move(counts)) {}

  std::span<const count_t> counts() const noexcept { return counts_; }
  std::size_t parties() const noexcept { return counts_.size(); }
  count_t operator[](std::size_t k) const { return counts_[k]; }
  count_t total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), count_t{0});
  }

  friend bool operator==(const Tally&, const Tally&) = default;
  friend auto operator<=>(const Tally&, const Tally&) = default;

 private:
  std::vector<count_t> counts_;
};

/// A tally with its party labels forgotten: parts sorted non-increasing.
class PartitionShape {
 public:
  explicit PartitionShape(std::vector<count_t> parts) : parts_(std::move(parts)) {
    if (!std::is_sorted(parts_.begin(), parts_.end(), std::greater<>{}))
      throw Error(ErrorCode::InvalidArguments, "partition parts must be non-increasing");
  }

  static PartitionShape of(const Tally& tally) {
    std::vector<count_t> parts(tally.counts().begin(), tally.counts().end());
    std::sort(parts.begin(), parts.end(), std::greater<>{});
    return PartitionShape(std::move(parts));
  }

  std::span<const count_t> parts() const noexcept { return parts_; }
  std::size_t parties() const noexcept { return parts_.size(); }
  count_t total() const noexcept {
    return std::accumulate(parts_.begin(), parts_.end(), count_t{0});
  }

  friend bool operator==(const PartitionShape&, const PartitionShape&) = default;
  friend auto operator<=>(const PartitionShape&, const PartitionShape&) = default;

 private:
  std::vector<count_t> parts_;
};

/// Throws DimensionMismatch unless the tally has one count per party and
/// accounts for every elector of the system.
inline void check_membership(const Tally& tally, const ElectoralSystem& sys) {
  if (tally.parties() != sys.parties())
    throw Error(ErrorCode::DimensionMismatch,
                "tally has " + std::to_string(tally.parties()) + " parties, system has " +
                    std::to_string(sys.parties()));
  if (tally.total() != sys.electors())
    throw Error(ErrorCode::DimensionMismatch,
                "tally accounts for " + std::to_string(tally.total()) + " electors, system has " +
                    std::to_string(sys.electors()));
}

/// Expected counts N * p_k.
inline std::vector<double> equilibrium_coordinates(const ElectoralSystem& sys) {
  const auto n = static_cast<double>(sys.electors());
  std::vector<double> out;
  out.reserve(sys.parties());
  for (double p : sys.probs()) out.push_back(n * p);
  return out;
}

/// Deviation of a tally from equilibrium, x_k = N_k - p_k N.
inline std::vector<double> excess_coordinates(const Tally& tally, const ElectoralSystem& sys) {
  check_membership(tally, sys);
  const auto n = static_cast<double>(sys.electors());
  std::vector<double> out;
  out.reserve(sys.parties());
  for (std::size_t k = 0; k < sys.parties(); ++k)
    out.push_back(static_cast<double>(tally[k]) - sys.probs()[k] * n);
  return out;
}

}  // namespace electorate
