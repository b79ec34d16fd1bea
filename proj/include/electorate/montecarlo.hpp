#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "electorate/ensemble.hpp"
#include "electorate/error.hpp"
#include "electorate/model.hpp"

namespace electorate {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const McEstimate&, const McEstimate&) = default;
};

/// Engine for every sampler in this header. mt19937_64 output is fixed by
/// the standard, and doubles are derived from it by hand (top 53 bits), so
/// a seed reproduces the same stream on any conforming toolchain.
using Engine = std::mt19937_64;

inline double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// splitmix64 finalizer; decorrelates sub-stream seeds derived from one
/// master seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Draws electors one at a time by inverse CDF over the cumulative
/// probabilities.
class TallySampler {
 public:
  explicit TallySampler(const ElectoralSystem& sys) : sys_(&sys) {
    double running = 0.0;
    cdf_.reserve(sys.parties());
    for (std::size_t k = 0; k < sys.parties(); ++k) {
      running += sys.probs()[k];
      cdf_.push_back(running);
      if (sys.probs()[k] > 0.0) last_live_ = k;
    }
  }

  Tally operator()(Engine& engine) const {
    std::vector<count_t> counts(cdf_.size(), 0);
    for (count_t i = 0; i < sys_->electors(); ++i) ++counts[draw(engine)];
    return Tally(std::move(counts));
  }

  std::size_t draw(Engine& engine) const {
    const double u = uniform01(engine);
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    // u can land past a cumulative total that rounded below 1
    if (it == cdf_.end()) return last_live_;
    return static_cast<std::size_t>(it - cdf_.begin());
  }

 private:
  const ElectoralSystem* sys_;
  std::vector<double> cdf_;
  std::size_t last_live_ = 0;
};

inline Tally sample_tally(const ElectoralSystem& sys, Engine& engine) {
  return TallySampler(sys)(engine);
}

inline constexpr std::uint64_t kMinimumTrials = 100;

namespace detail {

// Welford partial state; merged with Chan's pairwise update.
struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0.0) return;
    const double total = count + o.count;
    const double delta = o.mean - mean;
    mean += delta * (o.count / total);
    m2 += o.m2 + delta * delta * (count * o.count / total);
    count = total;
  }
};

}  // namespace detail

/// Monte Carlo estimate of <{x.x}>. Trials are cut into a fixed number of
/// chunks, each with its own sub-stream seeded from (seed, chunk index), and
/// merged in chunk order; the result therefore does not depend on how many
/// threads ran the chunks.
inline McEstimate estimate_variance(const ElectoralSystem& sys, std::uint64_t trials,
                                    std::uint64_t seed, unsigned threads = 0) {
  if (trials < kMinimumTrials)
    throw Error(ErrorCode::TooFewTrials, "need at least " + std::to_string(kMinimumTrials) +
                                             " trials, got " + std::to_string(trials));
  constexpr std::uint64_t kChunks = 64;
  const TallySampler sampler(sys);
  std::vector<detail::Moments> partial(kChunks);

  auto run_chunk = [&](std::uint64_t chunk) {
    const std::uint64_t begin = trials * chunk / kChunks;
    const std::uint64_t end = trials * (chunk + 1) / kChunks;
    Engine engine(mix_seed(seed, chunk));
    detail::Moments& acc = partial[chunk];
    for (std::uint64_t t = begin; t < end; ++t)
      acc.add(directional_self_product(sampler(engine), sys));
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, kChunks));
  if (threads == 1) {
    for (std::uint64_t c = 0; c < kChunks; ++c) run_chunk(c);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::uint64_t c = w; c < kChunks; c += threads) run_chunk(c);
      });
  }

  detail::Moments total;
  for (const auto& part : partial) total.merge(part);
  McEstimate est;
  est.trials = trials;
  est.seed = seed;
  est.mean = total.mean;
  const double sample_var = total.count > 1.0 ? total.m2 / (total.count - 1.0) : 0.0;
  est.std_error = std::sqrt(std::max(0.0, sample_var) / total.count);
  return est;
}

}  // namespace electorate
