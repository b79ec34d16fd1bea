#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "electorate/error.hpp"
#include "electorate/model.hpp"

namespace electorate {

using BigInt = boost::multiprecision::cpp_int;

/// Default ceiling on the number of compositions any exhaustive routine
/// will walk.
inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

inline BigInt factorial(count_t n) {
  BigInt out = 1;
  for (count_t i = 2; i <= n; ++i) out *= i;
  return out;
}

inline BigInt binomial(count_t n, count_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt out = 1;
  // stays integral at every step: out == C(n - k + i, i) after step i
  for (count_t i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

/// N! / prod N_k!
inline BigInt multinomial_coefficient(std::span<const count_t> counts) {
  count_t n = 0;
  BigInt out = 1;
  for (count_t c : counts) {
    n += c;
    out *= binomial(n, c);
  }
  return out;
}

inline void check_shape_args(std::int64_t n, std::int64_t m) {
  if (n < 0 || m < 1)
    throw Error(ErrorCode::InvalidArguments,
                "need n >= 0 and m >= 1, got n=" + std::to_string(n) + " m=" + std::to_string(m));
}

/// Number of weak compositions of n into m parts, C(n + m - 1, m - 1).
inline BigInt composition_count(std::int64_t n, std::int64_t m) {
  check_shape_args(n, m);
  return binomial(static_cast<count_t>(n + m - 1), static_cast<count_t>(m - 1));
}

/// Partitions of n into at most m parts, via p(n, m) = p(n, m-1) + p(n-m, m).
inline BigInt partition_count(std::int64_t n, std::int64_t m) {
  check_shape_args(n, m);
  const auto nn = static_cast<std::size_t>(n);
  const auto mm = static_cast<std::size_t>(std::min(m, std::max<std::int64_t>(n, 1)));
  // row[j] holds p(j, parts) for the current number of parts
  std::vector<BigInt> row(nn + 1, BigInt(0));
  row[0] = 1;
  for (std::size_t parts = 1; parts <= mm; ++parts)
    for (std::size_t j = parts; j <= nn; ++j) row[j] += row[j - parts];
  return row[nn];
}

/// M! / prod_v m(v)!, where m(v) counts the parts equal to v (zeros included).
inline BigInt permutation_count(const PartitionShape& shape) {
  std::map<count_t, count_t> runs;
  for (count_t v : shape.parts()) ++runs[v];
  BigInt out = factorial(shape.parties());
  for (const auto& [value, times] : runs) out /= factorial(times);
  return out;
}

struct PartitionSet {
  count_t n = 0;
  std::size_t m = 0;
  std::vector<PartitionShape> shapes;
};

/// Every non-increasing sequence of m non-negative integers summing to n,
/// largest first part first (lexicographically decreasing).
inline PartitionSet enumerate_partitions(std::int64_t n, std::int64_t m) {
  check_shape_args(n, m);
  PartitionSet set{static_cast<count_t>(n), static_cast<std::size_t>(m), {}};
  std::vector<count_t> parts(set.m, 0);
  parts[0] = set.n;
  while (true) {
    set.shapes.emplace_back(parts);
    // Successor: decrement the rightmost part whose freed unit (plus the
    // tail behind it) still fits behind it under the lowered bound, then
    // refill the tail greedily.
    count_t tail = 0;
    std::size_t i = set.m;
    bool advanced = false;
    while (i-- > 0) {
      const count_t room = static_cast<count_t>(set.m - i - 1);
      if (parts[i] >= 1 && room * (parts[i] - 1) >= tail + 1) {
        --parts[i];
        count_t rest = tail + 1;
        for (std::size_t j = i + 1; j < set.m; ++j) {
          parts[j] = std::min(parts[i], rest);
          rest -= parts[j];
        }
        advanced = true;
        break;
      }
      tail += parts[i];
    }
    if (!advanced) break;
  }
  return set;
}


/// Lazily walks every weak composition of n into m parts in colexicographic
/// order: (n,0,...,0) first, (0,...,0,n) last. Iterators expose the current
/// counts by reference, so nothing is materialized.
class CompositionRange {
 public:
  CompositionRange(count_t n, std::size_t m) : n_(n), m_(m) {
    if (m_ < 1) throw Error(ErrorCode::InvalidArguments, "compositions need m >= 1");
  }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = std::vector<count_t>;
    using difference_type = std::ptrdiff_t;
    using pointer = const value_type*;
    using reference = const value_type&;

    iterator() = default;

    reference operator*() const { return counts_; }
    pointer operator->() const { return &counts_; }

    iterator& operator++() {
      std::size_t first = 0;
      while (first < counts_.size() && counts_[first] == 0) ++first;
      if (first + 1 >= counts_.size()) {
        done_ = true;
        return *this;
      }
      const count_t head = counts_[first];
      counts_[first] = 0;
      ++counts_[first + 1];
      counts_[0] = head - 1;
      return *this;
    }

    void operator++(int) { ++*this; }

    friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.done_; }

   private:
    friend class CompositionRange;
    iterator(count_t n, std::size_t m) : counts_(m, 0), done_(false) { counts_[0] = n; }

    std::vector<count_t> counts_;
    bool done_ = true;
  };

  iterator begin() const {
    iterator it(n_, m_);
    return it;
  }
  std::default_sentinel_t end() const { return {}; }

  count_t electors() const noexcept { return n_; }
  std::size_t parties() const noexcept { return m_; }
  BigInt size() const { return binomial(n_ + m_ - 1, m_ - 1); }

 private:
  count_t n_;
  std::size_t m_;
};

/// Throws EnumerationTooLarge when the composition space of (n, m) exceeds cap.
inline void check_enumeration_cap(count_t n, std::size_t m, std::uint64_t cap) {
  const BigInt size = binomial(n + m - 1, m - 1);
  if (size > cap)
    throw Error(ErrorCode::EnumerationTooLarge,
                "composition space of N=" + std::to_string(n) + ", M=" + std::to_string(m) +
                    " has " + size.str() + " tallies, cap is " + std::to_string(cap));
}

inline std::vector<Tally> enumerate_compositions(std::int64_t n, std::int64_t m,
                                                 std::uint64_t cap = kDefaultEnumerationCap) {
  check_shape_args(n, m);
  const CompositionRange range(static_cast<count_t>(n), static_cast<std::size_t>(m));
  check_enumeration_cap(range.electors(), range.parties(), cap);
  std::vector<Tally> out;
  out.reserve(range.size().convert_to<std::size_t>());
  for (const auto& counts : range) out.emplace_back(counts);
  return out;
}

/// Distinct reorderings of a shape, lexicographically decreasing. Together
/// with enumerate_partitions this yields the same tallies as
/// CompositionRange, grouped by shape.
inline std::vector<Tally> shape_permutations(const PartitionShape& shape) {
  std::vector<count_t> counts(shape.parts().begin(), shape.parts().end());
  std::vector<Tally> out;
  do {
    out.emplace_back(counts);
  } while (std::prev_permutation(counts.begin(), counts.end()));
  return out;
}

}  // namespace electorate
