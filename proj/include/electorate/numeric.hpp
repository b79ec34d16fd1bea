#pragma once

#include <cmath>

namespace electorate {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
    return *this;
  }

  CompensatedSum& operator+=(const CompensatedSum& other) noexcept {
    *this += other.sum_;
    *this += other.carry_;
    return *this;
  }

  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace electorate
