#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "nbue/errors.hpp"

namespace nbue {

/// A validated vector of observed lifetimes in input order.
///
/// Invariants: n >= 2, every value >= 0, at least one value > 0 (so the
/// sample mean is strictly positive). Immutable after construction.
class Sample {
 public:
  static Sample from_values(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  int n() const noexcept { return static_cast<int>(values_.size()); }
  double mean() const noexcept { return mean_; }

 private:
  Sample(std::vector<double> values, double mean)
      : values_(std::move(values)), mean_(mean) {}

  std::vector<double> values_;
  double mean_;
};

/// Order statistics X_(1) <= ... <= X_(n) plus the (unchanged) sample mean.
struct OrderedSample {
  std::vector<double> sorted;
  double mean = 0.0;
};

/// Normalized spacings D_k = (n-k+1)(X_(k) - X_(k-1)), with X_(0) = 0.
/// Under exponentiality the D_k are iid exponential, which is what makes
/// the exact null distribution tractable.
struct Spacings {
  std::vector<double> d;
};

OrderedSample order_sample(const Sample& s);
Spacings normalized_spacings(const OrderedSample& os);
std::pair<OrderedSample, Spacings> order_and_space(const Sample& s);

/// Fills `out` (size n) with the normalized spacings of an already-sorted
/// sample. Hot path for the Monte Carlo driver.
void spacings_from_sorted(std::span<const double> sorted, std::span<double> out);

/// Barlow's total-time-on-test statistic
///   V = sum_{i=1}^{n-1} tau(X_(i)) / tau(X_(n)),  tau(X_(i)) = sum_{j<=i} D_j.
double ttt_statistic(const Sample& s);

}  // namespace nbue
