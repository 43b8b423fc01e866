#include "nbue/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace nbue {

Sample Sample::from_values(std::vector<double> values) {
  const auto n = values.size();
  if (n < 2) {
    fail(Errc::empty_or_singleton,
         "sample must contain at least n >= 2 observations (got " + std::to_string(n) + ")");
  }
  bool any_positive = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = values[i];
    if (!(v >= 0.0)) {  // catches negatives and NaN
      fail(Errc::negative_value,
           "lifetimes must be nonnegative, value #" + std::to_string(i + 1) + " is " +
               std::to_string(v));
    }
    if (v > 0.0) any_positive = true;
  }
  if (!any_positive) {
    fail(Errc::all_zero, "all observations are zero; the sample mean must be positive");
  }
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  return Sample(std::move(values), mean);
}

OrderedSample order_sample(const Sample& s) {
  OrderedSample os;
  os.sorted = s.values();
  std::stable_sort(os.sorted.begin(), os.sorted.end());
  os.mean = s.mean();
  return os;
}

void spacings_from_sorted(std::span<const double> sorted, std::span<double> out) {
  const auto n = sorted.size();
  double prev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = static_cast<double>(n - k) * (sorted[k] - prev);
    prev = sorted[k];
  }
}

Spacings normalized_spacings(const OrderedSample& os) {
  Spacings sp;
  sp.d.resize(os.sorted.size());
  spacings_from_sorted(os.sorted, sp.d);
  return sp;
}

std::pair<OrderedSample, Spacings> order_and_space(const Sample& s) {
  OrderedSample os = order_sample(s);
  Spacings sp = normalized_spacings(os);
  return {std::move(os), std::move(sp)};
}

double ttt_statistic(const Sample& s) {
  const auto [os, sp] = order_and_space(s);
  const auto n = sp.d.size();
  // tau_i are the partial sums of the spacings; tau_n = n * mean.
  double tau = 0.0, acc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    tau += sp.d[i];
    acc += tau;
  }
  const double tau_n = tau + sp.d[n - 1];
  return acc / tau_n;
}

}  // namespace nbue
