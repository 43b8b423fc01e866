#pragma once

#include <memory>
#include <utility>

#include "nbue/errors.hpp"
#include "nbue/statistic.hpp"

namespace nbue {

/// Controls the adaptive-precision evaluation of the exact CDF. The
/// alternating sum of huge products cancels almost completely for larger n,
/// so the evaluation runs in arbitrary-precision floating point: start at
/// initial_bits, double until two successive precision levels agree within
/// agreement_tol, give up at max_bits.
struct PrecisionPolicy {
  int initial_bits = 256;
  int max_bits = 16384;
  double agreement_tol = 1e-12;
};

struct CdfValue {
  double p = 0.0;
  int achieved_bits = 0;          // 0 when answered from the support bounds
  double estimated_abs_error = 0.0;
};

/// Exact null CDF of the generalized statistic for fixed (n, j):
///
///   P(stat <= x) = 1 - sum_{i: x < e_i} (e_i - x)^(n-1) / prod_{k != i}(e_i - e_k)
///
/// valid because the normalized spacings are iid exponential under the null
/// and the coefficients e_i are pairwise distinct. Support is [e_n, e_1];
/// the CDF is continuous and strictly increasing inside it. The indicator
/// is strict: at x equal to some e_i the i-th term drops out.
///
/// Immutable and shareable; cdf/quantile are const and safe to call
/// concurrently (per-precision coefficient tables are cached internally).
class ExactNullCdf {
 public:
  ExactNullCdf(CoefficientSet coeffs, PrecisionPolicy policy = {});
  static ExactNullCdf for_parameters(int n, double j, PrecisionPolicy policy = {});
  ~ExactNullCdf();
  ExactNullCdf(ExactNullCdf&&) noexcept;
  ExactNullCdf& operator=(ExactNullCdf&&) noexcept;
  ExactNullCdf(const ExactNullCdf&) = delete;
  ExactNullCdf& operator=(const ExactNullCdf&) = delete;

  /// Throws Errc::precision_exhausted if the ladder tops out before two
  /// successive levels agree. The result is clamped into [0,1] only when it
  /// lies within estimated_abs_error of a bound.
  CdfValue cdf(double x) const;

  /// Bisection on the support: returns x with |cdf(x) - p| <= 1e-10 and
  /// bracket width <= 1e-12. Requires 0 < p < 1.
  double quantile(double p) const;

  /// (e_n, e_1)
  std::pair<double, double> support() const;

  const CoefficientSet& coefficients() const;
  const PrecisionPolicy& policy() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace nbue
