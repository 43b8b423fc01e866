#pragma once

#include <span>
#include <string>
#include <vector>

#include "nbue/errors.hpp"
#include "nbue/sample.hpp"

namespace nbue {

/// Spacings-form coefficients of the test statistic for fixed (n, j):
///
///   e_k = (1/j) * ((n-k+1)/n)^j - 1/(j(j+1)),   k = 1..n  (stored 0-based)
///
/// Strictly decreasing in k, with e_1 = 1/(j+1) exactly. For j = 1 this
/// reduces to the rational form (n+2-2k)/(2n), which is computed directly
/// so that equality holds in floating point, not just in the limit.
struct CoefficientSet {
  int n = 0;
  double j = 0.0;
  std::vector<double> e;

  static CoefficientSet make(int n, double j);
};

/// Which statistic to compute: the generalized scale-invariant statistic
/// with weight exponent j > 0, or the historical 1975 variant whose
/// order-statistic weights are (3n/2 - 2k + 1/2) and which differs from
/// the corrected j = 1 statistic by exactly 1/(2n).
struct Variant {
  enum class Kind { generalized, hp1975 };
  Kind kind = Kind::generalized;
  double j = 1.0;  // meaningful for generalized only

  static Variant generalized(double j);
  static Variant hp1975() { return Variant{Kind::hp1975, 1.0}; }
  bool is_generalized() const noexcept { return kind == Kind::generalized; }
  std::string name() const;
};

/// Evaluates the chosen statistic from a sorted sample. Precomputes the
/// per-k weights once so the Monte Carlo loop is a single pass.
class StatisticEvaluator {
 public:
  StatisticEvaluator(int n, const Variant& v);

  /// `sorted` must be nondecreasing with length n.
  double operator()(std::span<const double> sorted) const;

  int n() const noexcept { return n_; }
  const Variant& variant() const noexcept { return variant_; }

 private:
  int n_;
  Variant variant_;
  std::vector<double> weights_;  // spacings coefficients or hp order weights
};

/// The statistic on a validated sample (production path: spacings form).
double gamma_star(const Sample& s, const Variant& v);

/// The order-statistic form
///   gamma_j(F_n)/mean = sum_k X_(k) [ (1/j){((n-k+1)/n)^{j+1} - ((n-k)/n)^{j+1}}
///                                     - 1/(j(j+1)n) ] / mean.
/// Algebraically identical to the spacings form; kept as an independent
/// cross-check route and exercised against it in the tests.
double gamma_star_order_form(const Sample& s, double j);

// -- scaling ---------------------------------------------------------------

enum class ScaleName {
  none,
  paper_j_quarter,  // 1.25 * sqrt(1.5 n), published for j = 0.25
  paper_j_one,      // sqrt(12 n), published for j = 1 (and the 1975 variant)
  user,             // c * sqrt(n) with a caller-supplied c > 0
};

struct ScaledValue {
  double raw = 0.0;
  double scaled = 0.0;
  double scale_factor = 1.0;
  ScaleName name = ScaleName::none;
  double user_c = 0.0;  // set when name == user
};

double scale_factor(int n, ScaleName name, double user_c = 0.0);
ScaledValue scale_value(double value, int n, ScaleName name, double user_c = 0.0);

/// Parses "none" | "paper-j-quarter" | "paper-j-one" | "user".
/// Throws Errc::unknown_scale otherwise.
ScaleName parse_scale_name(const std::string& text);
std::string to_string(ScaleName name);

/// The published scale for a variant: 1.25*sqrt(1.5n) for generalized
/// j = 0.25, sqrt(12n) for generalized j = 1 and for the 1975 variant.
/// Throws Errc::unknown_scale for other j (no published constant exists;
/// callers must use ScaleName::user or work unscaled).
ScaleName paper_scale_for(const Variant& v);

}  // namespace nbue
