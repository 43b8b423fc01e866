#include "nbue/exact_dist.hpp"

#include <mpfr.h>

#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace nbue {
namespace {

constexpr mpfr_rnd_t RND = MPFR_RNDN;

/// RAII holder for one mpfr value.
class Big {
 public:
  explicit Big(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  Big(Big&& o) noexcept {
    mpfr_init2(v, mpfr_get_prec(o.v));
    mpfr_swap(v, o.v);
  }
  Big(const Big&) = delete;
  Big& operator=(const Big&) = delete;
  Big& operator=(Big&&) = delete;
  ~Big() { mpfr_clear(v); }
  mpfr_t v;
};

/// Coefficients and interpolation denominators at one precision level.
struct Level {
  std::vector<Big> e;      // e_i, i = 0..n-1, strictly decreasing
  std::vector<Big> denom;  // prod_{k != i} (e_i - e_k)
};

Level build_level(int n, double j, mpfr_prec_t bits) {
  Level level;
  level.e.reserve(static_cast<std::size_t>(n));
  if (j == 1.0) {
    for (int i = 1; i <= n; ++i) {
      Big e(bits);
      mpfr_set_si(e.v, n + 2 - 2 * i, RND);
      mpfr_div_si(e.v, e.v, 2L * n, RND);
      level.e.push_back(std::move(e));
    }
  } else {
    Big jm(bits);
    mpfr_set_d(jm.v, j, RND);  // exact: j is a double
    Big c(bits);               // 1/(j(j+1))
    mpfr_add_ui(c.v, jm.v, 1, RND);
    mpfr_mul(c.v, c.v, jm.v, RND);
    mpfr_ui_div(c.v, 1, c.v, RND);
    for (int i = 1; i <= n; ++i) {
      Big e(bits);
      mpfr_set_si(e.v, n - i + 1, RND);
      mpfr_div_si(e.v, e.v, n, RND);
      mpfr_pow(e.v, e.v, jm.v, RND);
      mpfr_div(e.v, e.v, jm.v, RND);
      mpfr_sub(e.v, e.v, c.v, RND);
      level.e.push_back(std::move(e));
    }
  }
  Big diff(bits);
  for (int i = 0; i < n; ++i) {
    Big d(bits);
    mpfr_set_ui(d.v, 1, RND);
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      mpfr_sub(diff.v, level.e[static_cast<std::size_t>(i)].v,
               level.e[static_cast<std::size_t>(k)].v, RND);
      mpfr_mul(d.v, d.v, diff.v, RND);
    }
    level.denom.push_back(std::move(d));
  }
  return level;
}

/// F(x) = 1 - sum_{i: x < e_i} (e_i - x)^(n-1) / denom_i at one level.
Big eval_level(const Level& level, double x, int n, mpfr_prec_t bits) {
  Big xv(bits);
  mpfr_set_d(xv.v, x, RND);
  Big sum(bits);
  mpfr_set_zero(sum.v, 1);
  Big term(bits);
  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (mpfr_cmp(xv.v, level.e[ui].v) >= 0) continue;  // strict indicator
    mpfr_sub(term.v, level.e[ui].v, xv.v, RND);
    mpfr_pow_ui(term.v, term.v, static_cast<unsigned long>(n - 1), RND);
    mpfr_div(term.v, term.v, level.denom[ui].v, RND);
    mpfr_add(sum.v, sum.v, term.v, RND);
  }
  mpfr_ui_sub(sum.v, 1, sum.v, RND);
  return sum;
}

}  // namespace

struct ExactNullCdf::Impl {
  CoefficientSet coeffs;
  PrecisionPolicy policy;
  mutable std::mutex mu;
  mutable std::map<mpfr_prec_t, Level> levels;

  const Level& level(mpfr_prec_t bits) const {
    std::lock_guard lock(mu);
    auto it = levels.find(bits);
    if (it == levels.end())
      it = levels.emplace(bits, build_level(coeffs.n, coeffs.j, bits)).first;
    return it->second;
  }

  CdfValue cdf(double x) const {
    const double lo = coeffs.e.back();
    const double hi = coeffs.e.front();
    if (x <= lo) return CdfValue{0.0, 0, 0.0};
    if (x >= hi) return CdfValue{1.0, 0, 0.0};

    const int n = coeffs.n;
    std::optional<Big> prev;
    for (long bits = policy.initial_bits; bits <= policy.max_bits; bits *= 2) {
      Big f = eval_level(level(bits), x, n, bits);
      if (prev) {
        Big diff(bits);
        mpfr_sub(diff.v, f.v, prev->v, RND);
        mpfr_abs(diff.v, diff.v, RND);
        if (mpfr_cmp_d(diff.v, policy.agreement_tol) <= 0) {
          CdfValue out;
          out.p = mpfr_get_d(f.v, RND);
          out.achieved_bits = static_cast<int>(bits);
          out.estimated_abs_error = mpfr_get_d(diff.v, RND);
          if (out.p < 0.0 && out.p >= -out.estimated_abs_error) out.p = 0.0;
          if (out.p > 1.0 && out.p <= 1.0 + out.estimated_abs_error) out.p = 1.0;
          return out;
        }
      }
      prev.emplace(std::move(f));
    }
    fail(Errc::precision_exhausted,
         "exact CDF did not stabilize within " + std::to_string(policy.max_bits) +
             " bits (n=" + std::to_string(n) + ", j=" + std::to_string(coeffs.j) +
             ", x=" + std::to_string(x) + ")");
  }
};

ExactNullCdf::ExactNullCdf(CoefficientSet coeffs, PrecisionPolicy policy)
    : impl_(std::make_unique<Impl>()) {
  if (policy.initial_bits < 2 || policy.max_bits < policy.initial_bits) {
    fail(Errc::bad_parameter, "invalid precision policy");
  }
  impl_->coeffs = std::move(coeffs);
  impl_->policy = policy;
}

ExactNullCdf ExactNullCdf::for_parameters(int n, double j, PrecisionPolicy policy) {
  return ExactNullCdf(CoefficientSet::make(n, j), policy);
}

ExactNullCdf::~ExactNullCdf() = default;
ExactNullCdf::ExactNullCdf(ExactNullCdf&&) noexcept = default;
ExactNullCdf& ExactNullCdf::operator=(ExactNullCdf&&) noexcept = default;

CdfValue ExactNullCdf::cdf(double x) const { return impl_->cdf(x); }

double ExactNullCdf::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    fail(Errc::bad_parameter, "p must lie in (0,1), got " + std::to_string(p));
  }
  double lo = impl_->coeffs.e.back();
  double hi = impl_->coeffs.e.front();
  double q = 0.5 * (lo + hi);
  for (int it = 0; it < 240; ++it) {
    const double f = impl_->cdf(q).p;
    if (hi - lo <= 1e-12 && std::abs(f - p) <= 1e-10) break;
    if (f < p) {
      lo = q;
    } else {
      hi = q;
    }
    const double next = 0.5 * (lo + hi);
    if (next == q) break;  // bracket collapsed to fp resolution
    q = next;
  }
  return q;
}

std::pair<double, double> ExactNullCdf::support() const {
  return {impl_->coeffs.e.back(), impl_->coeffs.e.front()};
}

const CoefficientSet& ExactNullCdf::coefficients() const { return impl_->coeffs; }
const PrecisionPolicy& ExactNullCdf::policy() const { return impl_->policy; }

}  // namespace nbue
