#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "nbue/exact_dist.hpp"
#include "nbue/montecarlo.hpp"
#include "nbue/statistic.hpp"

using namespace nbue;

namespace {

/// Plain double-precision evaluation of the survival formula. Fine for
/// small n where the cancellation stays ~2^n << 2^52; used to score a
/// million-point empirical CDF without paying the big-float cost per point.
class FastCdf {
 public:
  FastCdf(int n, double j) : n_(n) {
    const auto cs = CoefficientSet::make(n, j);
    e_ = cs.e;
    denom_.resize(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) {
      double d = 1.0;
      for (std::size_t k = 0; k < e_.size(); ++k)
        if (k != i) d *= e_[i] - e_[k];
      denom_[i] = d;
    }
  }
  double operator()(double x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (x < e_[i]) s += std::pow(e_[i] - x, n_ - 1) / denom_[i];
    }
    return 1.0 - s;
  }

 private:
  int n_;
  std::vector<double> e_;
  std::vector<double> denom_;
};

}  // namespace

TEST_CASE("empirical CDF of a million null draws tracks the exact CDF") {
  for (double j : {0.25, 1.0}) {
    for (int n = 2; n <= 15; ++n) {
      const FastCdf fast(n, j);
      const ExactNullCdf dist = ExactNullCdf::for_parameters(n, j);
      // the double-precision scorer must agree with the ladder before we
      // trust it to score the draws; it loses ~7 digits to cancellation at
      // n=15 which is still four orders below the 0.002 band checked below
      const auto [lo, hi] = dist.support();
      for (int g = 1; g < 50; ++g) {
        const double x = lo + (hi - lo) * g / 50.0;
        CHECK(std::abs(fast(x) - dist.cdf(x).p) <= 1e-7);
      }

      SimConfig cfg;
      cfg.n = n;
      cfg.variant = Variant::generalized(j);
      cfg.replications = 1'000'000;
      cfg.seed = 0xC0FFEE + static_cast<std::uint64_t>(n);
      auto draws = sample_null_statistics(cfg);
      std::sort(draws.begin(), draws.end());
      double sup = 0.0;
      const auto N = static_cast<double>(draws.size());
      for (std::size_t i = 0; i < draws.size(); ++i) {
        const double f = fast(draws[i]);
        sup = std::max(sup, std::abs(f - static_cast<double>(i + 1) / N));
        sup = std::max(sup, std::abs(f - static_cast<double>(i) / N));
      }
      INFO("n=", n, " j=", j, " sup=", sup);
      CHECK(sup <= 0.002);
    }
  }
}

TEST_CASE("simulated and exact critical values agree through n = 25") {
  const std::vector<double> alphas = {0.01, 0.05, 0.10, 0.90, 0.95, 0.99};
  for (double j : {0.25, 1.0}) {
    const ScaleName scale = j == 0.25 ? ScaleName::paper_j_quarter : ScaleName::paper_j_one;
    for (int n : {2, 5, 10, 17, 25}) {
      SimConfig cfg;
      cfg.n = n;
      cfg.variant = Variant::generalized(j);
      cfg.replications = 1'000'000;
      cfg.seed = 0xABCD + static_cast<std::uint64_t>(n);
      const auto sim = simulated_critical_values(cfg, alphas, scale);
      const ExactNullCdf dist = ExactNullCdf::for_parameters(n, j);
      const double factor = scale_factor(n, scale);
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        const double exact = factor * dist.quantile(alphas[a]);
        INFO("n=", n, " j=", j, " alpha=", alphas[a], " sim=", sim[a], " exact=", exact);
        CHECK(std::abs(sim[a] - exact) <= 0.01);
      }
    }
  }
}

TEST_CASE("published large-n critical values (simulation regime)") {
  SUBCASE("j = 1, n = 100, alpha = 0.05") {
    SimConfig cfg;
    cfg.n = 100;
    cfg.variant = Variant::generalized(1.0);
    cfg.replications = 1'000'000;
    cfg.seed = 2026;
    const std::vector<double> alphas = {0.05};
    const auto sim = simulated_critical_values(cfg, alphas, ScaleName::paper_j_one);
    CHECK(std::abs(sim[0] - (-1.4615)) <= 0.01);
  }
  SUBCASE("j = 0.25, n = 100, alpha = 0.99") {
    SimConfig cfg;
    cfg.n = 100;
    cfg.variant = Variant::generalized(0.25);
    cfg.replications = 1'000'000;
    cfg.seed = 2026;
    const std::vector<double> alphas = {0.99};
    const auto sim = simulated_critical_values(cfg, alphas, ScaleName::paper_j_quarter);
    CHECK(std::abs(sim[0] - 2.3588) <= 0.01);
  }
}

TEST_CASE("worker count never changes results at scale") {
  SimConfig cfg;
  cfg.n = 50;
  cfg.variant = Variant::generalized(0.25);
  cfg.replications = 100'000;
  cfg.seed = 1;
  const auto one = sample_null_statistics(cfg, 1);
  const auto four = sample_null_statistics(cfg, 4);
  CHECK(one == four);
}
