#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "nbue/exact_dist.hpp"

using namespace nbue;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an nbue::Error");
  return Errc::bad_parameter;
}

}  // namespace

TEST_CASE("support") {
  const auto d21 = ExactNullCdf::for_parameters(2, 1.0);
  CHECK(d21.support() == std::pair{0.0, 0.5});
  const auto d41 = ExactNullCdf::for_parameters(4, 1.0);
  CHECK(d41.support() == std::pair{-0.25, 0.5});
  for (double j : {0.25, 0.5, 1.0, 2.0}) {
    const auto d = ExactNullCdf::for_parameters(17, j);
    CHECK(d.support().second == 1.0 / (j + 1.0));
  }
}

TEST_CASE("n=2, j=1 is uniform on (0, 1/2)") {
  const auto dist = ExactNullCdf::for_parameters(2, 1.0);
  for (double x = 0.0; x <= 0.5; x += 0.01) {
    const CdfValue v = dist.cdf(x);
    CHECK(std::abs(v.p - 2.0 * x) <= 1e-12);
    CHECK(v.estimated_abs_error <= 1e-12);
  }
  CHECK(dist.cdf(0.25).p == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(dist.cdf(0.5).p == 1.0);    // at and above the upper endpoint
  CHECK(dist.cdf(0.7).p == 1.0);
  CHECK(dist.cdf(0.0).p == 0.0);    // at and below the lower endpoint
  CHECK(dist.cdf(-0.3).p == 0.0);
  CHECK(dist.quantile(0.05) == doctest::Approx(0.025).epsilon(1e-9));
  CHECK(dist.quantile(1e-10) <= 1e-9);  // p -> 0+ pushes to the lower endpoint
}

TEST_CASE("n=2, j=0.25 quantile is affine in p") {
  // q(p) = e_2 + (e_1 - e_2) p with e_2 = 4*2^(-1/4) - 16/5 (independent
  // high-precision evaluation)
  const double e2 = 0.16358566101485817;
  const double slope = 0.8 - e2;
  const auto dist = ExactNullCdf::for_parameters(2, 0.25);
  for (double p : {0.01, 0.05, 0.1, 0.3, 0.5, 0.9, 0.95, 0.99}) {
    CHECK(std::abs(dist.quantile(p) - (e2 + slope * p)) <= 1e-9);
  }
  // published table cell: 1.25*sqrt(1.5*2) * q(0.99) = 1.7184
  const double scaled = 1.25 * std::sqrt(3.0) * dist.quantile(0.99);
  CHECK(std::abs(scaled - 1.7184) <= 2e-3);
}

TEST_CASE("published cell: n=10, j=1, alpha=0.95") {
  const auto dist = ExactNullCdf::for_parameters(10, 1.0);
  const double scaled = std::sqrt(120.0) * dist.quantile(0.95);
  CHECK(std::abs(scaled - 2.1117) <= 2e-3);
}

TEST_CASE("oracle agreement at spot points") {
  // reference values from an independent high-precision evaluation of the
  // survival formula
  struct Ref {
    int n;
    double j, x, f;
  };
  const std::vector<Ref> refs = {
      {10, 1.0, 0.05, 0.50000000000000000},
      {10, 1.0, -0.1, 0.041641865079365073},
      {10, 0.25, 0.3, 0.85772511041328469},
      {25, 0.25, -0.1, 0.093450020739651169},
      {15, 1.0, 0.0, 0.32338042165040535},
      {60, 0.25, 0.1, 0.82400590554811758},
  };
  for (const Ref& r : refs) {
    const auto dist = ExactNullCdf::for_parameters(r.n, r.j);
    CHECK(std::abs(dist.cdf(r.x).p - r.f) <= 1e-12);
  }
}

TEST_CASE("j=1 law is symmetric about 1/(2n)") {
  // e_k + e_{n+1-k} = 1/n and the spacings are exchangeable, so the median
  // of the statistic is exactly 1/(2n)
  for (int n : {2, 5, 10, 25, 40, 60}) {
    const auto dist = ExactNullCdf::for_parameters(n, 1.0);
    CHECK(std::abs(dist.cdf(0.5 / n).p - 0.5) <= 1e-12);
  }
}

TEST_CASE("monotone and bounded on a grid") {
  for (double j : {0.25, 1.0}) {
    const auto dist = ExactNullCdf::for_parameters(12, j);
    const auto [lo, hi] = dist.support();
    double prev = -0.1;
    for (int i = 0; i <= 400; ++i) {
      const double x = lo - 0.05 + (hi - lo + 0.1) * i / 400.0;
      const double p = dist.cdf(x).p;
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      CHECK(p >= prev);
      prev = p;
    }
  }
}

TEST_CASE("continuity where the indicator switches") {
  // the i-th term drops exactly at x = e_i but its factor vanishes there,
  // so the CDF stays continuous
  const auto dist = ExactNullCdf::for_parameters(4, 1.0);
  for (double e : {0.25, 0.0, -0.25}) {
    const double below = dist.cdf(std::nextafter(e, -1.0)).p;
    const double at = dist.cdf(e).p;
    const double above = dist.cdf(std::nextafter(e, 1.0)).p;
    CHECK(std::abs(at - below) <= 1e-12);
    CHECK(std::abs(above - at) <= 1e-12);
  }
}

TEST_CASE("round trip cdf(quantile(p)) = p") {
  const std::vector<double> ps = {0.01, 0.05, 0.1, 0.5, 0.9, 0.95, 0.99};
  for (double j : {0.25, 1.0}) {
    for (int n = 2; n <= 25; ++n) {
      const auto dist = ExactNullCdf::for_parameters(n, j);
      for (double p : ps) {
        const double q = dist.quantile(p);
        CHECK(std::abs(dist.cdf(q).p - p) <= 1e-9);
      }
    }
  }
}

TEST_CASE("precision ladder") {
  SUBCASE("reports achieved bits") {
    const auto dist = ExactNullCdf::for_parameters(10, 0.25);
    const CdfValue v = dist.cdf(0.2);
    CHECK(v.achieved_bits == 512);  // first comparable pair: 256 then 512
    CHECK(v.estimated_abs_error <= 1e-12);
  }
  SUBCASE("exhaustion is reported, not silently wrong") {
    // 64->128 bits cannot absorb the ~2^60 cancellation at n=60
    PrecisionPolicy tight;
    tight.initial_bits = 64;
    tight.max_bits = 128;
    const auto dist = ExactNullCdf::for_parameters(60, 0.25, tight);
    CHECK(code_of([&] { dist.cdf(0.1); }) == Errc::precision_exhausted);
  }
  SUBCASE("quantile propagates validation") {
    const auto dist = ExactNullCdf::for_parameters(5, 1.0);
    CHECK(code_of([&] { dist.quantile(0.0); }) == Errc::bad_parameter);
    CHECK(code_of([&] { dist.quantile(1.0); }) == Errc::bad_parameter);
  }
}
