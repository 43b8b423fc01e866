#include "nbue/statistic.hpp"

#include <cmath>
#include <string>

namespace nbue {

CoefficientSet CoefficientSet::make(int n, double j) {
  if (n < 2) fail(Errc::bad_parameter, "coefficients need n >= 2, got " + std::to_string(n));
  if (!(j > 0.0)) fail(Errc::bad_parameter, "coefficients need j > 0, got " + std::to_string(j));

  CoefficientSet cs;
  cs.n = n;
  cs.j = j;
  cs.e.resize(static_cast<std::size_t>(n));
  if (j == 1.0) {
    for (int k = 1; k <= n; ++k)
      cs.e[static_cast<std::size_t>(k - 1)] = static_cast<double>(n + 2 - 2 * k) / (2.0 * n);
  } else {
    cs.e[0] = 1.0 / (j + 1.0);  // k = 1: the power term is 1
    const double c = 1.0 / (j * (j + 1.0));
    for (int k = 2; k <= n; ++k) {
      const double r = static_cast<double>(n - k + 1) / static_cast<double>(n);
      cs.e[static_cast<std::size_t>(k - 1)] = std::pow(r, j) / j - c;
    }
  }
  for (std::size_t k = 0; k + 1 < cs.e.size(); ++k) {
    if (!(cs.e[k] > cs.e[k + 1])) {
      fail(Errc::bad_parameter, "coefficients are not strictly decreasing at k=" +
                                    std::to_string(k + 1) + " (n=" + std::to_string(n) +
                                    ", j=" + std::to_string(j) + ")");
    }
  }
  return cs;
}

Variant Variant::generalized(double j) {
  if (!(j > 0.0)) fail(Errc::bad_parameter, "j must be > 0, got " + std::to_string(j));
  return Variant{Kind::generalized, j};
}

std::string Variant::name() const {
  if (kind == Kind::hp1975) return "hp1975";
  return "generalized(j=" + std::to_string(j) + ")";
}

StatisticEvaluator::StatisticEvaluator(int n, const Variant& v) : n_(n), variant_(v) {
  if (v.is_generalized()) {
    weights_ = CoefficientSet::make(n, v.j).e;
  } else {
    if (n < 2) fail(Errc::bad_parameter, "n >= 2 required");
    // order-statistic weights (3n/2 - 2k + 1/2) / n^2
    weights_.resize(static_cast<std::size_t>(n));
    const double n2 = static_cast<double>(n) * n;
    for (int k = 1; k <= n; ++k)
      weights_[static_cast<std::size_t>(k - 1)] = (1.5 * n - 2.0 * k + 0.5) / n2;
  }
}

double StatisticEvaluator::operator()(std::span<const double> sorted) const {
  const auto n = static_cast<std::size_t>(n_);
  if (variant_.is_generalized()) {
    // sum e_k D_k / sum D_k with the spacings computed on the fly
    double num = 0.0, den = 0.0, prev = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double d = static_cast<double>(n - k) * (sorted[k] - prev);
      prev = sorted[k];
      num += weights_[k] * d;
      den += d;
    }
    return num / den;
  }
  double num = 0.0, sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    num += weights_[k] * sorted[k];
    sum += sorted[k];
  }
  return num / (sum / static_cast<double>(n));  // num / mean
}

double gamma_star(const Sample& s, const Variant& v) {
  const OrderedSample os = order_sample(s);
  return StatisticEvaluator(s.n(), v)(os.sorted);
}

double gamma_star_order_form(const Sample& s, double j) {
  if (!(j > 0.0)) fail(Errc::bad_parameter, "j must be > 0");
  const OrderedSample os = order_sample(s);
  const int n = s.n();
  const double cn = 1.0 / (j * (j + 1.0) * n);
  double acc = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double hi = static_cast<double>(n - k + 1) / n;
    const double lo = static_cast<double>(n - k) / n;
    const double w = (std::pow(hi, j + 1.0) - std::pow(lo, j + 1.0)) / j - cn;
    acc += os.sorted[static_cast<std::size_t>(k - 1)] * w;
  }
  return acc / os.mean;
}

double scale_factor(int n, ScaleName name, double user_c) {
  if (n < 2) fail(Errc::bad_parameter, "n >= 2 required");
  switch (name) {
    case ScaleName::none:
      return 1.0;
    case ScaleName::paper_j_quarter:
      return 1.25 * std::sqrt(1.5 * n);
    case ScaleName::paper_j_one:
      return std::sqrt(12.0 * n);
    case ScaleName::user:
      if (!(user_c > 0.0)) {
        fail(Errc::nonpositive_user_constant,
             "the user scale constant must be > 0, got " + std::to_string(user_c));
      }
      return user_c * std::sqrt(static_cast<double>(n));
  }
  fail(Errc::unknown_scale, "unrecognized scale");
}

ScaledValue scale_value(double value, int n, ScaleName name, double user_c) {
  ScaledValue sv;
  sv.raw = value;
  sv.name = name;
  sv.user_c = name == ScaleName::user ? user_c : 0.0;
  sv.scale_factor = scale_factor(n, name, user_c);
  sv.scaled = sv.scale_factor * value;
  return sv;
}

ScaleName parse_scale_name(const std::string& text) {
  if (text == "none") return ScaleName::none;
  if (text == "paper-j-quarter") return ScaleName::paper_j_quarter;
  if (text == "paper-j-one") return ScaleName::paper_j_one;
  if (text == "user") return ScaleName::user;
  fail(Errc::unknown_scale, "unknown scale '" + text +
                                "' (expected none, paper-j-quarter, paper-j-one or user)");
}

std::string to_string(ScaleName name) {
  switch (name) {
    case ScaleName::none: return "none";
    case ScaleName::paper_j_quarter: return "paper-j-quarter";
    case ScaleName::paper_j_one: return "paper-j-one";
    case ScaleName::user: return "user";
  }
  return "?";
}

ScaleName paper_scale_for(const Variant& v) {
  if (!v.is_generalized()) return ScaleName::paper_j_one;
  if (v.j == 0.25) return ScaleName::paper_j_quarter;
  if (v.j == 1.0) return ScaleName::paper_j_one;
  fail(Errc::unknown_scale,
       "no published scale factor for j=" + std::to_string(v.j) +
           "; supply a user constant or work unscaled");
}

}  // namespace nbue
