#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "nbue/exact_dist.hpp"
#include "nbue/montecarlo.hpp"
#include "nbue/sample.hpp"
#include "nbue/statistic.hpp"

namespace nbue {

/// Everything a single run of the test produces. Large values of the
/// statistic indicate NBUE departure from exponentiality, so the upper tail
/// is the NBUE rejection side and the lower tail the NWUE one; both
/// one-sided p-values are reported.
struct TestReport {
  int n = 0;
  Variant variant = Variant::generalized(1.0);
  double raw = 0.0;
  std::optional<ScaledValue> scaled;  // present when a scale other than none applies

  double p_lower = 0.0;
  double p_upper = 0.0;
  std::string method;  // "exact" | "monte-carlo"
  std::optional<std::int64_t> mc_replications;
  std::optional<std::uint64_t> mc_seed;

  double alpha = 0.05;
  Sidedness sidedness = Sidedness::upper;
  bool reject = false;
};

struct ReportConfig {
  ScaleName scale = ScaleName::none;
  double user_c = 0.0;
  double alpha = 0.05;
  Sidedness sidedness = Sidedness::upper;
  int exact_max_n = 100;  // Monte Carlo p-values beyond this size
  std::int64_t mc_replications = 1'000'000;
  std::uint64_t mc_seed = 1;
  int threads = 0;
  PrecisionPolicy precision = {};
};

TestReport run_test(const Sample& sample, const Variant& variant, const ReportConfig& cfg);

nlohmann::json to_json(const TestReport& report);
TestReport report_from_json(const nlohmann::json& doc);

/// Human-readable rendering, `digits` significant digits.
std::string to_text(const TestReport& report, int digits = 6);

}  // namespace nbue
