#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nbue/errors.hpp"
#include "nbue/statistic.hpp"

namespace nbue {

/// Philox-4x32-10 counter-based generator. Stateless block function: the
/// output is a pure function of (counter, key), so any partition of work
/// across threads reproduces the same stream.
struct Philox4x32 {
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key);
};

/// Deterministic substream for one replicate: key = seed, counter high
/// half = replicate index, counter low half = block index.
class ReplicateStream {
 public:
  ReplicateStream(std::uint64_t seed, std::uint64_t replicate);

  /// 53-bit uniform on (0, 1].
  double next_uniform();
  /// Inverse-CDF exponential draw, -log(u)/rate.
  double next_exponential(double rate);

 private:
  void refill();
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint64_t, 2> buffer_{};
  int available_ = 0;
};

struct SimConfig {
  int n = 2;
  Variant variant = Variant::generalized(1.0);
  std::int64_t replications = 1;
  std::uint64_t seed = 0;
  double rate = 1.0;  // exponential rate of the simulated null samples; the
                      // statistic is scale invariant so this only exists to
                      // let tests exercise that invariance
  void validate() const;
};

/// Draws `replications` independent realizations of the statistic under the
/// exponential null. Bit-identical output for equal configs regardless of
/// `threads` (0 = hardware concurrency).
std::vector<double> sample_null_statistics(const SimConfig& cfg, int threads = 0);

/// Empirical quantile convention used throughout: the ceil(alpha*N)-th
/// order statistic (1-based) of the sorted draws.
double empirical_quantile(std::span<const double> sorted_draws, double alpha);

/// Simulated critical values of the *scaled* statistic at each alpha.
std::vector<double> simulated_critical_values(const SimConfig& cfg,
                                              std::span<const double> alphas,
                                              ScaleName scale, double user_c = 0.0,
                                              int threads = 0);

enum class Sidedness { lower, upper, two_sided_equal_tails };
Sidedness parse_sidedness(const std::string& text);
std::string to_string(Sidedness s);

/// Critical value(s) in the raw (unscaled) units of the statistic.
struct CriticalBand {
  std::optional<double> lower;
  std::optional<double> upper;
};

enum class CritSource { exact_table, external_table, supplied };
std::string to_string(CritSource s);

struct EmpiricalSizeReport {
  int n = 0;
  Variant variant = Variant::generalized(1.0);
  double alpha = 0.0;
  CritSource crit_source = CritSource::supplied;
  Sidedness sidedness = Sidedness::upper;
  std::int64_t rejections = 0;
  std::int64_t replications = 0;
  double empirical_size_percent = 0.0;
  std::uint64_t seed = 0;
};

/// Simulates under the null and counts rejections against the supplied
/// critical band (strict inequalities; the null law is continuous so the
/// boundary has probability zero).
EmpiricalSizeReport empirical_size(const SimConfig& cfg, double alpha,
                                   const CriticalBand& crit, Sidedness sided,
                                   CritSource source, int threads = 0);

}  // namespace nbue
