#include "nbue/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace nbue {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mul_hilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline void philox_round(std::array<std::uint32_t, 4>& c, const std::array<std::uint32_t, 2>& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mul_hilo(kPhiloxM0, c[0], hi0, lo0);
  mul_hilo(kPhiloxM1, c[2], hi1, lo1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::array<std::uint32_t, 4> counter,
                                               std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    philox_round(counter, key);
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return counter;
}

ReplicateStream::ReplicateStream(std::uint64_t seed, std::uint64_t replicate) {
  key_ = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  counter_ = {0u, 0u, static_cast<std::uint32_t>(replicate),
              static_cast<std::uint32_t>(replicate >> 32)};
}

void ReplicateStream::refill() {
  const auto words = Philox4x32::block(counter_, key_);
  buffer_[0] = (static_cast<std::uint64_t>(words[1]) << 32) | words[0];
  buffer_[1] = (static_cast<std::uint64_t>(words[3]) << 32) | words[2];
  available_ = 2;
  if (++counter_[0] == 0) ++counter_[1];  // block index within the replicate
}

double ReplicateStream::next_uniform() {
  if (available_ == 0) refill();
  const std::uint64_t bits = buffer_[2 - available_];
  --available_;
  // (0,1]: never returns 0, so log() below is finite
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

double ReplicateStream::next_exponential(double rate) {
  return -std::log(next_uniform()) / rate;
}

void SimConfig::validate() const {
  if (n < 2) fail(Errc::bad_parameter, "simulation needs n >= 2");
  if (replications < 1) fail(Errc::bad_parameter, "replications must be >= 1");
  if (!(rate > 0.0)) fail(Errc::bad_parameter, "rate must be > 0");
}

namespace {

/// Runs fn(replicate_index) over [0, reps) on `threads` workers. Work is
/// split in contiguous chunks; fn must only touch its own replicate's slot.
template <typename Fn>
void parallel_replicates(std::int64_t reps, int threads, Fn&& fn) {
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (static_cast<std::int64_t>(workers) > reps) workers = static_cast<int>(reps);
  if (workers == 1) {
    for (std::int64_t r = 0; r < reps; ++r) fn(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::int64_t chunk = (reps + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min(reps, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::int64_t r = lo; r < hi; ++r) fn(r);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

std::vector<double> sample_null_statistics(const SimConfig& cfg, int threads) {
  cfg.validate();
  const StatisticEvaluator eval(cfg.n, cfg.variant);
  std::vector<double> out(static_cast<std::size_t>(cfg.replications));
  const auto n = static_cast<std::size_t>(cfg.n);
  parallel_replicates(cfg.replications, threads, [&](std::int64_t r) {
    thread_local std::vector<double> sample;
    sample.resize(n);
    ReplicateStream stream(cfg.seed, static_cast<std::uint64_t>(r));
    for (std::size_t i = 0; i < n; ++i) sample[i] = stream.next_exponential(cfg.rate);
    std::sort(sample.begin(), sample.end());
    out[static_cast<std::size_t>(r)] = eval(sample);
  });
  return out;
}

double empirical_quantile(std::span<const double> sorted_draws, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(Errc::bad_parameter, "alpha must lie in (0,1)");
  const auto N = static_cast<std::int64_t>(sorted_draws.size());
  if (N == 0) fail(Errc::bad_parameter, "no draws");
  // ceil(alpha*N) with a guard against fp round-up of exact integers
  auto k = static_cast<std::int64_t>(std::ceil(alpha * static_cast<double>(N) - 1e-9));
  k = std::clamp<std::int64_t>(k, 1, N);
  return sorted_draws[static_cast<std::size_t>(k - 1)];
}

std::vector<double> simulated_critical_values(const SimConfig& cfg,
                                              std::span<const double> alphas, ScaleName scale,
                                              double user_c, int threads) {
  std::vector<double> draws = sample_null_statistics(cfg, threads);
  std::sort(draws.begin(), draws.end());
  const double factor = scale_factor(cfg.n, scale, user_c);
  std::vector<double> out;
  out.reserve(alphas.size());
  for (double a : alphas) out.push_back(factor * empirical_quantile(draws, a));
  return out;
}

Sidedness parse_sidedness(const std::string& text) {
  if (text == "lower") return Sidedness::lower;
  if (text == "upper") return Sidedness::upper;
  if (text == "two-sided") return Sidedness::two_sided_equal_tails;
  fail(Errc::bad_parameter, "unknown sidedness '" + text +
                                "' (expected lower, upper or two-sided)");
}

std::string to_string(Sidedness s) {
  switch (s) {
    case Sidedness::lower: return "lower";
    case Sidedness::upper: return "upper";
    case Sidedness::two_sided_equal_tails: return "two-sided";
  }
  return "?";
}

std::string to_string(CritSource s) {
  switch (s) {
    case CritSource::exact_table: return "exact-table";
    case CritSource::external_table: return "external-table";
    case CritSource::supplied: return "supplied";
  }
  return "?";
}

EmpiricalSizeReport empirical_size(const SimConfig& cfg, double alpha, const CriticalBand& crit,
                                   Sidedness sided, CritSource source, int threads) {
  cfg.validate();
  const bool need_lower = sided != Sidedness::upper;
  const bool need_upper = sided != Sidedness::lower;
  if (need_lower && !crit.lower) fail(Errc::bad_parameter, "lower critical value required");
  if (need_upper && !crit.upper) fail(Errc::bad_parameter, "upper critical value required");
  const double lo = crit.lower.value_or(0.0);
  const double hi = crit.upper.value_or(0.0);

  const std::vector<double> draws = sample_null_statistics(cfg, threads);
  std::int64_t rejections = 0;
  for (double v : draws) {
    const bool reject = (need_lower && v < lo) || (need_upper && v > hi);
    rejections += reject ? 1 : 0;
  }

  EmpiricalSizeReport report;
  report.n = cfg.n;
  report.variant = cfg.variant;
  report.alpha = alpha;
  report.crit_source = source;
  report.sidedness = sided;
  report.rejections = rejections;
  report.replications = cfg.replications;
  report.empirical_size_percent =
      100.0 * static_cast<double>(rejections) / static_cast<double>(cfg.replications);
  report.seed = cfg.seed;
  return report;
}

}  // namespace nbue
