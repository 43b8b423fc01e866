#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nbue/exact_dist.hpp"
#include "nbue/io.hpp"
#include "nbue/montecarlo.hpp"
#include "nbue/statistic.hpp"

namespace nbue {

struct TableCell {
  enum class Provenance { exact, simulated };
  double value = 0.0;
  Provenance provenance = Provenance::exact;
  std::int64_t replications = 0;  // simulated cells only
  std::uint64_t seed = 0;         // simulated cells only
};

/// Critical values of the scaled statistic: one row per sample size, one
/// column per alpha (ascending). Values within a row are strictly
/// increasing across alpha.
struct CriticalValueTable {
  Variant variant = Variant::generalized(1.0);
  ScaleName scale = ScaleName::none;
  double user_c = 0.0;
  std::vector<double> alphas;
  std::vector<int> n_values;
  std::vector<std::vector<TableCell>> cells;  // [row][alpha]
};

struct TablePolicy {
  int exact_max_n = 60;                  // exact path at or below, Monte Carlo above
  std::int64_t mc_replications = 1'000'000;
  std::uint64_t seed = 1;
  int threads = 0;
  PrecisionPolicy precision = {};
};

/// n = 2..25 then 30..100 step 5, the published grid.
std::vector<int> default_n_list();
/// {0.01, 0.05, 0.10, 0.90, 0.95, 0.99}
std::vector<double> default_alphas();

/// Builds the table with the exact path for n <= policy.exact_max_n and
/// seeded simulation beyond. Rebuilding with the same policy reproduces
/// the artifact byte for byte; exact cells do not depend on the seed.
CriticalValueTable build_table(const Variant& variant, ScaleName scale,
                               std::span<const int> n_list, std::span<const double> alphas,
                               const TablePolicy& policy, double user_c = 0.0);

std::string to_csv(const CriticalValueTable& table, int decimals = 4);
std::string to_markdown(const CriticalValueTable& table, int decimals = 4);
std::string to_json(const CriticalValueTable& table);  // carries per-cell provenance

// -- empirical size table ----------------------------------------------------

/// One row of the size-comparison experiment: the corrected j = 1 statistic
/// against its own exact critical values, plus (when an external
/// total-time-on-test table is supplied) both statistics against critical
/// values derived from that table through crit = (V - (n-1)/2)/n.
struct SizeRow {
  int n = 0;
  EmpiricalSizeReport gamma1_vs_exact;
  bool has_external = false;
  EmpiricalSizeReport gamma1_vs_external;
  EmpiricalSizeReport hp_vs_external;
};

struct SizeTable {
  double alpha = 0.05;
  Sidedness sidedness = Sidedness::upper;
  std::vector<SizeRow> rows;
};

struct SizeTablePolicy {
  double alpha = 0.05;
  Sidedness sidedness = Sidedness::upper;
  std::int64_t replications = 100'000;
  std::uint64_t seed = 1;
  int threads = 0;
  PrecisionPolicy precision = {};
  const TttCriticalTable* external = nullptr;  // optional
  bool want_external_columns = false;          // error if set without a table
};

SizeTable build_size_table(std::span<const int> n_list, const SizeTablePolicy& policy);

std::string to_csv(const SizeTable& table);
std::string to_markdown(const SizeTable& table);
std::string to_json(const SizeTable& table);

}  // namespace nbue
