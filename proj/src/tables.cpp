#include "nbue/tables.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace nbue {
namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Per-row substream seed so that rows are statistically independent while
/// the whole artifact stays reproducible from one policy seed.
std::uint64_t row_seed(std::uint64_t seed, const Variant& v, int n) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull;
  z = mix64(z ^ static_cast<std::uint64_t>(n));
  z = mix64(z ^ std::bit_cast<std::uint64_t>(v.is_generalized() ? v.j : -1.0));
  return z;
}

std::string fmt(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string fmt_alpha(double a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", a);
  return buf;
}

nlohmann::json variant_json(const Variant& v) {
  if (v.is_generalized()) return {{"kind", "generalized"}, {"j", v.j}};
  return {{"kind", "hp1975"}};
}

nlohmann::json size_report_json(const EmpiricalSizeReport& r) {
  return {{"percent", r.empirical_size_percent},
          {"rejections", r.rejections},
          {"replications", r.replications},
          {"crit_source", to_string(r.crit_source)},
          {"seed", r.seed}};
}

}  // namespace

std::vector<int> default_n_list() {
  std::vector<int> ns;
  for (int n = 2; n <= 25; ++n) ns.push_back(n);
  for (int n = 30; n <= 100; n += 5) ns.push_back(n);
  return ns;
}

std::vector<double> default_alphas() { return {0.01, 0.05, 0.10, 0.90, 0.95, 0.99}; }

CriticalValueTable build_table(const Variant& variant, ScaleName scale,
                               std::span<const int> n_list, std::span<const double> alphas,
                               const TablePolicy& policy, double user_c) {
  if (n_list.empty() || alphas.empty()) fail(Errc::bad_parameter, "empty table request");
  CriticalValueTable table;
  table.variant = variant;
  table.scale = scale;
  table.user_c = user_c;
  table.alphas.assign(alphas.begin(), alphas.end());
  std::sort(table.alphas.begin(), table.alphas.end());
  for (double a : table.alphas)
    if (!(a > 0.0 && a < 1.0)) fail(Errc::bad_parameter, "alpha must lie in (0,1)");
  table.n_values.assign(n_list.begin(), n_list.end());

  for (int n : table.n_values) {
    const double factor = scale_factor(n, scale, user_c);
    std::vector<TableCell> row;
    row.reserve(table.alphas.size());
    if (n <= policy.exact_max_n) {
      // the 1975 variant is the corrected j = 1 statistic shifted by -1/(2n)
      const double j = variant.is_generalized() ? variant.j : 1.0;
      const ExactNullCdf dist = ExactNullCdf::for_parameters(n, j, policy.precision);
      const double shift = variant.is_generalized() ? 0.0 : -0.5 / n;
      for (double a : table.alphas) {
        TableCell cell;
        cell.value = factor * (dist.quantile(a) + shift);
        cell.provenance = TableCell::Provenance::exact;
        row.push_back(cell);
      }
    } else {
      SimConfig cfg;
      cfg.n = n;
      cfg.variant = variant;
      cfg.replications = policy.mc_replications;
      cfg.seed = row_seed(policy.seed, variant, n);
      const std::vector<double> values =
          simulated_critical_values(cfg, table.alphas, scale, user_c, policy.threads);
      for (double v : values) {
        TableCell cell;
        cell.value = v;
        cell.provenance = TableCell::Provenance::simulated;
        cell.replications = cfg.replications;
        cell.seed = cfg.seed;
        row.push_back(cell);
      }
    }
    for (std::size_t c = 0; c + 1 < row.size(); ++c) {
      if (!(row[c].value < row[c + 1].value)) {
        fail(Errc::bad_parameter,
             "table row n=" + std::to_string(n) + " is not strictly increasing across alpha");
      }
    }
    table.cells.push_back(std::move(row));
  }
  return table;
}

std::string to_csv(const CriticalValueTable& table, int decimals) {
  std::ostringstream out;
  out << "n";
  for (double a : table.alphas) out << "," << fmt_alpha(a);
  out << "\n";
  for (std::size_t r = 0; r < table.n_values.size(); ++r) {
    out << table.n_values[r];
    for (const TableCell& cell : table.cells[r]) out << "," << fmt(cell.value, decimals);
    out << "\n";
  }
  return out.str();
}

std::string to_markdown(const CriticalValueTable& table, int decimals) {
  std::ostringstream out;
  out << "| n |";
  for (double a : table.alphas) out << " " << fmt_alpha(a) << " |";
  out << "\n|---|";
  for (std::size_t c = 0; c < table.alphas.size(); ++c) out << "---|";
  out << "\n";
  for (std::size_t r = 0; r < table.n_values.size(); ++r) {
    out << "| " << table.n_values[r] << " |";
    for (const TableCell& cell : table.cells[r]) out << " " << fmt(cell.value, decimals) << " |";
    out << "\n";
  }
  return out.str();
}

std::string to_json(const CriticalValueTable& table) {
  nlohmann::json doc;
  doc["variant"] = variant_json(table.variant);
  doc["scale"] = to_string(table.scale);
  if (table.scale == ScaleName::user) doc["user_c"] = table.user_c;
  doc["alphas"] = table.alphas;
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < table.n_values.size(); ++r) {
    nlohmann::json row;
    row["n"] = table.n_values[r];
    nlohmann::json cells = nlohmann::json::array();
    for (std::size_t c = 0; c < table.cells[r].size(); ++c) {
      const TableCell& cell = table.cells[r][c];
      nlohmann::json jc;
      jc["alpha"] = table.alphas[c];
      jc["value"] = cell.value;
      if (cell.provenance == TableCell::Provenance::exact) {
        jc["provenance"] = "exact";
      } else {
        jc["provenance"] = "simulated";
        jc["replications"] = cell.replications;
        jc["seed"] = cell.seed;
      }
      cells.push_back(std::move(jc));
    }
    row["cells"] = std::move(cells);
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

SizeTable build_size_table(std::span<const int> n_list, const SizeTablePolicy& policy) {
  if (!(policy.alpha > 0.0 && policy.alpha < 1.0))
    fail(Errc::bad_parameter, "alpha must lie in (0,1)");
  if (policy.want_external_columns && policy.external == nullptr) {
    fail(Errc::missing_external_table,
         "external critical-value columns requested but no table was supplied");
  }

  SizeTable table;
  table.alpha = policy.alpha;
  table.sidedness = policy.sidedness;
  const double a = policy.alpha;

  for (int n : n_list) {
    SizeRow srow;
    srow.n = n;

    const ExactNullCdf dist = ExactNullCdf::for_parameters(n, 1.0, policy.precision);
    CriticalBand exact_band;
    if (policy.sidedness == Sidedness::lower) {
      exact_band.lower = dist.quantile(a);
    } else if (policy.sidedness == Sidedness::upper) {
      exact_band.upper = dist.quantile(1.0 - a);
    } else {
      exact_band.lower = dist.quantile(a / 2.0);
      exact_band.upper = dist.quantile(1.0 - a / 2.0);
    }

    SimConfig cfg;
    cfg.n = n;
    cfg.variant = Variant::generalized(1.0);
    cfg.replications = policy.replications;
    cfg.seed = row_seed(policy.seed, cfg.variant, n);
    srow.gamma1_vs_exact = empirical_size(cfg, a, exact_band, policy.sidedness,
                                          CritSource::exact_table, policy.threads);

    if (policy.want_external_columns) {
      // the external table holds percentile points of the total-time-on-test
      // statistic V = n K* + (n-1)/2; invert that linear map to get critical
      // values for the 1975 statistic and apply them to both variants
      const auto ext_crit = [&](double prob) {
        const double v = policy.external->lookup(n, prob);
        return (v - 0.5 * (n - 1)) / n;
      };
      CriticalBand ext_band;
      if (policy.sidedness == Sidedness::lower) {
        ext_band.lower = ext_crit(a);
      } else if (policy.sidedness == Sidedness::upper) {
        ext_band.upper = ext_crit(1.0 - a);
      } else {
        ext_band.lower = ext_crit(a / 2.0);
        ext_band.upper = ext_crit(1.0 - a / 2.0);
      }
      srow.has_external = true;
      srow.gamma1_vs_external = empirical_size(cfg, a, ext_band, policy.sidedness,
                                               CritSource::external_table, policy.threads);
      SimConfig hp_cfg = cfg;
      hp_cfg.variant = Variant::hp1975();
      srow.hp_vs_external = empirical_size(hp_cfg, a, ext_band, policy.sidedness,
                                           CritSource::external_table, policy.threads);
    }
    table.rows.push_back(std::move(srow));
  }
  return table;
}

std::string to_csv(const SizeTable& table) {
  std::ostringstream out;
  out << "n,gamma1_vs_exact,gamma1_vs_external,hp1975_vs_external\n";
  for (const SizeRow& row : table.rows) {
    out << row.n << "," << fmt(row.gamma1_vs_exact.empirical_size_percent, 2);
    if (row.has_external) {
      out << "," << fmt(row.gamma1_vs_external.empirical_size_percent, 2) << ","
          << fmt(row.hp_vs_external.empirical_size_percent, 2);
    } else {
      out << ",,";
    }
    out << "\n";
  }
  return out.str();
}

std::string to_markdown(const SizeTable& table) {
  std::ostringstream out;
  out << "| n | gamma1 vs exact | gamma1 vs external | hp1975 vs external |\n";
  out << "|---|---|---|---|\n";
  for (const SizeRow& row : table.rows) {
    out << "| " << row.n << " | " << fmt(row.gamma1_vs_exact.empirical_size_percent, 2)
        << " | ";
    if (row.has_external) {
      out << fmt(row.gamma1_vs_external.empirical_size_percent, 2) << " | "
          << fmt(row.hp_vs_external.empirical_size_percent, 2) << " |\n";
    } else {
      out << "- | - |\n";
    }
  }
  return out.str();
}

std::string to_json(const SizeTable& table) {
  nlohmann::json doc;
  doc["alpha"] = table.alpha;
  doc["sidedness"] = to_string(table.sidedness);
  nlohmann::json rows = nlohmann::json::array();
  for (const SizeRow& row : table.rows) {
    nlohmann::json jr;
    jr["n"] = row.n;
    jr["gamma1_vs_exact"] = size_report_json(row.gamma1_vs_exact);
    if (row.has_external) {
      jr["gamma1_vs_external"] = size_report_json(row.gamma1_vs_external);
      jr["hp1975_vs_external"] = size_report_json(row.hp_vs_external);
    }
    rows.push_back(std::move(jr));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

}  // namespace nbue
