#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nbue/exact_dist.hpp"
#include "nbue/io.hpp"
#include "nbue/montecarlo.hpp"
#include "nbue/report.hpp"
#include "nbue/sample.hpp"
#include "nbue/statistic.hpp"
#include "nbue/tables.hpp"

namespace {

using namespace nbue;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::data_error:
    case Errc::empty_or_singleton:
    case Errc::negative_value:
    case Errc::all_zero:
      return 2;
    case Errc::precision_exhausted:
      return 3;
    case Errc::missing_external_table:
      return 4;
    default:
      return 1;  // usage-level problems
  }
}

std::string sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

/// "2:10", "2:25,30:100:5", "7" -> expanded list
std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    int a = 0, b = 0, step = 1;
    const auto c1 = token.find(':');
    if (c1 == std::string::npos) {
      a = b = std::stoi(token);
    } else {
      a = std::stoi(token.substr(0, c1));
      const auto rest = token.substr(c1 + 1);
      const auto c2 = rest.find(':');
      if (c2 == std::string::npos) {
        b = std::stoi(rest);
      } else {
        b = std::stoi(rest.substr(0, c2));
        step = std::stoi(rest.substr(c2 + 1));
      }
    }
    if (step < 1 || b < a) fail(Errc::bad_parameter, "bad n range '" + token + "'");
    for (int n = a; n <= b; n += step) out.push_back(n);
  }
  if (out.empty()) fail(Errc::bad_parameter, "empty n list");
  return out;
}

Variant make_variant(const std::string& name, double j) {
  if (name == "hp1975") return Variant::hp1975();
  if (name == "generalized") return Variant::generalized(j);
  fail(Errc::bad_parameter, "unknown variant '" + name + "' (generalized|hp1975)");
}

/// --scale accepts the explicit names plus "paper", which resolves to the
/// published factor for the chosen variant.
ScaleName resolve_scale(const std::string& text, const Variant& v) {
  if (text == "paper") return paper_scale_for(v);
  return parse_scale_name(text);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) fail(Errc::data_error, "cannot write '" + out_path + "'");
  out << text;
}

struct CommonOpts {
  std::string format = "text";
  std::string out_path;
  int digits = 6;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool table_like = false) {
  cmd->add_option("--format", opts.format,
                  table_like ? "Output format: md, csv or json" : "Output format: text or json")
      ->default_val(table_like ? "md" : "text");
  cmd->add_option("-o,--out", opts.out_path, "Write output to a file instead of stdout");
  cmd->add_option("--precision", opts.digits, "Significant digits for numeric output")
      ->default_val(6);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Tests of exponentiality against NBUE alternatives: the generalized\n"
      "Hollander-Proschan statistic, its exact finite-sample null distribution,\n"
      "critical-value tables and a reproducible simulation harness."};
  app.require_subcommand(1);

  // ---- stat ----
  auto* stat = app.add_subcommand("stat", "Compute the statistic and test a data file");
  std::string stat_input;
  double stat_j = 1.0;
  std::string stat_variant = "generalized";
  std::string stat_scale = "none";
  double stat_scale_const = 0.0;
  double stat_alpha = 0.05;
  std::string stat_sided = "upper";
  int stat_exact_max_n = 100;
  std::int64_t stat_reps = 1'000'000;
  std::uint64_t stat_seed = 1;
  int stat_threads = 0;
  CommonOpts stat_opts;
  stat->add_option("input", stat_input, "Data file of lifetimes ('-' for stdin)")->required();
  auto* stat_j_opt = stat->add_option("--j", stat_j, "Weight exponent j > 0")->default_val(1.0);
  stat->add_option("--variant", stat_variant, "generalized (default) or hp1975")
      ->default_val("generalized")
      ->excludes(stat_j_opt);
  stat->add_option("--scale", stat_scale,
                   "none, paper, paper-j-quarter, paper-j-one or user")
      ->default_val("none");
  stat->add_option("--scale-const", stat_scale_const, "c for the user scale c*sqrt(n)");
  stat->add_option("--alpha", stat_alpha, "Significance level")->default_val(0.05);
  stat->add_option("--sided", stat_sided, "lower, upper or two-sided")->default_val("upper");
  stat->add_option("--exact-max-n", stat_exact_max_n,
                   "Largest n evaluated with the exact null distribution")
      ->default_val(100);
  stat->add_option("--reps", stat_reps, "Monte Carlo replications for large n")
      ->default_val(1'000'000);
  stat->add_option("--seed", stat_seed, "Monte Carlo seed")->default_val(1);
  stat->add_option("--threads", stat_threads, "Worker threads (0 = auto)")->default_val(0);
  add_common(stat, stat_opts);
  stat->callback([&] {
    const Variant variant = make_variant(stat_variant, stat_j);
    ReportConfig cfg;
    cfg.scale = resolve_scale(stat_scale, variant);
    cfg.user_c = stat_scale_const;
    cfg.alpha = stat_alpha;
    cfg.sidedness = parse_sidedness(stat_sided);
    cfg.exact_max_n = stat_exact_max_n;
    cfg.mc_replications = stat_reps;
    cfg.mc_seed = stat_seed;
    cfg.threads = stat_threads;
    const Sample sample = Sample::from_values(read_lifetimes_file(stat_input));
    const TestReport report = run_test(sample, variant, cfg);
    if (stat_opts.format == "json") {
      emit(to_json(report).dump(2) + "\n", stat_opts.out_path);
    } else {
      emit(to_text(report, stat_opts.digits), stat_opts.out_path);
    }
  });

  // ---- cdf / quantile ----
  auto* cdf = app.add_subcommand("cdf", "Exact null CDF of the generalized statistic");
  auto* quant = app.add_subcommand("quantile", "Exact null quantile of the generalized statistic");
  int dist_n = 2;
  double dist_j = 1.0;
  double cdf_x = 0.0;
  double quant_p = 0.5;
  std::string dist_scale = "none";
  double dist_scale_const = 0.0;
  CommonOpts cdf_opts, quant_opts;
  for (auto* cmd : {cdf, quant}) {
    cmd->add_option("--n", dist_n, "Sample size (n >= 2)")->required();
    cmd->add_option("--j", dist_j, "Weight exponent j > 0")->default_val(1.0);
    cmd->add_option("--scale", dist_scale,
                    "Units of x / the result: none, paper, paper-j-quarter, paper-j-one, user")
        ->default_val("none");
    cmd->add_option("--scale-const", dist_scale_const, "c for the user scale");
  }
  cdf->add_option("--x", cdf_x, "Evaluation point (in the scaled units)")->required();
  quant->add_option("--p", quant_p, "Probability in (0,1)")->required();
  add_common(cdf, cdf_opts);
  add_common(quant, quant_opts);
  cdf->callback([&] {
    const Variant variant = Variant::generalized(dist_j);
    const ScaleName scale = resolve_scale(dist_scale, variant);
    const double factor = scale_factor(dist_n, scale, dist_scale_const);
    const ExactNullCdf dist = ExactNullCdf::for_parameters(dist_n, dist_j);
    const CdfValue value = dist.cdf(cdf_x / factor);
    if (cdf_opts.format == "json") {
      nlohmann::json doc{{"n", dist_n},
                         {"j", dist_j},
                         {"x", cdf_x},
                         {"scale", to_string(scale)},
                         {"p", value.p},
                         {"achieved_bits", value.achieved_bits},
                         {"estimated_abs_error", value.estimated_abs_error}};
      emit(doc.dump(2) + "\n", cdf_opts.out_path);
    } else {
      emit(sig(value.p, cdf_opts.digits) + "\n", cdf_opts.out_path);
    }
  });
  quant->callback([&] {
    const Variant variant = Variant::generalized(dist_j);
    const ScaleName scale = resolve_scale(dist_scale, variant);
    const double factor = scale_factor(dist_n, scale, dist_scale_const);
    const ExactNullCdf dist = ExactNullCdf::for_parameters(dist_n, dist_j);
    const double q = factor * dist.quantile(quant_p);
    if (quant_opts.format == "json") {
      nlohmann::json doc{{"n", dist_n},
                         {"j", dist_j},
                         {"p", quant_p},
                         {"scale", to_string(scale)},
                         {"quantile", q}};
      emit(doc.dump(2) + "\n", quant_opts.out_path);
    } else {
      emit(sig(q, quant_opts.digits) + "\n", quant_opts.out_path);
    }
  });

  // ---- table ----
  auto* table = app.add_subcommand("table", "Critical-value table of the scaled statistic");
  double table_j = 1.0;
  std::string table_variant = "generalized";
  std::string table_scale = "paper";
  double table_scale_const = 0.0;
  std::string table_n_list = "2:25,30:100:5";
  std::string table_alphas = "0.01,0.05,0.10,0.90,0.95,0.99";
  TablePolicy table_policy;
  CommonOpts table_opts;
  int table_decimals = 4;
  auto* table_j_opt = table->add_option("--j", table_j, "Weight exponent")->default_val(1.0);
  table->add_option("--variant", table_variant, "generalized or hp1975")
      ->default_val("generalized")
      ->excludes(table_j_opt);
  table->add_option("--scale", table_scale, "Scale of the tabulated values")
      ->default_val("paper");
  table->add_option("--scale-const", table_scale_const, "c for the user scale");
  table->add_option("--n-list", table_n_list, "Sample sizes, e.g. 2:25,30:100:5")
      ->default_val("2:25,30:100:5");
  table->add_option("--alphas", table_alphas, "Comma-separated quantile levels")
      ->default_val("0.01,0.05,0.10,0.90,0.95,0.99");
  table->add_option("--exact-max-n", table_policy.exact_max_n,
                    "Exact path at or below this n, simulation above")
      ->default_val(60);
  table->add_option("--reps", table_policy.mc_replications, "Simulation replications")
      ->default_val(1'000'000);
  table->add_option("--seed", table_policy.seed, "Simulation seed")->default_val(1);
  table->add_option("--threads", table_policy.threads, "Worker threads (0 = auto)")
      ->default_val(0);
  table->add_option("--decimals", table_decimals, "Decimals in md/csv cells")->default_val(4);
  add_common(table, table_opts, /*table_like=*/true);
  table->callback([&] {
    const Variant variant = make_variant(table_variant, table_j);
    const ScaleName scale = resolve_scale(table_scale, variant);
    std::vector<double> alphas;
    std::istringstream ss(table_alphas);
    std::string tok;
    while (std::getline(ss, tok, ',')) alphas.push_back(std::stod(tok));
    const std::vector<int> ns = parse_n_list(table_n_list);
    const CriticalValueTable result =
        build_table(variant, scale, ns, alphas, table_policy, table_scale_const);
    if (table_opts.format == "csv") {
      emit(to_csv(result, table_decimals), table_opts.out_path);
    } else if (table_opts.format == "json") {
      emit(to_json(result), table_opts.out_path);
    } else {
      emit(to_markdown(result, table_decimals), table_opts.out_path);
    }
  });

  // ---- size-sim ----
  auto* size = app.add_subcommand(
      "size-sim", "Empirical size of the test under the exponential null");
  std::string size_n_list = "2:10";
  int size_single_n = 0;
  SizeTablePolicy size_policy;
  std::string size_sided = "upper";
  std::string size_barlow;
  CommonOpts size_opts;
  size->add_option("--n", size_single_n, "Single sample size (overrides --n-list)");
  size->add_option("--n-list", size_n_list, "Sample sizes")->default_val("2:10");
  size->add_option("--alpha", size_policy.alpha, "Nominal level")->default_val(0.05);
  size->add_option("--sided", size_sided, "lower, upper or two-sided")->default_val("upper");
  size->add_option("--reps", size_policy.replications, "Replications")->default_val(100'000);
  size->add_option("--seed", size_policy.seed, "Simulation seed")->default_val(42);
  size->add_option("--threads", size_policy.threads, "Worker threads (0 = auto)")
      ->default_val(0);
  size->add_option("--barlow-csv", size_barlow,
                   "External total-time-on-test critical values (header n,alpha,value); "
                   "enables the external-table columns");
  add_common(size, size_opts, /*table_like=*/true);
  size->callback([&] {
    size_policy.sidedness = parse_sidedness(size_sided);
    TttCriticalTable external;
    if (!size_barlow.empty()) {
      external = TttCriticalTable::load_csv(size_barlow);
      size_policy.external = &external;
      size_policy.want_external_columns = true;
    }
    const std::vector<int> ns =
        size_single_n > 0 ? std::vector<int>{size_single_n} : parse_n_list(size_n_list);
    const SizeTable result = build_size_table(ns, size_policy);
    if (size_opts.format == "csv") {
      emit(to_csv(result), size_opts.out_path);
    } else if (size_opts.format == "json") {
      emit(to_json(result), size_opts.out_path);
    } else {
      emit(to_markdown(result), size_opts.out_path);
    }
  });

  // ---- ttt ----
  auto* ttt = app.add_subcommand("ttt", "Total-time-on-test statistic of a data file");
  std::string ttt_input;
  CommonOpts ttt_opts;
  ttt->add_option("input", ttt_input, "Data file of lifetimes ('-' for stdin)")->required();
  add_common(ttt, ttt_opts);
  ttt->callback([&] {
    const Sample sample = Sample::from_values(read_lifetimes_file(ttt_input));
    const double v = ttt_statistic(sample);
    if (ttt_opts.format == "json") {
      nlohmann::json doc{{"n", sample.n()}, {"ttt", v}};
      emit(doc.dump(2) + "\n", ttt_opts.out_path);
    } else {
      emit(sig(v, ttt_opts.digits) + "\n", ttt_opts.out_path);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
