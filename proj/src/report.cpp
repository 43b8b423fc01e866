#include "nbue/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace nbue {
namespace {

std::string sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace

TestReport run_test(const Sample& sample, const Variant& variant, const ReportConfig& cfg) {
  TestReport report;
  report.n = sample.n();
  report.variant = variant;
  report.raw = gamma_star(sample, variant);
  if (cfg.scale != ScaleName::none) {
    report.scaled = scale_value(report.raw, report.n, cfg.scale, cfg.user_c);
  }

  if (report.n <= cfg.exact_max_n) {
    // hp1975 = corrected j=1 statistic - 1/(2n), so shift the query point
    const double j = variant.is_generalized() ? variant.j : 1.0;
    const double x = variant.is_generalized() ? report.raw : report.raw + 0.5 / report.n;
    const ExactNullCdf dist = ExactNullCdf::for_parameters(report.n, j, cfg.precision);
    report.p_lower = dist.cdf(x).p;
    report.p_upper = 1.0 - report.p_lower;
    report.method = "exact";
  } else {
    SimConfig sim;
    sim.n = report.n;
    sim.variant = variant;
    sim.replications = cfg.mc_replications;
    sim.seed = cfg.mc_seed;
    const std::vector<double> draws = sample_null_statistics(sim, cfg.threads);
    std::int64_t at_most = 0, at_least = 0;
    for (double d : draws) {
      if (d <= report.raw) ++at_most;
      if (d >= report.raw) ++at_least;
    }
    const auto N = static_cast<double>(draws.size());
    report.p_lower = static_cast<double>(at_most) / N;
    report.p_upper = static_cast<double>(at_least) / N;
    report.method = "monte-carlo";
    report.mc_replications = cfg.mc_replications;
    report.mc_seed = cfg.mc_seed;
  }

  report.alpha = cfg.alpha;
  report.sidedness = cfg.sidedness;
  switch (cfg.sidedness) {
    case Sidedness::lower:
      report.reject = report.p_lower <= cfg.alpha;
      break;
    case Sidedness::upper:
      report.reject = report.p_upper <= cfg.alpha;
      break;
    case Sidedness::two_sided_equal_tails:
      report.reject = std::min(report.p_lower, report.p_upper) <= cfg.alpha / 2.0;
      break;
  }
  return report;
}

nlohmann::json to_json(const TestReport& r) {
  nlohmann::json doc;
  doc["n"] = r.n;
  if (r.variant.is_generalized()) {
    doc["variant"] = {{"kind", "generalized"}, {"j", r.variant.j}};
  } else {
    doc["variant"] = {{"kind", "hp1975"}};
  }
  doc["statistic"]["raw"] = r.raw;
  if (r.scaled) {
    doc["statistic"]["scaled"] = r.scaled->scaled;
    doc["statistic"]["scale_factor"] = r.scaled->scale_factor;
    doc["statistic"]["scale"] = to_string(r.scaled->name);
    if (r.scaled->name == ScaleName::user) doc["statistic"]["user_c"] = r.scaled->user_c;
  }
  doc["p_value"]["lower"] = r.p_lower;
  doc["p_value"]["upper"] = r.p_upper;
  doc["p_value"]["method"] = r.method;
  if (r.mc_replications) doc["p_value"]["replications"] = *r.mc_replications;
  if (r.mc_seed) doc["p_value"]["seed"] = *r.mc_seed;
  doc["test"]["alpha"] = r.alpha;
  doc["test"]["sidedness"] = to_string(r.sidedness);
  doc["test"]["reject"] = r.reject;
  return doc;
}

TestReport report_from_json(const nlohmann::json& doc) {
  TestReport r;
  r.n = doc.at("n").get<int>();
  const auto& var = doc.at("variant");
  if (var.at("kind").get<std::string>() == "hp1975") {
    r.variant = Variant::hp1975();
  } else {
    r.variant = Variant::generalized(var.at("j").get<double>());
  }
  const auto& stat = doc.at("statistic");
  r.raw = stat.at("raw").get<double>();
  if (stat.contains("scaled")) {
    ScaledValue sv;
    sv.raw = r.raw;
    sv.scaled = stat.at("scaled").get<double>();
    sv.scale_factor = stat.at("scale_factor").get<double>();
    sv.name = parse_scale_name(stat.at("scale").get<std::string>());
    sv.user_c = stat.contains("user_c") ? stat.at("user_c").get<double>() : 0.0;
    r.scaled = sv;
  }
  const auto& pv = doc.at("p_value");
  r.p_lower = pv.at("lower").get<double>();
  r.p_upper = pv.at("upper").get<double>();
  r.method = pv.at("method").get<std::string>();
  if (pv.contains("replications")) r.mc_replications = pv.at("replications").get<std::int64_t>();
  if (pv.contains("seed")) r.mc_seed = pv.at("seed").get<std::uint64_t>();
  const auto& test = doc.at("test");
  r.alpha = test.at("alpha").get<double>();
  r.sidedness = parse_sidedness(test.at("sidedness").get<std::string>());
  r.reject = test.at("reject").get<bool>();
  return r;
}

std::string to_text(const TestReport& r, int digits) {
  std::ostringstream out;
  out << "n:          " << r.n << "\n";
  out << "variant:    " << r.variant.name() << "\n";
  out << "statistic:  " << sig(r.raw, digits) << "\n";
  if (r.scaled) {
    out << "scaled:     " << sig(r.scaled->scaled, digits) << "  (factor "
        << sig(r.scaled->scale_factor, digits) << ", " << to_string(r.scaled->name) << ")\n";
  }
  out << "p (lower):  " << sig(r.p_lower, digits) << "\n";
  out << "p (upper):  " << sig(r.p_upper, digits) << "\n";
  out << "method:     " << r.method;
  if (r.mc_replications) out << " (N=" << *r.mc_replications << ", seed=" << *r.mc_seed << ")";
  out << "\n";
  out << "decision:   " << (r.reject ? "reject" : "fail to reject") << " exponentiality at alpha="
      << sig(r.alpha, digits) << " (" << to_string(r.sidedness) << ")\n";
  return out.str();
}

}  // namespace nbue
