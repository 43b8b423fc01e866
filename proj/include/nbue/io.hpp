#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nbue/errors.hpp"

namespace nbue {

/// Reads lifetimes from text: one or more numbers per line, separated by
/// whitespace and/or commas. Lines whose first non-blank character is '#'
/// are ignored. Parse errors mention the 1-based line number.
std::vector<double> read_lifetimes(std::istream& in, const std::string& source_name);

/// File variant; path "-" reads stdin.
std::vector<double> read_lifetimes_file(const std::string& path);

/// External table of total-time-on-test critical values, one row per
/// (sample size, cumulative probability). Strict CSV with header
/// `n,alpha,value`.
class TttCriticalTable {
 public:
  bool has(int n, double alpha) const noexcept;
  /// Throws Errc::missing_external_table when the pair is absent.
  double lookup(int n, double alpha) const;
  bool empty() const noexcept { return rows_.empty(); }

  static TttCriticalTable parse_csv(std::istream& in, const std::string& source_name);
  static TttCriticalTable load_csv(const std::string& path);

 private:
  struct Row {
    int n;
    double alpha;
    double value;
  };
  std::vector<Row> rows_;
};

}  // namespace nbue
