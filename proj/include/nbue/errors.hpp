#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace nbue {

/// Error categories used across the library. The CLI maps these onto its
/// exit-code taxonomy, tests assert on them instead of matching messages.
enum class Errc {
  empty_or_singleton,        // sample has fewer than two observations
  negative_value,            // lifetimes must be nonnegative
  all_zero,                  // sample mean would be zero
  bad_parameter,             // n < 2, j <= 0, p outside (0,1), ...
  unknown_scale,             // no named scale factor for this configuration
  nonpositive_user_constant, // user scale constant must be > 0
  precision_exhausted,       // precision ladder hit max_bits without agreement
  missing_external_table,    // external critical-value table required but absent
  data_error,                // malformed input data
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Input parse failure; carries the 1-based line number of the offending line.
class DataError : public Error {
 public:
  DataError(std::string msg, long line) : Error(Errc::data_error, std::move(msg)), line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace nbue
