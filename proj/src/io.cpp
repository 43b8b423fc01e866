#include "nbue/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace nbue {
namespace {

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '#';
  }
  return true;
}

double parse_number(const std::string& token, long line_no, const std::string& source) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw DataError(source + ":" + std::to_string(line_no) + ": cannot parse '" + token +
                        "' as a number",
                    line_no);
  }
  return value;
}

}  // namespace

std::vector<double> read_lifetimes(std::istream& in, const std::string& source_name) {
  std::vector<double> values;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream fields(line);
    std::string token;
    while (fields >> token) values.push_back(parse_number(token, line_no, source_name));
  }
  return values;
}

std::vector<double> read_lifetimes_file(const std::string& path) {
  if (path == "-") return read_lifetimes(std::cin, "<stdin>");
  std::ifstream in(path);
  if (!in) throw DataError("cannot open input file '" + path + "'", 0);
  return read_lifetimes(in, path);
}

bool TttCriticalTable::has(int n, double alpha) const noexcept {
  for (const Row& r : rows_)
    if (r.n == n && std::abs(r.alpha - alpha) <= 1e-9) return true;
  return false;
}

double TttCriticalTable::lookup(int n, double alpha) const {
  for (const Row& r : rows_)
    if (r.n == n && std::abs(r.alpha - alpha) <= 1e-9) return r.value;
  fail(Errc::missing_external_table,
       "external critical-value table has no row for n=" + std::to_string(n) +
           ", alpha=" + std::to_string(alpha));
}

TttCriticalTable TttCriticalTable::parse_csv(std::istream& in, const std::string& source_name) {
  TttCriticalTable table;
  std::string line;
  long line_no = 0;
  if (!std::getline(in, line)) throw DataError(source_name + ": empty file", 1);
  ++line_no;
  // tolerate trailing CR from CRLF files
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "n,alpha,value") {
    throw DataError(source_name + ":1: expected header 'n,alpha,value', got '" + line + "'",
                    1);
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank_or_comment(line)) continue;
    std::istringstream fields(line);
    std::string n_tok, a_tok, v_tok, extra;
    if (!std::getline(fields, n_tok, ',') || !std::getline(fields, a_tok, ',') ||
        !std::getline(fields, v_tok, ',')) {
      throw DataError(source_name + ":" + std::to_string(line_no) +
                          ": expected three comma-separated fields",
                      line_no);
    }
    if (std::getline(fields, extra, ',')) {
      throw DataError(source_name + ":" + std::to_string(line_no) + ": too many fields",
                      line_no);
    }
    const double n_val = parse_number(n_tok, line_no, source_name);
    Row row;
    row.n = static_cast<int>(n_val);
    if (row.n < 2 || static_cast<double>(row.n) != n_val) {
      throw DataError(source_name + ":" + std::to_string(line_no) +
                          ": n must be an integer >= 2, got '" + n_tok + "'",
                      line_no);
    }
    row.alpha = parse_number(a_tok, line_no, source_name);
    if (!(row.alpha > 0.0 && row.alpha < 1.0)) {
      throw DataError(source_name + ":" + std::to_string(line_no) +
                          ": alpha must lie in (0,1), got '" + a_tok + "'",
                      line_no);
    }
    row.value = parse_number(v_tok, line_no, source_name);
    table.rows_.push_back(row);
  }
  return table;
}

TttCriticalTable TttCriticalTable::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open critical-value table '" + path + "'", 0);
  return parse_csv(in, path);
}

}  // namespace nbue
