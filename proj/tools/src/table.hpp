#pragma once

#include <climits>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "gsops_cli/cli.hpp"

namespace gsops::cli {

using Cell = std::variant<std::monostate, std::string, long long, double, bool>;

struct Row {
  // sort key
  std::string f;
  long long n = 0;
  long long ell = -1;
  std::vector<Cell> cells;
  bool violation = false;
};

inline constexpr long long kFooterKey = LLONG_MAX;

class Table {
 public:
  Table(std::string command, std::vector<std::string> columns)
      : command_(std::move(command)), columns_(std::move(columns)) {}

  void add(Row row) { rows_.push_back(std::move(row)); }
  void append(std::vector<Row> rows) {
    for (auto& r : rows) rows_.push_back(std::move(r));
  }
  bool any_violation() const;
  /// Failing rows as CSV lines, in sorted order.
  void write_violations(std::ostream& out) const;

  /// Stable sort by (f, n, ell), then write header line, columns and rows.
  void write(const RunConfig& cfg, std::ostream& out);

 private:
  std::string command_;
  std::vector<std::string> columns_;
  std::vector<Row> rows_;
};

std::string format_real(double v);
std::string header_line(const RunConfig& cfg);

}  // namespace gsops::cli
