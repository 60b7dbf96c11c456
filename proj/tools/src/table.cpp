#include "table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace gsops::cli {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string csv_cell(const Cell& c) {
  struct V {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const std::string& s) const { return csv_escape(s); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(V{}, c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  struct V {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
      // non-finite values have no JSON literal; keep the CSV spelling
      if (!std::isfinite(v)) return format_real(v);
      return v;
    }
    nlohmann::ordered_json operator()(bool b) const { return b; }
  };
  return std::visit(V{}, c);
}

std::string hash_hex(const RunConfig& cfg) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
  return buf;
}

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string header_line(const RunConfig& cfg) {
  return std::string("# gsops ") + version() + " command=" + cfg.command + " config_hash=" + hash_hex(cfg) +
         " seed=" + std::to_string(cfg.seed);
}

bool Table::any_violation() const {
  return std::any_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.violation; });
}

void Table::write_violations(std::ostream& out) const {
  for (const auto& r : rows_) {
    if (!r.violation) continue;
    out << "violation:";
    for (std::size_t i = 0; i < r.cells.size(); ++i) out << (i ? "," : " ") << csv_cell(r.cells[i]);
    out << '\n';
  }
}

void Table::write(const RunConfig& cfg, std::ostream& out) {
  std::stable_sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) {
    if (a.f != b.f) return a.f < b.f;
    if (a.n != b.n) return a.n < b.n;
    return a.ell < b.ell;
  });

  if (cfg.format == Format::Csv) {
    out << header_line(cfg) << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
    out << '\n';
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.cells.size(); ++i) out << (i ? "," : "") << csv_cell(r.cells[i]);
      out << '\n';
    }
    return;
  }

  // JSON Lines: header object, then one object per row keyed by column.
  nlohmann::ordered_json head;
  head["tool"] = "gsops";
  head["version"] = version();
  head["command"] = command_;
  head["config_hash"] = hash_hex(cfg);
  head["seed"] = cfg.seed;
  head["columns"] = columns_;
  out << head.dump() << '\n';
  for (const auto& r : rows_) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < r.cells.size() && i < columns_.size(); ++i) obj[columns_[i]] = json_cell(r.cells[i]);
    out << obj.dump() << '\n';
  }
}

}  // namespace gsops::cli
