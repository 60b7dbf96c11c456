#include <charconv>
#include <cstdio>
#include <sstream>

#include "gsops/function_spec.hpp"
#include "gsops_cli/cli.hpp"

namespace gsops::cli {

namespace {

int parse_int(const std::string& s, const char* what) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) throw ConfigError(std::string("bad ") + what + " '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

}  // namespace

const char* version() { return "0.3.0"; }

std::vector<int> parse_n_spec(const std::string& spec) {
  if (spec.empty()) throw ConfigError("empty n spec");
  std::vector<int> ns;
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw ConfigError("n spec must be start:factor:count, got '" + spec + "'");
    const int start = parse_int(parts[0], "start");
    const int factor = parse_int(parts[1], "factor");
    const int count = parse_int(parts[2], "count");
    if (factor < 2) throw ConfigError("geometric factor must be >= 2");
    if (count < 1) throw ConfigError("count must be >= 1");
    long long v = start;
    for (int i = 0; i < count; ++i) {
      if (v > 1000000) throw ConfigError("n spec grows beyond 1e6");
      ns.push_back(static_cast<int>(v));
      v *= factor;
    }
  } else {
    for (const auto& p : split(spec, ',')) ns.push_back(parse_int(p, "n"));
  }
  for (int n : ns) {
    if (n < 2) throw ConfigError("n values must be >= 2, got " + std::to_string(n));
  }
  return ns;
}

std::string canonical_text(const RunConfig& cfg) {
  std::ostringstream s;
  char tol[32];
  std::snprintf(tol, sizeof tol, "%.17g", cfg.tol);
  s << "command=" << cfg.command << ";fns=";
  for (const auto& f : cfg.fns) s << f << ',';
  s << ";ns=";
  for (int n : cfg.ns) s << n << ',';
  s << ";ell_mult=" << cfg.ell_mult << ";grid=" << cfg.grid << ";tol=" << tol
    << ";format=" << (cfg.format == Format::Csv ? "csv" : "json") << ";seed=" << cfg.seed
    << ";probes=" << cfg.probes;
  if (cfg.command == "eval") {
    s << ";form=" << cfg.form_path << ";xs=";
    for (double x : cfg.xs) {
      char b[32];
      std::snprintf(b, sizeof b, "%.17g", x);
      s << b << ',';
    }
  }
  return s.str();
}

std::uint64_t config_hash(const RunConfig& cfg) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canonical_text(cfg)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void validate(const RunConfig& cfg) {
  static const std::vector<std::string> commands = {"verify", "table", "norms", "kfunc",
                                                    "voronovskaya", "converse", "eval"};
  if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end()) {
    throw ConfigError("unknown command '" + cfg.command + "'");
  }
  if (cfg.command == "eval") {
    if (cfg.form_path.empty()) throw ConfigError("eval needs --form");
    if (cfg.xs.empty()) throw ConfigError("eval needs --x");
    for (double x : cfg.xs)
      if (!(x >= 0.0 && x <= 1.0)) throw ConfigError("eval points must lie in [0,1]");
    return;
  }
  if (cfg.fns.empty()) throw ConfigError("empty function list");
  for (const auto& f : cfg.fns) {
    const auto ids = catalog_ids();
    if (std::find(ids.begin(), ids.end(), f) == ids.end()) throw ConfigError("unknown function '" + f + "'");
  }
  if (cfg.ns.empty()) throw ConfigError("empty n list");
  for (int n : cfg.ns)
    if (n < 2) throw ConfigError("n values must be >= 2");
  if (cfg.grid < 64) throw ConfigError("grid must be >= 64");
  if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive");
  if (cfg.ell_mult < 1) throw ConfigError("ell-mult must be >= 1");
  if (cfg.probes < 0) throw ConfigError("probes must be >= 0");
}

}  // namespace gsops::cli
