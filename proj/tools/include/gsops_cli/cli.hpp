#pragma once

// Command-line driver: verification suites and convergence tables written as
// CSV or JSON. Exit codes: 0 all pass, 1 violation, 2 usage/config error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsops::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Format { Csv, Json };

struct RunConfig {
  std::string command;
  std::vector<std::string> fns;
  std::vector<int> ns;
  int ell_mult = 16;
  int grid = 2001;
  double tol = 1e-12;
  std::string out;  // empty = stdout
  Format format = Format::Csv;
  std::uint64_t seed = 1;
  int probes = 200;
  // eval only
  std::string form_path;
  std::vector<double> xs;
};

/// "start:factor:count" (geometric) or "a,b,c". Values must be >= 2 and a
/// geometric factor must be >= 2.
std::vector<int> parse_n_spec(const std::string& spec);

/// FNV-1a over the canonical text of every field that affects output.
std::uint64_t config_hash(const RunConfig& cfg);
std::string canonical_text(const RunConfig& cfg);

/// Throws ConfigError on invalid combinations.
void validate(const RunConfig& cfg);

/// Runs one command and writes the table to `out`. Returns the exit code.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full front end: parses argv, opens --out, dispatches.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

const char* version();

}  // namespace gsops::cli
