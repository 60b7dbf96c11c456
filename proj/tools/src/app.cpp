#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "gsops/function_spec.hpp"
#include "gsops_cli/cli.hpp"

namespace gsops::cli {

namespace {

std::string default_n_spec(const std::string& command) {
  if (command == "table") return "4:2:5";
  if (command == "kfunc" || command == "converse") return "2:2:3";
  return "2:2:5";
}

std::vector<std::string> split_ids(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Goodman-Sharma operator verification and convergence reports", "gsops"};
  app.set_version_flag("--version", version());

  RunConfig cfg;
  std::string fns_text, n_text, format_text = "csv";
  app.add_option("command", cfg.command, "verify | table | norms | kfunc | voronovskaya | converse | eval")
      ->required()
      ->check(CLI::IsMember({"verify", "table", "norms", "kfunc", "voronovskaya", "converse", "eval"}));
  auto* fns_opt = app.add_option("--fns", fns_text, "comma-separated function ids (default: whole catalog)");
  app.add_option("--n", n_text, "n list \"a,b,c\" or geometric range \"start:factor:count\"");
  app.add_option("--ell-mult", cfg.ell_mult, "converse: ell = ell-mult * n")->capture_default_str();
  app.add_option("--grid", cfg.grid, "sup-norm grid size")->capture_default_str();
  app.add_option("--tol", cfg.tol, "quadrature tolerance")->capture_default_str();
  app.add_option("--out", cfg.out, "output path (default: stdout)");
  app.add_option("--format", format_text, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", cfg.seed, "seed for randomized probes")->capture_default_str();
  app.add_option("--probes", cfg.probes, "norms: random coefficient probes per n")->capture_default_str();
  app.add_option("--form", cfg.form_path, "eval: BernsteinForm JSON file");
  app.add_option("--x", cfg.xs, "eval: evaluation points")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, r;
    const int code = app.exit(e, o, r);
    out << o.str();
    err << r.str();
    return code == 0 ? kExitPass : kExitUsage;
  }

  cfg.format = format_text == "json" ? Format::Json : Format::Csv;
  try {
    cfg.fns = fns_opt->count() ? split_ids(fns_text) : catalog_ids();
    if (cfg.command != "eval") cfg.ns = parse_n_spec(n_text.empty() ? default_n_spec(cfg.command) : n_text);
  } catch (const ConfigError& e) {
    err << "gsops: " << e.what() << '\n';
    return kExitUsage;
  }

  if (cfg.out.empty()) return run_command(cfg, out, err);
  std::ostringstream buffer;
  const int code = run_command(cfg, buffer, err);
  if (code == kExitUsage) return code;
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) {
    err << "gsops: cannot write " << cfg.out << '\n';
    return kExitUsage;
  }
  file << buffer.str();
  return code;
}

}  // namespace gsops::cli
