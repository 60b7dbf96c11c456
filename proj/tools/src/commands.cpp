#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "gsops/analysis.hpp"
#include "gsops/basis.hpp"
#include "gsops/errors.hpp"
#include "gsops/exactpoly.hpp"
#include "gsops/function_spec.hpp"
#include "gsops/operators.hpp"
#include "gsops_cli/cli.hpp"
#include "table.hpp"

namespace gsops::cli {

namespace {

using Task = std::function<std::vector<Row>()>;

// Runs tasks on a small pool; results are concatenated in task order, so the
// thread count never shows up in the output.
std::vector<Row> run_tasks(const std::vector<Task>& tasks) {
  std::vector<std::vector<Row>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Row> all;
  for (auto& r : results)
    for (auto& row : r) all.push_back(std::move(row));
  return all;
}

Row report_row(const InequalityReport& r, const std::string& f, bool with_ell, bool with_note) {
  Row row;
  row.f = f;
  row.n = r.n();
  row.ell = r.ell().value_or(-1);
  row.cells.emplace_back(r.name());
  row.cells.emplace_back(f);
  row.cells.emplace_back(static_cast<long long>(r.n()));
  if (with_ell) row.cells.emplace_back(r.ell() ? Cell(static_cast<long long>(*r.ell())) : Cell{});
  row.cells.emplace_back(r.lhs());
  row.cells.emplace_back(r.rhs());
  row.cells.emplace_back(r.margin());
  const bool ok = r.pass() && std::isfinite(r.lhs());
  row.cells.emplace_back(ok);
  if (with_note) row.cells.emplace_back(std::string());
  row.violation = !ok;
  return row;
}

Row skip_row(const std::string& name, const std::string& f, int n, std::optional<int> ell,
             const std::string& reason, bool with_ell) {
  Row row;
  row.f = f;
  row.n = n;
  row.ell = ell.value_or(-1);
  row.cells.emplace_back(name);
  row.cells.emplace_back(f);
  row.cells.emplace_back(static_cast<long long>(n));
  if (with_ell) row.cells.emplace_back(ell ? Cell(static_cast<long long>(*ell)) : Cell{});
  row.cells.emplace_back(Cell{});
  row.cells.emplace_back(Cell{});
  row.cells.emplace_back(Cell{});
  row.cells.emplace_back(std::string("skip"));
  row.cells.emplace_back(reason);
  return row;
}

double rational_abs(const Rational& q) { return std::abs(q.get_d()); }

// --- verify -----------------------------------------------------------------

std::vector<Row> verify_basis(const RunConfig& cfg, int n) {
  std::vector<InequalityReport> reps;

  {
    std::mt19937_64 rng(cfg.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(n)));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double x = unif(rng);
      for (double alpha : {-2.0, -1.0, -0.5, 0.0, 0.5, 2.0}) {
        const double want = alpha * alpha + 2.0 - 2.0 / n;
        worst = std::max(worst, std::abs(phi_big(alpha, n, x) - want));
      }
    }
    reps.emplace_back("phi_identity", n, std::nullopt, worst, 1e-9);
  }

  {
    double worst = 0.0;
    for (int k = 0; k <= n; ++k) {
      const auto dp = dtilde_form(BernsteinForm::unit(n, k));
      for (int i = 1; i <= 19; ++i) {
        const double x = i / 20.0;
        const double p = bernstein_value(n, k, x);
        const double kk = k, nk = n - k;
        const double scale = (kk * (kk - 1) * (1 - x) / x + 2 * kk * nk + nk * (nk - 1) * x / (1 - x)) * p;
        if (scale == 0.0) continue;
        worst = std::max(worst, std::abs(dp(x) - t_value(n, k, x) * p) / scale);
      }
    }
    reps.emplace_back("eigen_relation", n, std::nullopt, worst, 1e-10);
  }

  {
    double worst = 0.0;
    for (int i = 0; i <= 4; ++i) {
      for (int j = 0; j <= 10; ++j) {
        const double x = j / 10.0;
        const auto p = bernstein_vector(n, x).values;
        double brute = 0.0;
        for (int k = 0; k <= n; ++k) brute += std::pow(static_cast<double>(k) / n - x, i) * p[k];
        worst = std::max(worst, std::abs(brute - moment(n, i, x)));
      }
    }
    reps.emplace_back("moments", n, std::nullopt, worst, 1e-12);
  }

  const auto ts = tail_sums(n);
  const double nn = n;
  reps.emplace_back("tail_lambda_lower", n, std::nullopt, 1.0 / (2 * nn * nn), ts.lambda);
  reps.emplace_back("tail_lambda_upper", n, std::nullopt, ts.lambda, 1.0 / (nn * nn));
  reps.emplace_back("tail_theta_upper", n, std::nullopt, ts.theta, 4.0 / (9 * nn * nn * nn));

  const auto leb = lebesgue_bound(n, cfg.grid);
  reps.emplace_back("lebesgue", n, std::nullopt, leb.value, std::sqrt(3.0 - 2.0 / n));
  reps.emplace_back("lebesgue_floor", n, std::nullopt, 1.0, leb.value);

  for (const auto& r : check_bn_decomposition(n, cfg.grid).all()) reps.push_back(r);

  std::vector<Row> rows;
  for (const auto& r : reps) rows.push_back(report_row(r, "-", false, false));
  return rows;
}

std::vector<Row> verify_exact(const FunctionSpec& f, int n) {
  const auto& p = *f.exact();
  std::vector<InequalityReport> reps;
  try {
    const auto c = commute_check_exact(p, n, n + 1);
    reps.emplace_back("commute_dtilde_u", n, std::nullopt, rational_abs(c.dtilde_u), 0.0);
    reps.emplace_back("commute_dtilde_utilde", n, std::nullopt, rational_abs(c.dtilde_utilde), 0.0);
    reps.emplace_back("commute_u_utilde", n, std::nullopt, rational_abs(c.u_utilde), 0.0);
    reps.emplace_back("commute_utilde_utilde", n, std::nullopt, rational_abs(c.utilde_utilde), 0.0);
  } catch (const InvariantViolation&) {
    reps.emplace_back("commute", n, std::nullopt, std::nan(""), 0.0);
  }
  try {
    reps.emplace_back("telescope", n, std::nullopt, rational_abs(telescope_check_exact(p, n)), 0.0);
  } catch (const InvariantViolation&) {
    reps.emplace_back("telescope", n, std::nullopt, std::nan(""), 0.0);
  }
  std::vector<Row> rows;
  for (const auto& r : reps) rows.push_back(report_row(r, f.id(), false, false));
  return rows;
}

std::vector<Row> verify_float(const RunConfig& cfg, const FunctionSpec& f, int n) {
  std::vector<std::function<InequalityReport()>> checks = {
      [&] { return check_jackson(f, n, cfg.grid, cfg.tol); },
      [&] { return check_voronovskaya(f, n, cfg.grid, cfg.tol); },
      [&] { return check_u_contraction(f, n, cfg.grid, cfg.tol); },
      [&] { return check_utilde_contraction(f, n, cfg.grid, cfg.tol); },
      [&] { return check_bernstein_inequality(f, n, cfg.grid, cfg.tol); },
      [&] { return check_direct(f, n, cfg.grid, cfg.tol); },
  };
  if (f.exact()) checks.push_back([&] { return check_series_remainder(f, n, 4 * n, cfg.grid); });
  std::vector<Row> rows;
  for (const auto& c : checks) {
    try {
      rows.push_back(report_row(c(), f.id(), false, false));
    } catch (const PreconditionError&) {
      // identity does not apply to this f
    }
  }
  return rows;
}

int cmd_verify(const RunConfig& cfg, Table& table) {
  std::vector<Task> tasks;
  for (int n : cfg.ns) tasks.push_back([&cfg, n] { return verify_basis(cfg, n); });
  for (const auto& id : cfg.fns) {
    const auto& f = catalog_entry(id);
    for (int n : cfg.ns) {
      if (f.exact()) tasks.push_back([&f, n] { return verify_exact(f, n); });
      tasks.push_back([&cfg, &f, n] { return verify_float(cfg, f, n); });
    }
  }
  table.append(run_tasks(tasks));
  return table.any_violation() ? kExitViolation : kExitPass;
}

// --- table ------------------------------------------------------------------

std::optional<double> slope(const std::vector<int>& ns, const std::vector<double>& errs) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (errs[i] < 1e-13 || !std::isfinite(errs[i])) continue;
    xs.push_back(std::log(static_cast<double>(ns[i])));
    ys.push_back(std::log(errs[i]));
  }
  if (xs.size() < 2) return std::nullopt;
  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) sx += xs[i], sy += ys[i];
  const double mx = sx / m, my = sy / m;
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  return num / den;
}

int cmd_table(const RunConfig& cfg, Table& table) {
  struct Cellset {
    double err_u = 0, err_ut = 0, lambda = 0;
    std::optional<double> bound;
  };
  std::vector<std::vector<Cellset>> grid(cfg.fns.size(), std::vector<Cellset>(cfg.ns.size()));
  std::vector<Task> tasks;
  for (std::size_t a = 0; a < cfg.fns.size(); ++a) {
    for (std::size_t b = 0; b < cfg.ns.size(); ++b) {
      tasks.push_back([&, a, b]() -> std::vector<Row> {
        const auto& f = catalog_entry(cfg.fns[a]);
        const int n = cfg.ns[b];
        auto& c = grid[a][b];
        c.err_u = sup_norm(u_error(f, n, cfg.tol), cfg.grid).value;
        c.err_ut = sup_norm(utilde_error(f, n, cfg.tol), cfg.grid).value;
        c.lambda = tail_sums(n).lambda;
        if (f.smoothness().dtilde_in_w2) {
          c.bound = sup_norm(f.dtilde_power(2), cfg.grid).value / (static_cast<double>(n) * n);
        }
        return {};
      });
    }
  }
  run_tasks(tasks);

  for (std::size_t a = 0; a < cfg.fns.size(); ++a) {
    const auto& id = cfg.fns[a];
    std::vector<double> eu, eut;
    for (std::size_t b = 0; b < cfg.ns.size(); ++b) {
      const auto& c = grid[a][b];
      Row row;
      row.f = id;
      row.n = cfg.ns[b];
      row.cells = {id, static_cast<long long>(cfg.ns[b]), c.err_u, c.err_ut, c.lambda};
      if (c.bound) {
        const double ratio = *c.bound > 0 ? c.err_ut / *c.bound : 0.0;
        row.cells.emplace_back(*c.bound);
        row.cells.emplace_back(ratio);
        row.violation = !(c.err_ut <= *c.bound * (1 + 1e-9) + 1e-12);
      } else {
        row.cells.emplace_back(Cell{});
        row.cells.emplace_back(Cell{});
      }
      table.add(std::move(row));
      eu.push_back(c.err_u);
      eut.push_back(c.err_ut);
    }
    Row footer;
    footer.f = id;
    footer.n = kFooterKey;
    const auto su = slope(cfg.ns, eu);
    const auto sut = slope(cfg.ns, eut);
    footer.cells = {id, std::string("slope"), su ? Cell(*su) : Cell{}, sut ? Cell(*sut) : Cell{},
                    Cell{}, Cell{}, Cell{}};
    table.add(std::move(footer));
  }
  return table.any_violation() ? kExitViolation : kExitPass;
}

// --- kfunc / voronovskaya / converse / norms --------------------------------

int cmd_kfunc(const RunConfig& cfg, Table& table) {
  std::vector<Task> tasks;
  for (const auto& id : cfg.fns) {
    for (int n : cfg.ns) {
      tasks.push_back([&cfg, id, n]() -> std::vector<Row> {
        const auto& f = catalog_entry(id);
        Row row;
        row.f = id;
        row.n = n;
        const auto s = kfunctional_sandwich(f, n, default_candidate_ms(n), cfg.grid, cfg.tol);
        const auto d = check_direct(f, n, cfg.grid, cfg.tol);
        const bool bracket = s.lower <= s.upper * (1 + 1e-9) + 1e-12;
        const bool ok = bracket && d.pass();
        row.cells = {id, static_cast<long long>(n), s.t, s.lower, s.upper, s.candidate_id,
                     d.lhs(), d.rhs(), ok, std::string(bracket ? "" : "lower exceeds upper")};
        row.violation = !ok;
        return {row};
      });
    }
  }
  table.append(run_tasks(tasks));
  return table.any_violation() ? kExitViolation : kExitPass;
}

int cmd_voronovskaya(const RunConfig& cfg, Table& table) {
  std::vector<Task> tasks;
  for (const auto& id : cfg.fns) {
    for (int n : cfg.ns) {
      tasks.push_back([&cfg, id, n]() -> std::vector<Row> {
        try {
          return {report_row(check_voronovskaya(catalog_entry(id), n, cfg.grid, cfg.tol), id, false, true)};
        } catch (const PreconditionError& e) {
          return {skip_row("voronovskaya", id, n, std::nullopt, e.what(), false)};
        }
      });
    }
  }
  table.append(run_tasks(tasks));
  return table.any_violation() ? kExitViolation : kExitPass;
}

int cmd_converse(const RunConfig& cfg, Table& table) {
  std::vector<Task> tasks;
  for (const auto& id : cfg.fns) {
    for (int n : cfg.ns) {
      tasks.push_back([&cfg, id, n]() -> std::vector<Row> {
        const int ell = cfg.ell_mult * n;
        try {
          const auto r = check_converse(catalog_entry(id), n, ell, cfg.grid, cfg.tol);
          return {report_row(r.converse, id, true, true), report_row(r.iterate, id, true, true)};
        } catch (const PreconditionError& e) {
          return {skip_row("converse", id, n, ell, e.what(), true)};
        }
      });
    }
  }
  table.append(run_tasks(tasks));
  return table.any_violation() ? kExitViolation : kExitPass;
}

int cmd_norms(const RunConfig& cfg, Table& table) {
  std::vector<Task> tasks;
  for (int n : cfg.ns) {
    tasks.push_back([&cfg, n]() -> std::vector<Row> {
      std::vector<Row> rows;
      const auto leb = lebesgue_bound(n, cfg.grid);
      rows.push_back(report_row(InequalityReport("lebesgue", n, std::nullopt, leb.value, std::sqrt(3.0 - 2.0 / n)),
                                "-", false, true));
      rows.push_back(report_row(InequalityReport("lebesgue_floor", n, std::nullopt, 1.0, leb.value), "-", false, true));

      // Seeded random coefficient probes; report the worst ratio.
      if (cfg.probes > 0) {
        std::mt19937_64 rng(cfg.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(n));
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        InequalityReport worst;
        double worst_ratio = -1.0;
        for (int i = 0; i < cfg.probes; ++i) {
          std::vector<double> u(n + 1);
          for (auto& c : u) c = unif(rng);
          const auto r = check_bernstein_inequality(u, cfg.grid);
          const double ratio = r.lhs() / r.rhs();
          if (ratio > worst_ratio) worst_ratio = ratio, worst = r;
        }
        Row row = report_row(InequalityReport("bernstein_probe", n, std::nullopt, worst.lhs(), worst.rhs()), "-",
                             false, true);
        row.cells.back() = std::string("worst of ") + std::to_string(cfg.probes) + " probes";
        rows.push_back(std::move(row));
      }
      return rows;
    });
    for (const auto& id : cfg.fns) {
      tasks.push_back([&cfg, id, n]() -> std::vector<Row> {
        try {
          return {report_row(check_bernstein_inequality(catalog_entry(id), n, cfg.grid, cfg.tol), id, false, true)};
        } catch (const PreconditionError& e) {
          return {skip_row("bernstein", id, n, std::nullopt, e.what(), false)};
        }
      });
    }
  }
  table.append(run_tasks(tasks));
  return table.any_violation() ? kExitViolation : kExitPass;
}

int cmd_eval(const RunConfig& cfg, Table& table) {
  std::ifstream in(cfg.form_path);
  if (!in) throw ConfigError("cannot read " + cfg.form_path);
  std::stringstream buf;
  buf << in.rdbuf();
  BernsteinForm p;
  try {
    p = BernsteinForm::from_json(buf.str());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  for (std::size_t i = 0; i < cfg.xs.size(); ++i) {
    Row row;
    row.n = static_cast<long long>(i);
    row.cells = {cfg.xs[i], p(cfg.xs[i])};
    table.add(std::move(row));
  }
  return kExitPass;
}

std::vector<std::string> columns_for(const std::string& command) {
  if (command == "verify") return {"name", "f", "n", "lhs", "rhs", "margin", "pass"};
  if (command == "table") return {"f", "n", "err_U", "err_Utilde", "lambda_n", "bound_jackson", "ratio"};
  if (command == "kfunc")
    return {"f", "n", "t", "lower", "upper", "candidate_id", "direct_lhs", "direct_rhs", "pass", "note"};
  if (command == "converse") return {"name", "f", "n", "ell", "lhs", "rhs", "margin", "pass", "note"};
  if (command == "eval") return {"x", "value"};
  return {"name", "f", "n", "lhs", "rhs", "margin", "pass", "note"};
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    err << "gsops: " << e.what() << '\n';
    return kExitUsage;
  }
  Table table(cfg.command, columns_for(cfg.command));
  int code = kExitPass;
  try {
    if (cfg.command == "verify") code = cmd_verify(cfg, table);
    else if (cfg.command == "table") code = cmd_table(cfg, table);
    else if (cfg.command == "kfunc") code = cmd_kfunc(cfg, table);
    else if (cfg.command == "voronovskaya") code = cmd_voronovskaya(cfg, table);
    else if (cfg.command == "converse") code = cmd_converse(cfg, table);
    else if (cfg.command == "norms") code = cmd_norms(cfg, table);
    else code = cmd_eval(cfg, table);
  } catch (const ConfigError& e) {
    err << "gsops: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "gsops: " << cfg.command << " failed: " << e.what() << '\n';
    return kExitViolation;
  }
  table.write(cfg, out);
  if (code == kExitViolation) table.write_violations(err);
  return code;
}

}  // namespace gsops::cli
