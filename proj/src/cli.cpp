#include "duel/cli.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string_view>

#include <CLI11.hpp>

#include "duel/equilibrium.hpp"
#include "duel/sampling.hpp"
#include "duel/simulation.hpp"
#include "duel/verify.hpp"

namespace duel::cli {

namespace {

// JSON numbers carry 17 significant digits (lossless for doubles).
std::string fmt_json(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// CSV numbers use the shortest decimal form that round-trips.
std::string fmt_csv(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

class JsonWriter {
 public:
  JsonWriter& number(std::string_view key, double value) {
    return raw(key, fmt_json(value));
  }
  JsonWriter& integer(std::string_view key, std::int64_t value) {
    return raw(key, std::to_string(value));
  }
  JsonWriter& unsigned_integer(std::string_view key, std::uint64_t value) {
    return raw(key, std::to_string(value));
  }
  JsonWriter& boolean(std::string_view key, bool value) {
    return raw(key, value ? "true" : "false");
  }
  JsonWriter& string(std::string_view key, std::string_view value) {
    return raw(key, std::string("\"") + std::string(value) + "\"");
  }
  JsonWriter& raw(std::string_view key, std::string_view value) {
    sep();
    buf_ += '"';
    buf_ += key;
    buf_ += "\":";
    buf_ += value;
    return *this;
  }
  std::string str() const { return buf_ + "}"; }

 private:
  void sep() { buf_ += first_ ? (first_ = false, "") : ","; }
  std::string buf_ = "{";
  bool first_ = true;
};

std::string json_number_array(const std::vector<double>& values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) s += ',';
    s += fmt_json(values[i]);
  }
  return s + "]";
}

int emit(const std::string& payload, const std::string& out_path,
         std::ostream& out, std::ostream& err, int code) {
  if (out_path.empty()) {
    out << payload;
    return code;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    err << "error: cannot open output file: " << out_path << "\n";
    return kExitUsage;
  }
  file << payload;
  return code;
}

std::string solve_json(const Equilibrium& eq) {
  JsonWriter w;
  w.integer("n", eq.params.n)
      .number("c", eq.params.c)
      .number("p", eq.p)
      .number("v", eq.v)
      .number("b", eq.b)
      .number("residual", polynomial_residual(eq.params, 1.0 / eq.p));
  return w.str() + "\n";
}

std::string density_csv(const Equilibrium& eq, int points) {
  const FiringStrategy strategy{eq};
  std::string csv = "y,F,f,g,G\n";
  for (int i = 0; i < points; ++i) {
    // the fraction reaches exactly 1.0 so the last row sits exactly at b
    const double y = eq.b * (static_cast<double>(i) / (points - 1));
    csv += fmt_csv(y);
    csv += ',';
    csv += fmt_csv(score_cdf(eq, y));
    csv += ',';
    csv += fmt_csv(score_pdf(eq, y));
    csv += ',';
    csv += fmt_csv(firing_pdf(eq, y));
    csv += ',';
    csv += fmt_csv(firing_cdf(strategy, y));
    csv += '\n';
  }
  return csv;
}

std::string figure_csv(const std::string& kase, const std::vector<int>& ns,
                       double tol) {
  constexpr int kPoints = 400;
  // Preconditions for every curve are validated before any curve is solved.
  for (int n : ns) {
    const double c = kase == "constant-sum" ? 1.0 / n : 0.0;
    validate(GameParams{n, c});
  }
  std::string csv = "case,n,x,g\n";
  for (int n : ns) {
    const double c = kase == "constant-sum" ? 1.0 / n : 0.0;
    const Equilibrium eq = solve_equilibrium(GameParams{n, c}, tol);
    for (int i = 0; i < kPoints; ++i) {
      const double x = eq.b * (static_cast<double>(i) / (kPoints - 1));
      csv += kase;
      csv += ',';
      csv += std::to_string(n);
      csv += ',';
      csv += fmt_csv(x);
      csv += ',';
      csv += fmt_csv(firing_pdf(eq, x));
      csv += '\n';
    }
  }
  return csv;
}

std::string stats_json(const GameParams& params, const SimStats& stats) {
  JsonWriter w;
  w.integer("n", params.n).number("c", params.c);
  w.integer("rounds", stats.rounds).unsigned_integer("seed", stats.seed);
  if (stats.deviation_distance)
    w.number("deviation_distance", *stats.deviation_distance);
  w.number("mean_payoff", stats.mean_payoff)
      .number("std_error", stats.std_error)
      .number("all_miss_freq", stats.all_miss_freq)
      .boolean("degenerate_stats", stats.degenerate_stats);
  return w.str() + "\n";
}

std::string verify_json(const GameParams& params, const CheckReport& checks,
                        const DeviationReport& dev, double dev_tol,
                        bool pass) {
  std::string items = "[";
  for (std::size_t i = 0; i < checks.checks.size(); ++i) {
    const CheckResult& c = checks.checks[i];
    if (i > 0) items += ',';
    JsonWriter w;
    w.string("id", c.id)
        .number("residual", c.residual)
        .number("tolerance", c.tolerance)
        .boolean("pass", c.pass);
    items += w.str();
  }
  items += "]";

  JsonWriter devw;
  devw.number("v", dev.v)
      .integer("grid_size", static_cast<std::int64_t>(dev.grid.size()))
      .number("max_gap_on_support", dev.max_gap_on_support)
      .number("max_excess", dev.max_excess)
      .number("tolerance", dev_tol)
      .boolean("pass",
               dev.max_gap_on_support <= dev_tol && dev.max_excess <= dev_tol)
      .raw("grid", json_number_array(dev.grid))
      .raw("payoff", json_number_array(dev.payoff));

  JsonWriter w;
  w.integer("n", params.n)
      .number("c", params.c)
      .boolean("pass", pass)
      .raw("checks", items)
      .raw("deviation_report", devw.str());
  return w.str() + "\n";
}

struct Flags {
  int n = 2;
  double c = 0.0;
  double tol = kDefaultSolveTol;
  double tol_scale = 1.0;
  int points = 101;
  int grid = 10000;
  std::int64_t rounds = 100000;
  std::uint64_t seed = 0;
  int threads = 1;
  double y_dev = 0.0;
  std::string kase;
  std::vector<int> n_list;
  std::string out_path;
  std::string format;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"n-player silent duel: equilibrium solver, sampler, simulator "
               "and verifier"};
  app.require_subcommand(1);
  Flags f;

  auto add_instance_flags = [&](CLI::App* cmd) {
    cmd->add_option("--n", f.n, "number of players (>= 2)")->required();
    cmd->add_option("--c", f.c, "consolation prize in [0, 1)")->required();
  };
  auto add_output_flags = [&](CLI::App* cmd, const char* fmt) {
    cmd->add_option("--out", f.out_path, "output path (default: stdout)");
    cmd->add_option("--format", f.format, "output format")
        ->default_val(fmt)
        ->check(CLI::IsMember({fmt}));
  };

  CLI::App* solve = app.add_subcommand(
      "solve", "solve an instance and print p, v, b as JSON");
  add_instance_flags(solve);
  solve->add_option("--tol", f.tol, "relative residual tolerance");
  add_output_flags(solve, "json");

  CLI::App* density = app.add_subcommand(
      "density", "tabulate F, f, g, G on [0, b] as CSV");
  add_instance_flags(density);
  density->add_option("--points", f.points, "grid points (>= 2)");
  add_output_flags(density, "csv");

  CLI::App* figure = app.add_subcommand(
      "figure", "firing densities for a list of n, long-format CSV");
  figure->add_option("--case", f.kase, "constant-sum (c = 1/n) or prize (c = 0)")
      ->required()
      ->check(CLI::IsMember({"constant-sum", "prize"}));
  figure->add_option("--n-list", f.n_list, "player counts, comma separated")
      ->required()
      ->delimiter(',');
  add_output_flags(figure, "csv");

  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Monte Carlo rounds under the equilibrium strategy");
  add_instance_flags(simulate_cmd);
  simulate_cmd->add_option("--rounds", f.rounds, "number of rounds (>= 1)");
  simulate_cmd->add_option("--seed", f.seed, "64-bit master seed");
  simulate_cmd->add_option("--threads", f.threads,
                           "worker threads (result is thread-count invariant)");
  add_output_flags(simulate_cmd, "json");

  CLI::App* deviate = app.add_subcommand(
      "deviate", "Monte Carlo with player 0 fixed at distance y");
  add_instance_flags(deviate);
  deviate->add_option("--y", f.y_dev, "deviation distance in [0, 1)")
      ->required();
  deviate->add_option("--rounds", f.rounds, "number of rounds (>= 1)");
  deviate->add_option("--seed", f.seed, "64-bit master seed");
  deviate->add_option("--threads", f.threads, "worker threads");
  add_output_flags(deviate, "json");

  CLI::App* verify = app.add_subcommand(
      "verify", "run the equilibrium certificate; exit 0 iff all checks pass");
  add_instance_flags(verify);
  verify->add_option("--grid", f.grid, "deviation grid points (>= 2)");
  verify->add_option("--tol", f.tol_scale,
                     "scale factor applied to every default tolerance");
  add_output_flags(verify, "json");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("duel");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const GameParams params{f.n, f.c};
    // preconditions are rejected before any solving starts
    if (simulate_cmd->parsed() || deviate->parsed()) {
      if (f.rounds < 1) throw std::domain_error("rounds must be at least 1");
      if (f.threads < 1) throw std::domain_error("threads must be at least 1");
    }
    if (deviate->parsed() && !(f.y_dev >= 0.0 && f.y_dev < 1.0))
      throw std::domain_error("y must lie in [0, 1)");
    if (verify->parsed() && f.grid < 2)
      throw std::domain_error("grid must be at least 2");
    if (solve->parsed()) {
      const Equilibrium eq = solve_equilibrium(params, f.tol);
      return emit(solve_json(eq), f.out_path, out, err, kExitOk);
    }
    if (density->parsed()) {
      if (f.points < 2) throw std::domain_error("points must be at least 2");
      const Equilibrium eq = solve_equilibrium(params);
      return emit(density_csv(eq, f.points), f.out_path, out, err, kExitOk);
    }
    if (figure->parsed()) {
      return emit(figure_csv(f.kase, f.n_list, kDefaultSolveTol), f.out_path,
                  out, err, kExitOk);
    }
    if (simulate_cmd->parsed()) {
      const FiringStrategy strategy{solve_equilibrium(params)};
      const SimStats stats = simulate(strategy, f.rounds, f.seed, f.threads);
      return emit(stats_json(params, stats), f.out_path, out, err, kExitOk);
    }
    if (deviate->parsed()) {
      const FiringStrategy strategy{solve_equilibrium(params)};
      const SimStats stats =
          simulate_deviation(strategy, f.y_dev, f.rounds, f.seed, f.threads);
      return emit(stats_json(params, stats), f.out_path, out, err, kExitOk);
    }
    // verify
    const Equilibrium eq = solve_equilibrium(params);
    const CheckTolerances tols = CheckTolerances::scaled(f.tol_scale);
    const CheckReport checks = run_checks(eq, tols);
    const DeviationReport dev = best_response_report(eq, f.grid);
    const double dev_tol = 1e-10 * f.tol_scale;
    const bool pass = checks.all_passed() &&
                      dev.max_gap_on_support <= dev_tol &&
                      dev.max_excess <= dev_tol;
    return emit(verify_json(params, checks, dev, dev_tol, pass), f.out_path,
                out, err, pass ? kExitOk : kExitVerifyFailed);
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace duel::cli
