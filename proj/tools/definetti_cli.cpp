// Command-line front end. Talks to the solver only through the C API.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "definetti/definetti.h"
#include "grid.hpp"

namespace {

using nlohmann::json;
using definetti::cli::parse_grid;
using definetti::cli::parse_number;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
  ApiError(dfn_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  dfn_status status;
};

void check(dfn_status status) {
  if (status != DFN_OK) {
    throw ApiError(status, std::string(dfn_status_string(status)) + ": " + dfn_last_error());
  }
}

struct ModelDeleter {
  void operator()(dfn_model* m) const { dfn_model_destroy(m); }
};
struct DualDeleter {
  void operator()(dfn_dual* d) const { dfn_dual_destroy(d); }
};
using ModelHandle = std::unique_ptr<dfn_model, ModelDeleter>;
using DualHandle = std::unique_ptr<dfn_dual, DualDeleter>;

std::string format_number(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json number_or_inf(double v) {
  if (std::isinf(v)) return v < 0 ? json("-inf") : json("inf");
  return v;
}

// Rows of mixed numbers and labels, written as CSV or JSON.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;

  void write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        os << (i ? "," : "");
        if (row[i].is_number()) {
          os << format_number(row[i].get<double>());
        } else {
          os << row[i].get<std::string>();
        }
      }
      os << '\n';
    }
  }

  json to_json() const {
    json out = json::array();
    for (const auto& row : rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[header[i]] = row[i];
      out.push_back(std::move(obj));
    }
    return out;
  }
};

// Every flag is captured as raw text so that config-file values and
// command-line values go through the same parsing.
struct Flags {
  std::map<std::string, std::string> raw;
  bool compare = false;
  std::string config;
  std::string command;

  bool has(const std::string& key) const { return raw.count(key) && !raw.at(key).empty(); }

  double number(const std::string& key) const {
    if (!has(key)) throw UsageError("missing required option --" + key);
    try {
      return parse_number(raw.at(key));
    } catch (const std::invalid_argument& e) {
      throw UsageError("--" + key + ": " + e.what());
    }
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  std::uint64_t count(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const double v = number(key);
    if (!(v >= 0.0) || v != std::floor(v) || v > 1.8e19) {
      throw UsageError("--" + key + " must be a nonnegative integer");
    }
    return static_cast<std::uint64_t>(v);
  }

  std::vector<double> grid(const std::string& key) const {
    if (!has(key)) throw UsageError("missing required option --" + key);
    std::vector<double> g;
    try {
      g = parse_grid(raw.at(key));
    } catch (const std::invalid_argument& e) {
      throw UsageError("--" + key + ": " + e.what());
    }
    for (double v : g) {
      if (!std::isfinite(v)) throw UsageError("--" + key + ": grid values must be finite");
    }
    return g;
  }
};

std::vector<double> increasing_grid(const Flags& f, const std::string& key, double min_value) {
  std::vector<double> g = f.grid(key);
  if (!definetti::cli::strictly_increasing(g)) {
    throw UsageError("--" + key + ": grid must be strictly increasing");
  }
  if (g.front() < min_value) {
    throw UsageError("--" + key + ": grid values must be >= " + format_number(min_value));
  }
  return g;
}

std::string json_to_raw(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return format_number(v.get<double>());
  if (v.is_array()) {
    std::string s;
    for (const json& e : v) {
      if (!e.is_number()) throw UsageError("config arrays must hold numbers");
      s += (s.empty() ? "" : ",") + format_number(e.get<double>());
    }
    return s;
  }
  throw UsageError("unsupported config value: " + v.dump());
}

// Config values fill every flag not given explicitly on the command line.
void merge_config(Flags& flags, const CLI::App& app) {
  if (flags.config.empty()) return;
  std::ifstream in(flags.config);
  if (!in) throw UsageError("cannot open config file " + flags.config);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw UsageError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
  for (const auto& [key_in, value] : cfg.items()) {
    std::string key = key_in;
    for (char& ch : key) {
      if (ch == '_') ch = '-';
    }
    if (key == "command") {
      if (flags.command.empty()) flags.command = value.get<std::string>();
      continue;
    }
    if (key == "compare") {
      if (app.get_option("--compare")->count() == 0) flags.compare = value.get<bool>();
      continue;
    }
    if (!flags.raw.count(key)) throw UsageError("unknown config key '" + key_in + "'");
    if (app.get_option("--" + key)->count() == 0) flags.raw[key] = json_to_raw(value);
  }
}

struct Context {
  Flags flags;
  ModelHandle model;
  double lambda, c, alpha, delta;

  json params_json() const {
    return {{"lambda", lambda}, {"c", c}, {"alpha", alpha}, {"delta", delta}};
  }
};

void emit(const Context& ctx, const std::string& text) {
  if (ctx.flags.has("out")) {
    std::ofstream out(ctx.flags.raw.at("out"));
    if (!out) throw UsageError("cannot write " + ctx.flags.raw.at("out"));
    out << text;
  } else {
    std::cout << text;
  }
}

std::string output_format(const Context& ctx, const std::string& fallback) {
  const std::string fmt = ctx.flags.has("format") ? ctx.flags.raw.at("format") : fallback;
  if (fmt != "csv" && fmt != "json") throw UsageError("--format must be csv or json");
  return fmt;
}

void write_gnuplot(const Context& ctx, const Table& table, const std::string& title,
                   int first_column, int last_column) {
  if (!ctx.flags.has("gnuplot")) return;
  if (!ctx.flags.has("out") || output_format(ctx, "csv") != "csv") {
    throw UsageError("--gnuplot needs --out with csv output");
  }
  std::ofstream gp(ctx.flags.raw.at("gnuplot"));
  if (!gp) throw UsageError("cannot write " + ctx.flags.raw.at("gnuplot"));
  gp << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set title '" << title << "'\n"
     << "set xlabel '" << table.header.front() << "'\n"
     << "plot for [i=" << first_column << ":" << last_column << "] '" << ctx.flags.raw.at("out")
     << "' using 1:i with lines\n";
}

void emit_table(const Context& ctx, const Table& table, const std::string& title, int first_column,
                int last_column) {
  if (output_format(ctx, "csv") == "json") {
    emit(ctx, json{{"command", ctx.flags.command},
                   {"params", ctx.params_json()},
                   {"rows", table.to_json()}}
                      .dump(2) +
                  "\n");
  } else {
    std::ostringstream os;
    table.write_csv(os);
    emit(ctx, os.str());
  }
  write_gnuplot(ctx, table, title, first_column, last_column);
}

json outcome_json(const dfn_outcome& o) {
  json j;
  j["case"] = dfn_case_string(o.case_tag);
  j["lambda_star"] = o.has_pair ? json(o.lambda_star) : json(nullptr);
  j["b_star"] = o.has_pair ? json(o.b_star) : json(nullptr);
  j["slack"] = o.has_pair ? json(o.slack) : json(nullptr);
  j["value"] = o.value_is_neg_inf ? json("-inf") : json(o.value);
  j["limit_strategy"] = static_cast<bool>(o.limit_strategy);
  return j;
}

int cmd_solve(Context& ctx) {
  const double x0 = ctx.flags.number("x0");
  const double horizon = ctx.flags.number("T");
  const double gap_tol = ctx.flags.number_or("gap-tol", 1e-6);
  dfn_outcome outcome;
  check(dfn_solve(ctx.model.get(), x0, horizon, &outcome));
  double k_t = 0.0;
  check(dfn_discounted_horizon(ctx.model.get(), horizon, &k_t));
  double threshold = 0.0;
  check(dfn_horizon_threshold(ctx.model.get(), x0, &threshold));

  json report = outcome_json(outcome);
  report["command"] = "solve";
  report["params"] = ctx.params_json();
  report["x0"] = x0;
  report["T"] = horizon;
  report["K_T"] = k_t;
  report["horizon_threshold"] = threshold;
  if (outcome.has_pair) {
    dfn_gap_report gap;
    check(dfn_duality_gap(ctx.model.get(), x0, horizon, gap_tol, &gap));
    report["duality_gap"] = {{"dual_minimum", gap.dual_minimum},
                             {"argmin_lambda", gap.argmin},
                             {"primal_value", gap.primal_value},
                             {"gap", gap.gap},
                             {"tolerance", gap.tolerance},
                             {"within_tolerance", static_cast<bool>(gap.within_tolerance)}};
  } else {
    report["duality_gap"] = nullptr;
  }
  if (outcome.case_tag == DFN_CASE_DO_NOTHING) {
    report["note"] =
        "value 0 is the limit of barrier strategies as b grows without bound; the null "
        "strategy meets the constraint only in that limit";
  }

  if (output_format(ctx, "json") == "csv") {
    Table t{{"x0", "T", "K_T", "case", "lambda_star", "b_star", "value", "slack"}, {}};
    auto opt = [&](double v) { return outcome.has_pair ? json(v) : json(""); };
    t.rows.push_back({x0, horizon, k_t, dfn_case_string(outcome.case_tag), opt(outcome.lambda_star),
                      opt(outcome.b_star),
                      outcome.value_is_neg_inf ? json("-inf") : json(outcome.value),
                      opt(outcome.slack)});
    std::ostringstream os;
    t.write_csv(os);
    emit(ctx, os.str());
  } else {
    emit(ctx, report.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_barrier_map(Context& ctx) {
  const std::vector<double> grid = increasing_grid(ctx.flags, "lambdas", 0.0);
  Table t{{"lambda", "barrier"}, {}};
  for (double m : grid) {
    double b = 0.0;
    check(dfn_barrier_from_lambda(ctx.model.get(), m, &b));
    t.rows.push_back({m, b});
  }
  emit_table(ctx, t, "Optimal barrier", 2, 2);
  return kExitOk;
}

int cmd_psi_curve(Context& ctx) {
  std::vector<double> barriers;
  if (ctx.flags.has("barriers")) {
    barriers = ctx.flags.grid("barriers");
  } else {
    double b0 = 0.0;
    check(dfn_barrier_from_lambda(ctx.model.get(), 0.0, &b0));
    barriers = {b0};
  }
  for (double b : barriers) {
    if (!(b >= 0.0)) throw UsageError("--barriers: values must be >= 0");
  }
  const std::vector<double> xs = increasing_grid(ctx.flags, "xs", 0.0);
  Table t{{"x"}, {}};
  for (double b : barriers) t.header.push_back("psi_b=" + format_number(b));
  t.header.push_back("psi_hat");
  for (double x : xs) {
    std::vector<json> row{x};
    for (double b : barriers) {
      double v = 0.0;
      check(dfn_psi(ctx.model.get(), b, x, &v));
      row.push_back(v);
    }
    double hat = 0.0;
    check(dfn_psi_hat(ctx.model.get(), x, &hat));
    row.push_back(hat);
    t.rows.push_back(std::move(row));
  }
  emit_table(ctx, t, "Discounted lifetime", 2, static_cast<int>(t.header.size()));
  return kExitOk;
}

int cmd_dual_curve(Context& ctx) {
  const double x0 = ctx.flags.number("x0");
  const double horizon = ctx.flags.number("T");
  const std::vector<double> grid = increasing_grid(ctx.flags, "lambdas", 0.0);
  std::vector<double> barriers(grid.size());
  std::vector<double> values(grid.size());
  check(dfn_dual_curve(ctx.model.get(), x0, horizon, grid.data(), grid.size(), barriers.data(),
                       values.data()));
  Table t{{"lambda", "barrier", "value"}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({grid[i], barriers[i], values[i]});
  emit_table(ctx, t, "Dual value", 3, 3);
  return kExitOk;
}

int cmd_value_curve(Context& ctx) {
  const double horizon = ctx.flags.number("T");
  const std::vector<double> xs = increasing_grid(ctx.flags, "xs", 0.0);
  dfn_dual* raw = nullptr;
  check(dfn_dual_solve(ctx.model.get(), 0.0, horizon, &raw));
  const DualHandle unconstrained(raw);
  Table t{{"x", "unconstrained", "constrained", "case"}, {}};
  for (double x : xs) {
    double free_value = 0.0;
    check(dfn_dual_value(unconstrained.get(), x, &free_value));
    dfn_outcome o;
    check(dfn_solve(ctx.model.get(), x, horizon, &o));
    t.rows.push_back({x, free_value, o.value_is_neg_inf ? json("-inf") : json(o.value),
                      dfn_case_string(o.case_tag)});
  }
  emit_table(ctx, t, "Value functions", 2, 3);
  return kExitOk;
}

int cmd_regions(Context& ctx) {
  const std::vector<double> xs = increasing_grid(ctx.flags, "xs", 0.0);
  const std::vector<double> ks = increasing_grid(ctx.flags, "ks", 0.0);
  if (ks.back() * ctx.delta >= 1.0) throw UsageError("--ks: values must be below 1/delta");
  double b0 = 0.0;
  check(dfn_barrier_from_lambda(ctx.model.get(), 0.0, &b0));
  Table t{{"x0", "K", "case", "psi_b0", "psi_hat", "inv_delta"}, {}};
  for (double x : xs) {
    double at_b0 = 0.0;
    double hat = 0.0;
    check(dfn_psi(ctx.model.get(), b0, x, &at_b0));
    check(dfn_psi_hat(ctx.model.get(), x, &hat));
    for (double k : ks) {
      dfn_outcome o;
      check(dfn_solve_discounted(ctx.model.get(), x, k, &o));
      t.rows.push_back({x, k, dfn_case_string(o.case_tag), at_b0, hat, 1.0 / ctx.delta});
    }
  }
  emit_table(ctx, t, "Solution regions", 4, 6);
  return kExitOk;
}

int cmd_simulate(Context& ctx) {
  const double x0 = ctx.flags.number("x0");
  const double b = ctx.flags.number("b");
  dfn_sim_config cfg;
  check(dfn_sim_config_default(ctx.model.get(), b, x0, &cfg));
  cfg.n_paths = ctx.flags.count("n-paths", cfg.n_paths);
  cfg.seed = ctx.flags.count("seed", cfg.seed);
  cfg.t_max = ctx.flags.number_or("t-max", cfg.t_max);
  cfg.threads = static_cast<unsigned>(ctx.flags.count("threads", 0));

  dfn_sim_estimate est;
  check(dfn_simulate(ctx.model.get(), &cfg, &est));
  json report;
  report["command"] = "simulate";
  report["params"] = ctx.params_json();
  report["config"] = {{"x0", x0},     {"b", b},           {"n_paths", cfg.n_paths},
                      {"seed", cfg.seed}, {"t_max", cfg.t_max}};
  report["estimate"] = {{"mean_dividends", est.mean_dividends}, {"se_dividends", est.se_dividends},
                        {"mean_psi", est.mean_psi},             {"se_psi", est.se_psi},
                        {"truncation_bound", est.truncation_bound},
                        {"n_ruined", est.n_ruined}};

  int code = kExitOk;
  if (ctx.flags.compare) {
    double dividends = 0.0;
    double lifetime = 0.0;
    check(dfn_barrier_dividends(ctx.model.get(), b, x0, &dividends));
    check(dfn_psi(ctx.model.get(), b, x0, &lifetime));
    auto z = [](double mean, double se, double exact) {
      return se > 0.0 ? (mean - exact) / se : (mean == exact ? 0.0 : INFINITY);
    };
    const double z_div = z(est.mean_dividends, est.se_dividends, dividends);
    const double z_psi = z(est.mean_psi, est.se_psi, lifetime);
    const bool pass = std::abs(z_div) <= 5.0 && std::abs(z_psi) <= 5.0;
    report["compare"] = {{"closed_form_dividends", dividends},
                         {"closed_form_psi", lifetime},
                         {"z_dividends", number_or_inf(z_div)},
                         {"z_psi", number_or_inf(z_psi)},
                         {"pass", pass}};
    if (!pass) code = kExitValidation;
  }
  if (ctx.flags.has("T")) {
    dfn_slack_estimate slack;
    check(dfn_estimate_constraint_slack(ctx.model.get(), &cfg, ctx.flags.number("T"), &slack));
    report["constraint_slack"] = {{"T", ctx.flags.number("T")},
                                  {"mean", slack.mean},
                                  {"se", slack.se},
                                  {"ci_low", slack.ci_low},
                                  {"ci_high", slack.ci_high},
                                  {"confidence", slack.confidence}};
  }
  emit(ctx, report.dump(2) + "\n");
  return code;
}

const char* kFooter = R"(Grids: "a,b,c" lists, "lo:hi:n" linear ranges, "log:lo:hi:n" log ranges.

Outputs (CSV header row; numbers with 17 significant digits; "-inf" marks
an infeasible value):
  solve        JSON: case, lambda_star, b_star, value, slack, duality_gap
  barrier-map  lambda,barrier
  psi-curve    x,psi_b=<b>...,psi_hat
  dual-curve   lambda,barrier,value
  value-curve  x,unconstrained,constrained,case
  regions      x0,K,case,psi_b0,psi_hat,inv_delta
  simulate     JSON: estimate [, compare, constraint_slack]

Exit codes: 0 success, 2 usage or input error, 3 simulation disagrees with
the closed form (|z| > 5).)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained de Finetti dividend solver (Cramer-Lundberg, exponential claims)"};
  app.footer(kFooter);
  app.require_subcommand(0, 1);
  app.fallthrough();

  Flags flags;
  const std::vector<std::pair<std::string, std::string>> options = {
      {"lambda", "claim arrival rate (default 1)"},
      {"c", "premium rate (default 1.3)"},
      {"alpha", "exponential claim-size rate (default 1)"},
      {"delta", "discount rate (default 0.1)"},
      {"x0", "initial surplus"},
      {"T", "constraint horizon"},
      {"b", "barrier level (simulate)"},
      {"lambdas", "multiplier grid"},
      {"barriers", "barrier list (psi-curve; default b0)"},
      {"xs", "surplus grid"},
      {"ks", "discounted-horizon grid K (regions)"},
      {"gap-tol", "duality-gap tolerance (solve; default 1e-6)"},
      {"seed", "simulation seed (default 0)"},
      {"n-paths", "simulated paths (default 100000)"},
      {"t-max", "simulation truncation horizon (default 40/delta)"},
      {"threads", "simulation threads (default: all cores)"},
      {"out", "output file (default stdout)"},
      {"format", "csv or json"},
      {"gnuplot", "also write a gnuplot script for the CSV written to --out"},
  };
  for (const auto& [name, help] : options) {
    flags.raw[name];
    app.add_option("--" + name, flags.raw[name], help);
  }
  app.add_option("--config", flags.config, "JSON file supplying any flag; explicit flags win");
  app.add_flag("--compare", flags.compare, "simulate: compare against the closed forms");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"solve", "classify (x0, T) and report the optimal pair and value"},
      {"barrier-map", "optimal barrier as a function of the multiplier"},
      {"psi-curve", "discounted lifetime psi_b(x) per barrier, with its b -> inf limit"},
      {"dual-curve", "dual value V_Lambda(x0) along a multiplier grid"},
      {"value-curve", "unconstrained and constrained value functions in x"},
      {"regions", "case of every (x0, K) cell with the boundary curves"},
      {"simulate", "Monte Carlo estimate of dividends and discounted lifetime"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->callback([&flags, n = name] { flags.command = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    merge_config(flags, app);
    if (flags.command.empty()) throw UsageError("no command given (see --help)");

    Context ctx{std::move(flags), nullptr, 0, 0, 0, 0};
    ctx.lambda = ctx.flags.number_or("lambda", 1.0);
    ctx.c = ctx.flags.number_or("c", 1.3);
    ctx.alpha = ctx.flags.number_or("alpha", 1.0);
    ctx.delta = ctx.flags.number_or("delta", 0.1);
    dfn_model* raw = nullptr;
    check(dfn_model_create(ctx.lambda, ctx.c, ctx.alpha, ctx.delta, &raw));
    ctx.model.reset(raw);
    int net_profit = 1;
    check(dfn_model_net_profit(ctx.model.get(), &net_profit));
    if (!net_profit) {
      std::cerr << "warning: c <= lambda/alpha (no net profit); formulas still apply\n";
    }

    const std::string& cmd = ctx.flags.command;
    if (cmd == "solve") return cmd_solve(ctx);
    if (cmd == "barrier-map") return cmd_barrier_map(ctx);
    if (cmd == "psi-curve") return cmd_psi_curve(ctx);
    if (cmd == "dual-curve") return cmd_dual_curve(ctx);
    if (cmd == "value-curve") return cmd_value_curve(ctx);
    if (cmd == "regions") return cmd_regions(ctx);
    if (cmd == "simulate") return cmd_simulate(ctx);
    throw UsageError("unknown command '" + cmd + "'");
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.status == DFN_ERR_INTERNAL ? kExitFailure : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
