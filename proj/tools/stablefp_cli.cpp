// SPDX-FileCopyrightText: Copyright (c) 2026 The stablefp authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end over the C interface.
//
//   stablefp eval    --fn D --alpha 1.5 --x 1
//   stablefp density --name T1 --alpha 1.5 --grid 0.1:10:20:log
//   stablefp sample  --name T1_product --alpha 1.5 --n 1000 --seed 7
//   stablefp check   --suite all --alpha 1.5 --seed 42
//   stablefp table   --fn D --alpha 1.5 --grid 0.01:100:50:log --format json
//
// Exit codes: 0 success, 1 a check failed, 2 usage or domain error,
// 3 numerical non-convergence.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stablefp/stablefp.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- output records -------------------------------------------------------

using Cell = std::variant<double, std::int64_t, bool, std::string>;

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<Cell> row) {
    if (row.size() != columns_.size()) throw std::logic_error("row width mismatch");
    rows_.push_back(std::move(row));
  }
  /// Extra JSON-only payload per row (check details).
  void attach(std::size_t row, nlohmann::ordered_json extra) { extra_[row] = std::move(extra); }

  std::string csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i];
    out += '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += format(row[i]);
      }
      out += '\n';
    }
    return out;
  }

  std::string json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      nlohmann::ordered_json o;
      for (std::size_t i = 0; i < columns_.size(); ++i) {
        std::visit([&](const auto& v) { o[columns_[i]] = v; }, rows_[r][i]);
      }
      if (auto it = extra_.find(r); it != extra_.end()) o["details"] = it->second;
      arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
  }

 private:
  static std::string format(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) {
      if (std::isnan(*d)) return "nan";
      if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.16e", *d);
      return buf;
    }
    if (const std::int64_t* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    if (const bool* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return std::get<std::string>(c);
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::map<std::size_t, nlohmann::ordered_json> extra_;
};

// ---- options --------------------------------------------------------------

struct Options {
  std::vector<double> alphas;
  std::string fn;
  std::string name;
  std::string method = "auto";
  std::string kind = "density";
  std::optional<double> x;
  std::string grid;
  double q = 1.0;
  std::optional<double> lambda;
  double order = 0.5;
  double tol = 1e-10;
  std::uint64_t seed = 42;
  std::uint64_t stream = 0;
  std::size_t n = 1000;
  std::int64_t steps = 1024;
  double horizon = 1.0;
  double dt = 1.0 / 1024.0;
  std::size_t paths = 0;
  std::string suite = "all";
  std::vector<std::string> set;
  std::optional<double> check_tol;
  std::string format = "csv";
  std::string out;
  int workers = 1;
};

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 4) throw UsageError("--grid expects start:stop:count:lin|log");
  double a, b;
  long count;
  try {
    std::size_t used = 0;
    a = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("start");
    b = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("stop");
    count = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("count");
  } catch (const std::exception&) {
    throw UsageError("--grid: cannot parse " + spec);
  }
  if (count < 1 || count > 10'000'000) throw UsageError("--grid: count must be in [1, 1e7]");
  const bool log = parts[3] == "log";
  if (!log && parts[3] != "lin") throw UsageError("--grid: spacing must be lin or log");
  if (log && !(a > 0.0 && b > 0.0)) throw UsageError("--grid: log spacing needs positive ends");
  std::vector<double> v(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    v[i] = log ? a * std::pow(b / a, f) : a + (b - a) * f;
  }
  if (count > 1) v.back() = b;
  return v;
}

std::vector<double> points(const Options& o, const char* flag) {
  if (!o.grid.empty() && o.x) throw UsageError(std::string("give either ") + flag + " or --grid");
  if (!o.grid.empty()) return parse_grid(o.grid);
  if (o.x) return {*o.x};
  throw UsageError(std::string("missing ") + flag + " or --grid");
}

// ---- status handling ------------------------------------------------------

struct Outcome {
  bool numerical_failure = false;
};

void check_status(sfp_status s, Outcome& out) {
  switch (s) {
    case SFP_OK: return;
    case SFP_ERR_NUMERICAL:
      std::cerr << "stablefp: " << sfp_last_error() << "\n";
      out.numerical_failure = true;
      return;
    case SFP_ERR_DOMAIN:
    case SFP_ERR_USAGE: throw UsageError(sfp_last_error());
    default: throw std::runtime_error(sfp_last_error());
  }
}

// ---- verbs ----------------------------------------------------------------

const std::vector<std::string> kEvalFns{"D",  "F",         "mlf", "mlf_derivative", "mu",
                                        "D4", "ml_density", "survival_S_tau", "wh_transform"};

Table run_eval(const Options& o, Outcome& oc) {
  const std::string& fn = o.fn;
  if (std::find(kEvalFns.begin(), kEvalFns.end(), fn) == kEvalFns.end())
    throw UsageError("unknown --fn " + fn);
  const bool uses_order = fn == "mlf" || fn == "mlf_derivative" || fn == "ml_density";
  const bool uses_alpha = !uses_order && fn != "D4";
  if (uses_alpha && o.alphas.empty()) throw UsageError("--alpha is required for " + fn);
  if (fn == "wh_transform") {
    if (!o.lambda && o.grid.empty()) throw UsageError("wh_transform needs --lambda or --grid");
    if (o.lambda && !o.grid.empty()) throw UsageError("give either --lambda or --grid");
    const std::vector<double> lams = o.grid.empty() ? std::vector<double>{*o.lambda}
                                                    : parse_grid(o.grid);
    Table t({"alpha", "q", "lambda", "value", "method"});
    for (double a : o.alphas)
      for (double l : lams) {
        double v = 0.0;
        check_status(sfp_wh_transform(a, o.q, l, &v), oc);
        t.add({a, o.q, l, v, std::string("closed_form")});
      }
    return t;
  }
  const std::vector<double> xs = points(o, "--x");
  const std::vector<double> index = uses_order ? std::vector<double>{o.order}
                                    : uses_alpha ? o.alphas
                                                 : std::vector<double>{4.0};
  std::vector<std::string> cols{uses_order ? "order" : "alpha"};
  if (fn == "survival_S_tau") cols.push_back("q");
  for (const char* c : {"x", "value", "abs_err", "method"}) cols.emplace_back(c);
  Table t(cols);
  for (double a : index) {
    for (double x : xs) {
      sfp_result r{0.0, 0.0, "closed_form", 1};
      sfp_status s = SFP_OK;
      if (fn == "D") s = sfp_D(a, x, o.tol, &r);
      else if (fn == "F") s = sfp_F(a, x, o.tol, &r);
      else if (fn == "mlf") s = sfp_mlf(a, x, o.tol, &r);
      else if (fn == "mlf_derivative") s = sfp_mlf_derivative(a, x, o.tol, &r);
      else if (fn == "survival_S_tau") s = sfp_survival_S_tau(a, o.q, x, o.tol, &r);
      else if (fn == "mu") s = sfp_mu_density(a, x, &r.value);
      else if (fn == "ml_density") s = sfp_mlf_law_density(a, x, &r.value);
      else if (fn == "D4") s = sfp_D4_golden(x, &r.value);
      check_status(s, oc);
      std::vector<Cell> row{a};
      if (fn == "survival_S_tau") row.emplace_back(o.q);
      row.emplace_back(x);
      row.emplace_back(r.value);
      row.emplace_back(r.abs_err);
      row.emplace_back(std::string(r.method));
      t.add(std::move(row));
    }
  }
  return t;
}

Table run_density(const Options& o, Outcome& oc) {
  if (o.name.empty()) throw UsageError("--name is required");
  if (o.alphas.empty()) throw UsageError("--alpha is required");
  if (o.kind != "density" && o.kind != "cdf" && o.kind != "quantile")
    throw UsageError("--kind must be density, cdf or quantile");
  const std::vector<double> xs = points(o, "--t");
  Table t({"alpha", o.kind == "quantile" ? "p" : "t", "value", "abs_err", "method"});
  for (double a : o.alphas) {
    for (double x : xs) {
      sfp_result r{0.0, 0.0, "table", 1};
      sfp_status s;
      if (o.kind == "density") {
        s = sfp_density(o.name.c_str(), a, x, o.method.c_str(), o.tol, &r);
      } else if (o.kind == "cdf") {
        s = sfp_cdf(o.name.c_str(), a, x, &r);
      } else {
        s = sfp_quantile(o.name.c_str(), a, x, &r.value);
      }
      check_status(s, oc);
      t.add({a, x, r.value, r.abs_err, std::string(r.method)});
    }
  }
  return t;
}

Table run_sample(const Options& o, Outcome& oc) {
  if (o.name.empty()) throw UsageError("--name is required");
  if (o.alphas.size() != 1) throw UsageError("sample takes exactly one --alpha");
  if (o.n < 1) throw UsageError("--n must be >= 1");
  sfp_rng* rng = nullptr;
  check_status(sfp_rng_create(o.seed, o.stream, &rng), oc);
  sfp_sample_params p;
  sfp_sample_params_default(&p);
  p.alpha = o.alphas.front();
  p.n_steps = o.steps;
  p.horizon = o.horizon;
  p.q = o.q;
  p.grid_step = o.dt;
  p.workers = o.workers;
  std::vector<double> v(o.n);
  std::uint64_t redrawn = 0;
  const sfp_status s = sfp_sample(rng, o.name.c_str(), &p, o.n, v.data(), &redrawn);
  sfp_rng_destroy(rng);
  check_status(s, oc);
  Table t({"distribution", "alpha", "seed", "stream_id", "n", "i", "value"});
  const auto n = static_cast<std::int64_t>(o.n);
  for (std::int64_t i = 0; i < n; ++i) {
    t.add({o.name, p.alpha, static_cast<std::int64_t>(o.seed),
           static_cast<std::int64_t>(o.stream), n, i, v[static_cast<std::size_t>(i)]});
  }
  if (redrawn) std::cerr << "stablefp: " << redrawn << " draws rejected and redrawn\n";
  return t;
}

Table run_check(const Options& o, Outcome& oc, bool& all_passed) {
  nlohmann::ordered_json ov = nlohmann::ordered_json::object();
  if (o.check_tol) ov["tol"] = *o.check_tol;
  if (o.paths) ov["paths"] = static_cast<double>(o.paths);
  for (const std::string& kv : o.set) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value");
    try {
      std::size_t used = 0;
      const std::string val = kv.substr(eq + 1);
      const double d = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
      ov[kv.substr(0, eq)] = d;
    } catch (const std::exception&) {
      throw UsageError("--set: value of " + kv.substr(0, eq) + " is not a number");
    }
  }
  const std::vector<double> alphas =
      o.alphas.empty() ? std::vector<double>{1.2, 1.5, 1.8} : o.alphas;
  const std::string ovs = ov.dump();
  sfp_suite* suite = nullptr;
  check_status(sfp_suite_run(o.suite.c_str(), alphas.data(), alphas.size(), o.seed, o.workers,
                             ovs.c_str(), &suite),
               oc);
  if (!suite) return Table({"name", "alpha", "statistic", "threshold", "passed"});
  std::size_t n = 0;
  sfp_suite_size(suite, &n);
  Table t({"name", "alpha", "statistic", "threshold", "passed", "seed"});
  for (std::size_t i = 0; i < n; ++i) {
    sfp_report_info info;
    const char* js = nullptr;
    sfp_suite_report(suite, i, &info);
    sfp_suite_report_json(suite, i, &js);
    all_passed = all_passed && info.passed;
    t.add({std::string(info.name), info.alpha, info.statistic, info.threshold,
           info.passed != 0, static_cast<std::int64_t>(o.seed)});
    t.attach(i, nlohmann::ordered_json::parse(js)["details"]);
  }
  sfp_suite_destroy(suite);
  return t;
}

void emit(const Options& o, const Table& t) {
  const std::string text = o.format == "json" ? t.json() : t.csv();
  if (o.out.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw UsageError("cannot write to standard output");
    return;
  }
  std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot open --out " + o.out);
  f << text;
  f.close();
  if (!f) throw UsageError("cannot write --out " + o.out);
}

void add_common(CLI::App* c, Options& o) {
  c->add_option("--alpha", o.alphas, "stability index (repeatable)");
  c->add_option("--tol", o.tol, "target tolerance")->check(CLI::PositiveNumber);
  c->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  c->add_option("--out", o.out, "write output to PATH instead of stdout");
  c->add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1, 256));
}

void add_points(CLI::App* c, Options& o, const char* flag) {
  c->add_option(flag, o.x, "single evaluation point");
  c->add_option("--grid", o.grid, "start:stop:count:lin|log");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stablefp: first-passage laws of spectrally positive stable processes"};
  app.set_version_flag("--version", std::string(sfp_version()));
  app.require_subcommand(1, 1);
  Options o;

  CLI::App* eval = app.add_subcommand("eval", "evaluate D, F, E_a and related functions");
  add_common(eval, o);
  eval->add_option("--fn", o.fn, "function name")->required()->check(CLI::IsMember(kEvalFns));
  add_points(eval, o, "--x");
  eval->add_option("--order", o.order, "order of E_a for mlf, mlf_derivative, ml_density");
  eval->add_option("--q", o.q, "exponential clock rate")->check(CLI::PositiveNumber);
  eval->add_option("--lambda", o.lambda, "transform argument for wh_transform");

  CLI::App* dens = app.add_subcommand("density", "densities, distribution functions, quantiles");
  add_common(dens, o);
  dens->add_option("--name", o.name, "T, That1, g, h, T1, S1, Tbar, Ttilde")->required();
  dens->add_option("--method", o.method, "representation tag or auto");
  dens->add_option("--kind", o.kind, "density, cdf or quantile");
  add_points(dens, o, "--t");

  CLI::App* sample = app.add_subcommand("sample", "draw random samples");
  add_common(sample, o);
  sample->add_option("--name", o.name, "distribution to sample")->required();
  sample->add_option("--n", o.n, "number of draws");
  sample->add_option("--seed", o.seed, "seed");
  sample->add_option("--stream", o.stream, "stream id");
  sample->add_option("--steps", o.steps, "grid steps for path samplers")->check(CLI::PositiveNumber);
  sample->add_option("--horizon", o.horizon, "time horizon for path samplers")
      ->check(CLI::PositiveNumber);
  sample->add_option("--q", o.q, "rate of the exponential time")->check(CLI::PositiveNumber);
  sample->add_option("--dt", o.dt, "grid step for sup_exp_time")->check(CLI::PositiveNumber);

  CLI::App* check = app.add_subcommand("check", "run verification checks");
  add_common(check, o);
  check->add_option("--suite", o.suite, "all, deterministic, or comma separated names");
  check->add_option("--seed", o.seed, "seed");
  check->add_option("--paths", o.paths, "Monte Carlo paths for path checks");
  check->add_option("--check-tol", o.check_tol, "override the main tolerance of every check");
  check->add_option("--set", o.set, "override key=value, e.g. thm3.n=10000 (repeatable)");

  CLI::App* table = app.add_subcommand("table", "tabulate a function or density on a grid");
  add_common(table, o);
  table->add_option("--fn", o.fn, "eval function name");
  table->add_option("--name", o.name, "density name");
  table->add_option("--method", o.method, "representation tag or auto");
  table->add_option("--grid", o.grid, "start:stop:count:lin|log")->required();
  table->add_option("--q", o.q, "exponential clock rate")->check(CLI::PositiveNumber);
  table->add_option("--order", o.order, "order of E_a");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Outcome oc;
  bool all_passed = true;
  try {
    Table t({});
    if (*eval) {
      t = run_eval(o, oc);
    } else if (*dens) {
      t = run_density(o, oc);
    } else if (*sample) {
      t = run_sample(o, oc);
    } else if (*check) {
      t = run_check(o, oc, all_passed);
    } else {
      if (o.fn.empty() == o.name.empty()) throw UsageError("table needs exactly one of --fn, --name");
      t = o.fn.empty() ? run_density(o, oc) : run_eval(o, oc);
    }
    emit(o, t);
  } catch (const UsageError& e) {
    std::cerr << "stablefp: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "stablefp: internal error: " << e.what() << "\n";
    return kExitNumerical;
  }
  if (oc.numerical_failure) return kExitNumerical;
  return all_passed ? kExitOk : kExitCheckFailed;
}
