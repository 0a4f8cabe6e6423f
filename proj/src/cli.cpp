// Copyright 2026 The Submax Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "submax/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "submax/analysis.hpp"

namespace submax::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::pair<std::int64_t, std::int64_t> parse_interval(const std::string& text,
                                                     const std::string& flag) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const std::int64_t v = std::stoll(text);
      return {v, v};
    }
    return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError(flag + " expects LO:HI, got '" + text + "'");
  }
}

std::string join(const std::vector<Element>& ids, char sep) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(ids[i]);
  }
  return s;
}

// Instance source shared by sweep/trace/check: a file or generator flags.
struct InstanceSource {
  std::string path;
  std::size_t items = 0;
  std::size_t elements = 0;
  std::string degree = "1:10";
  std::string value_range = "1:100";
  std::uint64_t seed = 1;

  void add_generator_flags(CLI::App* cmd) {
    cmd->add_option("--items", items, "number of items (ground set size)");
    cmd->add_option("--elements", elements, "number of covered elements (default: --items)");
    cmd->add_option("--degree", degree, "per-item coverage size range LO:HI")
        ->capture_default_str();
    cmd->add_option("--value-range", value_range, "element value range LO:HI")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "generator seed")->capture_default_str();
  }
  void add_flags(CLI::App* cmd) {
    cmd->add_option("--instance", path, "instance JSON file");
    add_generator_flags(cmd);
  }

  GeneratorParams params() const {
    GeneratorParams p;
    if (items == 0) throw UsageError("--items must be positive");
    p.n_items = items;
    p.n_elements = elements == 0 ? items : elements;
    const auto [dlo, dhi] = parse_interval(degree, "--degree");
    const auto [vlo, vhi] = parse_interval(value_range, "--value-range");
    if (dlo < 1 || dhi < dlo) throw UsageError("--degree needs 1 <= LO <= HI");
    p.degree_min = static_cast<std::size_t>(dlo);
    p.degree_max = static_cast<std::size_t>(dhi);
    p.value_min = vlo;
    p.value_max = vhi;
    p.seed = seed;
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return p;
  }

  CoverageInstance resolve() const {
    if (!path.empty()) return load(path);
    if (items == 0) throw UsageError("pass --instance FILE or generator flags (--items ...)");
    return generate(params());
  }
};

std::ostream* open_output(const std::string& path, std::ofstream& file, std::ostream& fallback) {
  if (path.empty() || path == "-") return &fallback;
  file.open(path, std::ios::binary);
  if (!file) throw std::runtime_error(path + ": cannot open for writing");
  return &file;
}

void write_table(std::ostream& os, const std::vector<std::vector<std::string>>& rows,
                 bool csv) {
  if (csv) {
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << '\n';
    }
    return;
  }
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], row[i].size());
    }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << row[i];
    os << '\n';
  }
}

bool parse_format(const std::string& fmt) {
  if (fmt == "csv") return true;
  if (fmt == "text") return false;
  throw UsageError("--format must be csv or text");
}

std::size_t thread_budget() {
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SUBMAX_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) threads = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      // Unparseable values fall back to the hardware default.
    }
  }
  return threads;
}

int cmd_solve(const std::string& path, double budget, const std::string& solver_flag,
              int max_iters, bool no_repair, const std::string& format, std::ostream& out,
              std::ostream& err) {
  const bool csv = parse_format(format);
  const SolverKind kind = parse_solver(solver_flag);
  const CoverageInstance inst = load(path);
  const auto g = coverage_objective(inst);
  const auto f = coverage_constraint(inst);
  SolverConfig cfg;
  cfg.budget = budget;
  cfg.max_iterations = max_iters;
  cfg.strict_feasibility_repair = !no_repair;
  SolveResult result = solve(kind, g, f, cfg);

  std::string kappa = "NA", delta = "NA", ratio = "NA";
  if (budget > 0.0) {
    try {
      result.certificate = build_certificate(g, f, budget);
      kappa = format_number(result.certificate->kappa_g);
      delta = format_number(result.certificate->delta_f);
      ratio = result.certificate->vacuous ? "vacuous" : format_number(result.certificate->ratio);
    } catch (const std::domain_error&) {
      // Every singleton objective value is zero; no certificate.
    }
  }
  const std::vector<std::string> header = {"solver", "budget",       "g",       "f",
                                           "iterations", "oracle_calls", "repairs", "kappa_g",
                                           "delta_f", "ratio",        "solution"};
  const std::vector<std::string> row = {solver_name(kind),
                                        format_number(budget),
                                        format_number(result.g_value),
                                        format_number(result.f_value),
                                        std::to_string(result.trace.size()),
                                        std::to_string(result.oracle_calls),
                                        std::to_string(result.repairs),
                                        kappa,
                                        delta,
                                        ratio,
                                        join(result.solution.elements(), ' ')};
  if (csv) {
    write_table(out, {header, row}, true);
  } else {
    out << "solver:       " << row[0] << '\n'
        << "budget:       " << row[1] << '\n'
        << "solution:     " << result.solution.to_string() << '\n'
        << "g:            " << row[2] << '\n'
        << "f:            " << row[3] << '\n'
        << "iterations:   " << row[4] << (result.converged ? " (converged)" : "") << '\n'
        << "oracle calls: " << row[5] << '\n'
        << "repairs:      " << row[6] << '\n'
        << "certificate:  kappa_g=" << kappa << " delta_f=" << delta << " ratio=" << ratio
        << '\n';
  }
  if (result.f_value > budget + kTolerance) {
    err << "error: solution violates the budget (f=" << row[3] << ")\n";
    return kCheckFailed;
  }
  return kOk;
}

int cmd_sweep(const InstanceSource& source, const std::string& solvers_flag,
              const std::string& bounds_flag, bool bounds_given, int max_iters, bool with_opt,
              bool no_timing, const std::string& format, const std::string& output,
              std::ostream& out, std::ostream& err) {
  const bool csv = parse_format(format);
  const CoverageInstance inst = source.resolve();
  std::vector<SolverKind> solvers;
  {
    std::stringstream ss(solvers_flag);
    std::string name;
    while (std::getline(ss, name, ','))
      if (!name.empty()) solvers.push_back(parse_solver(name));
  }
  if (solvers.empty()) throw UsageError("--solvers needs at least one solver");
  const std::vector<double> bounds = bounds_given ? parse_bounds(bounds_flag)
                                                  : default_bounds(inst);
  if (bounds.empty()) throw UsageError("--bounds needs at least one bound");
  const bool needs_exact =
      with_opt || std::find(solvers.begin(), solvers.end(), SolverKind::kExact) != solvers.end();
  if (needs_exact && inst.n_items > kMaxExactElements)
    throw UsageError("exact solver needs at most " + std::to_string(kMaxExactElements) +
                     " items, instance has " + std::to_string(inst.n_items));

  const auto rows = run_sweep(inst, bounds, solvers, max_iters, with_opt, thread_budget());
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header = {"bound",        "solver",  "g",      "f", "iterations",
                                     "oracle_calls", "wall_ms", "repairs"};
  if (with_opt) header.push_back("exact_opt");
  table.push_back(header);
  for (const auto& r : rows) {
    std::vector<std::string> line = {format_number(r.bound),
                                     r.solver,
                                     format_number(r.g),
                                     format_number(r.f),
                                     std::to_string(r.iterations),
                                     std::to_string(r.oracle_calls),
                                     no_timing ? "0" : format_number(std::round(r.wall_ms * 1000) / 1000),
                                     std::to_string(r.repairs)};
    if (with_opt) line.push_back(format_number(r.exact_opt));
    table.push_back(std::move(line));
  }
  std::ofstream file;
  write_table(*open_output(output, file, out), table, csv);

  for (const auto& r : rows) {
    if (r.f > r.bound + kTolerance) {
      err << "error: " << r.solver << " at bound " << format_number(r.bound)
          << " returned an infeasible set\n";
      return kCheckFailed;
    }
  }
  return kOk;
}

int cmd_trace(const InstanceSource& source, double budget, const std::string& solver_flag,
              int max_iters, const std::string& format, const std::string& output,
              std::ostream& out, std::ostream& err) {
  const bool csv = parse_format(format);
  const SolverKind kind = parse_solver(solver_flag);
  if (kind != SolverKind::kEm && kind != SolverKind::kSem)
    throw UsageError("trace supports --solver em or sem");
  const CoverageInstance inst = source.resolve();
  const auto g = coverage_objective(inst);
  const auto f = coverage_constraint(inst);
  SolverConfig cfg;
  cfg.budget = budget;
  cfg.max_iterations = max_iters;
  const SolveResult result = solve(kind, g, f, cfg);

  std::vector<std::vector<std::string>> table = {
      {"t", "g", "f", "ghat", "size", "theta_size"}};
  bool monotone = true;
  double previous = g.evaluate(result.initial);
  for (const auto& it : result.trace) {
    table.push_back({std::to_string(it.t), format_number(it.g_value), format_number(it.f_value),
                     format_number(it.ghat_value), std::to_string(it.x.count()),
                     std::to_string(it.theta_hat.count())});
    monotone = monotone && it.g_value >= previous - kTolerance;
    previous = it.g_value;
  }
  std::ofstream file;
  write_table(*open_output(output, file, out), table, csv);
  if (!monotone) {
    err << "error: objective decreased along the trace\n";
    return kCheckFailed;
  }
  return kOk;
}

int cmd_gen(const InstanceSource& source, const std::string& output, std::ostream& out) {
  if (output.empty()) throw UsageError("gen needs --output FILE");
  const CoverageInstance inst = generate(source.params());
  save(inst, output);
  const double total = std::accumulate(inst.values.begin(), inst.values.end(), 0.0);
  out << "wrote " << output << ": n_items=" << inst.n_items << " n_elements=" << inst.n_elements
      << " total_value=" << format_number(total) << '\n';
  return kOk;
}

int cmd_check(const InstanceSource& source, std::uint64_t samples, const std::string& format,
              std::ostream& out) {
  const bool csv = parse_format(format);
  const CoverageInstance inst = source.resolve();
  const auto g = coverage_objective(inst);
  const auto f = coverage_constraint(inst);
  const bool exhaustive = inst.n_items <= 15;
  std::vector<std::vector<std::string>> table = {{"function", "property", "mode", "checked",
                                                  "violations"}};
  bool ok = true;
  auto add = [&](const char* fn, const char* prop, const ViolationReport& r) {
    table.push_back({fn, prop, exhaustive ? "exhaustive" : "sampled", std::to_string(r.checked),
                     std::to_string(r.total)});
    ok = ok && r.ok();
  };
  const std::uint64_t seed = source.seed;
  for (const auto& [name, fn] : {std::pair<const char*, const SetFunctionOracle*>{"g", &g},
                                 std::pair<const char*, const SetFunctionOracle*>{"f", &f}}) {
    add(name, "monotone",
        exhaustive ? check_monotone(*fn) : check_monotone_sampled(*fn, samples, seed));
    add(name, "submodular",
        exhaustive ? check_submodular(*fn) : check_submodular_sampled(*fn, samples, seed));
  }
  write_table(out, table, csv);
  return ok ? kOk : kCheckFailed;
}

}  // namespace

std::string format_number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return std::string(buf) == "-0" ? "0" : buf;
  }
  char buf[40];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::vector<double> parse_bounds(const std::string& spec) {
  std::vector<double> bounds;
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      if (!(v >= 0.0)) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError("invalid bound '" + s + "' (nonnegative numbers expected)");
    }
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw UsageError("bound range must be START:STOP:STEP");
    const double start = number(parts[0]), stop = number(parts[1]), step = number(parts[2]);
    if (!(step > 0.0)) throw UsageError("bound range step must be positive");
    for (int k = 0; start + k * step <= stop + 1e-9; ++k) bounds.push_back(start + k * step);
    return bounds;
  }
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ','))
    if (!part.empty()) bounds.push_back(number(part));
  return bounds;
}

std::vector<double> default_bounds(const CoverageInstance& inst) {
  const auto f = coverage_constraint(inst);
  const double full = f.evaluate(SubsetMask::full(inst.n_items));
  std::vector<double> bounds;
  for (int k = 0; k < 11; ++k) bounds.push_back(std::round(full * (0.30 + 0.05 * k)));
  return bounds;
}

std::vector<SweepRow> run_sweep(const CoverageInstance& inst, const std::vector<double>& bounds,
                                const std::vector<SolverKind>& solvers, int max_iterations,
                                bool with_opt, std::size_t threads) {
  std::vector<SweepRow> rows(bounds.size() * solvers.size());
  std::vector<double> optimum(bounds.size(), -1.0);
  // Jobs: one per cell plus one exact solve per bound when requested.
  const std::size_t cells = rows.size();
  const std::size_t jobs = cells + (with_opt ? bounds.size() : 0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      try {
        const auto g = coverage_objective(inst);
        const auto f = coverage_constraint(inst);
        SolverConfig cfg;
        cfg.max_iterations = max_iterations;
        if (job >= cells) {
          cfg.budget = bounds[job - cells];
          optimum[job - cells] = solve_exact(g, f, cfg).g_value;
          continue;
        }
        const std::size_t b = job / solvers.size();
        const SolverKind kind = solvers[job % solvers.size()];
        cfg.budget = bounds[b];
        const auto start = std::chrono::steady_clock::now();
        const SolveResult result = solve(kind, g, f, cfg);
        const auto stop = std::chrono::steady_clock::now();
        SweepRow& row = rows[job];
        row.bound = bounds[b];
        row.solver = solver_name(kind);
        row.g = result.g_value;
        row.f = result.f_value;
        row.iterations = result.trace.size();
        row.oracle_calls = result.oracle_calls;
        row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        row.repairs = result.repairs;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(threads, jobs));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  if (with_opt)
    for (std::size_t i = 0; i < cells; ++i) rows[i].exact_opt = optimum[i / solvers.size()];
  return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"submax: submodular maximization under a submodular knapsack constraint"};
  app.name("submax");
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "solve one instance at one budget");
  std::string solve_path, solve_solver = "em", solve_format = "text";
  double solve_budget = 0.0;
  int solve_iters = 50;
  bool solve_no_repair = false;
  solve_cmd->add_option("--instance", solve_path, "instance JSON file")->required();
  solve_cmd->add_option("--budget", solve_budget, "constraint budget b")->required();
  solve_cmd->add_option("--solver", solve_solver, "em|sem|greedy|exact")->capture_default_str();
  solve_cmd->add_option("--max-iters", solve_iters, "EM/SEM iteration cap")
      ->capture_default_str();
  solve_cmd->add_flag("--no-repair", solve_no_repair,
                      "do not truncate M-step prefixes that violate the true constraint");
  solve_cmd->add_option("--format", solve_format, "csv|text")->capture_default_str();

  // sweep
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "solve every (bound, solver) cell; CSV columns "
               "bound,solver,g,f,iterations,oracle_calls,wall_ms,repairs[,exact_opt]");
  InstanceSource sweep_src;
  sweep_src.add_flags(sweep_cmd);
  std::string sweep_solvers = "em,sem,greedy", sweep_bounds, sweep_output, sweep_format = "csv";
  int sweep_iters = 50;
  bool sweep_opt = false, sweep_no_timing = false;
  sweep_cmd->add_option("--solvers", sweep_solvers, "comma-separated em,sem,greedy,exact")
      ->capture_default_str();
  auto* bounds_opt = sweep_cmd->add_option(
      "--bounds", sweep_bounds,
      "comma list or START:STOP:STEP (default: 11 bounds at 30%..80% of f(all items))");
  sweep_cmd->add_option("--max-iters", sweep_iters, "EM/SEM iteration cap")
      ->capture_default_str();
  sweep_cmd->add_flag("--with-opt", sweep_opt, "add the exact optimum column (n <= 25)");
  sweep_cmd->add_flag("--no-timing", sweep_no_timing, "write 0 in the wall_ms column");
  sweep_cmd->add_option("--output,-o", sweep_output, "output file (default stdout)");
  sweep_cmd->add_option("--format", sweep_format, "csv|text")->capture_default_str();

  // trace
  auto* trace_cmd = app.add_subcommand(
      "trace", "per-iteration CSV of an EM/SEM run: t,g,f,ghat,size,theta_size");
  InstanceSource trace_src;
  trace_src.add_flags(trace_cmd);
  std::string trace_solver = "em", trace_output, trace_format = "csv";
  double trace_budget = 0.0;
  int trace_iters = 50;
  trace_cmd->add_option("--budget", trace_budget, "constraint budget b")->required();
  trace_cmd->add_option("--solver", trace_solver, "em|sem")->capture_default_str();
  trace_cmd->add_option("--max-iters", trace_iters, "iteration cap")->capture_default_str();
  trace_cmd->add_option("--output,-o", trace_output, "output file (default stdout)");
  trace_cmd->add_option("--format", trace_format, "csv|text")->capture_default_str();

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate a random coverage instance");
  InstanceSource gen_src;
  gen_src.add_generator_flags(gen_cmd);
  std::string gen_output;
  gen_cmd->add_option("--output,-o", gen_output, "instance JSON to write")->required();

  // check
  auto* check_cmd = app.add_subcommand(
      "check", "verify monotonicity and submodularity of an instance's functions");
  InstanceSource check_src;
  check_src.add_flags(check_cmd);
  std::uint64_t check_samples = 20000;
  std::string check_format = "text";
  check_cmd->add_option("--samples", check_samples, "random triples when n_items > 15")
      ->capture_default_str();
  check_cmd->add_option("--format", check_format, "csv|text")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (solve_cmd->parsed())
      return cmd_solve(solve_path, solve_budget, solve_solver, solve_iters, solve_no_repair,
                       solve_format, out, err);
    if (sweep_cmd->parsed())
      return cmd_sweep(sweep_src, sweep_solvers, sweep_bounds, bounds_opt->count() > 0,
                       sweep_iters, sweep_opt, sweep_no_timing, sweep_format, sweep_output, out,
                       err);
    if (trace_cmd->parsed())
      return cmd_trace(trace_src, trace_budget, trace_solver, trace_iters, trace_format,
                       trace_output, out, err);
    if (gen_cmd->parsed()) return cmd_gen(gen_src, gen_output, out);
    if (check_cmd->parsed()) return cmd_check(check_src, check_samples, check_format, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsageError;
}

}  // namespace submax::cli
