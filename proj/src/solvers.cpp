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

#include "submax/solvers.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace submax {
namespace {

std::uint64_t total_calls(const SetFunctionOracle& g, const SetFunctionOracle& f) {
  return g.calls() + f.calls();
}

bool feasible(double cost, double budget) { return cost <= budget + kTolerance; }

SubsetMask take_prefix(std::size_t n, const std::vector<Element>& order, std::size_t len) {
  SubsetMask m(n);
  for (std::size_t i = 0; i < len; ++i) m.insert(order[i]);
  return m;
}

void validate(const SetFunctionOracle& g, const SetFunctionOracle& f, const SolverConfig& cfg) {
  if (g.size() != f.size())
    throw std::invalid_argument("objective has " + std::to_string(g.size()) +
                                " elements but constraint has " + std::to_string(f.size()));
  if (!(cfg.budget >= 0.0)) throw std::invalid_argument("budget must be nonnegative");
  if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (cfg.initial && cfg.initial->size() != g.size())
    throw std::invalid_argument("initial set lives in a different ground set");
}

SubsetMask initial_set(const SetFunctionOracle& f, const SolverConfig& cfg) {
  SubsetMask x0 = cfg.initial.value_or(SubsetMask(f.size()));
  const double f0 = f.evaluate(x0);
  if (!feasible(f0, cfg.budget))
    throw std::invalid_argument("initial set " + x0.to_string() + " is infeasible: f=" +
                                std::to_string(f0) + " > b=" + std::to_string(cfg.budget));
  return x0;
}

// Best iterate by true g, earliest on ties; infeasible iterates are skipped.
void pick_best(const SetFunctionOracle& g, const SetFunctionOracle& f, double budget,
               SolveResult& result) {
  result.solution = result.initial;
  result.g_value = g.evaluate(result.initial);
  result.f_value = f.evaluate(result.initial);
  for (const auto& it : result.trace) {
    if (feasible(it.f_value, budget) && it.g_value > result.g_value) {
      result.solution = it.x;
      result.g_value = it.g_value;
      result.f_value = it.f_value;
    }
  }
}

SolveResult solve_variational(const SetFunctionOracle& g, const SetFunctionOracle& f,
                              const SolverConfig& cfg, bool use_e_step) {
  validate(g, f, cfg);
  const std::size_t n = g.size();
  const GroundSet ground(n);
  const std::uint64_t calls_before = total_calls(g, f);

  SolveResult result;
  result.solver = use_e_step ? "em" : "sem";
  result.initial = initial_set(f, cfg);

  SubsetMask x = result.initial;
  for (int step = 0; step < cfg.max_iterations; ++step) {
    const auto bound = modular_lower_bound(g, chain_from_anchor(ground, x));
    EStepResult e{SubsetMask(n), SubsetMask(n)};
    if (use_e_step) e = e_step(bound, f, x, cfg.budget);
    MStepResult m = m_step(bound, f, x, e.theta_hat, cfg.budget, cfg.strict_feasibility_repair);
    ++result.steps;
    if (m.dropped > 0) ++result.repairs;

    const double ghat_next = bound(m.solution);
    if (ghat_next <= bound(x)) {
      result.converged = true;
      break;
    }
    IterationTrace it;
    it.t = static_cast<std::size_t>(step) + 1;
    it.anchor = x;
    it.x = m.solution;
    it.g_value = g.evaluate(m.solution);
    it.f_value = f.evaluate(m.solution);
    it.theta_hat = e.theta_hat;
    it.x_hat = e.x_hat;
    it.ghat_value = ghat_next;
    it.prefix = m.prefix;
    it.repaired = m.dropped > 0;
    result.trace.push_back(std::move(it));
    x = m.solution;
  }
  pick_best(g, f, cfg.budget, result);
  result.oracle_calls = total_calls(g, f) - calls_before;
  return result;
}

}  // namespace

std::vector<double> e_step_costs(const SetFunctionOracle& f, const SubsetMask& x_t) {
  std::vector<double> costs(f.size());
  for (Element j = 0; j < f.size(); ++j)
    costs[j] = x_t.contains(j) ? marginal_gain(f, j, x_t.without(j)) : marginal_gain(f, j, x_t);
  return costs;
}

std::vector<double> m_step_costs(const SetFunctionOracle& f, const SubsetMask& x_t,
                                 const SubsetMask& theta) {
  std::vector<double> costs(f.size());
  for (Element j = 0; j < f.size(); ++j)
    costs[j] = x_t.contains(j) ? marginal_gain(f, j, x_t.without(j)) : marginal_gain(f, j, theta);
  return costs;
}

std::vector<Element> ratio_order(const std::vector<double>& gains,
                                 const std::vector<double>& costs) {
  if (gains.size() != costs.size()) throw std::invalid_argument("gain/cost size mismatch");
  std::vector<Element> order(gains.size());
  std::iota(order.begin(), order.end(), Element{0});
  // Cross-multiplied comparison keeps equal ratios exactly equal, so the
  // index tie-break is not perturbed by division rounding.
  std::sort(order.begin(), order.end(), [&](Element a, Element b) {
    const bool free_a = costs[a] <= 0.0;
    const bool free_b = costs[b] <= 0.0;
    if (free_a != free_b) return free_a;
    if (!free_a) {
      const double lhs = gains[a] * costs[b];
      const double rhs = gains[b] * costs[a];
      if (lhs != rhs) return lhs > rhs;
    }
    return a < b;
  });
  return order;
}

std::size_t budget_prefix(const std::vector<Element>& order, const std::vector<double>& costs,
                          double budget) {
  double spent = 0.0;
  std::size_t len = 0;
  for (Element j : order) {
    spent += std::max(costs[j], 0.0);
    if (!feasible(spent, budget)) break;
    ++len;
  }
  return len;
}

EStepResult e_step(const ModularBound<SubsetMask>& g_bound, const SetFunctionOracle& f,
                   const SubsetMask& x_t, double budget) {
  const std::vector<double> costs = e_step_costs(f, x_t);
  const std::vector<Element> order = ratio_order(g_bound.weights, costs);
  const std::size_t k = budget_prefix(order, costs, budget);
  EStepResult out{take_prefix(f.size(), order, k), SubsetMask(f.size())};
  out.theta_hat = x_t & out.x_hat;
  return out;
}

MStepResult m_step(const ModularBound<SubsetMask>& g_bound, const SetFunctionOracle& f,
                   const SubsetMask& x_t, const SubsetMask& theta_hat, double budget,
                   bool repair) {
  if (!theta_hat.is_subset_of(x_t))
    throw std::invalid_argument("M-step needs theta inside the current set");
  const std::vector<double> costs = m_step_costs(f, x_t, theta_hat);
  const std::vector<Element> order = ratio_order(g_bound.weights, costs);
  std::size_t m = budget_prefix(order, costs, budget);
  MStepResult out{take_prefix(f.size(), order, m), SubsetMask(f.size()), 0};
  out.prefix = out.solution;
  if (repair) {
    while (m > 0 && !feasible(f.evaluate(out.solution), budget)) {
      out.solution.erase(order[--m]);
      ++out.dropped;
    }
  }
  return out;
}

SolveResult solve_em(const SetFunctionOracle& g, const SetFunctionOracle& f,
                     const SolverConfig& cfg) {
  return solve_variational(g, f, cfg, true);
}

SolveResult solve_sem(const SetFunctionOracle& g, const SetFunctionOracle& f,
                      const SolverConfig& cfg) {
  return solve_variational(g, f, cfg, false);
}

SolveResult solve_greedy(const SetFunctionOracle& g, const SetFunctionOracle& f,
                         const SolverConfig& cfg) {
  validate(g, f, cfg);
  const std::size_t n = g.size();
  const std::uint64_t calls_before = total_calls(g, f);
  SolveResult result;
  result.solver = "greedy";
  result.initial = initial_set(f, cfg);

  SubsetMask s = result.initial;
  double gs = g.evaluate(s);
  while (true) {
    std::optional<Element> best;
    double best_gain = 0.0;
    for (Element j = 0; j < n; ++j) {
      if (s.contains(j)) continue;
      const SubsetMask grown = s.with(j);
      if (!feasible(f.evaluate(grown), cfg.budget)) continue;
      const double gain = g.evaluate(grown) - gs;
      if (gain > kTolerance && (!best || gain > best_gain)) {
        best = j;
        best_gain = gain;
      }
    }
    if (!best) break;
    IterationTrace it;
    it.t = result.trace.size() + 1;
    it.anchor = s;
    s.insert(*best);
    gs = g.evaluate(s);
    it.x = s;
    it.g_value = gs;
    it.f_value = f.evaluate(s);
    it.ghat_value = gs;
    it.theta_hat = SubsetMask(n);
    it.x_hat = SubsetMask(n);
    it.prefix = s;
    result.trace.push_back(std::move(it));
    ++result.steps;
  }
  result.converged = true;
  pick_best(g, f, cfg.budget, result);
  result.oracle_calls = total_calls(g, f) - calls_before;
  return result;
}

SolveResult solve_exact(const SetFunctionOracle& g, const SetFunctionOracle& f,
                        const SolverConfig& cfg) {
  validate(g, f, cfg);
  const std::size_t n = g.size();
  if (n > kMaxExactElements)
    throw std::invalid_argument("exact solver refuses n=" + std::to_string(n) + " (limit " +
                                std::to_string(kMaxExactElements) + ")");
  const std::uint64_t calls_before = total_calls(g, f);
  SolveResult result;
  result.solver = "exact";
  result.initial = SubsetMask(n);
  result.solution = SubsetMask(n);
  result.g_value = -1.0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    const SubsetMask x = SubsetMask::from_bits(n, bits);
    const double fx = f.evaluate_uncached(x);
    if (!feasible(fx, cfg.budget)) continue;
    const double gx = g.evaluate_uncached(x);
    if (gx > result.g_value) {
      result.solution = x;
      result.g_value = gx;
      result.f_value = fx;
    }
  }
  if (result.g_value < 0.0)
    throw std::invalid_argument("no feasible subset for budget " + std::to_string(cfg.budget));
  result.steps = 1;
  result.converged = true;
  result.oracle_calls = total_calls(g, f) - calls_before;
  return result;
}

SolverKind parse_solver(const std::string& name) {
  if (name == "em") return SolverKind::kEm;
  if (name == "sem") return SolverKind::kSem;
  if (name == "greedy") return SolverKind::kGreedy;
  if (name == "exact") return SolverKind::kExact;
  throw std::invalid_argument("unknown solver '" + name + "' (expected em|sem|greedy|exact)");
}

std::string solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::kEm: return "em";
    case SolverKind::kSem: return "sem";
    case SolverKind::kGreedy: return "greedy";
    case SolverKind::kExact: return "exact";
  }
  return "?";
}

SolveResult solve(SolverKind kind, const SetFunctionOracle& g, const SetFunctionOracle& f,
                  const SolverConfig& cfg) {
  switch (kind) {
    case SolverKind::kEm: return solve_em(g, f, cfg);
    case SolverKind::kSem: return solve_sem(g, f, cfg);
    case SolverKind::kGreedy: return solve_greedy(g, f, cfg);
    case SolverKind::kExact: return solve_exact(g, f, cfg);
  }
  throw std::logic_error("unreachable solver kind");
}

}  // namespace submax
