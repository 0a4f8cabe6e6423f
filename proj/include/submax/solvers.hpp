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

// Solvers for  max g(X)  s.t.  f(X) <= b  with g, f monotone submodular.
//
// EM alternates two ratio-sorted knapsack prefixes around the current set
// X_t. Every element j gets the surrogate gain w_j from the modular lower
// bound of g anchored at X_t and a cost from the Nemhauser upper bound of f:
//
//   E-step cost  f(j | X_t - j)  if j in X_t,  f(j | X_t)      otherwise
//   M-step cost  f(j | X_t - j)  if j in X_t,  f(j | Theta_t)  otherwise
//
// The E-step prefix X^_t yields Theta_t = X_t & X^_t; the M-step prefix is
// the next iterate. SEM skips the E-step (Theta_t = empty set).
//
// Ordering: descending w_j / c_j, where c_j <= 0 counts as +infinity, ties
// by ascending element index. Prefix: longest with sum of costs <= b.

#ifndef SUBMAX_SOLVERS_HPP_
#define SUBMAX_SOLVERS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "submax/analysis.hpp"
#include "submax/bounds.hpp"
#include "submax/set_function.hpp"

namespace submax {

struct SolverConfig {
  double budget = 0.0;
  std::optional<SubsetMask> initial;  // empty set when unset
  int max_iterations = 50;
  bool strict_feasibility_repair = true;
};

struct IterationTrace {
  std::size_t t = 0;
  SubsetMask anchor;     // X_{t-1}, the set the bounds were built around
  SubsetMask x;          // X_t
  double g_value = 0.0;
  double f_value = 0.0;
  SubsetMask theta_hat;  // E-step estimate used to produce X_t
  SubsetMask x_hat;      // E-step prefix
  double ghat_value = 0.0;  // lb_{X_{t-1}}(X_t)
  SubsetMask prefix;     // M-step prefix before feasibility repair
  bool repaired = false;
};

struct SolveResult {
  std::string solver;
  SubsetMask initial;
  SubsetMask solution;
  double g_value = 0.0;
  double f_value = 0.0;
  std::vector<IterationTrace> trace;
  std::uint64_t oracle_calls = 0;
  // E/M rounds executed, including the final non-improving one.
  std::size_t steps = 0;
  std::size_t repairs = 0;
  bool converged = false;
  std::optional<ApproximationCertificate> certificate;
};

struct EStepResult {
  SubsetMask x_hat;
  SubsetMask theta_hat;
};

struct MStepResult {
  SubsetMask solution;   // X_{t+1}, after repair
  SubsetMask prefix;     // literal prefix
  std::size_t dropped = 0;
};

// c_j = f(j | X_t - j) for members, f(j | X_t) otherwise.
std::vector<double> e_step_costs(const SetFunctionOracle& f, const SubsetMask& x_t);
// c_j = f(j | X_t - j) for members, f(j | theta) otherwise.
std::vector<double> m_step_costs(const SetFunctionOracle& f, const SubsetMask& x_t,
                                 const SubsetMask& theta);

// Element order by descending gain/cost ratio (see file comment).
std::vector<Element> ratio_order(const std::vector<double>& gains,
                                 const std::vector<double>& costs);
// Length of the longest prefix of `order` whose cumulative cost is <= budget.
std::size_t budget_prefix(const std::vector<Element>& order, const std::vector<double>& costs,
                          double budget);

EStepResult e_step(const ModularBound<SubsetMask>& g_bound, const SetFunctionOracle& f,
                   const SubsetMask& x_t, double budget);

MStepResult m_step(const ModularBound<SubsetMask>& g_bound, const SetFunctionOracle& f,
                   const SubsetMask& x_t, const SubsetMask& theta_hat, double budget,
                   bool repair = true);

SolveResult solve_em(const SetFunctionOracle& g, const SetFunctionOracle& f,
                     const SolverConfig& cfg);
SolveResult solve_sem(const SetFunctionOracle& g, const SetFunctionOracle& f,
                      const SolverConfig& cfg);
SolveResult solve_greedy(const SetFunctionOracle& g, const SetFunctionOracle& f,
                         const SolverConfig& cfg);
// Exhaustive; refuses n > kMaxExactElements. Ties resolve to the smallest
// mask read as a binary integer (bit j = element j).
SolveResult solve_exact(const SetFunctionOracle& g, const SetFunctionOracle& f,
                        const SolverConfig& cfg);
inline constexpr std::size_t kMaxExactElements = 25;

enum class SolverKind { kEm, kSem, kGreedy, kExact };
SolverKind parse_solver(const std::string& name);
std::string solver_name(SolverKind kind);
SolveResult solve(SolverKind kind, const SetFunctionOracle& g, const SetFunctionOracle& f,
                  const SolverConfig& cfg);

}  // namespace submax

#endif  // SUBMAX_SOLVERS_HPP_
