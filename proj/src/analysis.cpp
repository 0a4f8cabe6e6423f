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

#include "submax/analysis.hpp"

#include "submax/solvers.hpp"

namespace submax {
namespace {

constexpr std::size_t kKnapsackCheckLimit = 12;

// max sum_{j in X} w_j  s.t.  sum_{j in X} c_j <= budget, by enumeration.
double surrogate_optimum(const std::vector<double>& weights, const std::vector<double>& costs,
                         double budget) {
  const std::size_t n = weights.size();
  double best = 0.0;
  for (std::uint32_t bits = 1; bits < (std::uint32_t{1} << n); ++bits) {
    double value = 0.0;
    double cost = 0.0;
    for (std::uint32_t rest = bits; rest != 0; rest &= rest - 1) {
      const int j = std::countr_zero(rest);
      value += weights[j];
      cost += costs[j];
    }
    if (cost <= budget + kTolerance) best = std::max(best, value);
  }
  return best;
}

}  // namespace

PropertyReport verify_proposition3(const SetFunctionOracle& g, const SetFunctionOracle& f,
                                   double budget, const std::vector<IterationTrace>& trace) {
  const std::size_t n = g.size();
  if (n > kKnapsackCheckLimit)
    throw std::invalid_argument("knapsack-ratio check refuses n=" + std::to_string(n) +
                                " (limit " + std::to_string(kKnapsackCheckLimit) + ")");
  if (!(budget > 0.0)) throw std::invalid_argument("knapsack-ratio check needs budget > 0");
  PropertyReport report;
  const double factor = 1.0 - 2.0 * max_singleton_gain(f) / budget;
  if (factor <= 0.0) {
    report.vacuous = true;
    return report;
  }
  const GroundSet ground(n);
  for (const IterationTrace& it : trace) {
    const auto bound = modular_lower_bound(g, chain_from_anchor(ground, it.anchor));
    const std::vector<double> costs = m_step_costs(f, it.anchor, it.theta_hat);
    const double optimum = surrogate_optimum(bound.weights, costs, budget);
    const double achieved = bound(it.prefix);
    report.check(achieved >= factor * optimum - kTolerance, [&] {
      return "t=" + std::to_string(it.t) + " anchor " + it.anchor.to_string() + ": " +
             std::to_string(achieved) + " < " + std::to_string(factor) + " * " +
             std::to_string(optimum);
    });
  }
  return report;
}

}  // namespace submax
