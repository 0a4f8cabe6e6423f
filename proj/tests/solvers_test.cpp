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

#include <cmath>

#include "gtest/gtest.h"
#include "reference.hpp"
#include "submax/instances.hpp"
#include "test_util.hpp"

namespace submax {
namespace {

using testing::mask;

SolverConfig budget(double b) {
  SolverConfig cfg;
  cfg.budget = b;
  return cfg;
}

class TinySolverTest : public ::testing::Test {
 protected:
  CoverageInstance inst = tiny_instance();
  SetFunctionOracle g = coverage_objective(inst);
  SetFunctionOracle f = coverage_constraint(inst);
};

TEST_F(TinySolverTest, EStepExample) {
  const auto x = mask(3, {0});
  EXPECT_EQ(e_step_costs(f, x), (std::vector<double>{2, 1, 1}));
  const auto e = e_step(modular_lower_bound(g, x), f, x, 3);
  EXPECT_EQ(e.x_hat, mask(3, {0, 1}));
  EXPECT_EQ(e.theta_hat, mask(3, {0}));
}

TEST_F(TinySolverTest, EStepEdgeCases) {
  const auto x = mask(3, {0});
  const auto zero = e_step(modular_lower_bound(g, x), f, x, 0);
  EXPECT_TRUE(zero.x_hat.empty());
  EXPECT_TRUE(zero.theta_hat.empty());
  for (double b : {0.0, 1.0, 2.0, 3.0, 10.0}) {
    const SubsetMask empty(3);
    EXPECT_TRUE(e_step(modular_lower_bound(g, empty), f, empty, b).theta_hat.empty());
  }
}

TEST_F(TinySolverTest, MStepExamples) {
  const auto x = mask(3, {0});
  const auto m = m_step(modular_lower_bound(g, x), f, x, x, 3);
  EXPECT_EQ(m.solution, mask(3, {0, 1}));
  EXPECT_EQ(f.evaluate(m.solution), 3);
  EXPECT_EQ(m.dropped, 0u);

  const auto x01 = mask(3, {0, 1});
  EXPECT_EQ(m_step_costs(f, x01, x01)[2], 0);
  const auto bound = modular_lower_bound(g, x01);
  EXPECT_EQ(ratio_order(bound.weights, m_step_costs(f, x01, x01)).front(), 2u);
  const auto full = m_step(bound, f, x01, x01, 3);
  EXPECT_EQ(full.solution, SubsetMask::full(3));
  EXPECT_EQ(f.evaluate(full.solution), 3);

  EXPECT_THROW(m_step(bound, f, mask(3, {0}), mask(3, {1}), 3), std::invalid_argument);
}

TEST_F(TinySolverTest, MStepFromEmptyIsSingletonKnapsack) {
  // Chain weights 30, 30, 0 over singleton costs 2, 2, 1 -> ratios 15, 15, 0.
  const SubsetMask empty(3);
  const auto bound = modular_lower_bound(g, empty);
  EXPECT_EQ(m_step_costs(f, empty, empty), (std::vector<double>{2, 2, 1}));
  EXPECT_EQ(ratio_order(bound.weights, m_step_costs(f, empty, empty)),
            (std::vector<Element>{0, 1, 2}));
  EXPECT_EQ(m_step(bound, f, empty, empty, 3).solution, mask(3, {0}));
}

TEST(RatioOrderTest, Conventions) {
  // Free elements first, equal ratios by index, zero gain last.
  const std::vector<double> gains = {1, 2, 0, 5, 3};
  const std::vector<double> costs = {1, 2, 1, 0, 1};
  EXPECT_EQ(ratio_order(gains, costs), (std::vector<Element>{3, 4, 0, 1, 2}));
  // Exact ties stay in index order.
  EXPECT_EQ(ratio_order({2, 1, 3}, {4, 2, 6}), (std::vector<Element>{0, 1, 2}));
  EXPECT_EQ(ratio_order({1, 2}, {2, 4}), (std::vector<Element>{0, 1}));
  EXPECT_EQ(budget_prefix({0, 1, 2}, {1, 2, 3}, 3), 2u);
  EXPECT_EQ(budget_prefix({0, 1, 2}, {1, 2, 3}, 0), 0u);
  EXPECT_EQ(budget_prefix({2, 0}, {1, 0, 0}, 0), 1u);
}

TEST_F(TinySolverTest, EmExamples) {
  const auto r = solve_em(g, f, budget(3));
  EXPECT_EQ(r.solution, mask(3, {0, 1}));
  EXPECT_EQ(r.g_value, 60);
  EXPECT_EQ(r.f_value, 3);
  ASSERT_EQ(r.trace.size(), 2u);
  EXPECT_EQ(r.trace[0].x, mask(3, {0}));
  EXPECT_EQ(r.trace[1].x, mask(3, {0, 1}));
  EXPECT_EQ(r.trace[1].t, 2u);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.steps, 3u);

  const auto r2 = solve_em(g, f, budget(2));
  EXPECT_EQ(r2.solution, mask(3, {0}));
  EXPECT_EQ(r2.g_value, 30);

  const auto r0 = solve_em(g, f, budget(0));
  EXPECT_TRUE(r0.solution.empty());
  EXPECT_EQ(r0.g_value, 0);
}

TEST_F(TinySolverTest, SemExamples) {
  // From X_1 = {0} the empty-theta costs are (2, 2, 1): {0,1} costs 4 > 3,
  // so SEM stays at {0}. The naive transcription agrees.
  const auto r3 = solve_sem(g, f, budget(3));
  EXPECT_EQ(r3.solution, mask(3, {0}));
  EXPECT_EQ(r3.g_value, 30);
  const auto ref = reference::reference_em(3, reference::objective(inst),
                                           reference::constraint(inst), 3, false);
  EXPECT_EQ(ref.g_value, 30);
  EXPECT_EQ(ref.solution, (reference::Set{0}));
  const auto r2 = solve_sem(g, f, budget(2));
  EXPECT_EQ(r2.solution, mask(3, {0}));
  EXPECT_EQ(r2.g_value, 30);
}

TEST_F(TinySolverTest, GreedyExamples) {
  const auto r2 = solve_greedy(g, f, budget(2));
  EXPECT_EQ(r2.solution, mask(3, {1}));
  EXPECT_EQ(r2.g_value, 50);
  const auto r3 = solve_greedy(g, f, budget(3));
  EXPECT_EQ(r3.solution, mask(3, {0, 1}));
  EXPECT_EQ(r3.g_value, 60);
  ASSERT_EQ(r3.trace.size(), 2u);
  EXPECT_EQ(r3.trace[0].x, mask(3, {1}));
  EXPECT_TRUE(solve_greedy(g, f, budget(0)).solution.empty());
}

TEST_F(TinySolverTest, ExactExamples) {
  const auto r2 = solve_exact(g, f, budget(2));
  EXPECT_EQ(r2.g_value, 50);
  EXPECT_EQ(r2.solution, mask(3, {1}));
  EXPECT_EQ(solve_exact(g, f, budget(3)).g_value, 60);
  EXPECT_EQ(solve_exact(g, f, budget(3)).solution, mask(3, {0, 1}));
  // The full set is optimal, but {0,1} ties it and has the smaller mask.
  const auto all = solve_exact(g, f, budget(100));
  EXPECT_EQ(all.g_value, g.evaluate(SubsetMask::full(3)));
  EXPECT_EQ(all.solution, mask(3, {0, 1}));
}

TEST_F(TinySolverTest, ConfigValidation) {
  SolverConfig cfg = budget(1);
  cfg.initial = mask(3, {0});
  EXPECT_THROW(solve_em(g, f, cfg), std::invalid_argument);
  EXPECT_THROW(solve_greedy(g, f, cfg), std::invalid_argument);
  EXPECT_THROW(solve_em(g, f, budget(-1)), std::invalid_argument);
  cfg = budget(3);
  cfg.max_iterations = 0;
  EXPECT_THROW(solve_sem(g, f, cfg), std::invalid_argument);
  cfg = budget(3);
  cfg.initial = SubsetMask(4);
  EXPECT_THROW(solve_em(g, f, cfg), std::invalid_argument);
  EXPECT_THROW(parse_solver("annealing"), std::invalid_argument);
  for (auto k : {SolverKind::kEm, SolverKind::kSem, SolverKind::kGreedy, SolverKind::kExact})
    EXPECT_EQ(parse_solver(solver_name(k)), k);
}

TEST_F(TinySolverTest, StartsFromGivenSet) {
  SolverConfig cfg = budget(3);
  cfg.initial = mask(3, {2});
  const auto r = solve_em(g, f, cfg);
  EXPECT_EQ(r.initial, mask(3, {2}));
  EXPECT_GE(r.g_value, 30);
  EXPECT_LE(r.f_value, 3);
}

TEST(ExactSolverTest, RefusesLargeGroundSets) {
  const auto inst = testing::random_instance(26, 1);
  EXPECT_THROW(solve_exact(coverage_objective(inst), coverage_constraint(inst), budget(5)),
               std::invalid_argument);
}

// Naive std::set transcription versus the library, iterate by iterate.
TEST(SolverCrossCheck, MatchesReferenceTranscription) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto inst = testing::random_instance(9, seed);
    const auto g = coverage_objective(inst);
    const auto f = coverage_constraint(inst);
    const auto rg = reference::objective(inst);
    const auto rf = reference::constraint(inst);
    const double total = rf(reference::from_bits(9, 511));
    for (double frac : {0.2, 0.4, 0.6}) {
      const double b = std::round(frac * total);
      for (bool em : {true, false}) {
        const auto r = em ? solve_em(g, f, budget(b)) : solve_sem(g, f, budget(b));
        const auto ref = reference::reference_em(9, rg, rf, b, em);
        ASSERT_EQ(r.trace.size(), ref.iterates.size()) << "seed " << seed << " b " << b;
        for (std::size_t t = 0; t < ref.iterates.size(); ++t)
          ASSERT_EQ(testing::to_set(r.trace[t].x), ref.iterates[t]);
        EXPECT_EQ(r.g_value, ref.g_value);
      }
      const auto exact = solve_exact(g, f, budget(b));
      const auto [best, best_value] = reference::brute_force_optimum(9, rg, rf, b);
      EXPECT_EQ(exact.g_value, best_value);
      EXPECT_EQ(testing::to_set(exact.solution), best);
    }
  }
}

TEST(SolverProperties, MonotoneFeasibleAndFirstStepsAgree) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto inst = testing::random_instance(14, 100 + seed);
    const auto g = coverage_objective(inst);
    const auto f = coverage_constraint(inst);
    const double total = f.evaluate(SubsetMask::full(14));
    for (double b = 1; b <= total; b += 3) {
      const auto em = solve_em(g, f, budget(b));
      const auto sem = solve_sem(g, f, budget(b));
      const auto greedy = solve_greedy(g, f, budget(b));
      const auto exact = solve_exact(g, f, budget(b));
      for (const auto* r : {&em, &sem}) {
        double prev = 0;
        for (const auto& it : r->trace) {
          EXPECT_GE(it.g_value, prev - kTolerance);
          EXPECT_LE(it.f_value, b + kTolerance);
          prev = it.g_value;
        }
        EXPECT_LE(r->f_value, b + kTolerance);
        EXPECT_LE(r->g_value, exact.g_value + kTolerance);
        EXPECT_TRUE(r->converged);
      }
      EXPECT_LE(greedy.f_value, b + kTolerance);
      EXPECT_LE(greedy.g_value, exact.g_value + kTolerance);
      if (!em.trace.empty() && !sem.trace.empty()) {
        EXPECT_EQ(em.trace[0].x, sem.trace[0].x);
        EXPECT_EQ(em.trace[0].g_value, sem.trace[0].g_value);
        EXPECT_EQ(em.trace[0].prefix, sem.trace[0].prefix);
      } else {
        EXPECT_EQ(em.trace.empty(), sem.trace.empty());
      }
    }
  }
}

TEST(SolverProperties, FullBudgetTakesEverything) {
  const auto inst = testing::random_instance(12, 5);
  const auto g = coverage_objective(inst);
  const auto f = coverage_constraint(inst);
  const double total = f.evaluate(SubsetMask::full(12));
  const double gmax = g.evaluate(SubsetMask::full(12));
  EXPECT_EQ(solve_exact(g, f, budget(total)).g_value, gmax);
  EXPECT_EQ(solve_em(g, f, budget(total)).g_value, gmax);
  EXPECT_EQ(solve_greedy(g, f, budget(total)).g_value, gmax);
}

// The E-step's theta only tightens the SEM bound: ub(Y; X_t & X^) <= ub(Y; empty)
// restricted to the cost vector actually used.
TEST(SolverProperties, EStepDominatesEmptyTheta) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto inst = testing::random_instance(10, 300 + seed);
    const auto g = coverage_objective(inst);
    const auto f = coverage_constraint(inst);
    const double b = std::round(0.5 * f.evaluate(SubsetMask::full(10)));
    const auto r = solve_em(g, f, budget(b));
    for (const auto& it : r.trace) {
      ASSERT_TRUE(it.theta_hat.is_subset_of(it.anchor));
      const SubsetMask none(10);
      for (std::uint64_t y = 0; y < 1024; ++y) {
        const auto ym = SubsetMask::from_bits(10, y);
        ASSERT_LE(nemhauser_upper_bound(f, it.anchor, it.theta_hat, ym),
                  nemhauser_upper_bound(f, it.anchor, none, ym) + kTolerance);
      }
    }
  }
}

TEST(SolverProperties, CallsScaleLinearly) {
  for (std::size_t n : {50u, 100u}) {
    const auto inst = testing::random_instance(n, 2);
    const auto g = coverage_objective(inst);
    const auto f = coverage_constraint(inst);
    const auto r = solve_em(g, f, budget(0.4 * f.evaluate(SubsetMask::full(n))));
    ASSERT_GT(r.steps, 0u);
    EXPECT_LE(static_cast<double>(r.oracle_calls) / static_cast<double>(r.steps), 5.0 * n);
  }
}

TEST(SolverProperties, RepairCanBeDisabled) {
  const auto inst = testing::random_instance(10, 8);
  const auto g = coverage_objective(inst);
  const auto f = coverage_constraint(inst);
  SolverConfig cfg = budget(6);
  cfg.strict_feasibility_repair = false;
  const auto r = solve_em(g, f, cfg);
  for (const auto& it : r.trace) EXPECT_EQ(it.x, it.prefix);
}

}  // namespace
}  // namespace submax
