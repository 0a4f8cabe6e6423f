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

#include <cmath>

#include "gtest/gtest.h"
#include "reference.hpp"
#include "submax/instances.hpp"
#include "submax/solvers.hpp"
#include "test_util.hpp"

namespace submax {
namespace {

SetFunctionOracle modular(std::vector<double> w) {
  const std::size_t n = w.size();
  return SetFunctionOracle(n, [w = std::move(w)](const SubsetMask& x) {
    double s = 0;
    x.for_each([&](Element j) { s += w[j]; });
    return s;
  });
}

SolverConfig budget(double b) {
  SolverConfig cfg;
  cfg.budget = b;
  return cfg;
}

// Curvature straight from the definition on std::set.
double reference_curvature(int n, const reference::Fn& g) {
  const auto full = reference::from_bits(n, (std::uint64_t{1} << n) - 1);
  double best = 1e300;
  for (int k = 0; k < n; ++k) {
    const double single = g({k});
    if (single <= 0) continue;
    best = std::min(best, (g(full) - g(reference::without(full, k))) / single);
  }
  return 1 - best;
}

TEST(CurvatureTest, Examples) {
  EXPECT_EQ(curvature(modular({1, 2, 3, 4})), 0);
  EXPECT_EQ(curvature(coverage_objective(tiny_instance())), 1);
  CoverageInstance disjoint;
  disjoint.n_items = 3;
  disjoint.n_elements = 5;
  disjoint.values = {1, 2, 3, 4, 5};
  disjoint.covers = {{0, 1}, {2}, {3, 4}};
  EXPECT_EQ(curvature(coverage_objective(disjoint)), 0);
}

TEST(CurvatureTest, MatchesDefinitionAndStaysInRange) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = testing::random_instance(8, seed);
    const double kappa = curvature(coverage_objective(inst));
    EXPECT_NEAR(kappa, reference_curvature(8, reference::objective(inst)), 1e-12);
    EXPECT_GE(kappa, 0);
    EXPECT_LE(kappa, 1);
  }
}

TEST(CurvatureTest, ScaleInvariant) {
  const auto inst = testing::random_instance(8, 11);
  const auto g = TabulatedFunction::tabulate(coverage_objective(inst));
  std::vector<double> scaled(256);
  for (std::uint32_t b = 0; b < 256; ++b) scaled[b] = 4.0 * g.at(b);
  EXPECT_EQ(curvature(TabulatedFunction(8, scaled)), curvature(g));
}

TEST(CurvatureTest, ZeroSingletonsAreExcludedAndReported) {
  const auto report = curvature_report(modular({0, 2, 0}));
  EXPECT_EQ(report.excluded, (std::vector<Element>{0, 2}));
  EXPECT_EQ(report.kappa, 0);
  EXPECT_THROW(curvature(modular({0, 0})), std::domain_error);
}

TEST(CertificateTest, Examples) {
  const auto inst = tiny_instance();
  const auto g = coverage_objective(inst);
  const auto f = coverage_constraint(inst);
  const auto tiny = build_certificate(g, f, 3);
  EXPECT_EQ(tiny.kappa_g, 1);
  EXPECT_EQ(tiny.delta_f, 2);
  EXPECT_EQ(tiny.ratio, 0);
  EXPECT_TRUE(tiny.vacuous);

  const auto lin = build_certificate(modular({3, 1, 2}), modular({1, 1, 0.5}), 10);
  EXPECT_DOUBLE_EQ(lin.ratio, 0.8);
  EXPECT_FALSE(lin.vacuous);
  EXPECT_TRUE(build_certificate(modular({3, 1, 2}), modular({1, 1, 0.5}), 1.5).vacuous);
  EXPECT_THROW(build_certificate(g, f, 0), std::invalid_argument);
  EXPECT_THROW(build_certificate(g, f, -2), std::invalid_argument);
}

TEST(CertificateTest, RatioNeverExceedsOne) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto inst = testing::random_instance(10, seed);
    for (double b : {1.0, 5.0, 50.0, 1e6})
      EXPECT_LE(build_certificate(coverage_objective(inst), coverage_constraint(inst), b).ratio,
                1.0);
  }
}

TEST(CurvatureRatioTest, Examples) {
  EXPECT_TRUE(verify_theorem2_exhaustive(coverage_objective(tiny_instance())).ok());
  const auto lin = verify_theorem2_exhaustive(modular({1, 5, 2, 0.5}));
  EXPECT_TRUE(lin.ok());
  EXPECT_EQ(lin.checked, 256u);
  const auto inst = testing::random_instance(10, 7);
  const auto report = verify_theorem2_exhaustive(TabulatedFunction::tabulate(coverage_objective(inst)));
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.checked, 1024u * 1024u);
  EXPECT_THROW(verify_theorem2_exhaustive(coverage_objective(testing::random_instance(16, 1))),
               std::invalid_argument);
}

TEST(CurvatureRatioTest, SampledAnchors) {
  const auto inst = testing::random_instance(20, 3);
  const auto g = coverage_objective(inst);
  std::vector<SubsetMask> anchors, subsets;
  for (std::uint64_t s = 0; s < 40; ++s) {
    anchors.push_back(SubsetMask::from_bits(20, s * 26041));
    subsets.push_back(SubsetMask::from_bits(20, s * 19937 + 5));
  }
  EXPECT_TRUE(verify_theorem2<SetFunctionOracle>(g, anchors, subsets).ok());
}

TEST(CurvatureRatioTest, DetectsAWrongInequality) {
  // A supermodular "objective" breaks the bound; the checker must notice.
  std::vector<double> values(8);
  for (std::uint32_t b = 0; b < 8; ++b) values[b] = std::popcount(b) * std::popcount(b) + 1.0 * (b != 0);
  values[0] = 0;
  const TabulatedFunction h(3, values);
  EXPECT_FALSE(verify_theorem2_exhaustive(h).ok());
}

TEST(KnapsackRatioTest, Examples) {
  const auto inst = tiny_instance();
  const auto g = coverage_objective(inst);
  const auto f = coverage_constraint(inst);
  const auto r = solve_em(g, f, budget(5));
  const auto report = verify_proposition3(g, f, 5, r.trace);
  EXPECT_FALSE(report.vacuous);
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.checked, r.trace.size());
  EXPECT_TRUE(verify_proposition3(g, f, 4, solve_em(g, f, budget(4)).trace).vacuous);

  const auto rnd = testing::random_instance(10, 3);
  const auto rg = coverage_objective(rnd);
  const auto rf = coverage_constraint(rnd);
  for (const auto& res : {solve_em(rg, rf, budget(8)), solve_sem(rg, rf, budget(8))}) {
    const auto rep = verify_proposition3(rg, rf, 8, res.trace);
    EXPECT_TRUE(rep.ok());
  }
  EXPECT_THROW(verify_proposition3(rg, rf, 0, {}), std::invalid_argument);
  const auto big = testing::random_instance(13, 1);
  EXPECT_THROW(
      verify_proposition3(coverage_objective(big), coverage_constraint(big), 10, {}),
      std::invalid_argument);
}

TEST(KnapsackRatioTest, DetectsAPoorStep) {
  // Hand-made trace claiming the empty set after a step where a full-value
  // element fits: achieved 0 < factor * optimum.
  const auto g = modular({5, 5, 5, 5, 5, 5});
  const auto f = modular({1, 1, 1, 1, 1, 1});
  IterationTrace it;
  it.t = 1;
  it.anchor = SubsetMask(6);
  it.x = SubsetMask(6);
  it.theta_hat = SubsetMask(6);
  it.x_hat = SubsetMask(6);
  it.prefix = SubsetMask(6);
  const auto rep = verify_proposition3(g, f, 4, {it});
  EXPECT_FALSE(rep.ok());
  EXPECT_EQ(rep.witnesses.size(), 1u);
}

}  // namespace
}  // namespace submax
