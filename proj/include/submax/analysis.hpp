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

// Curvature, approximation certificates and exhaustive audits of the bound
// inequalities the solvers rely on.

#ifndef SUBMAX_ANALYSIS_HPP_
#define SUBMAX_ANALYSIS_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "submax/bounds.hpp"
#include "submax/set_function.hpp"

namespace submax {

struct IterationTrace;

// Count of checked cases and violations of one inequality, with a few
// human-readable witnesses.
struct PropertyReport {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  bool vacuous = false;
  std::vector<std::string> witnesses;
  static constexpr std::size_t kMaxWitnesses = 16;

  bool ok() const { return violations == 0; }
  // `describe` is only invoked for failures.
  template <class Describe>
  void check(bool holds, Describe&& describe) {
    ++checked;
    if (holds) return;
    ++violations;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(describe());
  }
  void merge(const PropertyReport& o) {
    checked += o.checked;
    violations += o.violations;
    for (const auto& w : o.witnesses)
      if (witnesses.size() < kMaxWitnesses) witnesses.push_back(w);
  }
};

struct CurvatureReport {
  double kappa = 0.0;
  // Elements with g({k}) = 0, left out of the minimum.
  std::vector<Element> excluded;
};

// kappa_g = 1 - min_k g(k | [n] - k) / g({k}) over k with g({k}) > 0.
template <SetFunction G>
CurvatureReport curvature_report(const G& g) {
  using M = typename G::mask_type;
  const std::size_t n = g.size();
  const M full = M::full(n);
  const M empty(n);
  CurvatureReport report;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (Element k = 0; k < n; ++k) {
    const double singleton = g.evaluate(empty.with(k));
    if (singleton <= 0.0) {
      report.excluded.push_back(k);
      continue;
    }
    const M rest = full.without(k);
    min_ratio = std::min(min_ratio, (g.evaluate(full) - g.evaluate(rest)) / singleton);
  }
  if (report.excluded.size() == n)
    throw std::domain_error("curvature undefined: every singleton value is zero");
  report.kappa = 1.0 - min_ratio;
  return report;
}

template <SetFunction G>
double curvature(const G& g) {
  return curvature_report(g).kappa;
}

// Guarantee (1 - kappa_g)(1 - 2 Delta_f / b) on g(solution) / g(OPT).
struct ApproximationCertificate {
  double kappa_g = 0.0;
  double delta_f = 0.0;
  double budget = 0.0;
  double ratio = 0.0;
  bool vacuous = true;
  std::size_t zero_singletons = 0;
};

template <SetFunction G, SetFunction F>
ApproximationCertificate build_certificate(const G& g, const F& f, double budget) {
  if (!(budget > 0.0))
    throw std::invalid_argument("certificate needs a positive budget, got " +
                                std::to_string(budget));
  const CurvatureReport curv = curvature_report(g);
  ApproximationCertificate cert;
  cert.kappa_g = curv.kappa;
  cert.zero_singletons = curv.excluded.size();
  cert.delta_f = max_singleton_gain(f);
  cert.budget = budget;
  cert.ratio = (1.0 - cert.kappa_g) * (1.0 - 2.0 * cert.delta_f / budget);
  cert.vacuous = !(cert.ratio > 0.0);
  return cert;
}

// lb_{anchor}(X) >= (1 - kappa_g) g(X) for every given anchor and subset.
template <SetFunction G>
PropertyReport verify_theorem2(const G& g, std::span<const typename G::mask_type> anchors,
                               std::span<const typename G::mask_type> subsets) {
  const double factor = 1.0 - curvature(g);
  PropertyReport report;
  for (const auto& anchor : anchors) {
    const auto bound = modular_lower_bound(g, anchor);
    for (const auto& x : subsets) {
      const double lb = bound(x);
      const double rhs = factor * g.evaluate(x);
      report.check(lb >= rhs - kTolerance, [&] {
        return "anchor " + format_set(anchor) + " X " + format_set(x) + ": " +
               std::to_string(lb) + " < " + std::to_string(rhs);
      });
    }
  }
  return report;
}

// All 2^n anchors against all 2^n subsets.
template <SetFunction G>
PropertyReport verify_theorem2_exhaustive(const G& g, std::size_t limit_n = 15) {
  using M = typename G::mask_type;
  const std::size_t n = g.size();
  if (n > limit_n)
    throw std::invalid_argument("exhaustive curvature-ratio check refuses n=" +
                                std::to_string(n));
  std::vector<M> all;
  all.reserve(std::size_t{1} << n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits)
    all.push_back(M::from_bits(n, bits));
  return verify_theorem2<G>(g, all, all);
}

// Results of auditing every bound inequality over all anchor/subset pairs.
struct BoundsAudit {
  PropertyReport lower_bound;      // lb(X) <= g(X)
  PropertyReport tightness;        // lb(anchor) == g(anchor)
  PropertyReport upper_bound;      // ub(Y; anchor & Y) >= f(Y)
  PropertyReport upper_bound_alt;  // ub_alt(Y; anchor | Y) >= f(Y)
  PropertyReport theta_monotone;   // ub(.; theta) >= ub(.; theta + k)
  PropertyReport divergence;       // divergence >= 0

  bool ok() const {
    return lower_bound.ok() && tightness.ok() && upper_bound.ok() && upper_bound_alt.ok() &&
           theta_monotone.ok() && divergence.ok();
  }
};

// Exhaustive audit for n <= limit_n. Intended for TabulatedFunction inputs.
template <SetFunction G, SetFunction F>
BoundsAudit audit_bounds(const G& g, const F& f, std::size_t limit_n = 12) {
  using M = typename G::mask_type;
  static_assert(std::is_same_v<M, typename F::mask_type>);
  const std::size_t n = g.size();
  if (n != f.size()) throw std::invalid_argument("objective and constraint sizes differ");
  if (n > limit_n) throw std::invalid_argument("exhaustive bound audit refuses n=" +
                                               std::to_string(n));
  const std::uint64_t count = std::uint64_t{1} << n;
  auto mask = [n](std::uint64_t bits) { return M::from_bits(n, bits); };
  auto pair = [](const M& a, const M& b) {
    return [&a, &b] { return format_set(a) + " / " + format_set(b); };
  };

  BoundsAudit audit;
  for (std::uint64_t a = 0; a < count; ++a) {
    const M anchor = mask(a);
    const auto lb = modular_lower_bound(g, anchor);
    audit.tightness.check(lb(anchor) == g.evaluate(anchor),
                          [&] { return "tightness at " + format_set(anchor); });
    for (std::uint64_t s = 0; s < count; ++s) {
      const M y = mask(s);
      audit.lower_bound.check(lb(y) <= g.evaluate(y) + kTolerance, pair(anchor, y));
      const double fy = f.evaluate(y);
      const double ub = nemhauser_upper_bound(f, anchor, anchor & y, y);
      audit.upper_bound.check(ub >= fy - kTolerance, pair(anchor, y));
      audit.upper_bound_alt.check(
          nemhauser_upper_bound_alt(f, anchor, anchor | y, y) >= fy - kTolerance,
          pair(anchor, y));
      bool nonnegative = true;
      try {
        nemhauser_divergence(f, anchor, anchor & y, y);
      } catch (const ContractError&) {
        nonnegative = false;
      }
      audit.divergence.check(nonnegative, pair(anchor, y));
    }

    // The bound difference between two thetas only involves Y \ anchor, so
    // Y ranges over subsets of the complement. Covering pairs theta, theta+k
    // suffice by transitivity.
    const M outside = M::full(n) - anchor;
    const std::vector<Element> anchor_members = anchor.elements();
    const std::vector<Element> outside_members = outside.elements();
    const std::size_t k_in = anchor_members.size();
    std::vector<double> ub(std::size_t{1} << k_in);
    for (std::uint64_t ys = 0; ys < (std::uint64_t{1} << outside_members.size()); ++ys) {
      M y(n);
      for (std::size_t i = 0; i < outside_members.size(); ++i)
        if ((ys >> i) & 1U) y.insert(outside_members[i]);
      for (std::uint64_t ts = 0; ts < ub.size(); ++ts) {
        M theta(n);
        for (std::size_t i = 0; i < k_in; ++i)
          if ((ts >> i) & 1U) theta.insert(anchor_members[i]);
        ub[ts] = nemhauser_upper_bound(f, anchor, theta, y);
      }
      for (std::uint64_t ts = 0; ts < ub.size(); ++ts) {
        for (std::size_t i = 0; i < k_in; ++i) {
          if ((ts >> i) & 1U) continue;
          const std::uint64_t bigger = ts | (std::uint64_t{1} << i);
          audit.theta_monotone.check(ub[ts] >= ub[bigger] - kTolerance, [&] {
            return "anchor " + format_set(anchor) + " y " + format_set(y) + " theta bits " +
                   std::to_string(ts) + " + " + std::to_string(anchor_members[i]);
          });
        }
      }
    }
  }
  return audit;
}

// For each EM/SEM iteration, compares the surrogate value of the M-step
// prefix against (1 - 2 Delta_f / b) times the exhaustive optimum of the
// same modular surrogate under the M-step cost vector. n <= 12.
PropertyReport verify_proposition3(const SetFunctionOracle& g, const SetFunctionOracle& f,
                                   double budget, const std::vector<IterationTrace>& trace);

}  // namespace submax

#endif  // SUBMAX_ANALYSIS_HPP_
