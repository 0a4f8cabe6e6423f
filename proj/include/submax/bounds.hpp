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

// Modular bounds around an anchor set X_t.
//
//   Lower bound on g: telescope g along a chain that lists X_t first,
//     lb(X) = sum_{j in X} w_j,  w_{pi_i} = g(S_i) - g(S_{i-1}),
//   which is tight at X_t.
//
//   Upper bound on f (Nemhauser):
//     ub(Y; Theta) = f(X_t) - sum_{j in X_t \ Y} f(j | X_t - j)
//                           + sum_{j in Y \ X_t} f(j | Theta),
//   valid for Theta = X_t & Y and decreasing as Theta grows inside X_t.

#ifndef SUBMAX_BOUNDS_HPP_
#define SUBMAX_BOUNDS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "submax/set_function.hpp"
#include "submax/subset_mask.hpp"

namespace submax {

// Ordering pi of [n] whose first |anchor| entries are the anchor's members.
template <Mask M>
struct PermutationChain {
  std::vector<Element> order;
  M anchor;
};

// Per-element weights of the modular lower bound anchored at `anchor`.
template <Mask M>
struct ModularBound {
  std::vector<double> weights;
  M anchor;

  double operator()(const M& x) const {
    double sum = 0.0;
    x.for_each([&](Element j) { sum += weights[j]; });
    return sum;
  }
};

// Members of the anchor in ascending order, then the rest in ascending order.
template <Mask M>
PermutationChain<M> chain_from_anchor(const GroundSet& gs, const M& anchor) {
  if (anchor.size() != gs.size())
    throw std::invalid_argument("anchor does not live in the ground set");
  PermutationChain<M> chain{{}, anchor};
  chain.order.reserve(gs.size());
  anchor.for_each([&](Element j) { chain.order.push_back(j); });
  for (Element j = 0; j < gs.size(); ++j)
    if (!anchor.contains(j)) chain.order.push_back(j);
  return chain;
}

template <SetFunction G>
ModularBound<typename G::mask_type> modular_lower_bound(
    const G& g, const PermutationChain<typename G::mask_type>& chain) {
  using M = typename G::mask_type;
  const std::size_t n = g.size();
  if (chain.order.size() != n)
    throw std::invalid_argument("chain length " + std::to_string(chain.order.size()) +
                                " does not match ground set size " + std::to_string(n));
  ModularBound<M> bound{std::vector<double>(n, 0.0), chain.anchor};
  M prefix(n);
  double previous = g.evaluate(prefix);
  const std::size_t anchor_size = chain.anchor.count();
  for (std::size_t i = 0; i < n; ++i) {
    const Element j = chain.order[i];
    if (prefix.contains(j)) throw std::invalid_argument("chain order is not a permutation");
    if ((i < anchor_size) != chain.anchor.contains(j))
      throw std::invalid_argument("chain does not list the anchor first");
    prefix.insert(j);
    const double current = g.evaluate(prefix);
    const double w = current - previous;
    if (w < -kTolerance)
      throw ContractError("negative chain weight " + std::to_string(w) + " at element " +
                          std::to_string(j) + ": objective is not monotone");
    bound.weights[j] = w;
    previous = current;
  }
  return bound;
}

template <SetFunction G>
ModularBound<typename G::mask_type> modular_lower_bound(const G& g,
                                                        const typename G::mask_type& anchor) {
  return modular_lower_bound(g, chain_from_anchor(GroundSet(g.size()), anchor));
}

template <Mask M>
double eval_lower_bound(const ModularBound<M>& bound, const M& x) {
  return bound(x);
}

// Upper bound for f(Y) around x_t with variational parameter theta, which
// must satisfy theta subset x_t.
template <SetFunction F>
double nemhauser_upper_bound(const F& f, const typename F::mask_type& x_t,
                             const typename F::mask_type& theta,
                             const typename F::mask_type& y) {
  if (!theta.is_subset_of(x_t))
    throw std::invalid_argument("nemhauser bound needs theta " + format_set(theta) +
                                " inside the anchor " + format_set(x_t));
  double value = f.evaluate(x_t);
  (x_t - y).for_each([&](Element j) { value -= marginal_gain(f, j, x_t.without(j)); });
  (y - x_t).for_each([&](Element j) { value += marginal_gain(f, j, theta); });
  return value;
}

// The second Nemhauser form; psi must contain x_t.
template <SetFunction F>
double nemhauser_upper_bound_alt(const F& f, const typename F::mask_type& x_t,
                                 const typename F::mask_type& psi,
                                 const typename F::mask_type& y) {
  if (!x_t.is_subset_of(psi))
    throw std::invalid_argument("alternate nemhauser bound needs psi " + format_set(psi) +
                                " to contain the anchor " + format_set(x_t));
  double value = f.evaluate(x_t);
  (y - x_t).for_each([&](Element j) { value += marginal_gain(f, j, x_t); });
  (x_t - y).for_each([&](Element j) { value -= marginal_gain(f, j, psi.without(j)); });
  return value;
}

// ub(Y; theta) - f(Y) with theta = x_t & y. Nonnegative for submodular f.
template <SetFunction F>
double nemhauser_divergence(const F& f, const typename F::mask_type& x_t,
                            const typename F::mask_type& theta,
                            const typename F::mask_type& y) {
  if (!(theta == (x_t & y)))
    throw std::invalid_argument("divergence is defined only for theta = anchor & y");
  const double d = nemhauser_upper_bound(f, x_t, theta, y) - f.evaluate(y);
  if (d < -kTolerance)
    throw ContractError("negative nemhauser divergence " + std::to_string(d) + " at y=" +
                        format_set(y) + ": constraint function is not submodular");
  return d;
}

}  // namespace submax

#endif  // SUBMAX_BOUNDS_HPP_
