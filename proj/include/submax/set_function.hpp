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

// Value-oracle access to normalized set functions f: 2^[n] -> R.
//
// Two backends satisfy the SetFunction concept:
//   SetFunctionOracle  - arbitrary callable over SubsetMask, memoized and
//                        instrumented with a cache-miss counter.
//   TabulatedFunction  - all 2^n values precomputed (n <= 25), indexed by a
//                        packed SmallMask. Used for exhaustive checks.
// Algorithms that only need evaluate() are written once against the concept.

#ifndef SUBMAX_SET_FUNCTION_HPP_
#define SUBMAX_SET_FUNCTION_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "submax/subset_mask.hpp"

namespace submax {

// Absolute tolerance used by every property checker.
inline constexpr double kTolerance = 1e-9;

// Raised when a caller or an oracle breaks a documented precondition
// (e.g. marginal gain of an element already in the set, negative chain
// weight from a non-monotone function).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

template <class F>
concept SetFunction = requires(const F& f, const typename F::mask_type& m) {
  requires Mask<typename F::mask_type>;
  { f.size() } -> std::convertible_to<std::size_t>;
  { f.evaluate(m) } -> std::convertible_to<double>;
  { f.evaluate_uncached(m) } -> std::convertible_to<double>;
};

class SetFunctionOracle {
 public:
  using mask_type = SubsetMask;
  using Fn = std::function<double(const SubsetMask&)>;

  enum class Memo { kOn, kOff };

  SetFunctionOracle(std::size_t n, Fn fn, Memo memo = Memo::kOn);

  std::size_t size() const { return n_; }

  // Memoized evaluation. Thread-safe; the counter only moves on a miss.
  double evaluate(const SubsetMask& x) const;
  // Bypasses the memo table (still counted). Exhaustive enumeration uses this
  // so that 2^n entries are not retained.
  double evaluate_uncached(const SubsetMask& x) const;
  double operator()(const SubsetMask& x) const { return evaluate(x); }

  // Number of underlying function evaluations so far.
  std::uint64_t calls() const { return state_->calls.load(std::memory_order_relaxed); }
  std::size_t cache_size() const;

 private:
  struct State {
    std::mutex mu;
    std::unordered_map<SubsetMask, double, MaskHash> memo;
    std::atomic<std::uint64_t> calls{0};
  };

  std::size_t n_;
  Fn fn_;
  Memo memo_mode_;
  std::unique_ptr<State> state_;
};

// Dense table of all 2^n values of a set function.
class TabulatedFunction {
 public:
  using mask_type = SmallMask;
  static constexpr std::size_t kMaxElements = 25;

  TabulatedFunction(std::size_t n, std::vector<double> values);

  template <SetFunction F>
  static TabulatedFunction tabulate(const F& f) {
    const std::size_t n = f.size();
    if (n > kMaxElements)
      throw std::invalid_argument("cannot tabulate a set function over " + std::to_string(n) +
                                  " elements (limit " + std::to_string(kMaxElements) + ")");
    std::vector<double> values(std::size_t{1} << n);
    for (std::uint64_t bits = 0; bits < values.size(); ++bits)
      values[bits] = f.evaluate_uncached(F::mask_type::from_bits(n, bits));
    return TabulatedFunction(n, std::move(values));
  }

  std::size_t size() const { return n_; }
  double evaluate(SmallMask x) const { return values_[x.bits()]; }
  double evaluate_uncached(SmallMask x) const { return values_[x.bits()]; }
  double operator()(SmallMask x) const { return values_[x.bits()]; }
  double at(std::uint32_t bits) const { return values_[bits]; }

  // Exposes the table as a memoized oracle over SubsetMask.
  SetFunctionOracle as_oracle() const;

 private:
  std::size_t n_;
  std::vector<double> values_;
};

// f(j | X) = f(X + j) - f(X). Requires j not in X.
template <SetFunction F>
double marginal_gain(const F& f, Element j, const typename F::mask_type& x) {
  if (x.contains(j))
    throw ContractError("marginal gain requested for element " + std::to_string(j) +
                        " already in the set");
  return f.evaluate(x.with(j)) - f.evaluate(x);
}

// Delta_f = max_j f({j}).
template <SetFunction F>
double max_singleton_gain(const F& f) {
  const typename F::mask_type empty(f.size());
  double best = f.evaluate(empty.with(0));
  for (Element j = 1; j < f.size(); ++j) best = std::max(best, f.evaluate(empty.with(j)));
  return best;
}

// One witness against a diminishing-returns or monotonicity condition.
// For submodularity: gain_small = f(j|X), gain_large = f(j|Y), X subset of Y,
// violated when gain_large > gain_small. For monotonicity Y == X and
// gain_small = f(j|X) < 0.
struct Violation {
  SubsetMask x;
  SubsetMask y;
  Element j = 0;
  double gain_small = 0.0;
  double gain_large = 0.0;
};

struct ViolationReport {
  std::uint64_t checked = 0;
  std::uint64_t total = 0;              // all violations found
  std::vector<Violation> violations;    // first kMaxRecorded of them
  static constexpr std::size_t kMaxRecorded = 4096;

  bool ok() const { return total == 0; }
  void record(Violation v) {
    ++total;
    if (violations.size() < kMaxRecorded) violations.push_back(std::move(v));
  }
};

// Exhaustive check of f(j|X) >= f(j|Y) for all X subset Y, j not in Y.
// Refuses n > limit_n.
ViolationReport check_submodular(const SetFunctionOracle& f, std::size_t limit_n = 15);
ViolationReport check_submodular(const TabulatedFunction& f);
// Random (X subset Y, j) triples; any n.
ViolationReport check_submodular_sampled(const SetFunctionOracle& f, std::size_t samples,
                                         std::uint64_t seed);

// Exhaustive check of f(j|X) >= 0 for all X, j not in X.
ViolationReport check_monotone(const SetFunctionOracle& f, std::size_t limit_n = 15);
ViolationReport check_monotone(const TabulatedFunction& f);
ViolationReport check_monotone_sampled(const SetFunctionOracle& f, std::size_t samples,
                                       std::uint64_t seed);

}  // namespace submax

#endif  // SUBMAX_SET_FUNCTION_HPP_
