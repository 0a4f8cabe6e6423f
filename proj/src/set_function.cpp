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

#include "submax/set_function.hpp"

#include <random>
#include <utility>

namespace submax {

SetFunctionOracle::SetFunctionOracle(std::size_t n, Fn fn, Memo memo)
    : n_(n), fn_(std::move(fn)), memo_mode_(memo), state_(std::make_unique<State>()) {
  if (n == 0) throw std::invalid_argument("set function over an empty ground set");
  if (!fn_) throw std::invalid_argument("set function oracle without a callable");
}

double SetFunctionOracle::evaluate(const SubsetMask& x) const {
  if (memo_mode_ == Memo::kOff) return evaluate_uncached(x);
  {
    std::lock_guard<std::mutex> lock(state_->mu);
    if (auto it = state_->memo.find(x); it != state_->memo.end()) return it->second;
  }
  const double value = fn_(x);
  std::lock_guard<std::mutex> lock(state_->mu);
  auto [it, inserted] = state_->memo.emplace(x, value);
  if (inserted) state_->calls.fetch_add(1, std::memory_order_relaxed);
  return it->second;
}

double SetFunctionOracle::evaluate_uncached(const SubsetMask& x) const {
  state_->calls.fetch_add(1, std::memory_order_relaxed);
  return fn_(x);
}

std::size_t SetFunctionOracle::cache_size() const {
  std::lock_guard<std::mutex> lock(state_->mu);
  return state_->memo.size();
}

TabulatedFunction::TabulatedFunction(std::size_t n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  if (n == 0 || n > kMaxElements)
    throw std::invalid_argument("tabulated function size out of range: " + std::to_string(n));
  if (values_.size() != (std::size_t{1} << n))
    throw std::invalid_argument("tabulated function needs 2^n values");
}

SetFunctionOracle TabulatedFunction::as_oracle() const {
  auto values = std::make_shared<const std::vector<double>>(values_);
  return SetFunctionOracle(n_, [values](const SubsetMask& x) {
    return (*values)[static_cast<std::size_t>(x.words()[0])];
  });
}

namespace {

SubsetMask widen(std::size_t n, std::uint32_t bits) { return SubsetMask::from_bits(n, bits); }

}  // namespace

ViolationReport check_submodular(const TabulatedFunction& f) {
  ViolationReport report;
  const std::size_t n = f.size();
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  for (std::uint32_t y = 0; y <= full; ++y) {
    const std::uint32_t outside = full & ~y;
    const double fy = f.at(y);
    // Every submask x of y, including y itself and the empty set.
    std::uint32_t x = y;
    while (true) {
      const double fx = f.at(x);
      for (std::uint32_t rest = outside; rest != 0; rest &= rest - 1) {
        const std::uint32_t bit = rest & (~rest + 1);
        const double gain_x = f.at(x | bit) - fx;
        const double gain_y = f.at(y | bit) - fy;
        ++report.checked;
        if (gain_y > gain_x + kTolerance) {
          report.record({widen(n, x), widen(n, y),
                         static_cast<Element>(std::countr_zero(bit)), gain_x, gain_y});
        }
      }
      if (x == 0) break;
      x = (x - 1) & y;
    }
  }
  return report;
}

ViolationReport check_submodular(const SetFunctionOracle& f, std::size_t limit_n) {
  if (f.size() > limit_n)
    throw std::invalid_argument("exhaustive submodularity check refuses n=" +
                                std::to_string(f.size()) + " (limit " + std::to_string(limit_n) +
                                ")");
  return check_submodular(TabulatedFunction::tabulate(f));
}

ViolationReport check_monotone(const TabulatedFunction& f) {
  ViolationReport report;
  const std::size_t n = f.size();
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  for (std::uint32_t x = 0; x <= full; ++x) {
    const double fx = f.at(x);
    for (std::uint32_t rest = full & ~x; rest != 0; rest &= rest - 1) {
      const std::uint32_t bit = rest & (~rest + 1);
      const double gain = f.at(x | bit) - fx;
      ++report.checked;
      if (gain < -kTolerance) {
        report.record({widen(n, x), widen(n, x), static_cast<Element>(std::countr_zero(bit)),
                       gain, gain});
      }
    }
  }
  return report;
}

ViolationReport check_monotone(const SetFunctionOracle& f, std::size_t limit_n) {
  if (f.size() > limit_n)
    throw std::invalid_argument("exhaustive monotonicity check refuses n=" +
                                std::to_string(f.size()) + " (limit " + std::to_string(limit_n) +
                                ")");
  return check_monotone(TabulatedFunction::tabulate(f));
}

ViolationReport check_submodular_sampled(const SetFunctionOracle& f, std::size_t samples,
                                         std::uint64_t seed) {
  ViolationReport report;
  const std::size_t n = f.size();
  if (n < 1) return report;
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
  for (std::size_t s = 0; s < samples; ++s) {
    const Element j = pick(rng);
    SubsetMask x(n), y(n);
    for (Element i = 0; i < n; ++i) {
      if (i == j) continue;
      if (coin(rng)) {
        y.insert(i);
        if (coin(rng)) x.insert(i);
      }
    }
    const double gain_x = marginal_gain(f, j, x);
    const double gain_y = marginal_gain(f, j, y);
    ++report.checked;
    if (gain_y > gain_x + kTolerance) report.record({x, y, j, gain_x, gain_y});
  }
  return report;
}

ViolationReport check_monotone_sampled(const SetFunctionOracle& f, std::size_t samples,
                                       std::uint64_t seed) {
  ViolationReport report;
  const std::size_t n = f.size();
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
  for (std::size_t s = 0; s < samples; ++s) {
    const Element j = pick(rng);
    SubsetMask x(n);
    for (Element i = 0; i < n; ++i)
      if (i != j && coin(rng)) x.insert(i);
    const double gain = marginal_gain(f, j, x);
    ++report.checked;
    if (gain < -kTolerance) report.record({x, x, j, gain, gain});
  }
  return report;
}

}  // namespace submax
