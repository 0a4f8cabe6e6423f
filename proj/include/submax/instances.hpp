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

// Bipartite coverage instances: items (the ground set) cover elements that
// carry nonnegative values.
//
//   unlabeled:  g(X) = value of covered elements
//               f(X) = number of covered elements
//   labeled:    g(X) = value of covered positive (fraud) elements
//               f(X) = number of covered negative (normal) elements
//
// File format (JSON, version 1):
//   {"version":1, "n_items":I, "n_elements":E,
//    "values":[v_0,...,v_{E-1}], "labels":[true,false,...] (optional),
//    "covers":[[e,...], ...I lists...]}

#ifndef SUBMAX_INSTANCES_HPP_
#define SUBMAX_INSTANCES_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "submax/set_function.hpp"

namespace submax {

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CoverageInstance {
  std::size_t n_items = 0;
  std::size_t n_elements = 0;
  std::vector<std::vector<std::uint32_t>> covers;
  std::vector<double> values;
  // true marks a positive (fraud) element.
  std::optional<std::vector<bool>> labels;

  // Throws InstanceError naming the offending item/element.
  void validate() const;
  bool labeled() const { return labels.has_value(); }
  // The first k items with the same elements.
  CoverageInstance first_items(std::size_t k) const;

  friend bool operator==(const CoverageInstance&, const CoverageInstance&) = default;
};

SetFunctionOracle coverage_objective(const CoverageInstance& inst);
SetFunctionOracle coverage_constraint(const CoverageInstance& inst);

struct GeneratorParams {
  std::size_t n_items = 100;
  std::size_t n_elements = 100;
  std::int64_t value_min = 1;
  std::int64_t value_max = 100;
  std::size_t degree_min = 1;
  std::size_t degree_max = 10;
  std::uint64_t seed = 1;

  void validate() const;
};

// Per item: degree uniform in [degree_min, degree_max], covered elements
// uniform without replacement; element values uniform integers. Elements
// left uncovered are attached to one uniformly chosen item.
CoverageInstance generate(const GeneratorParams& params);

std::string to_json(const CoverageInstance& inst);
CoverageInstance from_json(const std::string& text, const std::string& source = "<string>");
void save(const CoverageInstance& inst, const std::filesystem::path& path);
CoverageInstance load(const std::filesystem::path& path);

// The three-item example: elements u=10, v=20, w=30; 0 covers {u,v},
// 1 covers {v,w}, 2 covers {w}.
CoverageInstance tiny_instance();

}  // namespace submax

#endif  // SUBMAX_INSTANCES_HPP_
