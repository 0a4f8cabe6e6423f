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

#include "submax/instances.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <memory>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

namespace submax {
namespace {

using Words = std::vector<std::uint64_t>;

// Precomputed element bitsets shared by the objective and constraint oracles.
struct CoverageBits {
  std::size_t word_count = 0;
  std::vector<Words> item_bits;
  Words counted;  // elements that contribute to the function
  std::vector<double> values;

  CoverageBits(const CoverageInstance& inst, bool objective) {
    word_count = (inst.n_elements + 63) / 64;
    item_bits.assign(inst.n_items, Words(word_count, 0));
    for (std::size_t i = 0; i < inst.n_items; ++i)
      for (std::uint32_t e : inst.covers[i]) item_bits[i][e / 64] |= std::uint64_t{1} << (e % 64);
    counted.assign(word_count, 0);
    for (std::size_t e = 0; e < inst.n_elements; ++e) {
      const bool positive = inst.labels ? (*inst.labels)[e] : true;
      const bool include = inst.labels ? (objective ? positive : !positive) : true;
      if (include) counted[e / 64] |= std::uint64_t{1} << (e % 64);
    }
    values = inst.values;
  }

  Words covered(const SubsetMask& x) const {
    Words acc(word_count, 0);
    x.for_each([&](Element i) {
      const Words& bits = item_bits[i];
      for (std::size_t w = 0; w < word_count; ++w) acc[w] |= bits[w];
    });
    for (std::size_t w = 0; w < word_count; ++w) acc[w] &= counted[w];
    return acc;
  }
};

std::string item_label(std::size_t i) { return "covers[" + std::to_string(i) + "]"; }

}  // namespace

void CoverageInstance::validate() const {
  if (n_items == 0) throw InstanceError("n_items must be positive");
  if (n_elements == 0) throw InstanceError("n_elements must be positive");
  if (covers.size() != n_items)
    throw InstanceError("covers has " + std::to_string(covers.size()) + " lists, expected " +
                        std::to_string(n_items));
  if (values.size() != n_elements)
    throw InstanceError("values has " + std::to_string(values.size()) + " entries, expected " +
                        std::to_string(n_elements));
  if (labels && labels->size() != n_elements)
    throw InstanceError("labels has " + std::to_string(labels->size()) + " entries, expected " +
                        std::to_string(n_elements));
  for (std::size_t e = 0; e < n_elements; ++e)
    if (!(values[e] >= 0.0) || !std::isfinite(values[e]))
      throw InstanceError("values[" + std::to_string(e) + "] must be a finite nonnegative number");
  for (std::size_t i = 0; i < n_items; ++i) {
    if (covers[i].empty())
      throw InstanceError(item_label(i) + ": item " + std::to_string(i) + " covers no elements");
    std::set<std::uint32_t> seen;
    for (std::uint32_t e : covers[i]) {
      if (e >= n_elements)
        throw InstanceError(item_label(i) + ": element id " + std::to_string(e) +
                            " out of range [0, " + std::to_string(n_elements) + ")");
      if (!seen.insert(e).second)
        throw InstanceError(item_label(i) + ": element " + std::to_string(e) + " listed twice");
    }
  }
}

CoverageInstance CoverageInstance::first_items(std::size_t k) const {
  if (k == 0 || k > n_items) throw std::invalid_argument("first_items: k out of range");
  CoverageInstance sub = *this;
  sub.n_items = k;
  sub.covers.resize(k);
  return sub;
}

SetFunctionOracle coverage_objective(const CoverageInstance& inst) {
  inst.validate();
  auto bits = std::make_shared<const CoverageBits>(inst, true);
  return SetFunctionOracle(inst.n_items, [bits](const SubsetMask& x) {
    const Words covered = bits->covered(x);
    double total = 0.0;
    for (std::size_t w = 0; w < covered.size(); ++w) {
      for (std::uint64_t word = covered[w]; word != 0; word &= word - 1)
        total += bits->values[w * 64 + static_cast<std::size_t>(std::countr_zero(word))];
    }
    return total;
  });
}

SetFunctionOracle coverage_constraint(const CoverageInstance& inst) {
  inst.validate();
  auto bits = std::make_shared<const CoverageBits>(inst, false);
  return SetFunctionOracle(inst.n_items, [bits](const SubsetMask& x) {
    std::size_t count = 0;
    for (std::uint64_t word : bits->covered(x)) count += static_cast<std::size_t>(std::popcount(word));
    return static_cast<double>(count);
  });
}

void GeneratorParams::validate() const {
  if (n_items == 0) throw std::invalid_argument("generator needs at least one item");
  if (n_elements == 0) throw std::invalid_argument("generator needs at least one element");
  if (value_min > value_max || value_min < 0)
    throw std::invalid_argument("value range must be a nonempty nonnegative interval");
  if (degree_min == 0 || degree_min > degree_max)
    throw std::invalid_argument("degree range must be a nonempty interval of positive sizes");
  if (degree_max > n_elements)
    throw std::invalid_argument("degree " + std::to_string(degree_max) + " exceeds the " +
                                std::to_string(n_elements) + " available elements");
}

CoverageInstance generate(const GeneratorParams& params) {
  params.validate();
  std::mt19937_64 rng(params.seed);
  CoverageInstance inst;
  inst.n_items = params.n_items;
  inst.n_elements = params.n_elements;
  inst.values.resize(params.n_elements);
  std::uniform_int_distribution<std::int64_t> value(params.value_min, params.value_max);
  for (double& v : inst.values) v = static_cast<double>(value(rng));

  std::uniform_int_distribution<std::size_t> degree(params.degree_min, params.degree_max);
  std::vector<std::uint32_t> pool(params.n_elements);
  std::vector<bool> covered(params.n_elements, false);
  inst.covers.resize(params.n_items);
  for (auto& cover : inst.covers) {
    std::iota(pool.begin(), pool.end(), std::uint32_t{0});
    const std::size_t d = degree(rng);
    // Partial Fisher-Yates: the first d slots become a uniform sample.
    for (std::size_t k = 0; k < d; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, pool.size() - 1);
      std::swap(pool[k], pool[pick(rng)]);
    }
    cover.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(d));
    for (std::uint32_t e : cover) covered[e] = true;
  }
  std::uniform_int_distribution<std::size_t> any_item(0, params.n_items - 1);
  for (std::uint32_t e = 0; e < params.n_elements; ++e)
    if (!covered[e]) inst.covers[any_item(rng)].push_back(e);
  for (auto& cover : inst.covers) std::sort(cover.begin(), cover.end());
  return inst;
}

std::string to_json(const CoverageInstance& inst) {
  nlohmann::ordered_json doc;
  doc["version"] = 1;
  doc["n_items"] = inst.n_items;
  doc["n_elements"] = inst.n_elements;
  doc["values"] = inst.values;
  if (inst.labels) doc["labels"] = *inst.labels;
  doc["covers"] = inst.covers;
  return doc.dump() + "\n";
}

CoverageInstance from_json(const std::string& text, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InstanceError(source + ": " + e.what());
  }
  auto fail = [&](const std::string& field, const std::string& why) -> InstanceError {
    return InstanceError(source + ": field '" + field + "': " + why);
  };
  if (!doc.is_object()) throw InstanceError(source + ": top level must be a JSON object");
  static const std::set<std::string> known = {"version", "n_items", "n_elements", "values",
                                              "labels", "covers"};
  for (const auto& [key, _] : doc.items())
    if (!known.contains(key)) throw fail(key, "unknown field");
  for (const char* required : {"version", "n_items", "n_elements", "values", "covers"})
    if (!doc.contains(required)) throw fail(required, "missing");

  auto count_field = [&](const char* name) -> std::size_t {
    const auto& v = doc.at(name);
    if (!v.is_number_unsigned()) throw fail(name, "must be a nonnegative integer");
    return v.get<std::size_t>();
  };
  if (!doc["version"].is_number_integer() || doc["version"].get<int>() != 1)
    throw fail("version", "unsupported version (expected 1)");

  CoverageInstance inst;
  inst.n_items = count_field("n_items");
  inst.n_elements = count_field("n_elements");

  const auto& values = doc["values"];
  if (!values.is_array()) throw fail("values", "must be an array");
  for (std::size_t e = 0; e < values.size(); ++e) {
    if (!values[e].is_number())
      throw fail("values[" + std::to_string(e) + "]", "must be a number");
    inst.values.push_back(values[e].get<double>());
  }
  if (doc.contains("labels")) {
    const auto& labels = doc["labels"];
    if (!labels.is_array()) throw fail("labels", "must be an array");
    std::vector<bool> parsed;
    for (std::size_t e = 0; e < labels.size(); ++e) {
      if (!labels[e].is_boolean())
        throw fail("labels[" + std::to_string(e) + "]", "must be true or false");
      parsed.push_back(labels[e].get<bool>());
    }
    inst.labels = std::move(parsed);
  }
  const auto& covers = doc["covers"];
  if (!covers.is_array()) throw fail("covers", "must be an array of arrays");
  for (std::size_t i = 0; i < covers.size(); ++i) {
    const auto& list = covers[i];
    if (!list.is_array()) throw fail(item_label(i), "must be an array");
    std::vector<std::uint32_t> ids;
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (!list[k].is_number_unsigned())
        throw fail(item_label(i) + "[" + std::to_string(k) + "]",
                   "element id must be a nonnegative integer");
      const auto id = list[k].get<std::uint64_t>();
      if (id >= inst.n_elements)
        throw fail(item_label(i), "element id " + std::to_string(id) + " out of range [0, " +
                                      std::to_string(inst.n_elements) + ")");
      ids.push_back(static_cast<std::uint32_t>(id));
    }
    inst.covers.push_back(std::move(ids));
  }
  try {
    inst.validate();
  } catch (const InstanceError& e) {
    throw InstanceError(source + ": " + e.what());
  }
  return inst;
}

void save(const CoverageInstance& inst, const std::filesystem::path& path) {
  inst.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InstanceError(path.string() + ": cannot open for writing");
  out << to_json(inst);
  if (!out) throw InstanceError(path.string() + ": write failed");
}

CoverageInstance load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError(path.string() + ": cannot open instance file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str(), path.string());
}

CoverageInstance tiny_instance() {
  CoverageInstance inst;
  inst.n_items = 3;
  inst.n_elements = 3;
  inst.values = {10, 20, 30};
  inst.covers = {{0, 1}, {1, 2}, {2}};
  return inst;
}

}  // namespace submax
