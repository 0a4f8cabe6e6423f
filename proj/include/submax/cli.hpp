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

#ifndef SUBMAX_CLI_HPP_
#define SUBMAX_CLI_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "submax/instances.hpp"
#include "submax/solvers.hpp"

namespace submax::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsageError = 2;

// Runs `submax <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// One row of the sweep CSV (schema v1):
//   bound,solver,g,f,iterations,oracle_calls,wall_ms,repairs[,exact_opt]
struct SweepRow {
  double bound = 0.0;
  std::string solver;
  double g = 0.0;
  double f = 0.0;
  std::size_t iterations = 0;
  std::uint64_t oracle_calls = 0;
  double wall_ms = 0.0;
  std::size_t repairs = 0;
  double exact_opt = -1.0;
};

// Solves every (bound, solver) cell, `threads` at a time. Rows come back
// bound-major in the order given, regardless of completion order.
std::vector<SweepRow> run_sweep(const CoverageInstance& inst, const std::vector<double>& bounds,
                                const std::vector<SolverKind>& solvers, int max_iterations,
                                bool with_opt, std::size_t threads);

// "2,3,5" or "start:stop:step" (inclusive).
std::vector<double> parse_bounds(const std::string& spec);
// Eleven bounds at 30%, 35%, ..., 80% of f over the full item set, rounded.
std::vector<double> default_bounds(const CoverageInstance& inst);
// Shortest round-trippable decimal; integral values print without a point.
std::string format_number(double v);

}  // namespace submax::cli

#endif  // SUBMAX_CLI_HPP_
