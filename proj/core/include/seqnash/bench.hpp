// Copyright 2026 The seqnash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded benchmark sweeps over generated games.
//
// Config file:
//   {"rows": [{"type": 1, "n": 3, "L": 5, "A": 2}], "instances": 20,
//    "variants": ["lgne", "lbne"], "max_steps": 5000, "max_seconds": 600,
//    "seed": 1, "threads": 0, "kappa0": 3, "alpha_bound": 0.01,
//    "t_end": 1e-4, "output": "bench"}
// Every key except "rows" is optional.

#ifndef SEQNASH_BENCH_HPP_
#define SEQNASH_BENCH_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "seqnash/homotopy.hpp"
#include "seqnash/tracer.hpp"

namespace seqnash {

struct BenchRow {
  int game_type = 1;
  int n = 3;
  int depth = 5;
  int actions = 2;
};

struct BenchConfig {
  std::vector<BenchRow> rows;
  std::size_t instances = 20;
  std::vector<Variant> variants{Variant::kLgne, Variant::kLbne};
  TracerParams tracer = default_tracer();
  double kappa0 = 3.0;
  double alpha_bound = 0.01;
  std::uint64_t master_seed = 1;
  std::size_t threads = 0;  // 0: hardware concurrency
  std::string output;

  static TracerParams default_tracer();
  /// Throws DomainError on invalid values.
  void validate() const;
  static BenchConfig from_json(const nlohmann::ordered_json& doc);
  nlohmann::ordered_json to_json() const;
};

/// Seed of one instance; shared by every variant so they solve the same game
/// from the same start.
std::uint64_t instance_seed(std::uint64_t master_seed, std::size_t row,
                            std::size_t instance);

struct InstanceRecord {
  std::size_t row = 0;
  std::size_t instance = 0;
  Variant variant = Variant::kLgne;
  std::uint64_t seed = 0;
  int dim = 0;
  bool converged = false;
  std::string termination;
  std::size_t steps = 0;
  std::size_t corrector_iterations = 0;
  double seconds = 0.0;
  double gap = 0.0;
  double final_t = 1.0;
};

struct Stats {
  double max = 0.0;
  double min = 0.0;
  double median = 0.0;
  std::size_t count = 0;  // 0 leaves the fields as NaN
};
Stats compute_stats(std::vector<double> values);

struct CellSummary {
  BenchRow row;
  Variant variant = Variant::kLgne;
  int dim = 0;
  std::size_t instances = 0;
  std::size_t failures = 0;
  double failure_rate = 0.0;
  Stats steps;    // successful runs only
  Stats seconds;  // successful runs only
};

std::vector<CellSummary> summarize(const BenchConfig& config,
                                   const std::vector<InstanceRecord>& records);

struct BenchReport {
  BenchConfig config;
  std::vector<InstanceRecord> records;  // sorted by (row, variant, seed)
  std::vector<CellSummary> cells;       // row-major, then variant

  nlohmann::ordered_json to_json() const;
  /// One line per (row, variant).
  void write_csv(std::ostream& out) const;
};

/// Solves one generated instance.
InstanceRecord run_instance(const BenchConfig& config, std::size_t row,
                            std::size_t instance, Variant variant);

BenchReport run_bench(
    const BenchConfig& config,
    const std::function<void(const InstanceRecord&)>& progress = {});

}  // namespace seqnash

#endif  // SEQNASH_BENCH_HPP_
