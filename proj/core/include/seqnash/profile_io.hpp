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

// JSON forms of profiles and solver results, and the path CSV.
//
// Realization profile:  {"kind": "realization", "plans": {"1": {"L": 0, ...}}}
// Mixed profile:        {"kind": "mixed", "strategies": {"1": {"{L}": 1, ...}}}
// Players are keyed 1-based; sequences and reduced strategies by label.

#ifndef SEQNASH_PROFILE_IO_HPP_
#define SEQNASH_PROFILE_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "seqnash/homotopy.hpp"
#include "seqnash/sequence_form.hpp"
#include "seqnash/tracer.hpp"

namespace seqnash {

using Json = nlohmann::ordered_json;

Json realization_to_json(const SequenceFormGame& sf,
                         const RealizationProfile& gamma);
Json mixed_to_json(const SequenceFormGame& sf, const MixedProfile& sigma);

struct ProfileInput {
  bool is_mixed = false;
  RealizationProfile realization;
  MixedProfile mixed;
};

/// Unknown labels and missing entries raise DomainError. The empty sequence
/// may be omitted from a realization plan.
ProfileInput profile_from_json(const SequenceFormGame& sf, const Json& doc);
ProfileInput load_profile(const SequenceFormGame& sf, const std::string& path);

/// "gamma:<player>:<sequence label>" for every x coordinate.
std::vector<std::string> gamma_columns(const SequenceFormGame& sf);

void write_path_csv(const std::vector<std::string>& gamma_columns,
                    const PathTrace& trace, std::ostream& out);

/// Self-contained record of a solve: settings, outcome, and the full path.
Json solve_result_to_json(const SequenceFormGame& sf,
                          const HomotopyConfig& config,
                          const SolveResult& result, bool include_path);

/// Reads a document written by solve_result_to_json and emits the path CSV.
/// Throws DomainError when it has no path rows.
void write_path_csv_from_json(const Json& doc, std::ostream& out);

Json load_json_file(const std::string& path);

struct VerifyReport {
  bool is_mixed = false;
  double epsilon = 0.0;
  double flow_violation = 0.0;
  GapReport gap;
  /// Mixed inputs only: best deviation gain per player in the normal form.
  std::vector<double> deviation_slack;
  double max_deviation_slack = 0.0;
  bool pass = false;

  Json to_json() const;
};

/// Sequence-form gap test, plus the normal-form deviation test for mixed
/// profiles. Both must hold within eps.
VerifyReport verify_profile(const SequenceFormGame& sf,
                            const ProfileInput& profile, double eps);

}  // namespace seqnash

#endif  // SEQNASH_PROFILE_IO_HPP_
