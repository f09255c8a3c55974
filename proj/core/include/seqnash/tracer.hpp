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

// Euler-Newton path following for HomotopySystem, from t = 1 towards t = 0.

#ifndef SEQNASH_TRACER_HPP_
#define SEQNASH_TRACER_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "seqnash/homotopy.hpp"
#include "seqnash/sequence_form.hpp"

namespace seqnash {

struct TracerParams {
  double predictor_coeff = 0.05;  // step length c_p * t^e_p
  double predictor_exp = 0.3;
  double corrector_coeff = 0.5;   // tolerance c_c * t^e_c * tol_scale
  double corrector_exp = 0.3;
  double t_end = 1e-4;
  std::size_t max_steps = 100'000;
  double max_seconds = 600.0;
  int max_corrector_iters = 20;
  /// Corrector runs at or below this many iterations grow the step.
  int fast_corrector_iters = 3;
  double shrink = 0.5;
  double grow = 1.2;
  double min_step = 1e-12;
  /// Non-positive selects 1 + the largest payoff range over players.
  double tol_scale = 0.0;
  /// Residual target of the fixed-t Newton pass at the final point.
  double final_tolerance = 1e-9;
  bool record_path = true;

  void validate() const;
};

struct PathPoint {
  double t = 1.0;
  double step = 0.0;
  int corrector_iters = 0;
  double residual = 0.0;
  Eigen::VectorXd y;          // (x, nu, t)
  std::vector<double> gamma;  // recovered gamma per x coordinate
};

struct PathTrace {
  std::vector<PathPoint> points;
  std::size_t rejected_steps = 0;
  std::size_t corrector_iterations = 0;
};

enum class Termination { kConverged, kStepLimit, kTimeLimit, kNumericalFailure };
std::string termination_name(Termination t);

struct SolveResult {
  RealizationProfile gamma;      // polished
  RealizationProfile raw_gamma;  // as recovered at the final point
  GapReport gap;
  GapReport raw_gap;
  Termination termination = Termination::kNumericalFailure;
  std::string message;
  PathTrace trace;
  Eigen::VectorXd final_point;
  double final_t = 1.0;
  std::size_t steps = 0;  // accepted predictor steps
  double seconds = 0.0;

  bool converged() const { return termination == Termination::kConverged; }
};

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unit vector spanning the null space of the Jacobian at y. Oriented by a
/// positive inner product with `previous`, or with decreasing t when
/// `previous` is null. Throws NumericalFailure on rank deficiency.
Eigen::VectorXd tangent(const HomotopySystem& system, const Eigen::VectorXd& y,
                        const Eigen::VectorXd* previous = nullptr);

SolveResult trace(const HomotopySystem& system,
                  const TracerParams& params = {});

/// Builds the system and traces it.
SolveResult solve(const SequenceFormGame& sf, const HomotopyConfig& config,
                  const TracerParams& params = {});

/// Clips negatives and renormalizes every information set top-down so the
/// flow constraints hold exactly.
RealizationProfile polish(const SequenceFormGame& sf,
                          const RealizationProfile& gamma);

struct RankInfo {
  int rank = 0;
  int rows = 0;
  double min_ratio = 0.0;  // smallest / largest singular value
};
/// Singular values above rel_threshold * s_max count toward the rank. A
/// threshold of 0 uses max(rows, cols) * machine epsilon.
RankInfo numerical_rank(const Eigen::MatrixXd& m, double rel_threshold = 0.0);

struct RankSample {
  std::size_t index = 0;
  double t = 0.0;
  RankInfo info;
};

struct RankReport {
  std::vector<RankSample> samples;
  bool full_rank = true;
  double min_ratio = 1.0;
};

/// Numerical rank of the Jacobian at `sample_count` evenly spaced points.
RankReport rank_diagnostic(const HomotopySystem& system, const PathTrace& trace,
                           std::size_t sample_count,
                           double rel_threshold = 0.0);

}  // namespace seqnash

#endif  // SEQNASH_TRACER_HPP_
