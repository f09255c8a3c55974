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

// Logarithmic-barrier homotopies over the sequence form.
//
// Unknowns are y = (x, nu, t): one x per non-empty sequence of every player,
// one nu per player information set, and the homotopy parameter t. The
// substitution gamma = psi1(x, t^(1/k); g0^(1/k), k), lambda = psi2(...) makes
// gamma * lambda = t * g0 hold identically, so complementarity never appears
// as an equation. LGNE substitutes only sequences that end a player's own
// tree (the D set) and uses gamma = x elsewhere; LBNE substitutes everything.

#ifndef SEQNASH_HOMOTOPY_HPP_
#define SEQNASH_HOMOTOPY_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "seqnash/sequence_form.hpp"

namespace seqnash {

enum class Variant { kLgne, kLbne };

std::string variant_name(Variant v);
/// Accepts "lgne" or "lbne" in any case; throws DomainError otherwise.
Variant parse_variant(const std::string& text);

struct PsiValues {
  double psi1 = 0.0;
  double psi2 = 0.0;
  double dpsi1_dv = 0.0;
  double dpsi2_dv = 0.0;
  double dpsi1_dr = 0.0;
  double dpsi2_dr = 0.0;
};

/// psi1 = ((v + s) / 2)^k, psi2 = ((-v + s) / 2)^k with s = sqrt(v^2 + 4 tau r).
/// Requires r >= 0, tau > 0, k > 2.
PsiValues psi(double v, double r, double tau0, double kappa0);

struct HomotopyConfig {
  Variant variant = Variant::kLgne;
  double kappa0 = 3.0;
  /// Interior anchor; empty means uniform behavior.
  RealizationProfile gamma0;
  /// One entry per x coordinate; empty means zero.
  std::vector<double> alpha;
};

/// Uniform in [-bound, bound]^n, reproducible from the seed.
std::vector<double> sample_alpha(std::uint64_t seed, double bound,
                                 std::size_t n);

struct HomotopyPoint {
  Eigen::VectorXd x;
  Eigen::VectorXd nu;
  double t = 1.0;

  Eigen::VectorXd stacked() const;
  static HomotopyPoint from_stacked(const Eigen::VectorXd& y,
                                    std::size_t num_x);
};

struct RecoveredPrimalDual {
  RealizationProfile gamma;
  /// lambda per x coordinate; zero where not substituted.
  Eigen::VectorXd lambda;
  /// Whether coordinate k goes through psi.
  std::vector<bool> substituted;
};

class HomotopySystem {
 public:
  /// Validates the configuration and fills in defaults.
  HomotopySystem(const SequenceFormGame& sf, HomotopyConfig config);

  const SequenceFormGame& game() const { return *sf_; }
  const HomotopyConfig& config() const { return config_; }
  std::size_t num_x() const { return coords_.size(); }
  std::size_t num_nu() const { return sf_->num_infosets(); }
  std::size_t num_equations() const { return num_x() + num_nu(); }
  std::size_t num_unknowns() const { return num_equations() + 1; }
  bool substituted(std::size_t k) const { return coords_[k].substituted; }

  HomotopyPoint start_point() const;
  RecoveredPrimalDual recover(const HomotopyPoint& p) const;
  RecoveredPrimalDual recover(const Eigen::VectorXd& y) const;
  RealizationProfile realization(const Eigen::VectorXd& y) const;

  Eigen::VectorXd residual(const Eigen::VectorXd& y) const;
  Eigen::VectorXd residual(const HomotopyPoint& p) const {
    return residual(p.stacked());
  }
  /// (n0 + m0) x (n0 + m0 + 1); the last column is d/dt.
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& y) const;
  Eigen::MatrixXd jacobian(const HomotopyPoint& p) const {
    return jacobian(p.stacked());
  }
  /// Residual and Jacobian from one pass.
  void evaluate(const Eigen::VectorXd& y, Eigen::VectorXd* residual,
                Eigen::MatrixXd* jacobian) const;

 private:
  struct Coordinate {
    int player = 0;
    int seq = 0;
    int nu = 0;                // global index of the owning set
    std::vector<int> children;  // global nu indices of M(seq)
    bool in_d = false;
    bool substituted = false;
    double gamma0 = 1.0;
    double tau0 = 1.0;
    double lambda_coeff = 0.0;  // multiplier of lambda in the row
    double alpha = 0.0;
  };
  struct FlowRow {
    int parent = -1;  // x coordinate, -1 for the empty sequence
    std::vector<int> children;
  };

  const SequenceFormGame* sf_;
  HomotopyConfig config_;
  std::vector<Coordinate> coords_;
  std::vector<FlowRow> flows_;
};

}  // namespace seqnash

#endif  // SEQNASH_HOMOTOPY_HPP_
