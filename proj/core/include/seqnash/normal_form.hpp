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

// Reduced normal form with chance folded into the payoffs, and a brute-force
// equilibrium oracle for very small games.

#ifndef SEQNASH_NORMAL_FORM_HPP_
#define SEQNASH_NORMAL_FORM_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "seqnash/game_model.hpp"
#include "seqnash/sequence_form.hpp"

namespace seqnash {

class ReducedNormalForm {
 public:
  int num_players() const { return static_cast<int>(strategies_.size()); }
  const std::vector<ReducedStrategy>& strategies(int player) const {
    return strategies_.at(player);
  }
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t num_profiles() const { return num_profiles_; }

  /// Row-major flat index, player 1 most significant.
  std::size_t flat_index(const std::vector<std::size_t>& profile) const;
  std::vector<std::size_t> unflatten(std::size_t flat) const;

  double payoff(std::size_t flat, int player) const {
    return tensor_[flat * strategies_.size() + player];
  }
  double payoff(const std::vector<std::size_t>& profile, int player) const {
    return payoff(flat_index(profile), player);
  }

 private:
  friend ReducedNormalForm build_reduced_normal_form(const SequenceFormGame&,
                                                     std::size_t);
  std::vector<std::vector<ReducedStrategy>> strategies_;
  std::vector<std::size_t> shape_;
  std::size_t num_profiles_ = 0;
  std::vector<double> tensor_;  // num_profiles x num_players
};

inline constexpr std::size_t kDefaultProfileCap = 1'000'000;

/// Throws DomainError when the number of pure profiles exceeds `cap`.
ReducedNormalForm build_reduced_normal_form(
    const SequenceFormGame& sf, std::size_t cap = kDefaultProfileCap);
ReducedNormalForm build_reduced_normal_form(
    const GameTree& game, std::size_t cap = kDefaultProfileCap);

std::vector<double> mixed_payoff(const ReducedNormalForm& nf,
                                 const MixedProfile& sigma);

/// u^i(s^i, sigma^{-i}) for every pure strategy s^i of `player`.
std::vector<double> deviation_payoffs(const ReducedNormalForm& nf,
                                      const MixedProfile& sigma, int player);

struct NashCheck {
  bool is_nash = false;
  /// max_s u^i(s, sigma^{-i}) - u^i(sigma) per player.
  std::vector<double> slack;
  double max_slack = 0.0;
};

NashCheck is_nash(const ReducedNormalForm& nf, const MixedProfile& sigma,
                  double eps);

void check_mixed(const ReducedNormalForm& nf, const MixedProfile& sigma);

struct OracleParams {
  double eps = 1e-8;
  /// Random restarts per support profile for three or more players.
  int restarts = 6;
  int newton_iterations = 60;
  std::uint64_t seed = 1;
  std::size_t max_strategies = 12;
  std::size_t max_support_profiles = 200'000;
};

struct OracleEquilibrium {
  MixedProfile sigma;
  std::vector<double> payoffs;
};

struct OracleResult {
  std::vector<OracleEquilibrium> equilibria;
  std::size_t supports_tried = 0;
  std::size_t singular_skipped = 0;
};

/// Support enumeration (two players) or support-restricted Gauss-Newton from
/// random starts (more players). Not guaranteed complete.
OracleResult enumerate_equilibria_small(const ReducedNormalForm& nf,
                                        const OracleParams& params = {});

/// One row per pure profile: strategy labels, then one payoff per player.
void write_tensor_csv(const ReducedNormalForm& nf, std::ostream& out);

}  // namespace seqnash

#endif  // SEQNASH_NORMAL_FORM_HPP_
