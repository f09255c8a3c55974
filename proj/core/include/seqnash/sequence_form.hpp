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

// Sequence-form representation of a perfect-recall game.
//
// Every player owns an ordered sequence set whose entry 0 is the empty
// sequence; information set j contributes one sequence per action, stored
// contiguously. Parents always precede children, so one forward pass over the
// sequences visits the own-sequence tree top-down and a backward pass visits
// it bottom-up.
//
// Chance is folded into the payoff table: every entry carries the realization
// probability of its chance sequence, so g(w) below is already weighted.

#ifndef SEQNASH_SEQUENCE_FORM_HPP_
#define SEQNASH_SEQUENCE_FORM_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqnash/game_model.hpp"

namespace seqnash {

struct Sequence {
  InfosetId tree_infoset = -1;  // -1 for the empty sequence
  int infoset = -1;             // owner-local information set index
  int action = -1;
  int parent = -1;
  std::string label;
  /// Owner-local information sets whose parent sequence is this one.
  std::vector<int> child_infosets;
};

struct SequenceInfoset {
  InfosetId tree_id = -1;
  std::string label;
  int parent_sequence = 0;
  int first_sequence = 0;  // actions map to first_sequence + a
  int num_actions = 0;
};

struct PlayerSequences {
  std::vector<Sequence> sequences;  // [0] is the empty sequence
  std::vector<SequenceInfoset> infosets;

  std::size_t size() const { return sequences.size(); }
  /// (j, a) belongs to D when its sequence leads to no further own set.
  bool in_d(int seq) const {
    return seq > 0 && sequences[seq].child_infosets.empty();
  }
  std::size_t num_d() const;
};

struct PayoffEntry {
  NodeId terminal = -1;
  std::vector<int> sequences;  // induced sequence per player
  int chance_sequence = 0;
  double chance_weight = 1.0;
  std::vector<double> payoffs;  // u_z
};

class SequenceFormGame {
 public:
  int num_players() const { return static_cast<int>(players_.size()); }
  const PlayerSequences& player(int i) const { return players_.at(i); }
  const PlayerSequences& chance() const { return chance_; }
  const std::vector<double>& chance_plan() const { return chance_plan_; }
  const std::vector<PayoffEntry>& payoff_table() const { return payoffs_; }
  const GameTree& tree() const { return *tree_; }

  /// n0: actions of all non-chance players.
  std::size_t num_actions() const { return num_actions_; }
  /// m0: information sets of all non-chance players.
  std::size_t num_infosets() const { return num_infosets_; }
  /// Length of a homotopy path point (x, nu, t): n0 + m0 + 1.
  std::size_t path_dimension() const {
    return num_actions_ + num_infosets_ + 1;
  }

  /// Global coordinate of (player, non-empty sequence) in x.
  int coordinate(int player, int seq) const {
    return action_offset_[player] + seq - 1;
  }
  /// Global index of (player, local information set) in nu.
  int infoset_index(int player, int infoset) const {
    return infoset_offset_[player] + infoset;
  }
  int action_offset(int player) const { return action_offset_[player]; }
  int infoset_offset(int player) const { return infoset_offset_[player]; }

  /// Extremes of player i's chance-weighted sequence-form payoff entries.
  double min_payoff(int player) const { return min_payoff_[player]; }
  double max_payoff(int player) const { return max_payoff_[player]; }

 private:
  friend SequenceFormGame build_sequence_form(const GameTree& game);
  std::shared_ptr<const GameTree> tree_;
  std::vector<PlayerSequences> players_;
  PlayerSequences chance_;
  std::vector<double> chance_plan_;
  std::vector<PayoffEntry> payoffs_;
  std::vector<int> action_offset_;
  std::vector<int> infoset_offset_;
  std::vector<double> min_payoff_;
  std::vector<double> max_payoff_;
  std::size_t num_actions_ = 0;
  std::size_t num_infosets_ = 0;
};

/// Throws GameError when the game violates perfect recall.
SequenceFormGame build_sequence_form(const GameTree& game);

/// gamma^i over W^i for every non-chance player. Chance is implicit.
struct RealizationProfile {
  std::vector<std::vector<double>> plans;

  double operator()(int player, int seq) const { return plans[player][seq]; }
};

/// sigma^i over the reduced pure strategies of player i.
struct MixedProfile {
  std::vector<std::vector<double>> probs;
};

/// A pure strategy specified only on the information sets it reaches.
struct ReducedStrategy {
  std::vector<int> choice;       // per local infoset; -1 when unreached
  std::vector<std::uint8_t> plays;  // s(w) in {0,1} per sequence
  std::string label;             // e.g. "{R,S}"
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Reduced strategies in lexicographic order (lowest information set index
/// is the most significant choice). Throws DomainError when more than `cap`.
std::vector<ReducedStrategy> reduced_strategies(const SequenceFormGame& sf,
                                                int player,
                                                std::size_t cap = 1'000'000);

// Plans.
RealizationProfile uniform_plan(const SequenceFormGame& sf);
/// Interior plan from per-set weights drawn uniformly in [0.05, 1).
RealizationProfile random_interior_plan(const SequenceFormGame& sf,
                                        std::uint64_t seed);
/// Plan induced by behavior probabilities behavior[i][seq] (conditional
/// probability of the sequence's last action; entry 0 ignored).
RealizationProfile plan_from_behavior(
    const SequenceFormGame& sf, const std::vector<std::vector<double>>& behavior);
/// Largest |sum_a gamma(w a) - gamma(w)| and |gamma(empty) - 1| over players.
double flow_violation(const SequenceFormGame& sf, const RealizationProfile& g);
void check_dimensions(const SequenceFormGame& sf, const RealizationProfile& g);

// Payoffs and best responses.

/// g^i(w, gamma^{-i}) for every w in W^i.
std::vector<double> payoff_vector(const SequenceFormGame& sf, int player,
                                  const RealizationProfile& gamma);
double expected_payoff(const SequenceFormGame& sf, int player,
                       const RealizationProfile& gamma);

/// Best value of the own-sequence subtree below each sequence when the
/// player commits to reach it: own entry plus, for every child set, the best
/// child action. Entry 0 is g_m(empty, gamma^{-i}).
std::vector<double> subtree_values(const PlayerSequences& seqs,
                                   const std::vector<double>& payoff);

/// g_m(w, gamma^{-i}): the optimum of max g^i(gamma~, gamma^{-i}) subject to
/// gamma~(w) = 1.
double best_response_value(const SequenceFormGame& sf, int player, int seq,
                           const RealizationProfile& gamma);

struct GapReport {
  std::vector<double> per_player;
  double max = 0.0;
};
/// g_m(empty, gamma^{-i}) - g^i(gamma) per player.
GapReport epsilon_gap(const SequenceFormGame& sf,
                      const RealizationProfile& gamma);

// Equilibrium system with duals.

struct DualCertificate {
  std::vector<std::vector<double>> lambda;  // per sequence; used on D only
  std::vector<std::vector<double>> nu;      // per local information set
};

/// zeta^i_{I^j}(a): sum of nu over the sets whose parent sequence is `seq`.
double zeta(const SequenceFormGame& sf, const DualCertificate& cert,
            int player, int seq);

/// Duals by back-substitution: best-value nu bottom-up, then a top-down
/// pass raising nu below suboptimal non-D actions so every stationarity row
/// holds; lambda from the D rows.
DualCertificate recover_duals(const SequenceFormGame& sf,
                              const RealizationProfile& gamma);

struct NeResidual {
  std::vector<double> stationarity;     // one per x coordinate
  std::vector<double> flow;             // one per nu index
  std::vector<double> complementarity;  // gamma * lambda, one per D entry
  double sign_violation = 0.0;          // max(0, -gamma, -lambda)
  double sup_norm() const;
};

NeResidual ne_residual(const SequenceFormGame& sf,
                       const RealizationProfile& gamma,
                       const DualCertificate& cert);

// Mixed strategies.

RealizationProfile mixed_to_realization(const SequenceFormGame& sf,
                                        const MixedProfile& sigma);
/// Product-of-ratios mixed profile over reduced strategies. Requires every
/// entry of gamma to be strictly positive.
MixedProfile realization_to_mixed(const SequenceFormGame& sf,
                                  const RealizationProfile& gamma);

// Dual bounds along LGNE paths.

struct DualBounds {
  double payoff_min = 0.0;  // U_l
  double payoff_max = 0.0;  // U_u
  double nu_lower = 0.0;
  std::vector<double> nu_upper_by_set;  // V^j
  double nu_upper = 0.0;                // V_u over all players
  double lambda_upper = 0.0;
};
std::vector<DualBounds> dual_bounds(const SequenceFormGame& sf);

}  // namespace seqnash

#endif  // SEQNASH_SEQUENCE_FORM_HPP_
