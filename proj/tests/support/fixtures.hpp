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

// Shared fixtures and independent reference computations for the tests.

#ifndef SEQNASH_TESTS_FIXTURES_HPP_
#define SEQNASH_TESTS_FIXTURES_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "seqnash/game_model.hpp"
#include "seqnash/gamegen.hpp"
#include "seqnash/homotopy.hpp"
#include "seqnash/normal_form.hpp"
#include "seqnash/rng.hpp"
#include "seqnash/sequence_form.hpp"

namespace seqnash::testing {

inline std::string data_path(const std::string& name) {
  return std::string(SEQNASH_DATA_DIR) + "/" + name;
}

inline GameTree fixture(const std::string& name) {
  return load_game(data_path(name + ".game.json"));
}

inline SequenceFormGame fixture_sf(const std::string& name) {
  return build_sequence_form(fixture(name));
}

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"chance_entry", "myerson_card", "three_player"};
  return names;
}

inline int seq_index(const SequenceFormGame& sf, int player,
                     const std::string& label) {
  const PlayerSequences& s = sf.player(player);
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s.sequences[k].label == label) return static_cast<int>(k);
  }
  return -1;
}

// Reduced strategies of the chance_entry fixture: player 1 {L},{R,S},{R,T};
// player 2 {a,d},{a,f},{b,d},{b,f}.
inline MixedProfile entry_type_a(double p_ad = 1.0) {
  return MixedProfile{{{1.0, 0.0, 0.0}, {p_ad, 1.0 - p_ad, 0.0, 0.0}}};
}
inline MixedProfile entry_type_b() {
  return MixedProfile{
      {{0.0, 1.0 / 3.0, 2.0 / 3.0}, {0.0, 0.0, 2.0 / 3.0, 1.0 / 3.0}}};
}
inline MixedProfile entry_type_c() {
  return MixedProfile{{{5.0 / 14.0, 3.0 / 14.0, 3.0 / 7.0},
                       {1.0 / 12.0, 1.0 / 24.0, 7.0 / 12.0, 7.0 / 24.0}}};
}

/// Random distribution on the simplex, with optional exact zeros.
inline std::vector<double> random_simplex(Rng& rng, std::size_t n,
                                          bool allow_zeros) {
  std::vector<double> p(n);
  double sum = 0.0;
  for (double& v : p) {
    v = rng.uniform(0.01, 1.0);
    if (allow_zeros && rng.uniform() < 0.3) v = 0.0;
    sum += v;
  }
  if (sum == 0.0) {
    p[0] = 1.0;
    sum = 1.0;
  }
  for (double& v : p) v /= sum;
  return p;
}

inline MixedProfile random_mixed(const ReducedNormalForm& nf,
                                 std::uint64_t seed, bool allow_zeros) {
  Rng rng(seed);
  MixedProfile s;
  for (int i = 0; i < nf.num_players(); ++i) {
    s.probs.push_back(
        random_simplex(rng, nf.strategies(i).size(), allow_zeros));
  }
  return s;
}

/// Independent reference: expected payoff by walking the game tree under
/// behavior strategies derived from a realization plan.
inline std::vector<double> tree_walk_payoff(const SequenceFormGame& sf,
                                            const RealizationProfile& gamma) {
  const GameTree& g = sf.tree();
  std::vector<double> out(g.num_players(), 0.0);
  std::function<void(NodeId, double, std::vector<int>)> walk =
      [&](NodeId id, double reach, std::vector<int> seqs) {
        const Node& n = g.node(id);
        if (n.kind == NodeKind::kTerminal) {
          for (int i = 0; i < g.num_players(); ++i) {
            out[i] += reach * n.payoffs[i];
          }
          return;
        }
        for (std::size_t a = 0; a < n.children.size(); ++a) {
          double p = 1.0;
          std::vector<int> next = seqs;
          if (n.kind == NodeKind::kChance) {
            p = n.chance_probs[a];
          } else {
            const PlayerSequences& ps = sf.player(n.owner);
            int child = -1;
            for (std::size_t k = 1; k < ps.size(); ++k) {
              if (ps.sequences[k].tree_infoset == n.infoset &&
                  ps.sequences[k].action == static_cast<int>(a)) {
                child = static_cast<int>(k);
              }
            }
            const double parent = gamma.plans[n.owner][seqs[n.owner]];
            const double val = gamma.plans[n.owner][child];
            p = parent > 0.0 ? val / parent : 0.0;
            next[n.owner] = child;
          }
          if (p != 0.0) walk(n.children[a], reach * p, next);
        }
      };
  walk(g.root(), 1.0, std::vector<int>(g.num_players(), 0));
  return out;
}

/// Central differences of the homotopy residual.
inline Eigen::MatrixXd fd_jacobian(const HomotopySystem& system,
                                   const Eigen::VectorXd& y, double h) {
  const Eigen::Index rows = static_cast<Eigen::Index>(system.num_equations());
  Eigen::MatrixXd j(rows, y.size());
  for (Eigen::Index c = 0; c < y.size(); ++c) {
    Eigen::VectorXd plus = y, minus = y;
    const double step = h * std::max(1.0, std::abs(y(c)));
    plus(c) += step;
    minus(c) -= step;
    j.col(c) = (system.residual(plus) - system.residual(minus)) / (2.0 * step);
  }
  return j;
}

/// A random point with every directly used coordinate positive and t in
/// (0.05, 1).
inline Eigen::VectorXd random_point(const HomotopySystem& system, Rng& rng) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(system.num_unknowns()));
  for (std::size_t k = 0; k < system.num_x(); ++k) {
    y(static_cast<Eigen::Index>(k)) = system.substituted(k)
                                          ? rng.uniform(-1.0, 1.0)
                                          : rng.uniform(0.1, 1.0);
  }
  for (std::size_t k = 0; k < system.num_nu(); ++k) {
    y(static_cast<Eigen::Index>(system.num_x() + k)) = rng.uniform(-2.0, 2.0);
  }
  y(y.size() - 1) = rng.uniform(0.05, 1.0);
  return y;
}

inline GameTree small_random_game(std::uint64_t seed) {
  GenSpec spec;
  spec.seed = seed;
  switch (seed % 3) {
    case 0:
      spec.game_type = 1;
      spec.n = 2;
      spec.depth = 3;
      break;
    case 1:
      spec.game_type = 1;
      spec.n = 3;
      spec.depth = 3;
      break;
    default:
      spec.game_type = 2;
      spec.n = 2;
      spec.depth = 3;
      break;
  }
  return generate(spec);
}

}  // namespace seqnash::testing

#endif  // SEQNASH_TESTS_FIXTURES_HPP_
