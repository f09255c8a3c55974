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

// Seeded random game families.
//
// Type 1: a complete tree with `actions` moves per node and every terminal at
// depth `depth`. Players move cyclically by depth; the children of a node
// form one information set, so histories share a set exactly when they
// differ only in the last action.
//
// Type 2: a chance move with three equally likely outcomes followed by three
// parallel chains of `depth` decision nodes. At each position one action,
// shared by the chains, continues and the others end the game. Players with
// odd (1-based) index see every node separately; the others cannot tell the
// chains apart.

#ifndef SEQNASH_GAMEGEN_HPP_
#define SEQNASH_GAMEGEN_HPP_

#include <cstddef>
#include <cstdint>

#include "seqnash/game_model.hpp"

namespace seqnash {

struct GenSpec {
  int game_type = 1;
  int n = 3;
  int depth = 5;
  int actions = 2;
  std::uint64_t seed = 0;
  int payoff_min = -10;
  int payoff_max = 10;
  std::size_t max_nodes = 2'000'000;

  /// Throws GameError on invalid parameters.
  void validate() const;
  /// Node count of the tree the spec describes.
  std::size_t node_count() const;
};

GameTree generate_type1(const GenSpec& spec);
GameTree generate_type2(const GenSpec& spec);
/// Dispatches on spec.game_type.
GameTree generate(const GenSpec& spec);

}  // namespace seqnash

#endif  // SEQNASH_GAMEGEN_HPP_
