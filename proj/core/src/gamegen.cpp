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

#include "seqnash/gamegen.hpp"

#include <limits>
#include <string>
#include <vector>

#include "seqnash/rng.hpp"

namespace seqnash {
namespace {

std::vector<std::string> action_labels(int count, const char* prefix) {
  std::vector<std::string> out;
  for (int a = 0; a < count; ++a) out.push_back(prefix + std::to_string(a));
  return out;
}

std::vector<double> draw_payoffs(Rng& rng, const GenSpec& spec) {
  std::vector<double> u(spec.n);
  for (double& v : u) {
    v = static_cast<double>(rng.uniform_int(spec.payoff_min, spec.payoff_max));
  }
  return u;
}

}  // namespace

void GenSpec::validate() const {
  if (game_type != 1 && game_type != 2) {
    throw GameError("game type must be 1 or 2");
  }
  if (n < 2) throw GameError("generated games need at least 2 players");
  if (depth < n) throw GameError("depth must be at least the player count");
  if (actions < 2) throw GameError("at least 2 actions per information set");
  if (payoff_min > payoff_max) throw GameError("empty payoff range");
  if (node_count() > max_nodes) {
    throw GameError("generated game would have more than " +
                    std::to_string(max_nodes) + " nodes");
  }
}

std::size_t GenSpec::node_count() const {
  const std::size_t limit = std::numeric_limits<std::size_t>::max() / 16;
  if (game_type == 1) {
    std::size_t total = 0;
    std::size_t level = 1;
    for (int d = 0; d <= depth; ++d) {
      total += level;
      if (total > limit || level > limit / static_cast<std::size_t>(actions)) {
        return limit;
      }
      level *= static_cast<std::size_t>(actions);
    }
    return total;
  }
  return 1 + 3 * static_cast<std::size_t>(depth) *
                 static_cast<std::size_t>(actions);
}

GameTree generate_type1(const GenSpec& spec) {
  GenSpec s = spec;
  s.game_type = 1;
  s.validate();
  Rng payoffs(s.seed, Stream::kPayoffs);
  GameBuilder b(s.n);
  const std::vector<std::string> labels = action_labels(s.actions, "a");
  int set_counter = 0;

  auto new_set = [&](int depth) {
    const int owner = depth % s.n;
    return b.add_infoset("P" + std::to_string(owner + 1) + "." +
                             std::to_string(depth) + "." +
                             std::to_string(set_counter++),
                         owner, labels);
  };
  // Depth-first: the children of a node are created together so they can
  // share their information set.
  auto expand = [&](auto&& self, NodeId node, int depth) -> void {
    if (depth + 1 == s.depth) {
      for (int a = 0; a < s.actions; ++a) {
        b.set_child(node, a, b.add_terminal(draw_payoffs(payoffs, s)));
      }
      return;
    }
    const int set = new_set(depth + 1);
    for (int a = 0; a < s.actions; ++a) {
      const NodeId child = b.add_decision(set);
      b.set_child(node, a, child);
      self(self, child, depth + 1);
    }
  };
  const NodeId root = b.add_decision(new_set(0));
  expand(expand, root, 0);
  return std::move(b).build();
}

GameTree generate_type2(const GenSpec& spec) {
  GenSpec s = spec;
  s.game_type = 2;
  s.validate();
  Rng structure(s.seed, Stream::kStructure);
  Rng payoffs(s.seed, Stream::kPayoffs);
  GameBuilder b(s.n);
  const std::vector<std::string> labels = action_labels(s.actions, "a");
  constexpr int kChains = 3;

  std::vector<int> continuing(s.depth);
  for (int& c : continuing) {
    c = static_cast<int>(structure.uniform_int(0, s.actions - 1));
  }
  // One set per node for 1-based odd players, one per position otherwise.
  std::vector<std::vector<int>> sets(s.depth, std::vector<int>(kChains));
  for (int d = 0; d < s.depth; ++d) {
    const int owner = d % s.n;
    const std::string base =
        "P" + std::to_string(owner + 1) + "." + std::to_string(d);
    if (owner % 2 == 0) {
      for (int c = 0; c < kChains; ++c) {
        sets[d][c] =
            b.add_infoset(base + "." + std::to_string(c), owner, labels);
      }
    } else {
      const int shared = b.add_infoset(base, owner, labels);
      for (int c = 0; c < kChains; ++c) sets[d][c] = shared;
    }
  }

  const double third = 1.0 / 3.0;
  const NodeId root = b.add_chance(action_labels(kChains, "c"),
                                   {third, third, 1.0 - 2.0 * third}, "chance");
  for (int c = 0; c < kChains; ++c) {
    NodeId node = b.add_decision(sets[0][c]);
    b.set_child(root, c, node);
    for (int d = 0; d < s.depth; ++d) {
      NodeId next = -1;
      for (int a = 0; a < s.actions; ++a) {
        if (a == continuing[d] && d + 1 < s.depth) {
          next = b.add_decision(sets[d + 1][c]);
          b.set_child(node, a, next);
        } else {
          b.set_child(node, a, b.add_terminal(draw_payoffs(payoffs, s)));
        }
      }
      node = next;
    }
  }
  return std::move(b).build();
}

GameTree generate(const GenSpec& spec) {
  spec.validate();
  return spec.game_type == 1 ? generate_type1(spec) : generate_type2(spec);
}

}  // namespace seqnash
