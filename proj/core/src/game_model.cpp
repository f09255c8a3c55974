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

#include "seqnash/game_model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

namespace seqnash {

std::string player_label(PlayerId player) {
  return player == kChance ? std::string("c") : std::to_string(player + 1);
}

std::size_t GameTree::num_terminals() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) {
        return n.kind == NodeKind::kTerminal;
      }));
}

std::vector<NodeId> GameTree::terminals() const {
  std::vector<NodeId> out;
  for (NodeId id = 0; id < static_cast<NodeId>(nodes_.size()); ++id) {
    if (nodes_[id].kind == NodeKind::kTerminal) out.push_back(id);
  }
  return out;
}

std::vector<NodeId> GameTree::breadth_first_order() const {
  // Nodes are stored breadth-first by construction.
  std::vector<NodeId> order(nodes_.size());
  for (NodeId id = 0; id < static_cast<NodeId>(nodes_.size()); ++id) {
    order[id] = id;
  }
  return order;
}

GameBuilder::GameBuilder(int num_players) : num_players_(num_players) {
  if (num_players < 1) throw GameError("a game needs at least one player");
}

int GameBuilder::add_infoset(std::string label, PlayerId owner,
                             std::vector<std::string> actions) {
  if (owner != kChance && (owner < 0 || owner >= num_players_)) {
    throw GameError("information set '" + label + "' has owner " +
                    std::to_string(owner + 1) + " outside 1.." +
                    std::to_string(num_players_));
  }
  if (actions.empty()) {
    throw GameError("information set '" + label + "' has no actions");
  }
  declared_.push_back({std::move(label), owner, std::move(actions)});
  return static_cast<int>(declared_.size()) - 1;
}

NodeId GameBuilder::add_decision(int infoset) {
  if (infoset < 0 || infoset >= static_cast<int>(declared_.size())) {
    throw GameError("decision node references unknown information set");
  }
  const Declared& decl = declared_[infoset];
  if (decl.owner == kChance) {
    throw GameError("decision node references chance set '" + decl.label +
                    "'");
  }
  Node node;
  node.kind = NodeKind::kDecision;
  node.owner = decl.owner;
  node.infoset = infoset;
  node.actions = decl.actions;
  node.children.assign(node.actions.size(), -1);
  nodes_.push_back(std::move(node));
  return static_cast<NodeId>(nodes_.size()) - 1;
}

NodeId GameBuilder::add_chance(std::vector<std::string> actions,
                               std::vector<double> probs, std::string label) {
  if (actions.size() != probs.size()) {
    throw GameError("chance node has " + std::to_string(actions.size()) +
                    " actions but " + std::to_string(probs.size()) +
                    " probabilities");
  }
  if (label.empty()) label = "chance." + std::to_string(declared_.size());
  const int handle = add_infoset(std::move(label), kChance, actions);
  Node node;
  node.kind = NodeKind::kChance;
  node.owner = kChance;
  node.infoset = handle;
  node.actions = std::move(actions);
  node.chance_probs = std::move(probs);
  node.children.assign(node.actions.size(), -1);
  nodes_.push_back(std::move(node));
  return static_cast<NodeId>(nodes_.size()) - 1;
}

NodeId GameBuilder::add_terminal(std::vector<double> payoffs) {
  if (static_cast<int>(payoffs.size()) != num_players_) {
    throw GameError("terminal node has " + std::to_string(payoffs.size()) +
                    " payoffs, expected " + std::to_string(num_players_));
  }
  Node node;
  node.kind = NodeKind::kTerminal;
  node.payoffs = std::move(payoffs);
  nodes_.push_back(std::move(node));
  return static_cast<NodeId>(nodes_.size()) - 1;
}

void GameBuilder::set_child(NodeId parent, int action, NodeId child) {
  Node& p = nodes_.at(parent);
  if (action < 0 || action >= static_cast<int>(p.children.size())) {
    throw GameError("action index out of range");
  }
  p.children[action] = child;
}

GameTree GameBuilder::build() && {
  if (nodes_.empty()) throw GameError("game has no nodes");

  // Breadth-first renumbering; also checks connectivity and tree shape.
  std::vector<NodeId> new_id(nodes_.size(), -1);
  std::vector<NodeId> order;
  order.reserve(nodes_.size());
  std::deque<NodeId> queue{0};
  new_id[0] = 0;
  while (!queue.empty()) {
    const NodeId id = queue.front();
    queue.pop_front();
    order.push_back(id);
    const Node& n = nodes_[id];
    if (n.kind != NodeKind::kTerminal && n.children.empty()) {
      throw GameError("non-terminal node without actions");
    }
    for (std::size_t a = 0; a < n.children.size(); ++a) {
      const NodeId c = n.children[a];
      if (c < 0) {
        throw GameError("action '" + n.actions[a] + "' has no child node");
      }
      if (c >= static_cast<NodeId>(nodes_.size())) {
        throw GameError("dangling child node reference");
      }
      if (new_id[c] != -1) {
        throw GameError("node reached twice: the game graph is not a tree");
      }
      new_id[c] = static_cast<NodeId>(order.size() + queue.size());
      queue.push_back(c);
    }
  }
  if (order.size() != nodes_.size()) {
    throw GameError("game contains nodes unreachable from the root");
  }

  GameTree tree;
  tree.num_players_ = num_players_;
  tree.nodes_.resize(nodes_.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    Node n = std::move(nodes_[order[k]]);
    for (NodeId& c : n.children) c = new_id[c];
    tree.nodes_[k] = std::move(n);
  }
  for (NodeId id = 0; id < static_cast<NodeId>(tree.nodes_.size()); ++id) {
    const Node& n = tree.nodes_[id];
    for (std::size_t a = 0; a < n.children.size(); ++a) {
      Node& c = tree.nodes_[n.children[a]];
      c.parent = id;
      c.parent_action = static_cast<int>(a);
      c.depth = n.depth + 1;
    }
  }

  // Information sets ordered by breadth-first discovery of a first member.
  std::vector<int> remap(declared_.size(), -1);
  for (Node& n : tree.nodes_) {
    if (n.kind == NodeKind::kTerminal) continue;
    const int handle = n.infoset;
    if (remap[handle] == -1) {
      remap[handle] = static_cast<int>(tree.infosets_.size());
      InformationSet info;
      info.id = remap[handle];
      info.label = declared_[handle].label;
      info.owner = declared_[handle].owner;
      info.actions = declared_[handle].actions;
      tree.infosets_.push_back(std::move(info));
    }
    n.infoset = remap[handle];
  }
  for (std::size_t h = 0; h < declared_.size(); ++h) {
    if (remap[h] == -1) {
      throw GameError("information set '" + declared_[h].label +
                      "' has no member nodes");
    }
  }
  for (NodeId id = 0; id < static_cast<NodeId>(tree.nodes_.size()); ++id) {
    const Node& n = tree.nodes_[id];
    if (n.kind == NodeKind::kTerminal) continue;
    tree.infosets_[n.infoset].members.push_back(id);
  }

  // Node-level invariants.
  std::set<std::string> seen_labels;
  for (const InformationSet& info : tree.infosets_) {
    if (!seen_labels.insert(info.label).second) {
      throw GameError("duplicate information set id '" + info.label + "'");
    }
  }
  for (const Node& n : tree.nodes_) {
    if (n.kind == NodeKind::kTerminal) {
      if (static_cast<int>(n.payoffs.size()) != num_players_) {
        throw GameError("payoff arity mismatch at a terminal node");
      }
      for (double u : n.payoffs) {
        if (!std::isfinite(u)) throw GameError("non-finite payoff");
      }
      continue;
    }
    if (n.children.size() != n.actions.size()) {
      throw GameError("children count differs from actions count");
    }
    std::set<std::string> labels(n.actions.begin(), n.actions.end());
    if (labels.size() != n.actions.size()) {
      throw GameError("duplicate action label at a node");
    }
    if (n.kind == NodeKind::kChance) {
      double sum = 0.0;
      for (double p : n.chance_probs) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
          throw GameError("negative or non-finite chance probability");
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "chance probabilities sum to " << sum << ", not 1";
        throw GameError(msg.str());
      }
    }
  }
  return tree;
}

PlayerExperience player_experience(const GameTree& game, NodeId node,
                                   PlayerId player) {
  PlayerExperience record;
  NodeId cur = node;
  while (game.node(cur).parent != -1) {
    const Node& child = game.node(cur);
    const Node& parent = game.node(child.parent);
    const bool owned = parent.kind == NodeKind::kChance
                           ? player == kChance
                           : parent.owner == player;
    if (owned) record.push_back({parent.infoset, child.parent_action});
    cur = child.parent;
  }
  std::reverse(record.begin(), record.end());
  return record;
}

std::optional<RecallViolation> validate_perfect_recall(const GameTree& game) {
  for (const InformationSet& info : game.infosets()) {
    if (info.members.empty()) continue;
    const PlayerExperience first =
        player_experience(game, info.members.front(), info.owner);
    for (std::size_t k = 1; k < info.members.size(); ++k) {
      const PlayerExperience other =
          player_experience(game, info.members[k], info.owner);
      if (other != first) {
        RecallViolation v;
        v.infoset = info.id;
        v.first = info.members.front();
        v.second = info.members[k];
        v.message = "information set '" + info.label + "' of player " +
                    player_label(info.owner) + ": nodes " +
                    std::to_string(v.first) + " and " +
                    std::to_string(v.second) +
                    " have different experience records";
        return v;
      }
    }
  }
  return std::nullopt;
}

std::size_t InfosetPartition::total_player_infosets() const {
  std::size_t total = 0;
  for (const auto& sets : per_player) total += sets.size();
  return total;
}

InfosetPartition enumerate_infosets(const GameTree& game) {
  InfosetPartition part;
  part.per_player.resize(game.num_players());
  for (const InformationSet& info : game.infosets()) {
    if (info.owner == kChance) {
      part.chance.push_back(info.id);
    } else {
      part.per_player[info.owner].push_back(info.id);
    }
  }
  return part;
}

bool structurally_equal(const GameTree& a, const GameTree& b) {
  if (a.num_players() != b.num_players()) return false;
  if (a.nodes().size() != b.nodes().size()) return false;
  if (a.infosets().size() != b.infosets().size()) return false;
  for (std::size_t k = 0; k < a.infosets().size(); ++k) {
    const InformationSet& x = a.infosets()[k];
    const InformationSet& y = b.infosets()[k];
    if (x.owner != y.owner || x.actions != y.actions ||
        x.members != y.members) {
      return false;
    }
    if (x.owner != kChance && x.label != y.label) return false;
  }
  for (std::size_t k = 0; k < a.nodes().size(); ++k) {
    const Node& x = a.nodes()[k];
    const Node& y = b.nodes()[k];
    if (x.kind != y.kind || x.owner != y.owner || x.infoset != y.infoset ||
        x.actions != y.actions || x.children != y.children ||
        x.chance_probs != y.chance_probs || x.payoffs != y.payoffs) {
      return false;
    }
  }
  return true;
}

}  // namespace seqnash
