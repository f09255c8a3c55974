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

// Finite extensive-form games with chance moves and information sets.
//
// A GameTree is immutable once built. It is produced either by parse_game()
// from the JSON game format or by GameBuilder (used by the generators), and
// both routes run the same structural validation.

#ifndef SEQNASH_GAME_MODEL_HPP_
#define SEQNASH_GAME_MODEL_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace seqnash {

/// Players are 0-based internally and printed 1-based. Chance is never
/// indexed among the players.
using PlayerId = int;
inline constexpr PlayerId kChance = -1;

using NodeId = int;
using InfosetId = int;

enum class NodeKind { kDecision, kChance, kTerminal };

struct Node {
  NodeKind kind = NodeKind::kTerminal;
  PlayerId owner = kChance;     // decision nodes only
  InfosetId infoset = -1;       // decision and chance nodes
  std::vector<std::string> actions;
  std::vector<NodeId> children;      // one per action
  std::vector<double> chance_probs;  // chance nodes only
  std::vector<double> payoffs;       // terminal nodes only, one per player
  NodeId parent = -1;
  int parent_action = -1;
  int depth = 0;
};

struct InformationSet {
  InfosetId id = -1;
  std::string label;
  PlayerId owner = kChance;
  std::vector<NodeId> members;
  std::vector<std::string> actions;
};

/// Raised for malformed game documents and structurally invalid trees.
class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax errors carry the byte offset reported by the JSON reader.
class ParseError : public GameError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : GameError(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class GameTree {
 public:
  int num_players() const { return num_players_; }
  NodeId root() const { return 0; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }

  /// All information sets, chance sets included, in breadth-first order of
  /// their first member node.
  const std::vector<InformationSet>& infosets() const { return infosets_; }
  const InformationSet& infoset(InfosetId id) const { return infosets_.at(id); }

  std::size_t num_terminals() const;
  std::vector<NodeId> terminals() const;
  std::vector<NodeId> breadth_first_order() const;

 private:
  friend class GameBuilder;
  int num_players_ = 0;
  std::vector<Node> nodes_;
  std::vector<InformationSet> infosets_;
};

/// Incremental construction of a GameTree. Nodes are added top-down; the
/// finished tree is renumbered breadth-first and validated by build().
class GameBuilder {
 public:
  explicit GameBuilder(int num_players);

  /// Declares an information set. Decision nodes reference it by the
  /// returned handle; its action list is authoritative for every member.
  int add_infoset(std::string label, PlayerId owner,
                  std::vector<std::string> actions);

  NodeId add_decision(int infoset);
  /// Chance nodes get their own singleton set; an empty label is replaced
  /// by a generated one.
  NodeId add_chance(std::vector<std::string> actions,
                    std::vector<double> probs, std::string label = {});
  NodeId add_terminal(std::vector<double> payoffs);

  /// Attaches `child` under action index `action` of `parent`.
  void set_child(NodeId parent, int action, NodeId child);

  /// Validates and returns the tree. The first node added is the root.
  GameTree build() &&;

 private:
  struct Declared {
    std::string label;
    PlayerId owner;
    std::vector<std::string> actions;
  };
  int num_players_;
  std::vector<Node> nodes_;
  std::vector<Declared> declared_;
};

/// Per-node record of the owner's own (infoset, action) pairs from the root.
struct ExperienceStep {
  InfosetId infoset;
  int action;
  bool operator==(const ExperienceStep&) const = default;
};
using PlayerExperience = std::vector<ExperienceStep>;

/// Experience of `player` along the path to `node`.
PlayerExperience player_experience(const GameTree& game, NodeId node,
                                   PlayerId player);

struct RecallViolation {
  InfosetId infoset;
  NodeId first;
  NodeId second;
  std::string message;
};

/// Returns std::nullopt when every information set (chance sets included)
/// has members with identical experience records for its owner.
std::optional<RecallViolation> validate_perfect_recall(const GameTree& game);

struct InfosetPartition {
  std::vector<std::vector<InfosetId>> per_player;
  std::vector<InfosetId> chance;
  std::size_t total_player_infosets() const;
};

InfosetPartition enumerate_infosets(const GameTree& game);

/// Game document (UTF-8 JSON) round trip.
GameTree parse_game(std::string_view text);
GameTree load_game(const std::string& path);
std::string serialize_game(const GameTree& game, int indent = 2);
void save_game(const GameTree& game, const std::string& path);

/// Structural equality: same shape, owners, labels, probabilities, payoffs.
bool structurally_equal(const GameTree& a, const GameTree& b);

std::string player_label(PlayerId player);

}  // namespace seqnash

#endif  // SEQNASH_GAME_MODEL_HPP_
