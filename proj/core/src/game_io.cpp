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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "seqnash/game_model.hpp"

namespace seqnash {
namespace {

// Document order matters: action order of chance nodes is the key order of
// "probs".
using Json = nlohmann::ordered_json;

std::string id_string(const Json& id) {
  if (id.is_string()) return id.get<std::string>();
  if (id.is_number_integer()) return std::to_string(id.get<long long>());
  throw GameError("information set id must be a string or an integer");
}

const Json& require(const Json& obj, const char* key, const std::string& at) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw GameError(at + ": missing field \"" + key + "\"");
  }
  return obj.at(key);
}

class DocumentReader {
 public:
  DocumentReader(const Json& doc) : doc_(doc) {}

  GameTree read() {
    const Json& players = require(doc_, "players", "document");
    if (!players.is_number_integer() || players.get<int>() < 1) {
      throw GameError("document: \"players\" must be a positive integer");
    }
    num_players_ = players.get<int>();
    builder_.emplace(num_players_);

    if (doc_.contains("infosets")) {
      const Json& sets = doc_.at("infosets");
      if (!sets.is_array()) {
        throw GameError("document: \"infosets\" must be an array");
      }
      for (std::size_t k = 0; k < sets.size(); ++k) {
        read_infoset(sets[k], "infosets[" + std::to_string(k) + "]");
      }
    }
    read_node(require(doc_, "root", "document"), "root");
    for (const auto& [label, used] : chance_sets_) {
      if (!used) {
        throw GameError("information set '" + label +
                        "' has no member nodes");
      }
    }
    return std::move(*builder_).build();
  }

 private:
  void read_infoset(const Json& spec, const std::string& at) {
    const std::string label = id_string(require(spec, "id", at));
    const Json& owner = require(spec, "owner", at);
    PlayerId pid;
    if (owner.is_string() && owner.get<std::string>() == "c") {
      pid = kChance;
    } else if (owner.is_number_integer()) {
      const int o = owner.get<int>();
      if (o < 1 || o > num_players_) {
        throw GameError(at + ": owner " + std::to_string(o) +
                        " outside 1.." + std::to_string(num_players_));
      }
      pid = o - 1;
    } else {
      throw GameError(at + ": owner must be 1..n or \"c\"");
    }
    const Json& actions = require(spec, "actions", at);
    if (!actions.is_array() || actions.empty()) {
      throw GameError(at + ": \"actions\" must be a non-empty array");
    }
    std::vector<std::string> labels;
    for (const Json& a : actions) {
      if (!a.is_string()) throw GameError(at + ": action labels are strings");
      labels.push_back(a.get<std::string>());
    }
    if (std::set<std::string>(labels.begin(), labels.end()).size() !=
        labels.size()) {
      throw GameError(at + ": duplicate action label");
    }
    if (handles_.count(label) || chance_sets_.count(label)) {
      throw GameError(at + ": duplicate information set id '" + label + "'");
    }
    if (pid == kChance) {
      chance_sets_[label] = false;
      chance_actions_[label] = labels;
    } else {
      handles_[label] = builder_->add_infoset(label, pid, labels);
      actions_[label] = labels;
    }
  }

  NodeId read_node(const Json& spec, const std::string& at) {
    const Json& kind_json = require(spec, "kind", at);
    if (!kind_json.is_string()) throw GameError(at + ": \"kind\" is a string");
    const std::string kind = kind_json.get<std::string>();
    if (kind == "terminal") {
      const Json& pay = require(spec, "payoffs", at);
      if (!pay.is_array()) throw GameError(at + ": payoffs must be an array");
      if (static_cast<int>(pay.size()) != num_players_) {
        throw GameError(at + ": payoff arity mismatch (" +
                        std::to_string(pay.size()) + " values for " +
                        std::to_string(num_players_) + " players)");
      }
      std::vector<double> u;
      for (const Json& v : pay) {
        if (!v.is_number()) throw GameError(at + ": payoffs must be numbers");
        u.push_back(v.get<double>());
      }
      return builder_->add_terminal(std::move(u));
    }
    if (kind == "decision") {
      const std::string label = id_string(require(spec, "infoset", at));
      auto it = handles_.find(label);
      if (it == handles_.end()) {
        throw GameError(at + ": dangling information set reference '" +
                        label + "'");
      }
      const std::vector<std::string>& labels = actions_.at(label);
      const Json& children = require(spec, "children", at);
      check_children(children, labels, at);
      const NodeId id = builder_->add_decision(it->second);
      for (std::size_t a = 0; a < labels.size(); ++a) {
        const NodeId c =
            read_node(children.at(labels[a]), at + ".children." + labels[a]);
        builder_->set_child(id, static_cast<int>(a), c);
      }
      return id;
    }
    if (kind == "chance") {
      const Json& probs = require(spec, "probs", at);
      if (!probs.is_object() || probs.empty()) {
        throw GameError(at + ": \"probs\" must be a non-empty object");
      }
      std::vector<std::string> labels;
      std::vector<double> p;
      for (const auto& [label, value] : probs.items()) {
        if (!value.is_number()) {
          throw GameError(at + ": probability of '" + label +
                          "' is not a number");
        }
        labels.push_back(label);
        p.push_back(value.get<double>());
      }
      double sum = 0.0;
      for (double v : p) sum += v;
      if (std::abs(sum - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg.precision(17);
        msg << at << ": chance probabilities sum to " << sum << ", not 1";
        throw GameError(msg.str());
      }
      std::string set_label;
      if (spec.contains("infoset")) {
        set_label = id_string(spec.at("infoset"));
        auto it = chance_sets_.find(set_label);
        if (it == chance_sets_.end()) {
          throw GameError(at + ": dangling chance set reference '" +
                          set_label + "'");
        }
        if (it->second) {
          throw GameError(at + ": chance set '" + set_label +
                          "' is used by more than one node");
        }
        if (std::set<std::string>(labels.begin(), labels.end()) !=
            std::set<std::string>(chance_actions_.at(set_label).begin(),
                                  chance_actions_.at(set_label).end())) {
          throw GameError(at + ": chance actions differ from set '" +
                          set_label + "'");
        }
        it->second = true;
      }
      const Json& children = require(spec, "children", at);
      check_children(children, labels, at);
      const NodeId id = builder_->add_chance(labels, p, set_label);
      for (std::size_t a = 0; a < labels.size(); ++a) {
        const NodeId c =
            read_node(children.at(labels[a]), at + ".children." + labels[a]);
        builder_->set_child(id, static_cast<int>(a), c);
      }
      return id;
    }
    throw GameError(at + ": unknown node kind \"" + kind + "\"");
  }

  static void check_children(const Json& children,
                             const std::vector<std::string>& labels,
                             const std::string& at) {
    if (!children.is_object()) {
      throw GameError(at + ": \"children\" must be an object");
    }
    for (const std::string& a : labels) {
      if (!children.contains(a)) {
        throw GameError(at + ": no child for action '" + a + "'");
      }
    }
    if (children.size() != labels.size()) {
      for (const auto& [key, _] : children.items()) {
        if (std::find(labels.begin(), labels.end(), key) == labels.end()) {
          throw GameError(at + ": child '" + key +
                          "' is not an action of this node");
        }
      }
    }
  }

  const Json& doc_;
  int num_players_ = 0;
  std::optional<GameBuilder> builder_;
  std::map<std::string, int> handles_;
  std::map<std::string, std::vector<std::string>> actions_;
  std::map<std::string, bool> chance_sets_;
  std::map<std::string, std::vector<std::string>> chance_actions_;
};

Json write_node(const GameTree& game, NodeId id) {
  const Node& n = game.node(id);
  Json out = Json::object();
  switch (n.kind) {
    case NodeKind::kTerminal: {
      out["kind"] = "terminal";
      out["payoffs"] = n.payoffs;
      return out;
    }
    case NodeKind::kDecision:
      out["kind"] = "decision";
      out["infoset"] = game.infoset(n.infoset).label;
      break;
    case NodeKind::kChance: {
      out["kind"] = "chance";
      out["infoset"] = game.infoset(n.infoset).label;
      Json probs = Json::object();
      for (std::size_t a = 0; a < n.actions.size(); ++a) {
        probs[n.actions[a]] = n.chance_probs[a];
      }
      out["probs"] = std::move(probs);
      break;
    }
  }
  Json children = Json::object();
  for (std::size_t a = 0; a < n.actions.size(); ++a) {
    children[n.actions[a]] = write_node(game, n.children[a]);
  }
  out["children"] = std::move(children);
  return out;
}

}  // namespace

GameTree parse_game(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what(), e.byte);
  }
  try {
    return DocumentReader(doc).read();
  } catch (const nlohmann::json::exception& e) {
    throw GameError(std::string("malformed game document: ") + e.what());
  }
}

GameTree load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GameError("cannot open game file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_game(buffer.str());
}

std::string serialize_game(const GameTree& game, int indent) {
  Json doc = Json::object();
  doc["players"] = game.num_players();
  Json sets = Json::array();
  for (const InformationSet& info : game.infosets()) {
    Json s = Json::object();
    s["id"] = info.label;
    if (info.owner == kChance) {
      s["owner"] = "c";
    } else {
      s["owner"] = info.owner + 1;
    }
    s["actions"] = info.actions;
    sets.push_back(std::move(s));
  }
  doc["infosets"] = std::move(sets);
  doc["root"] = write_node(game, game.root());
  return doc.dump(indent);
}

void save_game(const GameTree& game, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GameError("cannot write game file '" + path + "'");
  out << serialize_game(game) << '\n';
}

}  // namespace seqnash
