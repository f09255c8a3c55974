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

#include "seqnash/sequence_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "seqnash/rng.hpp"

namespace seqnash {
namespace {

// Sequences of one owner (a player or chance), in information-set order.
PlayerSequences build_owner(const GameTree& game, PlayerId owner,
                            std::vector<int>& local_of_tree) {
  PlayerSequences out;
  out.sequences.push_back(Sequence{});
  for (const InformationSet& info : game.infosets()) {
    if (info.owner != owner) continue;
    const PlayerExperience exp =
        player_experience(game, info.members.front(), owner);
    int parent = 0;
    if (!exp.empty()) {
      const ExperienceStep& last = exp.back();
      const SequenceInfoset& p = out.infosets[local_of_tree[last.infoset]];
      parent = p.first_sequence + last.action;
    }
    const int local = static_cast<int>(out.infosets.size());
    local_of_tree[info.id] = local;
    SequenceInfoset set;
    set.tree_id = info.id;
    set.label = info.label;
    set.parent_sequence = parent;
    set.first_sequence = static_cast<int>(out.sequences.size());
    set.num_actions = static_cast<int>(info.actions.size());
    out.infosets.push_back(set);
    out.sequences[parent].child_infosets.push_back(local);
    for (int a = 0; a < set.num_actions; ++a) {
      Sequence s;
      s.tree_infoset = info.id;
      s.infoset = local;
      s.action = a;
      s.parent = parent;
      s.label = out.sequences[parent].label + info.actions[a];
      out.sequences.push_back(std::move(s));
    }
  }
  // Concatenated action labels read like the usual "RS"; fall back to
  // qualified labels when that is ambiguous.
  std::set<std::string> labels;
  bool unique = true;
  for (std::size_t k = 1; k < out.sequences.size() && unique; ++k) {
    unique = labels.insert(out.sequences[k].label).second;
  }
  if (!unique) {
    for (std::size_t k = 1; k < out.sequences.size(); ++k) {
      Sequence& s = out.sequences[k];
      s.label = out.infosets[s.infoset].label + ":" +
                game.infoset(s.tree_infoset).actions[s.action];
    }
  }
  out.sequences[0].label = "empty";
  return out;
}

void require_positive_dimensions(const SequenceFormGame& sf, int player,
                                 const std::vector<double>& v) {
  if (v.size() != sf.player(player).size()) {
    throw DomainError("plan of player " + std::to_string(player + 1) +
                      " has " + std::to_string(v.size()) +
                      " entries, expected " +
                      std::to_string(sf.player(player).size()));
  }
}

}  // namespace

std::size_t PlayerSequences::num_d() const {
  std::size_t count = 0;
  for (std::size_t k = 1; k < sequences.size(); ++k) {
    if (sequences[k].child_infosets.empty()) ++count;
  }
  return count;
}

SequenceFormGame build_sequence_form(const GameTree& game) {
  if (auto violation = validate_perfect_recall(game)) {
    throw GameError("perfect recall violated: " + violation->message);
  }
  SequenceFormGame sf;
  sf.tree_ = std::make_shared<const GameTree>(game);
  const int n = game.num_players();
  std::vector<int> local_of_tree(game.infosets().size(), -1);
  for (int i = 0; i < n; ++i) {
    sf.players_.push_back(build_owner(game, i, local_of_tree));
  }
  sf.chance_ = build_owner(game, kChance, local_of_tree);

  sf.chance_plan_.assign(sf.chance_.size(), 1.0);
  for (std::size_t k = 1; k < sf.chance_.size(); ++k) {
    const Sequence& s = sf.chance_.sequences[k];
    const InformationSet& info = game.infoset(s.tree_infoset);
    const double p = game.node(info.members.front()).chance_probs[s.action];
    sf.chance_plan_[k] = sf.chance_plan_[s.parent] * p;
  }

  int action_offset = 0;
  int infoset_offset = 0;
  for (int i = 0; i < n; ++i) {
    sf.action_offset_.push_back(action_offset);
    sf.infoset_offset_.push_back(infoset_offset);
    action_offset += static_cast<int>(sf.players_[i].size()) - 1;
    infoset_offset += static_cast<int>(sf.players_[i].infosets.size());
  }
  sf.num_actions_ = static_cast<std::size_t>(action_offset);
  sf.num_infosets_ = static_cast<std::size_t>(infoset_offset);

  // Induced sequence tuple per node, top-down (nodes are stored in BFS order).
  const std::size_t owners = static_cast<std::size_t>(n) + 1;
  std::vector<int> induced(game.nodes().size() * owners, 0);
  for (NodeId id = 1; id < static_cast<NodeId>(game.nodes().size()); ++id) {
    const Node& node = game.node(id);
    const Node& parent = game.node(node.parent);
    std::copy_n(induced.begin() + node.parent * owners, owners,
                induced.begin() + id * owners);
    const int slot = parent.kind == NodeKind::kChance ? n : parent.owner;
    const PlayerSequences& seqs = slot == n ? sf.chance_ : sf.players_[slot];
    const int local = local_of_tree[parent.infoset];
    induced[id * owners + slot] =
        seqs.infosets[local].first_sequence + node.parent_action;
  }
  for (NodeId z : game.terminals()) {
    PayoffEntry e;
    e.terminal = z;
    e.sequences.assign(induced.begin() + z * owners,
                       induced.begin() + z * owners + n);
    e.chance_sequence = induced[z * owners + n];
    e.chance_weight = sf.chance_plan_[e.chance_sequence];
    e.payoffs = game.node(z).payoffs;
    sf.payoffs_.push_back(std::move(e));
  }

  // Extremes over aggregated entries g(w): terminals sharing a sequence
  // profile add up.
  std::map<std::vector<int>, std::vector<double>> table;
  for (const PayoffEntry& e : sf.payoffs_) {
    auto& cell = table[e.sequences];
    cell.resize(n, 0.0);
    for (int i = 0; i < n; ++i) cell[i] += e.payoffs[i] * e.chance_weight;
  }
  sf.min_payoff_.assign(n, std::numeric_limits<double>::infinity());
  sf.max_payoff_.assign(n, -std::numeric_limits<double>::infinity());
  for (const auto& [key, cell] : table) {
    for (int i = 0; i < n; ++i) {
      sf.min_payoff_[i] = std::min(sf.min_payoff_[i], cell[i]);
      sf.max_payoff_[i] = std::max(sf.max_payoff_[i], cell[i]);
    }
  }
  return sf;
}

std::vector<ReducedStrategy> reduced_strategies(const SequenceFormGame& sf,
                                                int player, std::size_t cap) {
  const PlayerSequences& seqs = sf.player(player);
  std::vector<ReducedStrategy> out;
  std::vector<int> choice(seqs.infosets.size(), -1);

  // Depth-first over the pending sets; the smallest index is decided first.
  auto recurse = [&](auto&& self, std::set<int> pending) -> void {
    if (pending.empty()) {
      if (out.size() >= cap) {
        throw DomainError("player " + std::to_string(player + 1) +
                          " has more than " + std::to_string(cap) +
                          " reduced strategies");
      }
      ReducedStrategy s;
      s.choice = choice;
      s.plays.assign(seqs.size(), 0);
      s.plays[0] = 1;
      s.label = "{";
      bool first = true;
      for (std::size_t j = 0; j < seqs.infosets.size(); ++j) {
        if (choice[j] < 0) continue;
        const SequenceInfoset& set = seqs.infosets[j];
        s.plays[set.first_sequence + choice[j]] = 1;
        if (!first) s.label += ",";
        s.label +=
            sf.tree().infoset(set.tree_id).actions[choice[j]];
        first = false;
      }
      s.label += "}";
      out.push_back(std::move(s));
      return;
    }
    const int j = *pending.begin();
    pending.erase(pending.begin());
    const SequenceInfoset& set = seqs.infosets[j];
    for (int a = 0; a < set.num_actions; ++a) {
      choice[j] = a;
      std::set<int> next = pending;
      for (int c : seqs.sequences[set.first_sequence + a].child_infosets) {
        next.insert(c);
      }
      self(self, std::move(next));
    }
    choice[j] = -1;
  };
  const auto& roots = seqs.sequences[0].child_infosets;
  recurse(recurse, std::set<int>(roots.begin(), roots.end()));
  return out;
}

RealizationProfile plan_from_behavior(
    const SequenceFormGame& sf,
    const std::vector<std::vector<double>>& behavior) {
  RealizationProfile g;
  for (int i = 0; i < sf.num_players(); ++i) {
    const PlayerSequences& seqs = sf.player(i);
    std::vector<double> plan(seqs.size(), 1.0);
    for (std::size_t k = 1; k < seqs.size(); ++k) {
      plan[k] = plan[seqs.sequences[k].parent] * behavior.at(i).at(k);
    }
    g.plans.push_back(std::move(plan));
  }
  return g;
}

RealizationProfile uniform_plan(const SequenceFormGame& sf) {
  std::vector<std::vector<double>> behavior;
  for (int i = 0; i < sf.num_players(); ++i) {
    const PlayerSequences& seqs = sf.player(i);
    std::vector<double> b(seqs.size(), 1.0);
    for (std::size_t k = 1; k < seqs.size(); ++k) {
      b[k] = 1.0 / seqs.infosets[seqs.sequences[k].infoset].num_actions;
    }
    behavior.push_back(std::move(b));
  }
  return plan_from_behavior(sf, behavior);
}

RealizationProfile random_interior_plan(const SequenceFormGame& sf,
                                        std::uint64_t seed) {
  Rng rng(seed, Stream::kStartPoint);
  std::vector<std::vector<double>> behavior;
  for (int i = 0; i < sf.num_players(); ++i) {
    const PlayerSequences& seqs = sf.player(i);
    std::vector<double> b(seqs.size(), 1.0);
    for (const SequenceInfoset& set : seqs.infosets) {
      double total = 0.0;
      for (int a = 0; a < set.num_actions; ++a) {
        b[set.first_sequence + a] = rng.uniform(0.05, 1.0);
        total += b[set.first_sequence + a];
      }
      for (int a = 0; a < set.num_actions; ++a) {
        b[set.first_sequence + a] /= total;
      }
    }
    behavior.push_back(std::move(b));
  }
  return plan_from_behavior(sf, behavior);
}

void check_dimensions(const SequenceFormGame& sf, const RealizationProfile& g) {
  if (static_cast<int>(g.plans.size()) != sf.num_players()) {
    throw DomainError("profile has " + std::to_string(g.plans.size()) +
                      " players, game has " +
                      std::to_string(sf.num_players()));
  }
  for (int i = 0; i < sf.num_players(); ++i) {
    require_positive_dimensions(sf, i, g.plans[i]);
  }
}

double flow_violation(const SequenceFormGame& sf, const RealizationProfile& g) {
  check_dimensions(sf, g);
  double worst = 0.0;
  for (int i = 0; i < sf.num_players(); ++i) {
    const PlayerSequences& seqs = sf.player(i);
    const std::vector<double>& plan = g.plans[i];
    worst = std::max(worst, std::abs(plan[0] - 1.0));
    for (const SequenceInfoset& set : seqs.infosets) {
      double sum = 0.0;
      for (int a = 0; a < set.num_actions; ++a) {
        sum += plan[set.first_sequence + a];
      }
      worst = std::max(worst, std::abs(sum - plan[set.parent_sequence]));
    }
  }
  return worst;
}

std::vector<double> payoff_vector(const SequenceFormGame& sf, int player,
                                  const RealizationProfile& gamma) {
  check_dimensions(sf, gamma);
  std::vector<double> out(sf.player(player).size(), 0.0);
  const int n = sf.num_players();
  for (const PayoffEntry& e : sf.payoff_table()) {
    double w = e.chance_weight;
    for (int q = 0; q < n && w != 0.0; ++q) {
      if (q != player) w *= gamma.plans[q][e.sequences[q]];
    }
    out[e.sequences[player]] += w * e.payoffs[player];
  }
  return out;
}

double expected_payoff(const SequenceFormGame& sf, int player,
                       const RealizationProfile& gamma) {
  const std::vector<double> g = payoff_vector(sf, player, gamma);
  double total = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    total += gamma.plans[player][k] * g[k];
  }
  return total;
}

std::vector<double> subtree_values(const PlayerSequences& seqs,
                                   const std::vector<double>& payoff) {
  std::vector<double> value = payoff;
  std::vector<double> best(seqs.infosets.size(),
                           -std::numeric_limits<double>::infinity());
  for (std::size_t k = seqs.size(); k-- > 1;) {
    const Sequence& s = seqs.sequences[k];
    for (int c : s.child_infosets) value[k] += best[c];
    best[s.infoset] = std::max(best[s.infoset], value[k]);
  }
  for (int c : seqs.sequences[0].child_infosets) value[0] += best[c];
  return value;
}

namespace {

// Full g_m over all sequences: replace the best action of every ancestor set
// on the path by the committed child.
std::vector<double> committed_values(const PlayerSequences& seqs,
                                     const std::vector<double>& payoff) {
  const std::vector<double> value = subtree_values(seqs, payoff);
  std::vector<double> best(seqs.infosets.size(),
                           -std::numeric_limits<double>::infinity());
  for (std::size_t k = 1; k < seqs.size(); ++k) {
    const int j = seqs.sequences[k].infoset;
    best[j] = std::max(best[j], value[k]);
  }
  std::vector<double> out(seqs.size());
  out[0] = value[0];
  for (std::size_t k = 1; k < seqs.size(); ++k) {
    const Sequence& s = seqs.sequences[k];
    out[k] = out[s.parent] - best[s.infoset] + value[k];
  }
  return out;
}

}  // namespace

double best_response_value(const SequenceFormGame& sf, int player, int seq,
                           const RealizationProfile& gamma) {
  const PlayerSequences& seqs = sf.player(player);
  if (seq < 0 || seq >= static_cast<int>(seqs.size())) {
    throw DomainError("sequence index out of range");
  }
  return committed_values(seqs, payoff_vector(sf, player, gamma))[seq];
}

GapReport epsilon_gap(const SequenceFormGame& sf,
                      const RealizationProfile& gamma) {
  GapReport report;
  for (int i = 0; i < sf.num_players(); ++i) {
    const std::vector<double> g = payoff_vector(sf, i, gamma);
    const double best = subtree_values(sf.player(i), g)[0];
    double current = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      current += gamma.plans[i][k] * g[k];
    }
    report.per_player.push_back(best - current);
  }
  report.max = report.per_player.empty()
                   ? 0.0
                   : *std::max_element(report.per_player.begin(),
                                       report.per_player.end());
  return report;
}

double zeta(const SequenceFormGame& sf, const DualCertificate& cert,
            int player, int seq) {
  double total = 0.0;
  for (int j : sf.player(player).sequences[seq].child_infosets) {
    total += cert.nu[player][j];
  }
  return total;
}

DualCertificate recover_duals(const SequenceFormGame& sf,
                              const RealizationProfile& gamma) {
  DualCertificate cert;
  for (int i = 0; i < sf.num_players(); ++i) {
    const PlayerSequences& seqs = sf.player(i);
    const std::vector<double> g = payoff_vector(sf, i, gamma);
    const std::vector<double> value = subtree_values(seqs, g);
    std::vector<double> nu(seqs.infosets.size(),
                           -std::numeric_limits<double>::infinity());
    for (std::size_t k = 1; k < seqs.size(); ++k) {
      const int j = seqs.sequences[k].infoset;
      nu[j] = std::max(nu[j], value[k]);
    }
    // Sets are ordered parents first, so deficits flow downwards.
    for (const SequenceInfoset& set : seqs.infosets) {
      const int j = static_cast<int>(&set - seqs.infosets.data());
      for (int a = 0; a < set.num_actions; ++a) {
        const Sequence& s = seqs.sequences[set.first_sequence + a];
        if (s.child_infosets.empty()) continue;
        double z = 0.0;
        for (int c : s.child_infosets) z += nu[c];
        const double deficit = nu[j] - (g[set.first_sequence + a] + z);
        if (deficit > 0.0) nu[s.child_infosets.front()] += deficit;
      }
    }
    std::vector<double> lambda(seqs.size(), 0.0);
    for (std::size_t k = 1; k < seqs.size(); ++k) {
      if (seqs.in_d(static_cast<int>(k))) {
        lambda[k] = std::max(0.0, nu[seqs.sequences[k].infoset] - g[k]);
      }
    }
    cert.lambda.push_back(std::move(lambda));
    cert.nu.push_back(std::move(nu));
  }
  return cert;
}

double NeResidual::sup_norm() const {
  double worst = sign_violation;
  for (const auto* v : {&stationarity, &flow, &complementarity}) {
    for (double r : *v) worst = std::max(worst, std::abs(r));
  }
  return worst;
}

NeResidual ne_residual(const SequenceFormGame& sf,
                       const RealizationProfile& gamma,
                       const DualCertificate& cert) {
  check_dimensions(sf, gamma);
  if (static_cast<int>(cert.nu.size()) != sf.num_players() ||
      static_cast<int>(cert.lambda.size()) != sf.num_players()) {
    throw DomainError("dual certificate does not match the game");
  }
  NeResidual out;
  for (int i = 0; i < sf.num_players(); ++i) {
    const PlayerSequences& seqs = sf.player(i);
    if (cert.nu[i].size() != seqs.infosets.size() ||
        cert.lambda[i].size() != seqs.size()) {
      throw DomainError("dual certificate does not match the game");
    }
    const std::vector<double> g = payoff_vector(sf, i, gamma);
    const std::vector<double>& plan = gamma.plans[i];
    for (std::size_t k = 1; k < seqs.size(); ++k) {
      const int seq = static_cast<int>(k);
      const double nu = cert.nu[i][seqs.sequences[k].infoset];
      if (seqs.in_d(seq)) {
        out.stationarity.push_back(g[k] + cert.lambda[i][k] - nu);
        out.complementarity.push_back(plan[k] * cert.lambda[i][k]);
        out.sign_violation = std::max(out.sign_violation, -cert.lambda[i][k]);
      } else {
        out.stationarity.push_back(g[k] + zeta(sf, cert, i, seq) - nu);
      }
      out.sign_violation = std::max(out.sign_violation, -plan[k]);
    }
    for (const SequenceInfoset& set : seqs.infosets) {
      double sum = 0.0;
      for (int a = 0; a < set.num_actions; ++a) {
        sum += plan[set.first_sequence + a];
      }
      out.flow.push_back(sum - plan[set.parent_sequence]);
    }
  }
  return out;
}

RealizationProfile mixed_to_realization(const SequenceFormGame& sf,
                                        const MixedProfile& sigma) {
  if (static_cast<int>(sigma.probs.size()) != sf.num_players()) {
    throw DomainError("mixed profile does not match the number of players");
  }
  RealizationProfile g;
  for (int i = 0; i < sf.num_players(); ++i) {
    const std::vector<ReducedStrategy> strategies = reduced_strategies(sf, i);
    if (strategies.size() != sigma.probs[i].size()) {
      throw DomainError("player " + std::to_string(i + 1) + " has " +
                        std::to_string(strategies.size()) +
                        " reduced strategies, profile gives " +
                        std::to_string(sigma.probs[i].size()));
    }
    std::vector<double> plan(sf.player(i).size(), 0.0);
    for (std::size_t s = 0; s < strategies.size(); ++s) {
      const double p = sigma.probs[i][s];
      if (p == 0.0) continue;
      for (std::size_t k = 0; k < plan.size(); ++k) {
        if (strategies[s].plays[k]) plan[k] += p;
      }
    }
    g.plans.push_back(std::move(plan));
  }
  return g;
}

MixedProfile realization_to_mixed(const SequenceFormGame& sf,
                                  const RealizationProfile& gamma) {
  check_dimensions(sf, gamma);
  MixedProfile sigma;
  for (int i = 0; i < sf.num_players(); ++i) {
    const PlayerSequences& seqs = sf.player(i);
    const std::vector<double>& plan = gamma.plans[i];
    for (std::size_t k = 0; k < plan.size(); ++k) {
      if (!(plan[k] > 0.0)) {
        throw DomainError("realization plan of player " +
                          std::to_string(i + 1) + " is not strictly positive");
      }
    }
    std::vector<double> probs;
    for (const ReducedStrategy& s : reduced_strategies(sf, i)) {
      double p = 1.0;
      for (std::size_t j = 0; j < seqs.infosets.size(); ++j) {
        if (s.choice[j] < 0) continue;
        const SequenceInfoset& set = seqs.infosets[j];
        p *= plan[set.first_sequence + s.choice[j]] / plan[set.parent_sequence];
      }
      probs.push_back(p);
    }
    sigma.probs.push_back(std::move(probs));
  }
  return sigma;
}

std::vector<DualBounds> dual_bounds(const SequenceFormGame& sf) {
  std::vector<DualBounds> out;
  double nu_upper = 0.0;
  for (int i = 0; i < sf.num_players(); ++i) {
    const PlayerSequences& seqs = sf.player(i);
    DualBounds b;
    b.payoff_min = sf.min_payoff(i);
    b.payoff_max = sf.max_payoff(i);
    const double w = static_cast<double>(seqs.size());
    const double d = static_cast<double>(seqs.num_d());
    b.nu_lower = -w * std::abs(b.payoff_min) - d;
    b.nu_upper_by_set.assign(seqs.infosets.size(), 0.0);
    for (std::size_t j = 0; j < seqs.infosets.size(); ++j) {
      const SequenceInfoset& set = seqs.infosets[j];
      if (set.parent_sequence == 0) {
        b.nu_upper_by_set[j] = w * std::abs(b.payoff_max);
      } else {
        const Sequence& parent = seqs.sequences[set.parent_sequence];
        const double siblings =
            static_cast<double>(parent.child_infosets.size()) - 1.0;
        b.nu_upper_by_set[j] = b.nu_upper_by_set[parent.infoset] +
                               siblings * (w * std::abs(b.payoff_min) + d);
      }
      nu_upper = std::max(nu_upper, b.nu_upper_by_set[j]);
    }
    out.push_back(std::move(b));
  }
  for (DualBounds& b : out) {
    b.nu_upper = nu_upper;
    b.lambda_upper = nu_upper + std::abs(b.payoff_min) + 1.0;
  }
  return out;
}

}  // namespace seqnash
