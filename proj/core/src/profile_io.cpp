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

#include "seqnash/profile_io.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "seqnash/normal_form.hpp"

namespace seqnash {
namespace {

const Json& player_entry(const Json& map, int player, const char* what) {
  const std::string key = std::to_string(player + 1);
  if (!map.is_object() || !map.contains(key)) {
    throw DomainError(std::string(what) + " for player " + key + " missing");
  }
  return map.at(key);
}

std::vector<double> read_labelled(const Json& entries,
                                  const std::vector<std::string>& labels,
                                  std::size_t optional_first, int player) {
  if (!entries.is_object()) {
    throw DomainError("entries of player " + std::to_string(player + 1) +
                      " must be an object");
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < labels.size(); ++k) index[labels[k]] = k;
  std::vector<double> out(labels.size(), 0.0);
  std::vector<bool> seen(labels.size(), false);
  for (const auto& [key, value] : entries.items()) {
    auto it = index.find(key);
    if (it == index.end()) {
      throw DomainError("player " + std::to_string(player + 1) +
                        ": unknown label '" + key + "'");
    }
    if (!value.is_number()) {
      throw DomainError("player " + std::to_string(player + 1) + ": '" + key +
                        "' is not a number");
    }
    out[it->second] = value.get<double>();
    seen[it->second] = true;
  }
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (seen[k]) continue;
    if (k < optional_first) {
      out[k] = 1.0;
      continue;
    }
    throw DomainError("player " + std::to_string(player + 1) +
                      ": missing entry '" + labels[k] + "'");
  }
  return out;
}

}  // namespace

Json realization_to_json(const SequenceFormGame& sf,
                         const RealizationProfile& gamma) {
  check_dimensions(sf, gamma);
  Json plans = Json::object();
  for (int i = 0; i < sf.num_players(); ++i) {
    Json plan = Json::object();
    const PlayerSequences& seqs = sf.player(i);
    for (std::size_t k = 1; k < seqs.size(); ++k) {
      plan[seqs.sequences[k].label] = gamma.plans[i][k];
    }
    plans[std::to_string(i + 1)] = std::move(plan);
  }
  return Json{{"kind", "realization"}, {"plans", std::move(plans)}};
}

Json mixed_to_json(const SequenceFormGame& sf, const MixedProfile& sigma) {
  Json strategies = Json::object();
  for (int i = 0; i < sf.num_players(); ++i) {
    const std::vector<ReducedStrategy> s = reduced_strategies(sf, i);
    if (sigma.probs.at(i).size() != s.size()) {
      throw DomainError("mixed strategy size mismatch");
    }
    Json entry = Json::object();
    for (std::size_t k = 0; k < s.size(); ++k) {
      entry[s[k].label] = sigma.probs[i][k];
    }
    strategies[std::to_string(i + 1)] = std::move(entry);
  }
  return Json{{"kind", "mixed"}, {"strategies", std::move(strategies)}};
}

ProfileInput profile_from_json(const SequenceFormGame& sf, const Json& doc) {
  if (!doc.is_object() || !doc.contains("kind")) {
    throw DomainError("profile document needs a \"kind\" field");
  }
  const std::string kind = doc.at("kind").get<std::string>();
  ProfileInput in;
  if (kind == "realization") {
    if (!doc.contains("plans")) throw DomainError("missing \"plans\"");
    for (int i = 0; i < sf.num_players(); ++i) {
      std::vector<std::string> labels;
      for (const Sequence& s : sf.player(i).sequences) {
        labels.push_back(s.label);
      }
      in.realization.plans.push_back(read_labelled(
          player_entry(doc.at("plans"), i, "plan"), labels, 1, i));
    }
    return in;
  }
  if (kind == "mixed") {
    if (!doc.contains("strategies")) {
      throw DomainError("missing \"strategies\"");
    }
    in.is_mixed = true;
    for (int i = 0; i < sf.num_players(); ++i) {
      std::vector<std::string> labels;
      for (const ReducedStrategy& s : reduced_strategies(sf, i)) {
        labels.push_back(s.label);
      }
      in.mixed.probs.push_back(read_labelled(
          player_entry(doc.at("strategies"), i, "strategy"), labels, 0, i));
    }
    in.realization = mixed_to_realization(sf, in.mixed);
    return in;
  }
  throw DomainError("profile kind must be \"realization\" or \"mixed\"");
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), e.byte);
  }
}

ProfileInput load_profile(const SequenceFormGame& sf, const std::string& path) {
  return profile_from_json(sf, load_json_file(path));
}

std::vector<std::string> gamma_columns(const SequenceFormGame& sf) {
  std::vector<std::string> out;
  for (int i = 0; i < sf.num_players(); ++i) {
    const PlayerSequences& seqs = sf.player(i);
    for (std::size_t k = 1; k < seqs.size(); ++k) {
      out.push_back("gamma:" + std::to_string(i + 1) + ":" +
                    seqs.sequences[k].label);
    }
  }
  return out;
}

void write_path_csv(const std::vector<std::string>& columns,
                    const PathTrace& trace, std::ostream& out) {
  out << "t,step,corrector_iters,residual";
  for (const std::string& c : columns) out << ',' << c;
  out << '\n';
  const auto old_precision = out.precision(17);
  for (const PathPoint& p : trace.points) {
    out << p.t << ',' << p.step << ',' << p.corrector_iters << ','
        << p.residual;
    for (double g : p.gamma) out << ',' << g;
    out << '\n';
  }
  out.precision(old_precision);
}

Json solve_result_to_json(const SequenceFormGame& sf,
                          const HomotopyConfig& config,
                          const SolveResult& result, bool include_path) {
  Json doc = Json::object();
  doc["variant"] = variant_name(config.variant);
  doc["kappa0"] = config.kappa0;
  doc["termination"] = termination_name(result.termination);
  doc["message"] = result.message;
  doc["converged"] = result.converged();
  doc["steps"] = result.steps;
  doc["rejected_steps"] = result.trace.rejected_steps;
  doc["corrector_iterations"] = result.trace.corrector_iterations;
  doc["seconds"] = result.seconds;
  doc["final_t"] = result.final_t;
  doc["epsilon_gap"] = result.gap.max;
  doc["gap_per_player"] = result.gap.per_player;
  doc["raw_epsilon_gap"] = result.raw_gap.max;
  std::vector<double> payoffs;
  for (int i = 0; i < sf.num_players(); ++i) {
    payoffs.push_back(expected_payoff(sf, i, result.gamma));
  }
  doc["payoffs"] = payoffs;
  doc["profile"] = realization_to_json(sf, result.gamma);
  if (include_path) {
    Json path = Json::object();
    path["columns"] = gamma_columns(sf);
    Json rows = Json::array();
    for (const PathPoint& p : result.trace.points) {
      rows.push_back(Json{{"t", p.t},
                          {"step", p.step},
                          {"corrector_iters", p.corrector_iters},
                          {"residual", p.residual},
                          {"gamma", p.gamma}});
    }
    path["points"] = std::move(rows);
    doc["path"] = std::move(path);
  }
  return doc;
}

void write_path_csv_from_json(const Json& doc, std::ostream& out) {
  if (!doc.is_object() || !doc.contains("path")) {
    throw DomainError("trace document has no path");
  }
  const Json& path = doc.at("path");
  if (!path.contains("points") || path.at("points").empty()) {
    throw DomainError("trace document has an empty path");
  }
  PathTrace trace;
  for (const Json& row : path.at("points")) {
    PathPoint p;
    p.t = row.at("t").get<double>();
    p.step = row.at("step").get<double>();
    p.corrector_iters = row.at("corrector_iters").get<int>();
    p.residual = row.at("residual").get<double>();
    p.gamma = row.at("gamma").get<std::vector<double>>();
    trace.points.push_back(std::move(p));
  }
  write_path_csv(path.at("columns").get<std::vector<std::string>>(), trace,
                 out);
}

Json VerifyReport::to_json() const {
  Json doc = Json::object();
  doc["profile_kind"] = is_mixed ? "mixed" : "realization";
  doc["flow_violation"] = flow_violation;
  doc["gap_per_player"] = gap.per_player;
  doc["epsilon_gap"] = gap.max;
  if (is_mixed) {
    doc["deviation_slack"] = deviation_slack;
    doc["max_deviation_slack"] = max_deviation_slack;
  }
  doc["epsilon"] = epsilon;
  doc["verdict"] = pass ? "PASS" : "FAIL";
  return doc;
}

VerifyReport verify_profile(const SequenceFormGame& sf,
                            const ProfileInput& profile, double eps) {
  check_dimensions(sf, profile.realization);
  VerifyReport r;
  r.is_mixed = profile.is_mixed;
  r.epsilon = eps;
  r.flow_violation = flow_violation(sf, profile.realization);
  r.gap = epsilon_gap(sf, profile.realization);
  r.pass = r.gap.max <= eps && r.flow_violation <= 1e-9;
  if (profile.is_mixed) {
    const ReducedNormalForm nf = build_reduced_normal_form(sf);
    const NashCheck nc = is_nash(nf, profile.mixed, eps);
    r.deviation_slack = nc.slack;
    r.max_deviation_slack = nc.max_slack;
    r.pass = r.pass && nc.is_nash;
  }
  return r;
}

}  // namespace seqnash
