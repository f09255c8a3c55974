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

// seqnash command-line front end.
//
// Exit codes: 0 success (solve: converged, verify: PASS), 1 solver failure or
// FAIL verdict, 2 unreadable or invalid input.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "seqnash/bench.hpp"
#include "seqnash/game_model.hpp"
#include "seqnash/gamegen.hpp"
#include "seqnash/homotopy.hpp"
#include "seqnash/normal_form.hpp"
#include "seqnash/profile_io.hpp"
#include "seqnash/sequence_form.hpp"
#include "seqnash/tracer.hpp"

namespace {

using seqnash::Json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct Globals {
  std::uint64_t seed = 1;
  std::string variant = "lgne";
  double kappa0 = 3.0;
  double alpha_bound = 0.01;
  std::string gamma0 = "uniform";
  double t_end = 1e-4;
  bool json = false;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

seqnash::GameTree read_game(const std::string& path) {
  try {
    return seqnash::load_game(path);
  } catch (const seqnash::ParseError& e) {
    throw InputError(path + ": " + e.what() + " (byte " +
                     std::to_string(e.position()) + ")");
  } catch (const seqnash::GameError& e) {
    throw InputError(path + ": " + e.what());
  }
}

seqnash::SequenceFormGame read_sequence_form(const std::string& path) {
  const seqnash::GameTree game = read_game(path);
  try {
    return seqnash::build_sequence_form(game);
  } catch (const seqnash::GameError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

void print_gamma(const seqnash::SequenceFormGame& sf,
                 const seqnash::RealizationProfile& gamma) {
  for (int i = 0; i < sf.num_players(); ++i) {
    std::cout << "  player " << i + 1 << ":";
    const seqnash::PlayerSequences& seqs = sf.player(i);
    for (std::size_t k = 1; k < seqs.size(); ++k) {
      std::cout << ' ' << seqs.sequences[k].label << '='
                << gamma.plans[i][k];
    }
    std::cout << '\n';
  }
}

seqnash::HomotopyConfig make_config(const Globals& g,
                                    const seqnash::SequenceFormGame& sf) {
  seqnash::HomotopyConfig c;
  c.variant = seqnash::parse_variant(g.variant);
  c.kappa0 = g.kappa0;
  if (g.gamma0 == "uniform") {
    c.gamma0 = seqnash::uniform_plan(sf);
  } else if (g.gamma0 == "random") {
    c.gamma0 = seqnash::random_interior_plan(sf, g.seed);
  } else {
    const seqnash::ProfileInput in = seqnash::load_profile(sf, g.gamma0);
    c.gamma0 = in.realization;
  }
  c.alpha = seqnash::sample_alpha(g.seed, g.alpha_bound, sf.num_actions());
  return c;
}

int cmd_solve(const Globals& g, const std::string& game_path,
              const std::string& path_csv, const std::string& trace_out,
              std::size_t max_steps, double max_seconds) {
  const seqnash::SequenceFormGame sf = read_sequence_form(game_path);
  seqnash::HomotopyConfig config;
  try {
    config = make_config(g, sf);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  seqnash::TracerParams params;
  params.t_end = g.t_end;
  params.max_steps = max_steps;
  params.max_seconds = max_seconds;
  params.record_path = !path_csv.empty() || !trace_out.empty();
  const seqnash::SolveResult result = seqnash::solve(sf, config, params);

  if (!path_csv.empty()) {
    std::ostringstream csv;
    seqnash::write_path_csv(seqnash::gamma_columns(sf), result.trace, csv);
    write_text(path_csv, csv.str());
  }
  if (!trace_out.empty()) {
    write_text(trace_out,
               seqnash::solve_result_to_json(sf, config, result, true).dump(2) +
                   "\n");
  }
  if (g.json) {
    std::cout << seqnash::solve_result_to_json(sf, config, result, false)
                     .dump(2)
              << '\n';
  } else {
    std::cout << "termination: " << seqnash::termination_name(result.termination)
              << " (" << result.message << ")\n"
              << "steps: " << result.steps << "  final t: " << result.final_t
              << "  seconds: " << result.seconds << '\n'
              << "epsilon gap: " << result.gap.max << '\n'
              << "payoffs:";
    for (int i = 0; i < sf.num_players(); ++i) {
      std::cout << ' ' << seqnash::expected_payoff(sf, i, result.gamma);
    }
    std::cout << "\nrealization plan:\n";
    print_gamma(sf, result.gamma);
  }
  return result.converged() ? kExitOk : kExitFail;
}

int cmd_verify(const Globals& g, const std::string& game_path,
               const std::string& profile_path, double eps) {
  const seqnash::SequenceFormGame sf = read_sequence_form(game_path);
  seqnash::ProfileInput in;
  try {
    in = seqnash::load_profile(sf, profile_path);
    seqnash::check_dimensions(sf, in.realization);
  } catch (const std::exception& e) {
    throw InputError(profile_path + ": " + e.what());
  }
  const seqnash::VerifyReport r = seqnash::verify_profile(sf, in, eps);
  if (g.json) {
    std::cout << r.to_json().dump(2) << '\n';
  } else {
    for (std::size_t i = 0; i < r.gap.per_player.size(); ++i) {
      std::cout << "player " << i + 1 << " gap: " << r.gap.per_player[i]
                << '\n';
    }
    if (r.is_mixed) {
      std::cout << "max deviation slack: " << r.max_deviation_slack << '\n';
    }
    std::cout << "flow violation: " << r.flow_violation << '\n'
              << (r.pass ? "PASS" : "FAIL") << " (epsilon " << eps << ")\n";
  }
  return r.pass ? kExitOk : kExitFail;
}

int cmd_oracle(const Globals& g, const std::string& game_path,
               const std::string& tensor_csv) {
  const seqnash::SequenceFormGame sf = read_sequence_form(game_path);
  const seqnash::ReducedNormalForm nf = seqnash::build_reduced_normal_form(sf);
  if (!tensor_csv.empty()) {
    std::ostringstream csv;
    seqnash::write_tensor_csv(nf, csv);
    write_text(tensor_csv, csv.str());
  }
  seqnash::OracleParams params;
  params.seed = g.seed;
  const seqnash::OracleResult res =
      seqnash::enumerate_equilibria_small(nf, params);
  Json list = Json::array();
  for (const seqnash::OracleEquilibrium& eq : res.equilibria) {
    Json e = seqnash::mixed_to_json(sf, eq.sigma);
    e["payoffs"] = eq.payoffs;
    e["epsilon_gap"] =
        seqnash::epsilon_gap(sf, seqnash::mixed_to_realization(sf, eq.sigma))
            .max;
    list.push_back(std::move(e));
  }
  if (g.json) {
    std::cout << Json{{"supports_tried", res.supports_tried},
                      {"equilibria", list}}
                     .dump(2)
              << '\n';
    return kExitOk;
  }
  std::cout << "strategies per player:";
  for (std::size_t s : nf.shape()) std::cout << ' ' << s;
  std::cout << "\nequilibria found: " << res.equilibria.size() << '\n';
  for (std::size_t k = 0; k < res.equilibria.size(); ++k) {
    const seqnash::OracleEquilibrium& eq = res.equilibria[k];
    std::cout << '#' << k + 1 << " payoffs";
    for (double p : eq.payoffs) std::cout << ' ' << p;
    std::cout << '\n';
    for (int i = 0; i < nf.num_players(); ++i) {
      std::cout << "  player " << i + 1 << ':';
      for (std::size_t s = 0; s < nf.strategies(i).size(); ++s) {
        const double p = eq.sigma.probs[i][s];
        if (p > 1e-12) std::cout << ' ' << nf.strategies(i)[s].label << '=' << p;
      }
      std::cout << '\n';
    }
  }
  return kExitOk;
}

int cmd_gen(const Globals& g, const seqnash::GenSpec& base,
            const std::string& out_path) {
  seqnash::GenSpec spec = base;
  spec.seed = g.seed;
  seqnash::GameTree game = [&] {
    try {
      return seqnash::generate(spec);
    } catch (const seqnash::GameError& e) {
      throw InputError(e.what());
    }
  }();
  const std::string text = seqnash::serialize_game(game) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_text(out_path, text);
    const seqnash::SequenceFormGame sf = seqnash::build_sequence_form(game);
    std::cerr << "wrote " << out_path << " (dim " << sf.path_dimension()
              << ")\n";
  }
  return kExitOk;
}

int cmd_bench(const Globals& g, const std::string& config_path,
              const std::string& out_prefix, long long threads) {
  seqnash::BenchConfig config;
  try {
    config = seqnash::BenchConfig::from_json(
        seqnash::load_json_file(config_path));
  } catch (const std::exception& e) {
    throw InputError(config_path + ": " + e.what());
  }
  if (threads >= 0) config.threads = static_cast<std::size_t>(threads);
  if (!out_prefix.empty()) config.output = out_prefix;
  const seqnash::BenchReport report = seqnash::run_bench(
      config, [&](const seqnash::InstanceRecord& r) {
        if (!g.json) {
          std::cerr << "row " << r.row + 1 << ' '
                    << seqnash::variant_name(r.variant) << " instance "
                    << r.instance + 1 << ": " << r.termination << " ("
                    << r.steps << " steps)\n";
        }
      });
  std::ostringstream csv;
  report.write_csv(csv);
  if (!config.output.empty()) {
    write_text(config.output + ".json", report.to_json().dump(2) + "\n");
    write_text(config.output + ".csv", csv.str());
  }
  if (g.json) {
    std::cout << report.to_json().dump(2) << '\n';
  } else {
    std::cout << csv.str();
  }
  return kExitOk;
}

int cmd_export_path(const std::string& trace_path, const std::string& out) {
  Json doc;
  try {
    doc = seqnash::load_json_file(trace_path);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  std::ostringstream csv;
  try {
    seqnash::write_path_csv_from_json(doc, csv);
  } catch (const std::exception& e) {
    throw InputError(trace_path + ": " + e.what());
  }
  if (out.empty() || out == "-") {
    std::cout << csv.str();
  } else {
    write_text(out, csv.str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nash equilibria of extensive-form games by sequence-form "
               "homotopy"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for alpha, random starts, generators");
  app.add_option("--variant", g.variant, "lgne or lbne")
      ->check(CLI::IsMember({"lgne", "lbne"}, CLI::ignore_case));
  app.add_option("--kappa0", g.kappa0, "Exponent of the substitution (> 2)");
  app.add_option("--alpha-bound", g.alpha_bound,
                 "Half-width of the random alpha perturbation");
  app.add_option("--gamma0", g.gamma0,
                 "Starting plan: uniform, random, or a profile file");
  app.add_option("--t-end", g.t_end, "Stop once t falls below this");
  app.add_flag("--json", g.json, "Machine-readable output");

  std::string game_path, profile_path, path_csv, trace_out, config_path,
      trace_path, out_path, tensor_csv;
  std::size_t max_steps = 100'000;
  double max_seconds = 600.0;
  double eps = 1e-8;
  long long threads = -1;
  seqnash::GenSpec gen;

  CLI::App* solve = app.add_subcommand("solve", "Trace a homotopy path");
  solve->add_option("game", game_path, "Game file")->required();
  solve->add_option("--path-csv", path_csv, "Write the path as CSV");
  solve->add_option("--trace", trace_out, "Write result and path as JSON");
  solve->add_option("--max-steps", max_steps, "Accepted step cap");
  solve->add_option("--max-seconds", max_seconds, "Wall-time cap");

  CLI::App* verify = app.add_subcommand("verify", "Check an equilibrium");
  verify->add_option("game", game_path, "Game file")->required();
  verify->add_option("profile", profile_path, "Profile file")->required();
  verify->add_option("--eps", eps, "Tolerance on the gap");

  CLI::App* oracle =
      app.add_subcommand("oracle", "Enumerate equilibria of small games");
  oracle->add_option("game", game_path, "Game file")->required();
  oracle->add_option("--tensor-csv", tensor_csv,
                     "Write the reduced normal form as CSV");

  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a random game");
  gen_cmd->add_option("--type", gen.game_type, "1 or 2")
      ->check(CLI::IsMember({1, 2}));
  gen_cmd->add_option("-n,--players", gen.n, "Players");
  gen_cmd->add_option("-L,--depth", gen.depth, "Depth");
  gen_cmd->add_option("-A,--actions", gen.actions, "Actions per set");
  gen_cmd->add_option("-o,--output", out_path, "Output file (default stdout)");

  CLI::App* bench = app.add_subcommand("bench", "Run a benchmark sweep");
  bench->add_option("config", config_path, "Bench config file")->required();
  bench->add_option("-o,--output", out_path,
                    "Output prefix for .json and .csv reports");
  bench->add_option("--threads", threads, "Worker threads (0: all cores)");

  CLI::App* export_path =
      app.add_subcommand("export-path", "Convert a solve trace to CSV");
  export_path->add_option("trace", trace_path, "Trace written by solve --trace")
      ->required();
  export_path->add_option("-o,--output", out_path, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*solve) {
      return cmd_solve(g, game_path, path_csv, trace_out, max_steps,
                       max_seconds);
    }
    if (*verify) return cmd_verify(g, game_path, profile_path, eps);
    if (*oracle) return cmd_oracle(g, game_path, tensor_csv);
    if (*gen_cmd) return cmd_gen(g, gen, out_path);
    if (*bench) return cmd_bench(g, config_path, out_path, threads);
    if (*export_path) return cmd_export_path(trace_path, out_path);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitInput;
}
