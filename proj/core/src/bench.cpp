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

#include "seqnash/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include "seqnash/gamegen.hpp"
#include "seqnash/rng.hpp"
#include "seqnash/sequence_form.hpp"

namespace seqnash {
namespace {

using Json = nlohmann::ordered_json;

Json stats_json(const Stats& s) {
  if (s.count == 0) {
    return Json{{"max", nullptr}, {"min", nullptr}, {"median", nullptr}};
  }
  return Json{{"max", s.max}, {"min", s.min}, {"median", s.median}};
}

void csv_number(std::ostream& out, double v, std::size_t count) {
  if (count == 0) {
    out << "-";
  } else {
    out << v;
  }
}

GenSpec spec_for(const BenchRow& row, std::uint64_t seed) {
  GenSpec spec;
  spec.game_type = row.game_type;
  spec.n = row.n;
  spec.depth = row.depth;
  spec.actions = row.actions;
  spec.seed = seed;
  return spec;
}

}  // namespace

TracerParams BenchConfig::default_tracer() {
  TracerParams p;
  p.max_steps = 5000;
  p.max_seconds = 600.0;
  p.record_path = false;
  return p;
}

void BenchConfig::validate() const {
  if (rows.empty()) throw DomainError("bench config has no rows");
  if (instances < 1) throw DomainError("instances must be at least 1");
  if (variants.empty()) throw DomainError("bench config has no variants");
  if (tracer.max_steps < 1 || !(tracer.max_seconds > 0.0)) {
    throw DomainError("step and time caps must be positive");
  }
  tracer.validate();
  for (const BenchRow& r : rows) spec_for(r, 0).validate();
}

BenchConfig BenchConfig::from_json(const Json& doc) {
  if (!doc.is_object()) throw DomainError("bench config must be an object");
  BenchConfig c;
  if (!doc.contains("rows") || !doc.at("rows").is_array()) {
    throw DomainError("bench config needs a \"rows\" array");
  }
  try {
    for (const Json& r : doc.at("rows")) {
      BenchRow row;
      row.game_type = r.at("type").get<int>();
      row.n = r.at("n").get<int>();
      row.depth = r.at("L").get<int>();
      row.actions = r.at("A").get<int>();
      c.rows.push_back(row);
    }
    if (doc.contains("instances")) {
      const long long k = doc.at("instances").get<long long>();
      if (k < 1) throw DomainError("instances must be at least 1");
      c.instances = static_cast<std::size_t>(k);
    }
    if (doc.contains("variants")) {
      c.variants.clear();
      for (const Json& v : doc.at("variants")) {
        c.variants.push_back(parse_variant(v.get<std::string>()));
      }
    }
    if (doc.contains("max_steps")) {
      const long long k = doc.at("max_steps").get<long long>();
      if (k < 1) throw DomainError("max_steps must be positive");
      c.tracer.max_steps = static_cast<std::size_t>(k);
    }
    if (doc.contains("max_seconds")) {
      c.tracer.max_seconds = doc.at("max_seconds").get<double>();
    }
    if (doc.contains("t_end")) c.tracer.t_end = doc.at("t_end").get<double>();
    if (doc.contains("seed")) c.master_seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("threads")) {
      c.threads = doc.at("threads").get<std::size_t>();
    }
    if (doc.contains("kappa0")) c.kappa0 = doc.at("kappa0").get<double>();
    if (doc.contains("alpha_bound")) {
      c.alpha_bound = doc.at("alpha_bound").get<double>();
    }
    if (doc.contains("output")) c.output = doc.at("output").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bench config: ") + e.what());
  }
  c.validate();
  return c;
}

Json BenchConfig::to_json() const {
  Json r = Json::array();
  for (const BenchRow& row : rows) {
    r.push_back(Json{{"type", row.game_type},
                     {"n", row.n},
                     {"L", row.depth},
                     {"A", row.actions}});
  }
  Json v = Json::array();
  for (Variant x : variants) v.push_back(variant_name(x));
  return Json{{"rows", r},
              {"instances", instances},
              {"variants", v},
              {"max_steps", tracer.max_steps},
              {"max_seconds", tracer.max_seconds},
              {"t_end", tracer.t_end},
              {"seed", master_seed},
              {"threads", threads},
              {"kappa0", kappa0},
              {"alpha_bound", alpha_bound},
              {"output", output}};
}

std::uint64_t instance_seed(std::uint64_t master_seed, std::size_t row,
                            std::size_t instance) {
  const std::uint64_t base = stream_seed(master_seed, Stream::kInstance);
  return splitmix64(splitmix64(base ^ (static_cast<std::uint64_t>(row) << 32)) ^
                    static_cast<std::uint64_t>(instance));
}

Stats compute_stats(std::vector<double> values) {
  Stats s;
  s.count = values.size();
  if (values.empty()) {
    s.max = s.min = s.median = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  const std::size_t mid = values.size() / 2;
  s.median = values.size() % 2 == 1 ? values[mid]
                                    : 0.5 * (values[mid - 1] + values[mid]);
  return s;
}

std::vector<CellSummary> summarize(const BenchConfig& config,
                                   const std::vector<InstanceRecord>& records) {
  std::vector<CellSummary> cells;
  for (std::size_t r = 0; r < config.rows.size(); ++r) {
    for (Variant v : config.variants) {
      CellSummary cell;
      cell.row = config.rows[r];
      cell.variant = v;
      std::vector<double> steps, seconds;
      for (const InstanceRecord& rec : records) {
        if (rec.row != r || rec.variant != v) continue;
        cell.dim = rec.dim;
        ++cell.instances;
        if (rec.converged) {
          steps.push_back(static_cast<double>(rec.steps));
          seconds.push_back(rec.seconds);
        } else {
          ++cell.failures;
        }
      }
      cell.failure_rate =
          cell.instances == 0
              ? 0.0
              : static_cast<double>(cell.failures) /
                    static_cast<double>(cell.instances);
      cell.steps = compute_stats(std::move(steps));
      cell.seconds = compute_stats(std::move(seconds));
      cells.push_back(cell);
    }
  }
  return cells;
}

InstanceRecord run_instance(const BenchConfig& config, std::size_t row,
                            std::size_t instance, Variant variant) {
  InstanceRecord rec;
  rec.row = row;
  rec.instance = instance;
  rec.variant = variant;
  rec.seed = instance_seed(config.master_seed, row, instance);
  const GameTree game = generate(spec_for(config.rows.at(row), rec.seed));
  const SequenceFormGame sf = build_sequence_form(game);
  rec.dim = static_cast<int>(sf.path_dimension());

  HomotopyConfig hc;
  hc.variant = variant;
  hc.kappa0 = config.kappa0;
  hc.gamma0 = random_interior_plan(sf, rec.seed);
  hc.alpha = sample_alpha(rec.seed, config.alpha_bound, sf.num_actions());
  try {
    const SolveResult res = solve(sf, hc, config.tracer);
    rec.converged = res.converged();
    rec.termination = termination_name(res.termination);
    rec.steps = res.steps;
    rec.corrector_iterations = res.trace.corrector_iterations;
    rec.seconds = res.seconds;
    rec.gap = res.gap.max;
    rec.final_t = res.final_t;
  } catch (const std::exception&) {
    rec.converged = false;
    rec.termination = termination_name(Termination::kNumericalFailure);
  }
  return rec;
}

BenchReport run_bench(
    const BenchConfig& config,
    const std::function<void(const InstanceRecord&)>& progress) {
  config.validate();
  struct Task {
    std::size_t row, instance;
    Variant variant;
  };
  std::vector<Task> tasks;
  for (std::size_t r = 0; r < config.rows.size(); ++r) {
    for (Variant v : config.variants) {
      for (std::size_t k = 0; k < config.instances; ++k) {
        tasks.push_back({r, k, v});
      }
    }
  }
  std::vector<InstanceRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      records[k] = run_instance(config, tasks[k].row, tasks[k].instance,
                                tasks[k].variant);
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        progress(records[k]);
      }
    }
  };
  std::size_t threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, tasks.size());
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  auto variant_pos = [&](Variant v) {
    return std::find(config.variants.begin(), config.variants.end(), v) -
           config.variants.begin();
  };
  std::sort(records.begin(), records.end(),
            [&](const InstanceRecord& a, const InstanceRecord& b) {
              return std::make_tuple(a.row, variant_pos(a.variant), a.seed) <
                     std::make_tuple(b.row, variant_pos(b.variant), b.seed);
            });
  BenchReport report;
  report.config = config;
  report.cells = summarize(config, records);
  report.records = std::move(records);
  return report;
}

Json BenchReport::to_json() const {
  Json cells_json = Json::array();
  for (const CellSummary& c : cells) {
    cells_json.push_back(Json{{"type", c.row.game_type},
                              {"n", c.row.n},
                              {"L", c.row.depth},
                              {"A", c.row.actions},
                              {"dim", c.dim},
                              {"variant", variant_name(c.variant)},
                              {"instances", c.instances},
                              {"failures", c.failures},
                              {"failure_rate", c.failure_rate},
                              {"steps", stats_json(c.steps)},
                              {"seconds", stats_json(c.seconds)}});
  }
  Json recs = Json::array();
  for (const InstanceRecord& r : records) {
    recs.push_back(Json{{"row", r.row},
                        {"instance", r.instance},
                        {"variant", variant_name(r.variant)},
                        {"seed", r.seed},
                        {"dim", r.dim},
                        {"converged", r.converged},
                        {"termination", r.termination},
                        {"steps", r.steps},
                        {"corrector_iterations", r.corrector_iterations},
                        {"seconds", r.seconds},
                        {"gap", r.gap},
                        {"final_t", r.final_t}});
  }
  return Json{{"config", config.to_json()},
              {"cells", std::move(cells_json)},
              {"records", std::move(recs)}};
}

void BenchReport::write_csv(std::ostream& out) const {
  out << "type,n,L,A,dim,variant,instances,iter_max,iter_min,iter_med,"
         "sec_max,sec_min,sec_med,failure_rate\n";
  for (const CellSummary& c : cells) {
    out << c.row.game_type << ',' << c.row.n << ',' << c.row.depth << ','
        << c.row.actions << ',' << c.dim << ',' << variant_name(c.variant)
        << ',' << c.instances << ',';
    csv_number(out, c.steps.max, c.steps.count);
    out << ',';
    csv_number(out, c.steps.min, c.steps.count);
    out << ',';
    csv_number(out, c.steps.median, c.steps.count);
    out << ',';
    csv_number(out, c.seconds.max, c.seconds.count);
    out << ',';
    csv_number(out, c.seconds.min, c.seconds.count);
    out << ',';
    csv_number(out, c.seconds.median, c.seconds.count);
    out << ',' << c.failure_rate << '\n';
  }
}

}  // namespace seqnash
