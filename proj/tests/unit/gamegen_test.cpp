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

#include <cmath>
#include <map>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "seqnash/gamegen.hpp"
#include "seqnash/sequence_form.hpp"

namespace seqnash {
namespace {

struct DimRow {
  int type, n, depth, actions, dim;
};

// Published dimensions of the benchmark families.
const std::vector<DimRow>& dim_rows() {
  static const std::vector<DimRow> rows{
      {1, 3, 5, 2, 49},   {1, 3, 6, 2, 97},   {1, 3, 7, 2, 193},
      {1, 3, 8, 2, 385},  {1, 3, 4, 3, 57},   {1, 3, 4, 4, 111},
      {1, 3, 4, 5, 193},  {2, 4, 10, 2, 61},  {2, 4, 20, 2, 121},
      {2, 4, 30, 2, 181}, {2, 4, 40, 2, 241}, {2, 4, 10, 4, 101},
      {2, 4, 10, 6, 141}, {2, 4, 10, 8, 181}, {2, 4, 10, 10, 221}};
  return rows;
}

GenSpec spec_of(const DimRow& r, std::uint64_t seed) {
  GenSpec s;
  s.game_type = r.type;
  s.n = r.n;
  s.depth = r.depth;
  s.actions = r.actions;
  s.seed = seed;
  return s;
}

TEST(Generate, DimensionsMatchBenchmarkTables) {
  for (const DimRow& r : dim_rows()) {
    for (std::uint64_t seed : {1u, 2u}) {
      const SequenceFormGame sf = build_sequence_form(generate(spec_of(r, seed)));
      EXPECT_EQ(static_cast<int>(sf.path_dimension()), r.dim)
          << "type " << r.type << " (" << r.n << "," << r.depth << ","
          << r.actions << ")";
    }
  }
}

TEST(Generate, Type1Structure) {
  const GameTree g = generate(spec_of({1, 3, 5, 2, 0}, 4));
  EXPECT_EQ(g.num_terminals(), 32u);
  for (const Node& n : g.nodes()) {
    if (n.kind == NodeKind::kTerminal) {
      EXPECT_EQ(n.depth, 5);
      continue;
    }
    EXPECT_EQ(n.kind, NodeKind::kDecision);
    EXPECT_EQ(n.owner, n.depth % 3);
  }
  // Two histories share a set iff they differ only in the last action.
  for (const InformationSet& s : g.infosets()) {
    for (NodeId m : s.members) {
      EXPECT_EQ(g.node(m).parent, g.node(s.members.front()).parent);
    }
  }
}

TEST(Generate, Type2Structure) {
  const GenSpec spec = spec_of({2, 4, 10, 3, 0}, 8);
  const GameTree g = generate(spec);
  const Node& root = g.node(g.root());
  ASSERT_EQ(root.kind, NodeKind::kChance);
  ASSERT_EQ(root.chance_probs.size(), 3u);
  for (double p : root.chance_probs) EXPECT_NEAR(p, 1.0 / 3.0, 1e-15);
  for (const InformationSet& s : g.infosets()) {
    if (s.owner == kChance) continue;
    // 1-based odd players see each node separately; the others see one set
    // per position spanning the three chains.
    if (s.owner % 2 == 0) {
      EXPECT_EQ(s.members.size(), 1u) << s.label;
    } else {
      EXPECT_EQ(s.members.size(), 3u) << s.label;
    }
    for (NodeId m : s.members) {
      EXPECT_EQ(g.node(m).owner, (g.node(m).depth - 1) % spec.n);
    }
  }
}

TEST(Generate, PayoffsAreIntegersInRange) {
  for (int type : {1, 2}) {
    GenSpec s;
    s.game_type = type;
    s.n = type == 1 ? 3 : 4;
    s.depth = type == 1 ? 5 : 10;
    s.seed = 3;
    const GameTree g = generate(s);
    std::map<double, int> seen;
    for (NodeId z : g.terminals()) {
      for (double u : g.node(z).payoffs) {
        EXPECT_EQ(u, std::round(u));
        EXPECT_GE(u, -10.0);
        EXPECT_LE(u, 10.0);
        ++seen[u];
      }
    }
    EXPECT_GT(seen.size(), 10u);
  }
}

TEST(Generate, Deterministic) {
  const GenSpec a = spec_of({2, 4, 10, 2, 0}, 5);
  EXPECT_TRUE(structurally_equal(generate(a), generate(a)));
  EXPECT_FALSE(structurally_equal(generate(a), generate(spec_of({2, 4, 10, 2, 0}, 6))));
}

TEST(Generate, PerfectRecallForAllSeeds) {
  for (const DimRow& r : dim_rows()) {
    if (r.dim > 150) continue;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      EXPECT_FALSE(validate_perfect_recall(generate(spec_of(r, seed))).has_value());
    }
  }
}

TEST(Generate, InvalidParameters) {
  GenSpec s;
  s.game_type = 3;
  EXPECT_THROW(generate(s), GameError);
  s = GenSpec{};
  s.n = 1;
  EXPECT_THROW(generate(s), GameError);
  s = GenSpec{};
  s.actions = 1;
  EXPECT_THROW(generate(s), GameError);
  s = GenSpec{};
  s.depth = 2;
  EXPECT_THROW(generate(s), GameError);
  s = GenSpec{};
  s.depth = 40;
  EXPECT_THROW(generate(s), GameError);
}

}  // namespace
}  // namespace seqnash
