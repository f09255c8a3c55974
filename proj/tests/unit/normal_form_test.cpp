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
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "seqnash/normal_form.hpp"
#include "seqnash/sequence_form.hpp"

namespace seqnash {
namespace {

using testing::fixture_sf;

std::vector<std::string> strategy_labels(const ReducedNormalForm& nf, int i) {
  std::vector<std::string> out;
  for (const ReducedStrategy& s : nf.strategies(i)) out.push_back(s.label);
  return out;
}

TEST(ReducedNormalForm, ChanceEntryTable) {
  const ReducedNormalForm nf = build_reduced_normal_form(fixture_sf("chance_entry"));
  EXPECT_EQ(strategy_labels(nf, 0),
            (std::vector<std::string>{"{L}", "{R,S}", "{R,T}"}));
  EXPECT_EQ(strategy_labels(nf, 1),
            (std::vector<std::string>{"{a,d}", "{a,f}", "{b,d}", "{b,f}"}));
  // Rows: player 2 strategies; columns: player 1 strategies.
  const double u[4][3][2] = {{{11, 3}, {0, 2}, {6, 0}},
                             {{11, 3}, {12, 0}, {0, 1}},
                             {{3, 0}, {0, 7}, {6, 0}},
                             {{3, 0}, {12, 5}, {0, 1}}};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      EXPECT_EQ(nf.payoff({c, r}, 0), u[r][c][0]) << r << "," << c;
      EXPECT_EQ(nf.payoff({c, r}, 1), u[r][c][1]) << r << "," << c;
    }
  }
}

TEST(ReducedNormalForm, MyersonCardTable) {
  const ReducedNormalForm nf = build_reduced_normal_form(fixture_sf("myerson_card"));
  EXPECT_EQ(strategy_labels(nf, 0),
            (std::vector<std::string>{"{X1,X2}", "{X1,C2}", "{C1,X2}",
                                      "{C1,C2}"}));
  EXPECT_EQ(strategy_labels(nf, 1),
            (std::vector<std::string>{"{X3,X4}", "{X3,C4}", "{C3,X4}",
                                      "{C3,C4}"}));
  const double u[4][4][2] = {
      {{2.1, 0}, {2.1, 0}, {0.1, -0.8}, {0.1, -0.8}},
      {{3, 0}, {1.2, -0.9}, {2.8, 0.1}, {1, -0.8}},
      {{2, 0}, {1.8, 0.1}, {0.2, -0.9}, {0, -0.8}},
      {{2.9, 0}, {0.9, -0.8}, {2.9, 0}, {0.9, -0.8}}};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      // Exact decimal entries; compare after rounding away binary noise.
      EXPECT_NEAR(nf.payoff({r, c}, 0), u[r][c][0], 1e-12) << r << "," << c;
      EXPECT_NEAR(nf.payoff({r, c}, 1), u[r][c][1], 1e-12) << r << "," << c;
    }
  }
}

TEST(ReducedNormalForm, ThreePlayerTable) {
  const ReducedNormalForm nf = build_reduced_normal_form(fixture_sf("three_player"));
  EXPECT_EQ(strategy_labels(nf, 0),
            (std::vector<std::string>{"{L1}", "{M1}", "{R1,l}", "{R1,r}"}));
  EXPECT_EQ(strategy_labels(nf, 1), (std::vector<std::string>{"{L2}", "{R2}"}));
  EXPECT_EQ(strategy_labels(nf, 2), (std::vector<std::string>{"{L3}", "{R3}"}));
  // Columns: (L2,L3), (L2,R3), (R2,L3), (R2,R3).
  const double u[4][4][3] = {
      {{0, 0, 3}, {0, 0, 3}, {0, 0, 3}, {0, 0, 3}},
      {{-1, 0, 2}, {2, 0, 1}, {-1, 0, 2}, {2, 0, 1}},
      {{1, 1, -2}, {4, 4, 0}, {-1, 0, 2}, {2, 0, 1}},
      {{1, 1, -2}, {4, 4, 0}, {0, 0, 3}, {0, 0, 3}}};
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(nf.payoff({r, c / 2, c % 2}, i), u[r][c][i])
            << r << "," << c << "," << i;
      }
    }
  }
}

TEST(ReducedNormalForm, ShapeAndIndexing) {
  const ReducedNormalForm nf = build_reduced_normal_form(fixture_sf("three_player"));
  EXPECT_EQ(nf.shape(), (std::vector<std::size_t>{4, 2, 2}));
  EXPECT_EQ(nf.num_profiles(), 16u);
  for (std::size_t k = 0; k < nf.num_profiles(); ++k) {
    EXPECT_EQ(nf.flat_index(nf.unflatten(k)), k);
  }
}

TEST(ReducedNormalForm, CapIsEnforced) {
  EXPECT_ANY_THROW(build_reduced_normal_form(fixture_sf("chance_entry"), 5));
}

TEST(MixedPayoff, MatchesSequenceForm) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SequenceFormGame sf =
        build_sequence_form(testing::small_random_game(seed));
    const ReducedNormalForm nf = build_reduced_normal_form(sf);
    const MixedProfile s = testing::random_mixed(nf, seed, seed % 2 == 1);
    const std::vector<double> u = mixed_payoff(nf, s);
    const RealizationProfile g = mixed_to_realization(sf, s);
    for (int i = 0; i < sf.num_players(); ++i) {
      EXPECT_NEAR(u[i], expected_payoff(sf, i, g), 1e-10);
    }
  }
}

TEST(IsNash, ChanceEntryTypes) {
  const ReducedNormalForm nf = build_reduced_normal_form(fixture_sf("chance_entry"));
  EXPECT_TRUE(is_nash(nf, testing::entry_type_a(1.0), 1e-12).is_nash);
  EXPECT_TRUE(is_nash(nf, testing::entry_type_a(1.0 / 12.0), 1e-12).is_nash);
  EXPECT_TRUE(is_nash(nf, testing::entry_type_b(), 1e-12).is_nash);
  EXPECT_TRUE(is_nash(nf, testing::entry_type_c(), 1e-12).is_nash);
  const NashCheck bad = is_nash(nf, testing::entry_type_a(0.05), 1e-12);
  EXPECT_FALSE(bad.is_nash);
  // {R,S} earns 12 * 0.95 = 11.4 against 11.
  EXPECT_NEAR(bad.slack[0], 0.4, 1e-12);
}

TEST(IsNash, RejectsInvalidProfile) {
  const ReducedNormalForm nf = build_reduced_normal_form(fixture_sf("chance_entry"));
  EXPECT_ANY_THROW(check_mixed(nf, MixedProfile{{{0.5, 0.5, 0.5}, {1, 0, 0, 0}}}));
  EXPECT_ANY_THROW(check_mixed(nf, MixedProfile{{{1, 0}, {1, 0, 0, 0}}}));
}

TEST(Oracle, ChanceEntryFindsAllThreePayoffTypes) {
  const SequenceFormGame sf = fixture_sf("chance_entry");
  const ReducedNormalForm nf = build_reduced_normal_form(sf);
  const OracleResult r = enumerate_equilibria_small(nf);
  bool a = false, b = false, c = false;
  for (const OracleEquilibrium& eq : r.equilibria) {
    EXPECT_TRUE(is_nash(nf, eq.sigma, 1e-8).is_nash);
    EXPECT_LE(epsilon_gap(sf, mixed_to_realization(sf, eq.sigma)).max, 1e-8);
    const double u1 = eq.payoffs[0], u2 = eq.payoffs[1];
    a |= std::abs(u1 - 11) < 1e-9 && std::abs(u2 - 3) < 1e-9;
    b |= std::abs(u1 - 4) < 1e-9 && std::abs(u2 - 7.0 / 3.0) < 1e-9;
    c |= std::abs(u1 - 4) < 1e-9 && std::abs(u2 - 1.5) < 1e-9;
  }
  EXPECT_TRUE(a);
  EXPECT_TRUE(b);
  EXPECT_TRUE(c);
}

TEST(Oracle, ThreePlayerFixture) {
  const SequenceFormGame sf = fixture_sf("three_player");
  const ReducedNormalForm nf = build_reduced_normal_form(sf);
  const OracleResult r = enumerate_equilibria_small(nf);
  ASSERT_FALSE(r.equilibria.empty());
  for (const OracleEquilibrium& eq : r.equilibria) {
    EXPECT_TRUE(is_nash(nf, eq.sigma, 1e-7).is_nash);
  }
}

TEST(Oracle, MatchingPenniesHasUniqueMixedEquilibrium) {
  const SequenceFormGame sf = build_sequence_form(parse_game(R"({"players": 2,
      "infosets": [{"id": "a", "owner": 1, "actions": ["H", "T"]},
                   {"id": "b", "owner": 2, "actions": ["h", "t"]}],
      "root": {"kind": "decision", "infoset": "a", "children": {
        "H": {"kind": "decision", "infoset": "b", "children": {
          "h": {"kind": "terminal", "payoffs": [1, -1]},
          "t": {"kind": "terminal", "payoffs": [-1, 1]}}},
        "T": {"kind": "decision", "infoset": "b", "children": {
          "h": {"kind": "terminal", "payoffs": [-1, 1]},
          "t": {"kind": "terminal", "payoffs": [1, -1]}}}}}})"));
  const OracleResult r =
      enumerate_equilibria_small(build_reduced_normal_form(sf));
  ASSERT_EQ(r.equilibria.size(), 1u);
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(r.equilibria[0].sigma.probs[i][0], 0.5, 1e-12);
  }
}

TEST(TensorCsv, HeaderAndRows) {
  const ReducedNormalForm nf = build_reduced_normal_form(fixture_sf("chance_entry"));
  std::ostringstream out;
  write_tensor_csv(nf, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "s1,s2,u1,u2");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 12);
}

}  // namespace
}  // namespace seqnash
