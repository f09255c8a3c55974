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
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "seqnash/homotopy.hpp"
#include "seqnash/rng.hpp"
#include "seqnash/tracer.hpp"

namespace seqnash {
namespace {

using testing::fixture_sf;

HomotopyConfig config_for(const SequenceFormGame& sf, Variant v,
                          std::uint64_t seed) {
  HomotopyConfig c;
  c.variant = v;
  c.gamma0 = random_interior_plan(sf, seed);
  c.alpha = sample_alpha(seed, 0.01, sf.num_actions());
  return c;
}

TEST(Psi, ProductIdentity) {
  Rng rng(11);
  for (int k = 0; k < 10000; ++k) {
    const double v = rng.uniform(-5.0, 5.0);
    double r = rng.uniform(0.0, 2.0);
    if (k % 10 == 0) r = 0.0;
    if (k % 10 == 1) r = 1e-12;
    const double tau = rng.uniform(0.05, 1.5);
    const double kappa = rng.uniform(2.1, 5.0);
    const PsiValues p = psi(v, r, tau, kappa);
    const double want = std::pow(tau * r, kappa);
    const double got = p.psi1 * p.psi2;
    if (want == 0.0) {
      EXPECT_EQ(got, 0.0);
    } else {
      EXPECT_LE(std::abs(got - want), 1e-12 * want) << v << " " << r;
    }
    EXPECT_GE(p.psi1, 0.0);
    EXPECT_GE(p.psi2, 0.0);
  }
}

TEST(Psi, LimitsAtZeroR) {
  // r = 0 selects max(v, 0)^k and max(-v, 0)^k.
  EXPECT_DOUBLE_EQ(psi(2.0, 0.0, 1.0, 3.0).psi1, 8.0);
  EXPECT_DOUBLE_EQ(psi(2.0, 0.0, 1.0, 3.0).psi2, 0.0);
  EXPECT_DOUBLE_EQ(psi(-2.0, 0.0, 1.0, 3.0).psi1, 0.0);
  EXPECT_DOUBLE_EQ(psi(-2.0, 0.0, 1.0, 3.0).psi2, 8.0);
  const PsiValues z = psi(0.0, 0.0, 1.0, 3.0);
  EXPECT_EQ(z.psi1, 0.0);
  EXPECT_EQ(z.psi2, 0.0);
}

TEST(Psi, DerivativesMatchDifferences) {
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    const double v = rng.uniform(-2.0, 2.0);
    const double r = rng.uniform(0.1, 1.0);
    const double tau = rng.uniform(0.2, 1.0);
    const double h = 1e-6;
    const PsiValues p = psi(v, r, tau, 3.0);
    const PsiValues vp = psi(v + h, r, tau, 3.0), vm = psi(v - h, r, tau, 3.0);
    const PsiValues rp = psi(v, r + h, tau, 3.0), rm = psi(v, r - h, tau, 3.0);
    EXPECT_NEAR(p.dpsi1_dv, (vp.psi1 - vm.psi1) / (2 * h), 1e-6);
    EXPECT_NEAR(p.dpsi2_dv, (vp.psi2 - vm.psi2) / (2 * h), 1e-6);
    EXPECT_NEAR(p.dpsi1_dr, (rp.psi1 - rm.psi1) / (2 * h), 1e-6);
    EXPECT_NEAR(p.dpsi2_dr, (rp.psi2 - rm.psi2) / (2 * h), 1e-6);
  }
}

TEST(Psi, DomainErrors) {
  EXPECT_THROW(psi(0.0, -1e-3, 1.0, 3.0), DomainError);
  EXPECT_THROW(psi(0.0, 1.0, 0.0, 3.0), DomainError);
  EXPECT_THROW(psi(0.0, 1.0, 1.0, 2.0), DomainError);
}

TEST(Variant, Parse) {
  EXPECT_EQ(parse_variant("lgne"), Variant::kLgne);
  EXPECT_EQ(parse_variant("LBNE"), Variant::kLbne);
  EXPECT_THROW(parse_variant("other"), DomainError);
  EXPECT_EQ(variant_name(Variant::kLbne), "lbne");
}

TEST(HomotopySystem, Dimensions) {
  const SequenceFormGame sf = fixture_sf("chance_entry");
  const HomotopySystem s(sf, HomotopyConfig{});
  EXPECT_EQ(s.num_x(), 8u);
  EXPECT_EQ(s.num_nu(), 4u);
  EXPECT_EQ(s.num_unknowns(), sf.path_dimension());
  EXPECT_EQ(s.jacobian(s.start_point()).rows(), 12);
  EXPECT_EQ(s.jacobian(s.start_point()).cols(), 13);
}

TEST(HomotopySystem, SubstitutedCoordinates) {
  const SequenceFormGame sf = fixture_sf("chance_entry");
  HomotopyConfig c;
  c.variant = Variant::kLgne;
  const HomotopySystem lg(sf, c);
  c.variant = Variant::kLbne;
  const HomotopySystem lb(sf, c);
  for (int i = 0; i < 2; ++i) {
    for (std::size_t w = 1; w < sf.player(i).size(); ++w) {
      const auto k = static_cast<std::size_t>(sf.coordinate(i, static_cast<int>(w)));
      EXPECT_EQ(lg.substituted(k), sf.player(i).in_d(static_cast<int>(w)));
      EXPECT_TRUE(lb.substituted(k));
    }
  }
}

TEST(HomotopySystem, ConfigValidation) {
  const SequenceFormGame sf = fixture_sf("chance_entry");
  HomotopyConfig c;
  c.kappa0 = 2.0;
  EXPECT_THROW(HomotopySystem(sf, c), DomainError);
  c = HomotopyConfig{};
  c.gamma0 = mixed_to_realization(sf, testing::entry_type_b());
  EXPECT_THROW(HomotopySystem(sf, c), DomainError);
  c = HomotopyConfig{};
  c.gamma0 = uniform_plan(sf);
  c.gamma0.plans[0][1] = 0.9;
  EXPECT_THROW(HomotopySystem(sf, c), DomainError);
  c = HomotopyConfig{};
  c.alpha = {0.1};
  EXPECT_THROW(HomotopySystem(sf, c), DomainError);
}

TEST(HomotopySystem, StartPointSolvesSystem) {
  for (const std::string& name : testing::fixture_names()) {
    const SequenceFormGame sf = fixture_sf(name);
    for (Variant v : {Variant::kLgne, Variant::kLbne}) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const HomotopySystem s(sf, config_for(sf, v, seed));
        const HomotopyPoint p = s.start_point();
        EXPECT_DOUBLE_EQ(p.t, 1.0);
        EXPECT_LE(s.residual(p).lpNorm<Eigen::Infinity>(), 1e-10)
            << name << " " << variant_name(v);
        // The start point realizes gamma0.
        const RealizationProfile g = s.recover(p).gamma;
        const HomotopyConfig& c = s.config();
        for (int i = 0; i < sf.num_players(); ++i) {
          for (std::size_t w = 0; w < g.plans[i].size(); ++w) {
            EXPECT_NEAR(g.plans[i][w], c.gamma0.plans[i][w], 1e-12);
          }
        }
      }
    }
  }
}

TEST(HomotopySystem, ComplementarityHoldsIdentically) {
  Rng rng(3);
  int points = 0;
  for (std::uint64_t seed = 0; points < 1000; ++seed) {
    const SequenceFormGame sf =
        build_sequence_form(testing::small_random_game(seed));
    for (Variant v : {Variant::kLgne, Variant::kLbne}) {
      const HomotopySystem s(sf, config_for(sf, v, seed));
      for (int k = 0; k < 50; ++k, ++points) {
        const Eigen::VectorXd y = testing::random_point(s, rng);
        const double t = y(y.size() - 1);
        const RecoveredPrimalDual pd = s.recover(y);
        for (std::size_t c = 0; c < s.num_x(); ++c) {
          if (!pd.substituted[c]) continue;
          int player = 0;
          while (player + 1 < sf.num_players() &&
                 static_cast<int>(c) >= sf.action_offset(player + 1)) {
            ++player;
          }
          const int w = static_cast<int>(c) - sf.action_offset(player) + 1;
          const double want = t * s.config().gamma0.plans[player][w];
          const double got =
              pd.gamma.plans[player][w] * pd.lambda(static_cast<Eigen::Index>(c));
          EXPECT_LE(std::abs(got - want), 1e-12 * want);
        }
      }
    }
  }
}

TEST(HomotopySystem, JacobianMatchesFiniteDifferences) {
  Rng rng(17);
  int triples = 0;
  for (std::uint64_t seed = 0; triples < 100; ++seed) {
    const SequenceFormGame sf =
        seed % 4 == 3 ? fixture_sf(testing::fixture_names()[seed % 3])
                      : build_sequence_form(testing::small_random_game(seed));
    const Variant v = seed % 2 == 0 ? Variant::kLgne : Variant::kLbne;
    const HomotopySystem s(sf, config_for(sf, v, seed));
    const Eigen::VectorXd y = testing::random_point(s, rng);
    const Eigen::MatrixXd a = s.jacobian(y);
    const Eigen::MatrixXd f = testing::fd_jacobian(s, y, 1e-6);
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    EXPECT_LE((a - f).cwiseAbs().maxCoeff() / scale, 1e-6) << "seed " << seed;
    ++triples;
  }
}

TEST(HomotopySystem, EvaluateAgreesWithSeparateCalls) {
  const SequenceFormGame sf = fixture_sf("three_player");
  const HomotopySystem s(sf, config_for(sf, Variant::kLbne, 2));
  Rng rng(2);
  const Eigen::VectorXd y = testing::random_point(s, rng);
  Eigen::VectorXd r;
  Eigen::MatrixXd j;
  s.evaluate(y, &r, &j);
  EXPECT_EQ((r - s.residual(y)).norm(), 0.0);
  EXPECT_EQ((j - s.jacobian(y)).norm(), 0.0);
}

TEST(HomotopySystem, FullRankAtStart) {
  for (const std::string& name : testing::fixture_names()) {
    const SequenceFormGame sf = fixture_sf(name);
    for (Variant v : {Variant::kLgne, Variant::kLbne}) {
      const HomotopySystem s(sf, config_for(sf, v, 1));
      const RankInfo info = numerical_rank(s.jacobian(s.start_point()));
      EXPECT_EQ(info.rank, info.rows) << name;
    }
  }
}

TEST(HomotopyPoint, StackRoundTrip) {
  HomotopyPoint p;
  p.x = Eigen::VectorXd::LinSpaced(4, 0.1, 0.4);
  p.nu = Eigen::VectorXd::LinSpaced(2, -1.0, 1.0);
  p.t = 0.3;
  const HomotopyPoint q = HomotopyPoint::from_stacked(p.stacked(), 4);
  EXPECT_EQ(q.x, p.x);
  EXPECT_EQ(q.nu, p.nu);
  EXPECT_EQ(q.t, p.t);
}

TEST(SampleAlpha, ReproducibleAndBounded) {
  const std::vector<double> a = sample_alpha(9, 0.01, 50);
  EXPECT_EQ(a, sample_alpha(9, 0.01, 50));
  EXPECT_NE(a, sample_alpha(10, 0.01, 50));
  for (double v : a) EXPECT_LE(std::abs(v), 0.01);
  for (double v : sample_alpha(9, 0.0, 5)) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(sample_alpha(9, -1.0, 5), DomainError);
}

}  // namespace
}  // namespace seqnash
