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

#include "seqnash/homotopy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "seqnash/rng.hpp"

namespace seqnash {

std::string variant_name(Variant v) {
  return v == Variant::kLgne ? "lgne" : "lbne";
}

Variant parse_variant(const std::string& text) {
  std::string lower = text;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "lgne") return Variant::kLgne;
  if (lower == "lbne") return Variant::kLbne;
  throw DomainError("unknown variant '" + text + "' (expected lgne or lbne)");
}

PsiValues psi(double v, double r, double tau0, double kappa0) {
  if (!(r >= 0.0)) throw DomainError("psi: r must be nonnegative");
  if (!(tau0 > 0.0)) throw DomainError("psi: tau0 must be positive");
  if (!(kappa0 > 2.0)) throw DomainError("psi: kappa0 must exceed 2");
  PsiValues out;
  const double tr = tau0 * r;
  const double s = std::sqrt(v * v + 4.0 * tr);
  if (s == 0.0) return out;
  // The root on the side of v is computed directly, the other from the
  // product b1 * b2 = tau0 * r, which avoids cancellation.
  double b1;
  double b2;
  if (v >= 0.0) {
    b1 = 0.5 * (v + s);
    b2 = tr / b1;
  } else {
    b2 = 0.5 * (s - v);
    b1 = tr / b2;
  }
  out.psi1 = std::pow(b1, kappa0);
  out.psi2 = std::pow(b2, kappa0);
  out.dpsi1_dv = kappa0 * out.psi1 / s;
  out.dpsi2_dv = -kappa0 * out.psi2 / s;
  out.dpsi1_dr = kappa0 * std::pow(b1, kappa0 - 1.0) * tau0 / s;
  out.dpsi2_dr = kappa0 * std::pow(b2, kappa0 - 1.0) * tau0 / s;
  return out;
}

std::vector<double> sample_alpha(std::uint64_t seed, double bound,
                                 std::size_t n) {
  if (bound < 0.0) throw DomainError("alpha bound must be nonnegative");
  std::vector<double> alpha(n, 0.0);
  if (bound == 0.0) return alpha;
  Rng rng(seed, Stream::kAlpha);
  for (double& a : alpha) a = rng.uniform(-bound, bound);
  return alpha;
}

Eigen::VectorXd HomotopyPoint::stacked() const {
  Eigen::VectorXd y(x.size() + nu.size() + 1);
  y << x, nu, t;
  return y;
}

HomotopyPoint HomotopyPoint::from_stacked(const Eigen::VectorXd& y,
                                          std::size_t num_x) {
  HomotopyPoint p;
  const Eigen::Index nx = static_cast<Eigen::Index>(num_x);
  p.x = y.head(nx);
  p.nu = y.segment(nx, y.size() - nx - 1);
  p.t = y(y.size() - 1);
  return p;
}

HomotopySystem::HomotopySystem(const SequenceFormGame& sf,
                               HomotopyConfig config)
    : sf_(&sf), config_(std::move(config)) {
  if (!(config_.kappa0 > 2.0)) {
    throw DomainError("kappa0 must exceed 2");
  }
  if (config_.gamma0.plans.empty()) config_.gamma0 = uniform_plan(sf);
  check_dimensions(sf, config_.gamma0);
  for (const auto& plan : config_.gamma0.plans) {
    for (double g : plan) {
      if (!(g > 0.0)) throw DomainError("gamma0 must be strictly positive");
    }
  }
  if (flow_violation(sf, config_.gamma0) > 1e-9) {
    throw DomainError("gamma0 violates the flow constraints");
  }
  if (config_.alpha.empty()) config_.alpha.assign(sf.num_actions(), 0.0);
  if (config_.alpha.size() != sf.num_actions()) {
    throw DomainError("alpha has " + std::to_string(config_.alpha.size()) +
                      " entries, expected " +
                      std::to_string(sf.num_actions()));
  }

  const bool lbne = config_.variant == Variant::kLbne;
  for (int i = 0; i < sf.num_players(); ++i) {
    const PlayerSequences& seqs = sf.player(i);
    for (std::size_t k = 1; k < seqs.size(); ++k) {
      const Sequence& s = seqs.sequences[k];
      Coordinate c;
      c.player = i;
      c.seq = static_cast<int>(k);
      c.nu = sf.infoset_index(i, s.infoset);
      for (int j : s.child_infosets) {
        c.children.push_back(sf.infoset_index(i, j));
      }
      c.in_d = s.child_infosets.empty();
      c.substituted = lbne || c.in_d;
      c.gamma0 = config_.gamma0.plans[i][k];
      c.tau0 = std::pow(c.gamma0, 1.0 / config_.kappa0);
      if (lbne) {
        c.lambda_coeff = 1.0 - static_cast<double>(s.child_infosets.size());
      } else {
        c.lambda_coeff = c.in_d ? 1.0 : 0.0;
      }
      c.alpha = config_.alpha[coords_.size()];
      coords_.push_back(std::move(c));
    }
    for (const SequenceInfoset& set : seqs.infosets) {
      FlowRow row;
      row.parent = set.parent_sequence == 0
                       ? -1
                       : sf.coordinate(i, set.parent_sequence);
      for (int a = 0; a < set.num_actions; ++a) {
        row.children.push_back(sf.coordinate(i, set.first_sequence + a));
      }
      flows_.push_back(std::move(row));
    }
  }
}

HomotopyPoint HomotopySystem::start_point() const {
  HomotopyPoint p;
  p.t = 1.0;
  p.x.resize(static_cast<Eigen::Index>(num_x()));
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    const Coordinate& c = coords_[k];
    p.x(k) = c.substituted ? c.tau0 - 1.0 : c.gamma0;
  }
  const double nu0 = config_.variant == Variant::kLgne ? 0.0 : 1.0;
  p.nu = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(num_nu()), nu0);
  return p;
}

RecoveredPrimalDual HomotopySystem::recover(const HomotopyPoint& p) const {
  return recover(p.stacked());
}

RecoveredPrimalDual HomotopySystem::recover(const Eigen::VectorXd& y) const {
  const double t = y(y.size() - 1);
  if (!(t >= 0.0)) throw DomainError("homotopy parameter t is negative");
  const double r = std::pow(t, 1.0 / config_.kappa0);
  RecoveredPrimalDual out;
  out.lambda = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(num_x()));
  for (int i = 0; i < sf_->num_players(); ++i) {
    out.gamma.plans.emplace_back(sf_->player(i).size(), 1.0);
  }
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    const Coordinate& c = coords_[k];
    out.substituted.push_back(c.substituted);
    if (c.substituted) {
      const PsiValues v = psi(y(k), r, c.tau0, config_.kappa0);
      out.gamma.plans[c.player][c.seq] = v.psi1;
      out.lambda(k) = v.psi2;
    } else {
      out.gamma.plans[c.player][c.seq] = y(k);
    }
  }
  return out;
}

RealizationProfile HomotopySystem::realization(const Eigen::VectorXd& y) const {
  return recover(y).gamma;
}

Eigen::VectorXd HomotopySystem::residual(const Eigen::VectorXd& y) const {
  Eigen::VectorXd r;
  evaluate(y, &r, nullptr);
  return r;
}

Eigen::MatrixXd HomotopySystem::jacobian(const Eigen::VectorXd& y) const {
  Eigen::MatrixXd j;
  evaluate(y, nullptr, &j);
  return j;
}

void HomotopySystem::evaluate(const Eigen::VectorXd& y,
                              Eigen::VectorXd* residual,
                              Eigen::MatrixXd* jacobian) const {
  const Eigen::Index nx = static_cast<Eigen::Index>(num_x());
  const Eigen::Index nn = static_cast<Eigen::Index>(num_nu());
  const Eigen::Index rows = nx + nn;
  if (y.size() != rows + 1) {
    throw DomainError("homotopy point has " + std::to_string(y.size()) +
                      " entries, expected " + std::to_string(rows + 1));
  }
  const double t = y(rows);
  if (!(t > 0.0) && !(t == 0.0)) {
    throw DomainError("homotopy parameter t is negative");
  }
  const double kappa = config_.kappa0;
  const double r = std::pow(t, 1.0 / kappa);
  const double dr_dt = t > 0.0 ? r / (kappa * t) : 0.0;
  const bool lgne = config_.variant == Variant::kLgne;

  // Primal-dual values and their derivatives per coordinate.
  Eigen::VectorXd gamma(nx), lambda = Eigen::VectorXd::Zero(nx);
  Eigen::VectorXd dgamma_dx(nx), dgamma_dt = Eigen::VectorXd::Zero(nx);
  Eigen::VectorXd dlambda_dx = Eigen::VectorXd::Zero(nx);
  Eigen::VectorXd dlambda_dt = Eigen::VectorXd::Zero(nx);
  for (Eigen::Index k = 0; k < nx; ++k) {
    const Coordinate& c = coords_[k];
    if (c.substituted) {
      const PsiValues v = psi(y(k), r, c.tau0, kappa);
      gamma(k) = v.psi1;
      lambda(k) = v.psi2;
      dgamma_dx(k) = v.dpsi1_dv;
      dlambda_dx(k) = v.dpsi2_dv;
      dgamma_dt(k) = v.dpsi1_dr * dr_dt;
      dlambda_dt(k) = v.dpsi2_dr * dr_dt;
    } else {
      gamma(k) = y(k);
      dgamma_dx(k) = 1.0;
    }
  }

  // Payoff rows P_k = g^i(w_k, gamma^{-i}) and, if requested, dP/dgamma.
  const int n = sf_->num_players();
  Eigen::VectorXd payoff = Eigen::VectorXd::Zero(nx);
  if (jacobian) jacobian->setZero(rows, rows + 1);
  std::vector<double> g(n);
  std::vector<int> col(n);
  for (const PayoffEntry& e : sf_->payoff_table()) {
    for (int q = 0; q < n; ++q) {
      const int s = e.sequences[q];
      col[q] = s == 0 ? -1 : sf_->coordinate(q, s);
      g[q] = s == 0 ? 1.0 : gamma(col[q]);
    }
    for (int i = 0; i < n; ++i) {
      if (col[i] < 0) continue;
      const double u = e.chance_weight * e.payoffs[i];
      if (u == 0.0) continue;
      double prod = u;
      for (int q = 0; q < n; ++q) {
        if (q != i) prod *= g[q];
      }
      payoff(col[i]) += prod;
      if (!jacobian) continue;
      for (int q = 0; q < n; ++q) {
        if (q == i || col[q] < 0) continue;
        double d = u;
        for (int p = 0; p < n; ++p) {
          if (p != i && p != q) d *= g[p];
        }
        (*jacobian)(col[i], col[q]) += (1.0 - t) * d * dgamma_dx(col[q]);
        (*jacobian)(col[i], rows) += (1.0 - t) * d * dgamma_dt(col[q]);
      }
    }
  }

  if (residual) residual->resize(rows);
  for (Eigen::Index k = 0; k < nx; ++k) {
    const Coordinate& c = coords_[k];
    const bool minus_t = lgne && c.in_d;
    if (residual) {
      double zeta = 0.0;
      for (int j : c.children) zeta += y(nx + j);
      (*residual)(k) = (1.0 - t) * payoff(k) + c.lambda_coeff * lambda(k) -
                       (minus_t ? t : 0.0) - y(nx + c.nu) + zeta -
                       t * (1.0 - t) * c.alpha;
    }
    if (jacobian) {
      Eigen::MatrixXd& jac = *jacobian;
      jac(k, k) += c.lambda_coeff * dlambda_dx(k);
      jac(k, nx + c.nu) -= 1.0;
      for (int j : c.children) jac(k, nx + j) += 1.0;
      jac(k, rows) += -payoff(k) + c.lambda_coeff * dlambda_dt(k) -
                      (minus_t ? 1.0 : 0.0) - (1.0 - 2.0 * t) * c.alpha;
    }
  }
  for (Eigen::Index j = 0; j < nn; ++j) {
    const FlowRow& f = flows_[j];
    const Eigen::Index row = nx + j;
    if (residual) {
      double sum = f.parent < 0 ? -1.0 : -gamma(f.parent);
      for (int c : f.children) sum += gamma(c);
      (*residual)(row) = sum;
    }
    if (jacobian) {
      Eigen::MatrixXd& jac = *jacobian;
      for (int c : f.children) {
        jac(row, c) += dgamma_dx(c);
        jac(row, rows) += dgamma_dt(c);
      }
      if (f.parent >= 0) {
        jac(row, f.parent) -= dgamma_dx(f.parent);
        jac(row, rows) -= dgamma_dt(f.parent);
      }
    }
  }
}

}  // namespace seqnash
