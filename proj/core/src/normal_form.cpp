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

#include "seqnash/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <Eigen/Dense>

#include "seqnash/rng.hpp"

namespace seqnash {

std::size_t ReducedNormalForm::flat_index(
    const std::vector<std::size_t>& profile) const {
  if (profile.size() != shape_.size()) {
    throw DomainError("pure profile has the wrong number of players");
  }
  std::size_t flat = 0;
  for (std::size_t i = 0; i < shape_.size(); ++i) {
    if (profile[i] >= shape_[i]) throw DomainError("strategy out of range");
    flat = flat * shape_[i] + profile[i];
  }
  return flat;
}

std::vector<std::size_t> ReducedNormalForm::unflatten(std::size_t flat) const {
  std::vector<std::size_t> profile(shape_.size());
  for (std::size_t i = shape_.size(); i-- > 0;) {
    profile[i] = flat % shape_[i];
    flat /= shape_[i];
  }
  return profile;
}

ReducedNormalForm build_reduced_normal_form(const SequenceFormGame& sf,
                                            std::size_t cap) {
  ReducedNormalForm nf;
  const int n = sf.num_players();
  std::size_t profiles = 1;
  for (int i = 0; i < n; ++i) {
    nf.strategies_.push_back(reduced_strategies(sf, i, cap));
    const std::size_t size = nf.strategies_.back().size();
    nf.shape_.push_back(size);
    if (profiles > cap / size) {
      throw DomainError("reduced normal form exceeds " + std::to_string(cap) +
                        " pure profiles");
    }
    profiles *= size;
  }
  nf.num_profiles_ = profiles;
  nf.tensor_.assign(profiles * n, 0.0);

  // Strategy lists consistent with each sequence, per player.
  std::vector<std::vector<std::vector<std::size_t>>> playing(n);
  for (int i = 0; i < n; ++i) {
    playing[i].resize(sf.player(i).size());
    for (std::size_t s = 0; s < nf.strategies_[i].size(); ++s) {
      const auto& plays = nf.strategies_[i][s].plays;
      for (std::size_t k = 0; k < plays.size(); ++k) {
        if (plays[k]) playing[i][k].push_back(s);
      }
    }
  }

  std::vector<std::size_t> counter(n);
  for (const PayoffEntry& e : sf.payoff_table()) {
    std::vector<const std::vector<std::size_t>*> lists(n);
    bool empty = false;
    for (int i = 0; i < n; ++i) {
      lists[i] = &playing[i][e.sequences[i]];
      empty = empty || lists[i]->empty();
    }
    if (empty) continue;
    std::fill(counter.begin(), counter.end(), 0);
    while (true) {
      std::size_t flat = 0;
      for (int i = 0; i < n; ++i) {
        flat = flat * nf.shape_[i] + (*lists[i])[counter[i]];
      }
      for (int i = 0; i < n; ++i) {
        nf.tensor_[flat * n + i] += e.chance_weight * e.payoffs[i];
      }
      int i = n - 1;
      while (i >= 0 && ++counter[i] == lists[i]->size()) counter[i--] = 0;
      if (i < 0) break;
    }
  }
  return nf;
}

ReducedNormalForm build_reduced_normal_form(const GameTree& game,
                                            std::size_t cap) {
  return build_reduced_normal_form(build_sequence_form(game), cap);
}

void check_mixed(const ReducedNormalForm& nf, const MixedProfile& sigma) {
  if (static_cast<int>(sigma.probs.size()) != nf.num_players()) {
    throw DomainError("mixed profile has the wrong number of players");
  }
  for (int i = 0; i < nf.num_players(); ++i) {
    if (sigma.probs[i].size() != nf.shape()[i]) {
      throw DomainError("mixed strategy of player " + std::to_string(i + 1) +
                        " has " + std::to_string(sigma.probs[i].size()) +
                        " entries, expected " +
                        std::to_string(nf.shape()[i]));
    }
    double sum = 0.0;
    for (double p : sigma.probs[i]) {
      if (!(p >= 0.0)) {
        throw DomainError("mixed strategy of player " + std::to_string(i + 1) +
                          " has a negative or non-finite entry");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw DomainError("mixed strategy of player " + std::to_string(i + 1) +
                        " sums to " + std::to_string(sum));
    }
  }
}

namespace {

// Calls f(flat, profile, weight) for every profile with positive weight,
// where weight is the product of sigma over all players except `skip`.
template <typename F>
void for_each_profile(const ReducedNormalForm& nf, const MixedProfile& sigma,
                      int skip, F&& f) {
  const int n = nf.num_players();
  std::vector<std::size_t> profile(n, 0);
  for (std::size_t flat = 0; flat < nf.num_profiles(); ++flat) {
    double w = 1.0;
    for (int i = 0; i < n && w != 0.0; ++i) {
      if (i != skip) w *= sigma.probs[i][profile[i]];
    }
    if (w != 0.0) f(flat, profile, w);
    int i = n - 1;
    while (i >= 0 && ++profile[i] == nf.shape()[i]) profile[i--] = 0;
  }
}

// No validation; the oracle evaluates off the simplex while solving.
std::vector<double> raw_deviation_payoffs(const ReducedNormalForm& nf,
                                          const MixedProfile& sigma,
                                          int player) {
  std::vector<double> out(nf.shape().at(player), 0.0);
  for_each_profile(nf, sigma, player,
                   [&](std::size_t flat, const auto& profile, double w) {
                     out[profile[player]] += w * nf.payoff(flat, player);
                   });
  return out;
}

}  // namespace

std::vector<double> mixed_payoff(const ReducedNormalForm& nf,
                                 const MixedProfile& sigma) {
  check_mixed(nf, sigma);
  const int n = nf.num_players();
  std::vector<double> out(n, 0.0);
  for_each_profile(nf, sigma, -1,
                   [&](std::size_t flat, const auto&, double w) {
                     for (int i = 0; i < n; ++i) {
                       out[i] += w * nf.payoff(flat, i);
                     }
                   });
  return out;
}

std::vector<double> deviation_payoffs(const ReducedNormalForm& nf,
                                      const MixedProfile& sigma, int player) {
  check_mixed(nf, sigma);
  return raw_deviation_payoffs(nf, sigma, player);
}

NashCheck is_nash(const ReducedNormalForm& nf, const MixedProfile& sigma,
                  double eps) {
  NashCheck check;
  for (int i = 0; i < nf.num_players(); ++i) {
    const std::vector<double> dev = deviation_payoffs(nf, sigma, i);
    double value = 0.0;
    for (std::size_t s = 0; s < dev.size(); ++s) {
      value += sigma.probs[i][s] * dev[s];
    }
    const double best = *std::max_element(dev.begin(), dev.end());
    check.slack.push_back(best - value);
  }
  check.max_slack = check.slack.empty()
                        ? 0.0
                        : *std::max_element(check.slack.begin(),
                                            check.slack.end());
  check.is_nash = check.max_slack <= eps;
  return check;
}

namespace {

bool same_profile(const MixedProfile& a, const MixedProfile& b, double tol) {
  for (std::size_t i = 0; i < a.probs.size(); ++i) {
    for (std::size_t s = 0; s < a.probs[i].size(); ++s) {
      if (std::abs(a.probs[i][s] - b.probs[i][s]) > tol) return false;
    }
  }
  return true;
}

void add_unique(OracleResult& result, const ReducedNormalForm& nf,
                MixedProfile sigma) {
  for (const OracleEquilibrium& e : result.equilibria) {
    if (same_profile(e.sigma, sigma, 1e-7)) return;
  }
  OracleEquilibrium eq;
  eq.payoffs = mixed_payoff(nf, sigma);
  eq.sigma = std::move(sigma);
  result.equilibria.push_back(std::move(eq));
}

// Clips roundoff negatives and renormalizes; false when clearly infeasible.
bool clean(std::vector<double>& p, double tol) {
  double sum = 0.0;
  for (double& v : p) {
    if (!std::isfinite(v) || v < -tol) return false;
    v = std::max(v, 0.0);
    sum += v;
  }
  if (sum <= 0.0) return false;
  for (double& v : p) v /= sum;
  return true;
}

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t m,
                                                      std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> idx(k);
  for (std::size_t j = 0; j < k; ++j) idx[j] = j;
  while (true) {
    out.push_back(idx);
    std::size_t j = k;
    while (j > 0 && idx[j - 1] == m - k + j - 1) --j;
    if (j == 0) break;
    ++idx[j - 1];
    for (std::size_t l = j; l < k; ++l) idx[l] = idx[l - 1] + 1;
  }
  return out;
}

// Mixes the opponent over `own_cols` so every row in `rows` is indifferent.
bool solve_indifference(const Eigen::MatrixXd& payoff,
                        const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols,
                        std::vector<double>& mix) {
  const Eigen::Index k = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k + 1, k + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) {
      m(r, c) = payoff(rows[r], cols[c]);
    }
    m(r, k) = -1.0;
  }
  for (Eigen::Index c = 0; c < k; ++c) m(k, c) = 1.0;
  rhs(k) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) return false;
  const Eigen::VectorXd sol = lu.solve(rhs);
  mix.assign(payoff.cols(), 0.0);
  for (Eigen::Index c = 0; c < k; ++c) mix[cols[c]] = sol(c);
  return true;
}

OracleResult two_player(const ReducedNormalForm& nf,
                        const OracleParams& params) {
  OracleResult result;
  const std::size_t m1 = nf.shape()[0];
  const std::size_t m2 = nf.shape()[1];
  Eigen::MatrixXd a(m1, m2);
  Eigen::MatrixXd b_t(m2, m1);
  for (std::size_t r = 0; r < m1; ++r) {
    for (std::size_t c = 0; c < m2; ++c) {
      a(r, c) = nf.payoff({r, c}, 0);
      b_t(c, r) = nf.payoff({r, c}, 1);
    }
  }
  for (std::size_t k = 1; k <= std::min(m1, m2); ++k) {
    const auto rows_list = subsets_of_size(m1, k);
    const auto cols_list = subsets_of_size(m2, k);
    for (const auto& rows : rows_list) {
      for (const auto& cols : cols_list) {
        ++result.supports_tried;
        MixedProfile sigma;
        sigma.probs.resize(2);
        if (!solve_indifference(a, rows, cols, sigma.probs[1]) ||
            !solve_indifference(b_t, cols, rows, sigma.probs[0])) {
          ++result.singular_skipped;
          continue;
        }
        if (!clean(sigma.probs[0], 1e-10) || !clean(sigma.probs[1], 1e-10)) {
          continue;
        }
        if (is_nash(nf, sigma, params.eps).is_nash) {
          add_unique(result, nf, std::move(sigma));
        }
      }
    }
  }
  return result;
}

// Gauss-Newton on the support-restricted indifference system.
OracleResult many_player(const ReducedNormalForm& nf,
                         const OracleParams& params) {
  OracleResult result;
  const int n = nf.num_players();
  std::vector<std::vector<std::vector<std::size_t>>> supports(n);
  std::size_t combos = 1;
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 1; k <= nf.shape()[i]; ++k) {
      for (auto& s : subsets_of_size(nf.shape()[i], k)) {
        supports[i].push_back(std::move(s));
      }
    }
    combos *= supports[i].size();
    if (combos > params.max_support_profiles) {
      throw DomainError("too many support profiles for the oracle");
    }
  }
  Rng rng(params.seed, Stream::kInstance);
  std::vector<std::size_t> pick(n, 0);
  for (std::size_t combo = 0; combo < combos; ++combo) {
    ++result.supports_tried;
    std::vector<std::size_t> offset(n + 1, 0);
    for (int i = 0; i < n; ++i) {
      offset[i + 1] = offset[i] + supports[i][pick[i]].size();
    }
    const std::size_t unknowns = offset[n];

    auto to_sigma = [&](const Eigen::VectorXd& z) {
      MixedProfile s;
      for (int i = 0; i < n; ++i) {
        std::vector<double> p(nf.shape()[i], 0.0);
        const auto& supp = supports[i][pick[i]];
        for (std::size_t k = 0; k < supp.size(); ++k) {
          p[supp[k]] = z(offset[i] + k);
        }
        s.probs.push_back(std::move(p));
      }
      return s;
    };
    // Rows: indifference among support pairs and normalization.
    auto residual = [&](const Eigen::VectorXd& z) {
      const MixedProfile s = to_sigma(z);
      std::vector<double> rows;
      for (int i = 0; i < n; ++i) {
        const auto& supp = supports[i][pick[i]];
        const std::vector<double> dev = raw_deviation_payoffs(nf, s, i);
        for (std::size_t k = 1; k < supp.size(); ++k) {
          rows.push_back(dev[supp[k]] - dev[supp[0]]);
        }
        double sum = -1.0;
        for (std::size_t k = 0; k < supp.size(); ++k) sum += z(offset[i] + k);
        rows.push_back(sum);
      }
      return Eigen::VectorXd(
          Eigen::Map<Eigen::VectorXd>(rows.data(), rows.size()));
    };

    for (int start = 0; start < params.restarts; ++start) {
      Eigen::VectorXd z(unknowns);
      for (int i = 0; i < n; ++i) {
        const std::size_t k = supports[i][pick[i]].size();
        double sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
          z(offset[i] + j) = start == 0 ? 1.0 : rng.uniform(0.05, 1.0);
          sum += z(offset[i] + j);
        }
        for (std::size_t j = 0; j < k; ++j) z(offset[i] + j) /= sum;
      }
      Eigen::VectorXd r = residual(z);
      for (int it = 0; it < params.newton_iterations && r.norm() > 1e-13;
           ++it) {
        // The system is multilinear, so central differences are exact up to
        // roundoff.
        Eigen::MatrixXd jac(r.size(), unknowns);
        for (std::size_t c = 0; c < unknowns; ++c) {
          Eigen::VectorXd zp = z;
          Eigen::VectorXd zm = z;
          zp(c) += 1e-3;
          zm(c) -= 1e-3;
          jac.col(c) = (residual(zp) - residual(zm)) / 2e-3;
        }
        const Eigen::VectorXd step =
            jac.completeOrthogonalDecomposition().solve(-r);
        z += step;
        r = residual(z);
        if (!r.allFinite()) break;
      }
      if (!r.allFinite() || r.norm() > 1e-10) continue;
      MixedProfile sigma = to_sigma(z);
      bool ok = true;
      for (auto& p : sigma.probs) ok = ok && clean(p, 1e-9);
      if (ok && is_nash(nf, sigma, params.eps).is_nash) {
        add_unique(result, nf, std::move(sigma));
      }
    }

    int i = n - 1;
    while (i >= 0 && ++pick[i] == supports[i].size()) pick[i--] = 0;
  }
  return result;
}

}  // namespace

OracleResult enumerate_equilibria_small(const ReducedNormalForm& nf,
                                        const OracleParams& params) {
  for (int i = 0; i < nf.num_players(); ++i) {
    if (nf.shape()[i] > params.max_strategies) {
      throw DomainError("player " + std::to_string(i + 1) + " has " +
                        std::to_string(nf.shape()[i]) +
                        " strategies; the oracle handles at most " +
                        std::to_string(params.max_strategies));
    }
  }
  if (nf.num_players() == 1) {
    OracleResult result;
    const MixedProfile any{{std::vector<double>(nf.shape()[0], 0.0)}};
    for (std::size_t s = 0; s < nf.shape()[0]; ++s) {
      ++result.supports_tried;
      MixedProfile pure = any;
      pure.probs[0][s] = 1.0;
      if (is_nash(nf, pure, params.eps).is_nash) {
        add_unique(result, nf, std::move(pure));
      }
    }
    return result;
  }
  if (nf.num_players() == 2) return two_player(nf, params);
  return many_player(nf, params);
}

void write_tensor_csv(const ReducedNormalForm& nf, std::ostream& out) {
  const int n = nf.num_players();
  for (int i = 0; i < n; ++i) out << "s" << i + 1 << ",";
  for (int i = 0; i < n; ++i) out << "u" << i + 1 << (i + 1 < n ? "," : "\n");
  for (std::size_t flat = 0; flat < nf.num_profiles(); ++flat) {
    const std::vector<std::size_t> profile = nf.unflatten(flat);
    for (int i = 0; i < n; ++i) {
      out << '"' << nf.strategies(i)[profile[i]].label << "\",";
    }
    for (int i = 0; i < n; ++i) {
      out << nf.payoff(flat, i) << (i + 1 < n ? "," : "\n");
    }
  }
}

}  // namespace seqnash
