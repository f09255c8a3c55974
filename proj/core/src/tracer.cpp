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

#include "seqnash/tracer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace seqnash {

void TracerParams::validate() const {
  if (!(predictor_coeff > 0.0) || !(corrector_coeff > 0.0)) {
    throw DomainError("predictor and corrector coefficients must be positive");
  }
  if (!(t_end > 0.0 && t_end < 1.0)) {
    throw DomainError("t_end must lie in (0, 1)");
  }
  if (max_steps == 0 || !(max_seconds > 0.0) || max_corrector_iters < 1) {
    throw DomainError("tracer caps must be positive");
  }
  if (!(shrink > 0.0 && shrink < 1.0) || !(grow >= 1.0)) {
    throw DomainError("step shrink must be in (0, 1) and growth >= 1");
  }
}

std::string termination_name(Termination t) {
  switch (t) {
    case Termination::kConverged:
      return "converged";
    case Termination::kStepLimit:
      return "step_limit";
    case Termination::kTimeLimit:
      return "time_limit";
    case Termination::kNumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

Eigen::VectorXd tangent(const HomotopySystem& system, const Eigen::VectorXd& y,
                        const Eigen::VectorXd* previous) {
  const Eigen::MatrixXd jac = system.jacobian(y);
  const Eigen::Index rows = jac.rows();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(jac.transpose());
  qr.setThreshold(1e-12);
  if (qr.rank() < rows) {
    throw NumericalFailure("Jacobian is rank deficient (rank " +
                           std::to_string(qr.rank()) + " of " +
                           std::to_string(rows) + ")");
  }
  const Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd d = q.col(rows);
  d.normalize();
  const bool flip = previous ? d.dot(*previous) < 0.0 : d(rows) > 0.0;
  if (flip) d = -d;
  return d;
}

namespace {

bool direct_coordinates_positive(const HomotopySystem& system,
                                 const Eigen::VectorXd& y) {
  for (std::size_t k = 0; k < system.num_x(); ++k) {
    if (!system.substituted(k) && !(y(k) > 0.0)) return false;
  }
  return true;
}

std::vector<double> flat_gamma(const HomotopySystem& system,
                               const Eigen::VectorXd& y) {
  const RealizationProfile g = system.realization(y);
  std::vector<double> out;
  out.reserve(system.num_x());
  for (const auto& plan : g.plans) {
    out.insert(out.end(), plan.begin() + 1, plan.end());
  }
  return out;
}

struct CorrectorOutcome {
  bool ok = false;
  int iterations = 0;
  double residual = 0.0;
};

// Newton on [H(y); d . (y - y_pred)] = 0, at least one iteration.
CorrectorOutcome correct(const HomotopySystem& system, Eigen::VectorXd& y,
                         const Eigen::VectorXd& d,
                         const Eigen::VectorXd& y_pred,
                         const TracerParams& params, double tol_scale) {
  const Eigen::Index rows = static_cast<Eigen::Index>(system.num_equations());
  CorrectorOutcome out;
  Eigen::VectorXd h;
  Eigen::MatrixXd jac;
  Eigen::MatrixXd aug(rows + 1, rows + 1);
  Eigen::VectorXd rhs(rows + 1);
  for (int it = 0; it < params.max_corrector_iters; ++it) {
    system.evaluate(y, &h, &jac);
    const double t = y(rows);
    const double tol = params.corrector_coeff *
                       std::pow(t, params.corrector_exp) * tol_scale;
    out.residual = h.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(out.residual)) return out;
    if (it > 0 && out.residual <= tol) {
      out.ok = true;
      return out;
    }
    aug.topRows(rows) = jac;
    aug.row(rows) = d.transpose();
    rhs.head(rows) = -h;
    rhs(rows) = -d.dot(y - y_pred);
    const Eigen::VectorXd delta = aug.partialPivLu().solve(rhs);
    if (!delta.allFinite()) return out;
    y += delta;
    ++out.iterations;
    if (!(y(rows) > 0.0) || !y.allFinite()) return out;
  }
  system.evaluate(y, &h, nullptr);
  out.residual = h.lpNorm<Eigen::Infinity>();
  const double tol = params.corrector_coeff *
                     std::pow(y(rows), params.corrector_exp) * tol_scale;
  out.ok = std::isfinite(out.residual) && out.residual <= tol;
  return out;
}

// Newton at fixed t on the square (x, nu) block.
void tighten(const HomotopySystem& system, Eigen::VectorXd& y,
             const TracerParams& params) {
  const Eigen::Index rows = static_cast<Eigen::Index>(system.num_equations());
  Eigen::VectorXd h;
  Eigen::MatrixXd jac;
  system.evaluate(y, &h, &jac);
  double best = h.lpNorm<Eigen::Infinity>();
  Eigen::VectorXd z = y;
  for (int it = 0; it < 30 && best > params.final_tolerance; ++it) {
    const Eigen::VectorXd delta =
        jac.leftCols(rows).partialPivLu().solve(-h);
    if (!delta.allFinite()) return;
    z.head(rows) += delta;
    if (!direct_coordinates_positive(system, z)) return;
    system.evaluate(z, &h, &jac);
    const double r = h.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(r)) return;
    if (r < best) {
      best = r;
      y = z;
    } else if (r > 10.0 * best) {
      return;
    }
  }
}

}  // namespace

SolveResult trace(const HomotopySystem& system, const TracerParams& params) {
  params.validate();
  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         started)
        .count();
  };
  const SequenceFormGame& sf = system.game();
  double tol_scale = params.tol_scale;
  if (!(tol_scale > 0.0)) {
    double range = 0.0;
    for (int i = 0; i < sf.num_players(); ++i) {
      range = std::max(range, sf.max_payoff(i) - sf.min_payoff(i));
    }
    tol_scale = 1.0 + range;
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(system.num_equations());

  SolveResult result;
  Eigen::VectorXd y = system.start_point().stacked();
  auto record = [&](double step, int iters, double residual) {
    if (!params.record_path) result.trace.points.clear();
    PathPoint p;
    p.t = y(rows);
    p.step = step;
    p.corrector_iters = iters;
    p.residual = residual;
    p.y = y;
    p.gamma = flat_gamma(system, y);
    result.trace.points.push_back(std::move(p));
  };
  record(0.0, 0, system.residual(y).lpNorm<Eigen::Infinity>());

  auto finish = [&](Termination reason, std::string message) {
    result.termination = reason;
    result.message = std::move(message);
    result.final_point = y;
    result.final_t = y(rows);
    result.raw_gamma = system.realization(y);
    result.raw_gap = epsilon_gap(sf, result.raw_gamma);
    result.gamma = polish(sf, result.raw_gamma);
    result.gap = epsilon_gap(sf, result.gamma);
    result.seconds = elapsed();
    return result;
  };

  Eigen::VectorXd d;
  try {
    d = tangent(system, y, nullptr);
  } catch (const NumericalFailure& e) {
    return finish(Termination::kNumericalFailure, e.what());
  }
  auto rule = [&](double t) {
    return params.predictor_coeff * std::pow(t, params.predictor_exp);
  };
  double h = rule(1.0);

  while (y(rows) >= params.t_end) {
    if (result.steps >= params.max_steps) {
      return finish(Termination::kStepLimit, "accepted step cap reached");
    }
    if (elapsed() > params.max_seconds) {
      return finish(Termination::kTimeLimit, "wall-time cap reached");
    }
    const double t = y(rows);
    h = std::min(h, rule(t));
    if (h < params.min_step) {
      return finish(Termination::kNumericalFailure,
                    "step size fell below the minimum");
    }
    // Land around t_end / 2 rather than far past it.
    double step = h;
    if (d(rows) < 0.0) {
      const double target = 0.5 * params.t_end;
      if (t + step * d(rows) < target) step = (t - target) / -d(rows);
    }
    const Eigen::VectorXd y_pred = y + step * d;
    Eigen::VectorXd y_new = y_pred;
    bool accepted = false;
    CorrectorOutcome corr;
    if (y_pred(rows) > 0.0) {
      corr = correct(system, y_new, d, y_pred, params, tol_scale);
      result.trace.corrector_iterations += corr.iterations;
      accepted = corr.ok && y_new(rows) > 0.0 &&
                 direct_coordinates_positive(system, y_new);
    }
    if (!accepted) {
      ++result.trace.rejected_steps;
      h = step * params.shrink;
      continue;
    }
    Eigen::VectorXd d_new;
    try {
      d_new = tangent(system, y_new, &d);
    } catch (const NumericalFailure&) {
      ++result.trace.rejected_steps;
      h = step * params.shrink;
      continue;
    }
    y = std::move(y_new);
    d = std::move(d_new);
    ++result.steps;
    record(step, corr.iterations, corr.residual);
    h = corr.iterations <= params.fast_corrector_iters ? step * params.grow
                                                       : step;
  }

  tighten(system, y, params);
  if (!result.trace.points.empty()) {
    PathPoint& last = result.trace.points.back();
    last.y = y;
    last.gamma = flat_gamma(system, y);
    last.residual = system.residual(y).lpNorm<Eigen::Infinity>();
  }
  return finish(Termination::kConverged, "t below t_end");
}

SolveResult solve(const SequenceFormGame& sf, const HomotopyConfig& config,
                  const TracerParams& params) {
  const HomotopySystem system(sf, config);
  return trace(system, params);
}

RealizationProfile polish(const SequenceFormGame& sf,
                          const RealizationProfile& gamma) {
  check_dimensions(sf, gamma);
  RealizationProfile out = gamma;
  for (int i = 0; i < sf.num_players(); ++i) {
    const PlayerSequences& seqs = sf.player(i);
    std::vector<double>& plan = out.plans[i];
    plan[0] = 1.0;
    for (const SequenceInfoset& set : seqs.infosets) {
      double sum = 0.0;
      for (int a = 0; a < set.num_actions; ++a) {
        double& v = plan[set.first_sequence + a];
        if (!(v > 0.0)) v = 0.0;
        sum += v;
      }
      const double parent = plan[set.parent_sequence];
      for (int a = 0; a < set.num_actions; ++a) {
        double& v = plan[set.first_sequence + a];
        v = sum > 0.0 ? parent * (v / sum) : parent / set.num_actions;
      }
    }
  }
  return out;
}

RankInfo numerical_rank(const Eigen::MatrixXd& m, double rel_threshold) {
  RankInfo info;
  info.rows = static_cast<int>(m.rows());
  if (m.size() == 0) return info;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  const double top = s(0);
  if (rel_threshold <= 0.0) {
    rel_threshold = static_cast<double>(std::max(m.rows(), m.cols())) *
                    std::numeric_limits<double>::epsilon();
  }
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > rel_threshold * top) ++info.rank;
  }
  info.min_ratio = top > 0.0 ? s(s.size() - 1) / top : 0.0;
  return info;
}

RankReport rank_diagnostic(const HomotopySystem& system, const PathTrace& trace,
                           std::size_t sample_count, double rel_threshold) {
  RankReport report;
  if (trace.points.empty() || sample_count == 0) return report;
  const std::size_t n = trace.points.size();
  const std::size_t count = std::min(sample_count, n);
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t index = count == 1 ? 0 : s * (n - 1) / (count - 1);
    RankSample sample;
    sample.index = index;
    sample.t = trace.points[index].t;
    sample.info = numerical_rank(system.jacobian(trace.points[index].y),
                                 rel_threshold);
    report.full_rank = report.full_rank && sample.info.rank == sample.info.rows;
    report.min_ratio = std::min(report.min_ratio, sample.info.min_ratio);
    report.samples.push_back(sample);
  }
  return report;
}

}  // namespace seqnash
