// Copyright 2026 The GeoFed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "geofed/federation.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "geofed/mechanism.h"
#include "geofed/status.h"

namespace geofed {
namespace {

constexpr double kWeightSumTol = 1e-12;

ClipThreshold MakeClip(double tau) {
  return std::isinf(tau) ? ClipThreshold::Disabled() : ClipThreshold(tau);
}

int ResolveBatch(const FederationConfig& cfg, int n) {
  if (cfg.batch_fraction > 0.0) {
    return std::max(1, static_cast<int>(std::floor(cfg.batch_fraction * n)));
  }
  return cfg.batch == 0 ? n : cfg.batch;
}

// Runs fn(k) for k in [0, count) on up to `threads` workers. Exceptions are
// rethrown in index order so failures are reported deterministically.
template <typename Fn>
void ParallelFor(int count, int threads, Fn fn) {
  std::vector<std::exception_ptr> errors(count);
  auto guarded = [&](int k) {
    try {
      fn(k);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };
  const int workers = std::clamp(threads, 1, std::max(count, 1));
  if (workers == 1) {
    for (int k = 0; k < count; ++k) guarded(k);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int k = next++; k < count; k = next++) guarded(k);
      });
    }
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// CostAndGrad with the per-shard terms computed in parallel and combined in
// shard order, so the result is bitwise identical to the serial version.
TraceRecord Evaluate(const Problem& problem, std::span<const AgentShard> shards,
                     const ManifoldPoint& x,
                     const std::optional<ManifoldPoint>& oracle, int round,
                     int threads) {
  const int n = static_cast<int>(shards.size());
  std::vector<std::optional<CostGrad>> local(n);
  ParallelFor(n, threads, [&](int i) {
    local[i] = LocalCostAndGrad(problem, x, shards[i]);
  });
  double total = 0.0;
  for (const AgentShard& shard : shards) total += shard.size();
  double cost = 0.0;
  Eigen::MatrixXd grad =
      Eigen::MatrixXd::Zero(x.coords().rows(), x.coords().cols());
  for (int i = 0; i < n; ++i) {
    const double p = shards[i].size() / total;
    cost += p * local[i]->cost;
    grad += p * local[i]->grad.coords();
  }
  TraceRecord rec;
  rec.round = round;
  rec.cost = cost;
  rec.grad_norm = Norm(MakeTangentUnchecked(x, std::move(grad)));
  rec.dist_to_opt = oracle ? problem.DistanceToOptimum(x, *oracle)
                           : std::numeric_limits<double>::quiet_NaN();
  return rec;
}

}  // namespace

std::string TrainerKindName(TrainerKind kind) {
  return kind == TrainerKind::kDpRsgd ? "dp_rsgd" : "dp_rsvrg";
}

TrainerKind ParseTrainerKind(const std::string& name) {
  if (name == "dp_rsgd") return TrainerKind::kDpRsgd;
  if (name == "dp_rsvrg") return TrainerKind::kDpRsvrg;
  throw Error(ErrorCode::kInvalidArgument,
              "trainer must be 'dp_rsgd' or 'dp_rsvrg', got '" + name + "'");
}

double StepSchedule::At(int round) const {
  return kind == Kind::kConstant ? a : a / (b + round);
}

void StepSchedule::Validate() const {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw Error(ErrorCode::kInvalidArgument, "step size must be >= 0");
  }
  if (kind == Kind::kSquareSummable && !(b > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "square-summable schedule needs b > 0");
  }
}

void FederationConfig::Validate(int n_agents) const {
  if (rounds < 1) throw Error(ErrorCode::kInvalidArgument, "need T >= 1");
  if (sampled < 1 || sampled > n_agents) {
    throw Error(ErrorCode::kInvalidSample,
                "cannot sample " + std::to_string(sampled) + " of " +
                    std::to_string(n_agents) + " agents");
  }
  if (local_steps < 1 || inner_steps < 1) {
    throw Error(ErrorCode::kInvalidArgument, "need K >= 1 and m >= 1");
  }
  if (batch < 0 || batch_fraction < 0.0 || batch_fraction > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid batch specification");
  }
  for (double t : {tau, tau0, tau1}) {
    if (!(t > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "clip thresholds must be > 0");
    }
  }
  alpha.Validate();
  if (noise.calibrated) {
    noise.privacy.Validate();
  } else if (!(noise.sigma >= 0.0) || !std::isfinite(noise.sigma)) {
    throw Error(ErrorCode::kInvalidArgument, "sigma must be finite and >= 0");
  }
  if (!(delta_hat > 0.0 && delta_hat < 1.0)) {
    throw Error(ErrorCode::kInvalidDelta, "delta_hat must lie in (0, 1)");
  }
}

std::vector<int> SubsampleAgents(int n, int s, RngStream& rng) {
  if (s < 1 || s > n) {
    throw Error(ErrorCode::kInvalidSample,
                "cannot sample " + std::to_string(s) + " of " +
                    std::to_string(n) + " agents");
  }
  std::vector<int> picked = rng.SampleWithoutReplacement(n, s);
  std::sort(picked.begin(), picked.end());
  return picked;
}

ManifoldPoint TangentMean(const ManifoldPoint& anchor,
                          std::span<const ManifoldPoint> points,
                          std::span<const double> weights) {
  if (points.empty() || points.size() != weights.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "tangent mean needs matching, nonempty points and weights");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "negative aggregation weight");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightSumTol) {
    throw Error(ErrorCode::kInvalidArgument,
                "aggregation weights sum to " + std::to_string(total));
  }
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(anchor.coords().rows(),
                                              anchor.coords().cols());
  for (std::size_t k = 0; k < points.size(); ++k) {
    sum += weights[k] * Log(anchor, points[k]).coords();
  }
  return Exp(anchor, MakeTangentUnchecked(anchor, std::move(sum)));
}

std::vector<double> AgentSigmas(const FederationConfig& cfg,
                                std::span<const AgentShard> shards) {
  std::vector<double> out;
  out.reserve(shards.size());
  for (const AgentShard& shard : shards) {
    if (!cfg.noise.calibrated) {
      out.push_back(cfg.noise.sigma);
      continue;
    }
    CalibrationInput in;
    in.epsilon = cfg.noise.privacy.epsilon;
    in.delta = cfg.noise.privacy.delta;
    in.n_samples = shard.size();
    in.steps = cfg.local_steps;
    in.scale_const = cfg.noise.scale_const;
    if (cfg.trainer == TrainerKind::kDpRsgd) {
      in.tau = cfg.tau;
      out.push_back(CalibrateSigmaRsgd(in).sigma());
    } else {
      in.tau = std::max(cfg.tau0, cfg.tau1);
      in.inner_steps = cfg.inner_steps;
      out.push_back(CalibrateSigmaRsvrg(in).sigma());
    }
  }
  return out;
}

FederationResult RunPriRFed(const Problem& problem,
                            std::span<const AgentShard> shards,
                            const ManifoldPoint& x0,
                            const FederationConfig& cfg,
                            const std::optional<ManifoldPoint>& oracle) {
  problem.CheckShards(shards);
  const int n_agents = static_cast<int>(shards.size());
  cfg.Validate(n_agents);
  if (!(x0.manifold() == problem.manifold())) {
    throw Error(ErrorCode::kInvalidArgument,
                "initial point is not on " + problem.manifold().Name());
  }

  FederationResult result{x0, {}, {x0}, {}, AgentSigmas(cfg, shards), {}};
  result.schedule = {n_agents, cfg.sampled, cfg.rounds, cfg.delta_hat};
  if (cfg.noise.calibrated) {
    result.privacy = PriRFedBudget(cfg.noise.privacy, result.schedule);
  }

  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    if (!cfg.record_wall_time) return 0.0;
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  };

  const RngStream root(cfg.seed);
  ManifoldPoint x = x0;
  result.trace.records.push_back(Evaluate(problem, shards, x, oracle, 0, cfg.threads));
  result.trace.records.back().ms = elapsed_ms();

  for (int t = 0; t < cfg.rounds; ++t) {
    const RngStream round_rng = root.Fork(StreamTag::kRound, t);
    RngStream subsample_rng = round_rng.Fork(StreamTag::kSubsample);
    const std::vector<int> selected =
        SubsampleAgents(n_agents, cfg.sampled, subsample_rng);
    const double alpha = cfg.alpha.At(t);

    std::vector<std::optional<ManifoldPoint>> local(selected.size());
    ParallelFor(static_cast<int>(selected.size()), cfg.threads, [&](int k) {
      const int i = selected[k];
      const AgentShard& shard = shards[i];
      const RngStream agent_rng = round_rng.Fork(StreamTag::kAgent, i);
      const NoiseScale sigma(result.sigmas[i]);
      try {
        if (cfg.trainer == TrainerKind::kDpRsgd) {
          RsgdConfig rc;
          rc.steps = cfg.local_steps;
          rc.batch = ResolveBatch(cfg, shard.size());
          rc.tau = MakeClip(cfg.tau);
          rc.sigma = sigma;
          rc.alpha = alpha;
          rc.output = cfg.local_output;
          local[k] = DpRsgd(problem, x, shard, rc, agent_rng).point;
        } else {
          RsvrgConfig rc;
          rc.outer = cfg.local_steps;
          rc.inner = cfg.inner_steps;
          rc.tau0 = MakeClip(cfg.tau0);
          rc.tau1 = MakeClip(cfg.tau1);
          rc.sigma = sigma;
          rc.alpha = alpha;
          rc.output = cfg.local_output;
          local[k] = DpRsvrg(problem, x, shard, rc, agent_rng).point;
        }
      } catch (const Error& e) {
        // A non-finite iterate here usually means the noisy walk diverged.
        throw Error(e.code(), "round " + std::to_string(t + 1) + ", agent " +
                                  std::to_string(i) + ": " + e.what());
      }
    });

    std::vector<ManifoldPoint> points;
    std::vector<double> weights;
    double selected_total = 0.0;
    for (int i : selected) selected_total += shards[i].size();
    for (std::size_t k = 0; k < selected.size(); ++k) {
      points.push_back(*local[k]);
      weights.push_back(shards[selected[k]].size() / selected_total);
    }
    try {
      x = TangentMean(x, points, weights);
    } catch (const Error& e) {
      throw Error(ErrorCode::kAggregationFailed,
                  "round " + std::to_string(t + 1) + ": " + e.what());
    }
    result.iterates.push_back(x);
    result.trace.records.push_back(Evaluate(problem, shards, x, oracle, t + 1, cfg.threads));
    result.trace.records.back().ms = elapsed_ms();
  }

  if (cfg.output == OutputOption::kLast) {
    result.output = x;
  } else {
    RngStream pick = root.Fork(StreamTag::kOutput);
    result.output = result.iterates[1 + pick.UniformInt(cfg.rounds)];
  }
  return result;
}

}  // namespace geofed
