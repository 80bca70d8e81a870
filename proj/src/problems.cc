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

#include "geofed/problems.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "geofed/spd_math.h"
#include "geofed/status.h"

namespace geofed {
namespace {

constexpr double kOracleGradTol = 1e-10;
constexpr int kOracleMaxIter = 10000;

const char* SampleName(const Sample& s) {
  switch (s.index()) {
    case 0: return "pca";
    case 1: return "spd";
    default: return "hsp";
  }
}

double TotalSamples(std::span<const AgentShard> shards) {
  double total = 0.0;
  for (const AgentShard& shard : shards) total += shard.size();
  return total;
}

// Sample points of the SPD and HSP objectives, with their cost weights.
void CollectPoints(std::span<const AgentShard> shards,
                   std::vector<ManifoldPoint>& points,
                   std::vector<double>& weights) {
  const double total = TotalSamples(shards);
  for (const AgentShard& shard : shards) {
    for (const Sample& s : shard.data) {
      if (const auto* spd = std::get_if<SpdSample>(&s)) {
        points.push_back(spd->z);
        weights.push_back(1.0 / total);
      } else if (const auto* hsp = std::get_if<HspSample>(&s)) {
        points.push_back(hsp->y);
        weights.push_back(hsp->alpha_weight / total);
      }
    }
  }
}

}  // namespace

std::string ProblemKindName(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kPca: return "pca";
    case ProblemKind::kFrechetSpd: return "frechet_spd";
    case ProblemKind::kHsp: return "hsp";
  }
  return "?";
}

ProblemKind ParseProblemKind(const std::string& name) {
  if (name == "pca") return ProblemKind::kPca;
  if (name == "frechet_spd" || name == "spd") return ProblemKind::kFrechetSpd;
  if (name == "hsp") return ProblemKind::kHsp;
  throw Error(ErrorCode::kInvalidArgument, "unknown problem '" + name + "'");
}

Problem Problem::Pca(int ambient_dim) {
  return Problem(ProblemKind::kPca, Manifold::Sphere(ambient_dim - 1));
}

Problem Problem::FrechetSpd(int n) {
  return Problem(ProblemKind::kFrechetSpd, Manifold::Spd(n));
}

Problem Problem::Hsp(int d) {
  return Problem(ProblemKind::kHsp, Manifold::Hyperboloid(d));
}

Problem Problem::ForKind(ProblemKind kind, int param) {
  switch (kind) {
    case ProblemKind::kPca: return Pca(param);
    case ProblemKind::kFrechetSpd: return FrechetSpd(param);
    case ProblemKind::kHsp: return Hsp(param);
  }
  throw Error(ErrorCode::kInternal, "unknown problem kind");
}

double Problem::SampleCost(const ManifoldPoint& x, const Sample& s) const {
  switch (kind_) {
    case ProblemKind::kPca: {
      const double p = std::get<PcaSample>(s).z.dot(x.coords().col(0));
      return -p * p;
    }
    case ProblemKind::kFrechetSpd: {
      const double d = Dist(x, std::get<SpdSample>(s).z);
      return d * d;
    }
    case ProblemKind::kHsp: {
      const HspSample& h = std::get<HspSample>(s);
      const double d = Dist(x, h.y);
      return h.alpha_weight * d * d;
    }
  }
  throw Error(ErrorCode::kInternal, "unknown problem kind");
}

TangentVector Problem::SampleGrad(const ManifoldPoint& x,
                                  const Sample& s) const {
  switch (kind_) {
    case ProblemKind::kPca: return PcaGradSample(x, std::get<PcaSample>(s));
    case ProblemKind::kFrechetSpd:
      return FrechetGradSample(x, std::get<SpdSample>(s));
    case ProblemKind::kHsp: return HspGradSample(x, std::get<HspSample>(s));
  }
  throw Error(ErrorCode::kInternal, "unknown problem kind");
}

double Problem::DistanceToOptimum(const ManifoldPoint& x,
                                  const ManifoldPoint& opt) const {
  if (kind_ != ProblemKind::kPca) return Dist(x, opt);
  const double dot = x.coords().col(0).dot(opt.coords().col(0));
  const ManifoldPoint near =
      dot >= 0.0 ? opt : ManifoldPoint::Create(manifold_, -opt.coords());
  return Dist(x, near);
}

void Problem::CheckShards(std::span<const AgentShard> shards) const {
  if (shards.empty()) throw Error(ErrorCode::kInvalidArgument, "no shards");
  const std::size_t want = static_cast<std::size_t>(kind_);
  for (const AgentShard& shard : shards) {
    if (shard.data.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "agent " + std::to_string(shard.agent_id) + " has no data");
    }
    for (const Sample& s : shard.data) {
      if (s.index() != want) {
        throw Error(ErrorCode::kInvalidArgument,
                    std::string("sample of kind ") + SampleName(s) +
                        " given to problem " + ProblemKindName(kind_));
      }
    }
  }
}

TangentVector PcaGradSample(const ManifoldPoint& x, const PcaSample& s) {
  const Eigen::VectorXd xv = x.coords().col(0);
  const double zx = s.z.dot(xv);
  Eigen::VectorXd g = s.z - zx * xv;  // P_x z
  g *= -2.0 * zx;
  return MakeTangentUnchecked(x, std::move(g));
}

TangentVector FrechetGradSample(const ManifoldPoint& x, const SpdSample& s) {
  const Eigen::MatrixXd& r = x.SpdSqrt();
  const Eigen::MatrixXd& ri = x.SpdInvSqrt();
  return MakeTangentUnchecked(
      x, Symmetrize(-2.0 * r * SymmetricLog(ri * s.z.coords() * ri) * r));
}

TangentVector HspGradSample(const ManifoldPoint& x, const HspSample& s) {
  if (s.alpha_weight == 0.0) return TangentVector::Zero(x);
  return Log(x, s.y) * (-2.0 * s.alpha_weight);
}

CostGrad LocalCostAndGrad(const Problem& problem, const ManifoldPoint& x,
                          const AgentShard& shard) {
  if (shard.data.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty shard");
  }
  double cost = 0.0;
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(x.coords().rows(),
                                               x.coords().cols());
  for (const Sample& s : shard.data) {
    cost += problem.SampleCost(x, s);
    grad += problem.SampleGrad(x, s).coords();
  }
  const double inv = 1.0 / shard.size();
  return {cost * inv, MakeTangentUnchecked(x, grad * inv)};
}

CostGrad CostAndGrad(const Problem& problem, const ManifoldPoint& x,
                     std::span<const AgentShard> shards) {
  const double total = TotalSamples(shards);
  if (total == 0.0) throw Error(ErrorCode::kInvalidArgument, "no samples");
  double cost = 0.0;
  Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(x.coords().rows(),
                                               x.coords().cols());
  for (const AgentShard& shard : shards) {
    // p_i f_i = (N_i / total) f_i.
    const CostGrad local = LocalCostAndGrad(problem, x, shard);
    const double p = shard.size() / total;
    cost += p * local.cost;
    grad += p * local.grad.coords();
  }
  return {cost, MakeTangentUnchecked(x, std::move(grad))};
}

ManifoldPoint KarcherMean(const ManifoldPoint& start,
                          std::span<const ManifoldPoint> points,
                          std::span<const double> weights, double grad_tol,
                          int max_iter) {
  if (points.empty() || points.size() != weights.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "Karcher mean needs matching, nonempty points and weights");
  }
  double wsum = 0.0;
  for (double w : weights) wsum += w;
  if (!(std::abs(wsum) > 0.0)) {
    throw Error(ErrorCode::kOracleFailed, "Karcher weights sum to zero");
  }
  ManifoldPoint x = start;
  for (int iter = 0; iter < max_iter; ++iter) {
    Eigen::MatrixXd step = Eigen::MatrixXd::Zero(x.coords().rows(),
                                                 x.coords().cols());
    for (std::size_t k = 0; k < points.size(); ++k) {
      step += weights[k] * Log(x, points[k]).coords();
    }
    // grad of sum_k w_k dist^2(x, p_k) is -2 * step.
    const TangentVector v = MakeTangentUnchecked(x, step);
    if (2.0 * Norm(v) <= grad_tol) return x;
    x = Exp(x, v * (1.0 / wsum));
  }
  throw Error(ErrorCode::kOracleFailed,
              "Karcher iteration did not converge in " +
                  std::to_string(max_iter) + " iterations");
}

ManifoldPoint OracleSolution(const Problem& problem,
                             std::span<const AgentShard> shards) {
  problem.CheckShards(shards);
  const Manifold& m = problem.manifold();
  if (problem.kind() == ProblemKind::kPca) {
    const double total = TotalSamples(shards);
    const int n = m.AmbientRows();
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (const AgentShard& shard : shards) {
      for (const Sample& s : shard.data) {
        const Eigen::VectorXd& z = std::get<PcaSample>(s).z;
        c.noalias() += z * z.transpose();
      }
    }
    c /= total;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
    Eigen::VectorXd v = es.eigenvectors().col(n - 1);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0.0) v = -v;
    return ManifoldPoint::Normalized(m, v);
  }

  std::vector<ManifoldPoint> points;
  std::vector<double> weights;
  CollectPoints(shards, points, weights);
  // Start from the most heavily weighted sample point.
  std::size_t best = 0;
  for (std::size_t k = 1; k < weights.size(); ++k) {
    if (weights[k] > weights[best]) best = k;
  }
  ManifoldPoint start = points[best];
  if (problem.kind() == ProblemKind::kFrechetSpd) {
    // Arithmetic mean is SPD and a good starting guess.
    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(m.AmbientRows(),
                                                 m.AmbientCols());
    for (const ManifoldPoint& p : points) mean += p.coords();
    start = ManifoldPoint::Normalized(m, mean / points.size());
  }
  return KarcherMean(start, points, weights, kOracleGradTol, kOracleMaxIter);
}

Eigen::VectorXd HspWeights(std::span<const Eigen::VectorXd> train_features,
                           const Eigen::VectorXd& query, double gamma,
                           double bandwidth) {
  if (!(gamma > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  }
  if (!(bandwidth > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bandwidth must be positive");
  }
  const int n = static_cast<int>(train_features.size());
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "no training features");
  const double denom = 4.0 * bandwidth * bandwidth;  // (2 v)^2
  auto kernel = [denom](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::exp(-(a - b).squaredNorm() / denom);
  };
  Eigen::MatrixXd k(n, n);
  Eigen::VectorXd kw(n);
  for (int i = 0; i < n; ++i) {
    if (train_features[i].size() != query.size()) {
      throw Error(ErrorCode::kInvalidArgument, "feature dimension mismatch");
    }
    kw(i) = kernel(train_features[i], query);
    k(i, i) = 1.0 + gamma;
    for (int j = 0; j < i; ++j) {
      k(i, j) = k(j, i) = kernel(train_features[i], train_features[j]);
    }
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(k);
  Eigen::VectorXd alpha = ldlt.solve(kw);
  // One step of iterative refinement; the kernel matrix is badly conditioned
  // for small gamma.
  alpha += ldlt.solve(kw - k * alpha);
  return alpha;
}

void AssignHspWeights(std::vector<AgentShard>& shards,
                      const Eigen::VectorXd& query, double gamma,
                      double bandwidth) {
  for (AgentShard& shard : shards) {
    std::vector<Eigen::VectorXd> features;
    features.reserve(shard.data.size());
    for (const Sample& s : shard.data) {
      const auto* h = std::get_if<HspSample>(&s);
      if (h == nullptr) {
        throw Error(ErrorCode::kInvalidArgument, "shard is not HSP data");
      }
      features.push_back(h->w);
    }
    const Eigen::VectorXd alpha = HspWeights(features, query, gamma, bandwidth);
    for (int j = 0; j < shard.size(); ++j) {
      std::get<HspSample>(shard.data[j]).alpha_weight = alpha(j);
    }
  }
}

void ProblemConstants::Validate() const {
  if (!(lipschitz > 0.0) || !(smoothness > 0.0) || !std::isfinite(lipschitz) ||
      !std::isfinite(smoothness)) {
    throw Error(ErrorCode::kInvalidConstants,
                "L_f and L_g must be finite and positive (got " +
                    std::to_string(lipschitz) + ", " +
                    std::to_string(smoothness) + ")");
  }
  if (!(zeta >= 1.0)) {
    throw Error(ErrorCode::kInvalidConstants, "zeta must be >= 1");
  }
}

double CurvatureZeta(double kappa_min, double diameter) {
  if (kappa_min >= 0.0) return 1.0;
  const double c = std::sqrt(-kappa_min) * diameter;
  if (c < 1e-8) return 1.0 + c * c / 3.0;
  return c / std::tanh(c);
}

ProblemConstants PcaConstants(std::span<const AgentShard> shards) {
  double theta = 0.0;
  for (const AgentShard& shard : shards) {
    for (const Sample& s : shard.data) {
      theta = std::max(theta, std::get<PcaSample>(s).z.squaredNorm());
    }
  }
  ProblemConstants c;
  c.lipschitz = c.smoothness = 2.0 * theta;
  c.zeta = 1.0;
  c.diameter = std::numbers::pi;
  c.kappa_min = c.kappa_max = 1.0;
  c.tau = c.smoothness;
  c.Validate();
  return c;
}

ProblemConstants HspConstants(std::span<const AgentShard> shards, double M) {
  if (!(M > 0.0)) {
    throw Error(ErrorCode::kInvalidConstants, "diameter M must be positive");
  }
  double amax = 0.0;
  for (const AgentShard& shard : shards) {
    for (const Sample& s : shard.data) {
      amax = std::max(amax, std::abs(std::get<HspSample>(s).alpha_weight));
    }
  }
  ProblemConstants c;
  c.kappa_min = c.kappa_max = -1.0;
  c.diameter = M;
  c.zeta = CurvatureZeta(-1.0, M);
  c.lipschitz = 2.0 * amax * M;
  c.smoothness = amax * c.zeta;
  c.tau = c.lipschitz;
  c.Validate();
  return c;
}

ProblemConstants SpdConstants(std::span<const AgentShard> shards, double M) {
  if (!(M > 0.0)) {
    throw Error(ErrorCode::kInvalidConstants, "diameter M must be positive");
  }
  (void)shards;
  ProblemConstants c;
  c.kappa_min = -0.5;
  c.kappa_max = 0.0;
  c.diameter = M;
  c.zeta = CurvatureZeta(c.kappa_min, M);
  c.lipschitz = 2.0 * M;
  c.smoothness = 2.0 * c.zeta;
  c.tau = 1.0;
  c.Validate();
  return c;
}

double EstimateDiameter(const Problem& problem,
                        std::span<const AgentShard> shards,
                        const ManifoldPoint& x0) {
  if (problem.kind() == ProblemKind::kPca) return std::numbers::pi;
  std::vector<ManifoldPoint> points;
  std::vector<double> weights;
  CollectPoints(shards, points, weights);
  points.push_back(x0);
  // Exact maximum pairwise distance. With r the distance to a pivot,
  // d(i, j) <= r_i + r_j, so scanning in decreasing r can stop early.
  const std::size_t n = points.size();
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = Dist(points.back(), points[i]);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return r[a] > r[b]; });
  double best = r[order.front()];
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t i = order[a];
    if (a + 1 < n && r[i] + r[order[a + 1]] <= best) break;
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::size_t j = order[b];
      if (r[i] + r[j] <= best) break;
      best = std::max(best, Dist(points[i], points[j]));
    }
  }
  return best;
}

ProblemConstants ComputeConstants(const Problem& problem,
                                  std::span<const AgentShard> shards,
                                  const ManifoldPoint& x0) {
  switch (problem.kind()) {
    case ProblemKind::kPca: return PcaConstants(shards);
    case ProblemKind::kFrechetSpd:
      return SpdConstants(shards, EstimateDiameter(problem, shards, x0));
    case ProblemKind::kHsp:
      return HspConstants(shards, EstimateDiameter(problem, shards, x0));
  }
  throw Error(ErrorCode::kInternal, "unknown problem kind");
}

std::string StepRuleName(StepRule rule) {
  switch (rule) {
    case StepRule::kSmooth: return "smooth";
    case StepRule::kConvex: return "convex";
    case StepRule::kMultiStep: return "multi_step";
    case StepRule::kVarianceReduced: return "variance_reduced";
  }
  return "?";
}

StepRule ParseStepRule(const std::string& name) {
  if (name == "smooth") return StepRule::kSmooth;
  if (name == "convex") return StepRule::kConvex;
  if (name == "multi_step") return StepRule::kMultiStep;
  if (name == "variance_reduced") return StepRule::kVarianceReduced;
  throw Error(ErrorCode::kUnsupported, "unknown step rule '" + name + "'");
}

HyperparameterHint RecommendHyperparameters(StepRule rule,
                                            const ProblemConstants& constants,
                                            int n_agents, int local_steps,
                                            double beta) {
  if (!(constants.smoothness > 0.0) || !(constants.zeta >= 1.0)) {
    throw Error(ErrorCode::kInvalidConstants, "need L_g > 0 and zeta >= 1");
  }
  HyperparameterHint hint;
  switch (rule) {
    case StepRule::kSmooth:
      hint.alpha = 1.0 / constants.smoothness;
      return hint;
    case StepRule::kConvex:
      hint.alpha = 1.0 / (2.0 * constants.smoothness);
      return hint;
    case StepRule::kMultiStep:
      if (local_steps < 2 || !(beta > 1.0)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "multi-step rule needs K > 1 and beta > 1");
      }
      hint.alpha = (std::pow(beta, 1.0 / (local_steps - 1)) - 1.0) / beta;
      hint.local_steps = local_steps;
      return hint;
    case StepRule::kVarianceReduced: {
      if (n_agents < 1) {
        throw Error(ErrorCode::kInvalidArgument, "need N >= 1");
      }
      const double sz = std::sqrt(constants.zeta);
      hint.inner_steps =
          static_cast<int>(std::floor(10.0 * n_agents / (3.0 * sz)));
      hint.alpha = 1.0 / (10.0 * constants.smoothness *
                          std::cbrt(static_cast<double>(n_agents) * n_agents) *
                          sz);
      return hint;
    }
  }
  throw Error(ErrorCode::kUnsupported, "unknown step rule");
}

}  // namespace geofed
