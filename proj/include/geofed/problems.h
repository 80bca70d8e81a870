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

// The three federated objectives
//
//   f(x) = sum_i p_i (1/N_i) sum_j f_ij(x),   p_i = N_i / sum_k N_k,
//
// with f_ij(x) = -(z^T x)^2 on the sphere (leading eigenvector),
// dist^2(X, Z) on SPD (Frechet mean), and alpha_ij dist^2(x, y) on the
// hyperboloid (kernel-weighted structured prediction). All gradients are
// closed-form Riemannian gradients.

#ifndef GEOFED_PROBLEMS_H_
#define GEOFED_PROBLEMS_H_

#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "geofed/manifold.h"

namespace geofed {

struct PcaSample {
  Eigen::VectorXd z;
};

struct SpdSample {
  ManifoldPoint z;
};

struct HspSample {
  Eigen::VectorXd w;
  ManifoldPoint y;
  // Kernel-regression weight alpha_ij(w) for the current query.
  double alpha_weight = 0.0;
};

using Sample = std::variant<PcaSample, SpdSample, HspSample>;

struct AgentShard {
  int agent_id = 0;
  std::vector<Sample> data;

  int size() const { return static_cast<int>(data.size()); }
};

enum class ProblemKind { kPca, kFrechetSpd, kHsp };

std::string ProblemKindName(ProblemKind kind);
// Accepts "pca", "frechet_spd" and "hsp"; throws kInvalidArgument otherwise.
ProblemKind ParseProblemKind(const std::string& name);

class Problem {
 public:
  // Sphere S^{ambient_dim - 1}.
  static Problem Pca(int ambient_dim);
  static Problem FrechetSpd(int n);
  // Hyperboloid H^d.
  static Problem Hsp(int d);
  static Problem ForKind(ProblemKind kind, int param);

  ProblemKind kind() const { return kind_; }
  const Manifold& manifold() const { return manifold_; }

  double SampleCost(const ManifoldPoint& x, const Sample& s) const;
  TangentVector SampleGrad(const ManifoldPoint& x, const Sample& s) const;

  // Geodesic distance to a reference optimum. The sphere objective is even,
  // so there the distance to the nearer of +opt and -opt is reported.
  double DistanceToOptimum(const ManifoldPoint& x,
                           const ManifoldPoint& opt) const;

  // Throws kInvalidArgument when a sample does not belong to this problem.
  void CheckShards(std::span<const AgentShard> shards) const;

 private:
  Problem(ProblemKind kind, Manifold manifold)
      : kind_(kind), manifold_(manifold) {}

  ProblemKind kind_;
  Manifold manifold_;
};

// -2 (z^T x) (z - (x^T z) x), the gradient of -(z^T x)^2 on the sphere.
TangentVector PcaGradSample(const ManifoldPoint& x, const PcaSample& s);
// -2 X^{1/2} logm(X^{-1/2} Z X^{-1/2}) X^{1/2}.
TangentVector FrechetGradSample(const ManifoldPoint& x, const SpdSample& s);
// -2 alpha log_x(y): the gradient of alpha dist^2(x, y).
TangentVector HspGradSample(const ManifoldPoint& x, const HspSample& s);

struct CostGrad {
  double cost;
  TangentVector grad;
};

// Weighted double sum over all agents and samples, accumulated in a fixed
// order.
CostGrad CostAndGrad(const Problem& problem, const ManifoldPoint& x,
                     std::span<const AgentShard> shards);
// Local objective f_i of one agent.
CostGrad LocalCostAndGrad(const Problem& problem, const ManifoldPoint& x,
                          const AgentShard& shard);

// Global minimizer. PCA: leading eigenvector of the pooled second-moment
// matrix (sign fixed so the largest-magnitude entry is positive). SPD and
// HSP: weighted Karcher fixed-point iteration until |grad f| <= 1e-10;
// throws kOracleFailed after 10^4 iterations.
ManifoldPoint OracleSolution(const Problem& problem,
                             std::span<const AgentShard> shards);

// Weighted Karcher mean of points by the fixed point
// x <- Exp_x(sum_k w_k Log_x(p_k) / sum_k w_k), started at `start`.
ManifoldPoint KarcherMean(const ManifoldPoint& start,
                          std::span<const ManifoldPoint> points,
                          std::span<const double> weights,
                          double grad_tol = 1e-10, int max_iter = 10000);

// Kernel ridge weights (K + gamma I)^{-1} k_w with the RBF kernel
// k(w, w') = exp(-|w - w'|^2 / (2 v)^2).
Eigen::VectorXd HspWeights(std::span<const Eigen::VectorXd> train_features,
                           const Eigen::VectorXd& query, double gamma,
                           double bandwidth);
// Recomputes alpha_weight of every sample, solving one system per agent.
void AssignHspWeights(std::vector<AgentShard>& shards,
                      const Eigen::VectorXd& query, double gamma,
                      double bandwidth);

struct ProblemConstants {
  double lipschitz = 0.0;   // L_f
  double smoothness = 0.0;  // L_g
  double zeta = 1.0;
  double diameter = 0.0;    // M
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  double tau = 0.0;         // default clipping threshold

  void Validate() const;
};

// sqrt|k| M / tanh(sqrt|k| M) for k < 0, else 1.
double CurvatureZeta(double kappa_min, double diameter);

// L_f = L_g = 2 max z^T z, zeta = 1, tau = L_g.
ProblemConstants PcaConstants(std::span<const AgentShard> shards);
// L_f = 2 max|alpha| M, L_g = max|alpha| M / tanh M, zeta = M / tanh M,
// tau = L_f. Throws kInvalidConstants when every weight is zero.
ProblemConstants HspConstants(std::span<const AgentShard> shards, double M);
// Affine-invariant SPD with curvature in [-1/2, 0]: L_f = 2M, L_g = 2 zeta.
// tau = 1, the clipping level used for this objective in practice.
ProblemConstants SpdConstants(std::span<const AgentShard> shards, double M);
ProblemConstants ComputeConstants(const Problem& problem,
                                  std::span<const AgentShard> shards,
                                  const ManifoldPoint& x0);

// Largest pairwise geodesic distance among the sample points and x0 (SPD,
// HSP). The sphere objective has no sample points; pi is returned.
double EstimateDiameter(const Problem& problem,
                        std::span<const AgentShard> shards,
                        const ManifoldPoint& x0);

// Step-size prescriptions of the convergence analysis.
enum class StepRule {
  kSmooth,        // alpha = 1 / L_g
  kConvex,        // alpha = 1 / (2 L_g)
  kMultiStep,     // alpha = ((beta^{1/(K-1)}) - 1) / beta, K > 1, beta > 1
  kVarianceReduced,  // m = floor(10 N / (3 sqrt zeta)),
                     // alpha = 1 / (10 L_g N^{2/3} sqrt zeta)
};

std::string StepRuleName(StepRule rule);
// Throws kUnsupported for unknown names.
StepRule ParseStepRule(const std::string& name);

struct HyperparameterHint {
  double alpha = 0.0;
  int inner_steps = 0;  // m; 0 when the rule does not prescribe it
  int local_steps = 0;  // K echoed back for the multi-step rule
};

HyperparameterHint RecommendHyperparameters(StepRule rule,
                                            const ProblemConstants& constants,
                                            int n_agents, int local_steps = 0,
                                            double beta = 0.0);

}  // namespace geofed

#endif  // GEOFED_PROBLEMS_H_
