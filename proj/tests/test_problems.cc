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

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "geofed/data.h"
#include "geofed/status.h"
#include "test_util.h"

namespace geofed {
namespace {

using testing::RandomPoint;
using testing::RandomTangent;
using testing::TangentOfLength;
using testing::ThrowsCode;

std::vector<AgentShard> PcaShards(uint64_t seed) {
  return GenSphereData({3, 12, 8, 0.05, seed});
}

std::vector<AgentShard> SpdShards(uint64_t seed) {
  return GenSpdData({3, 6, 3, 4.0, seed});
}

std::vector<AgentShard> HspShards(uint64_t seed, Eigen::VectorXd* query) {
  HspDataset ds = GenHspData({3, 15, 3, 2, 0.0, 0.3, seed});
  AssignHspWeights(ds.shards, ds.query, 1e-7, 1.2);
  if (query != nullptr) *query = ds.query;
  return std::move(ds.shards);
}

// Central difference of f along each frame direction against the frame
// coefficients of grad f.
double GradientError(const Problem& p, const ManifoldPoint& x,
                     const AgentShard& shard) {
  const CostGrad cg = LocalCostAndGrad(p, x, shard);
  const TangentFrame frame = MakeTangentFrame(x);
  const std::vector<double> analytic = FrameCoefficients(frame, cg.grad);
  double err = 0.0, scale = 0.0;
  const double h = 1e-5;
  for (std::size_t k = 0; k < frame.basis.size(); ++k) {
    const double fp =
        LocalCostAndGrad(p, Exp(x, frame.basis[k] * h), shard).cost;
    const double fm =
        LocalCostAndGrad(p, Exp(x, frame.basis[k] * -h), shard).cost;
    const double fd = (fp - fm) / (2 * h);
    err += (fd - analytic[k]) * (fd - analytic[k]);
    scale += analytic[k] * analytic[k];
  }
  return std::sqrt(err) / std::max(std::sqrt(scale), 1e-8);
}

TEST(Gradients, PcaMatchesFiniteDifferences) {
  const Problem p = Problem::Pca(8);
  RngStream rng(1);
  for (int i = 0; i < 10; ++i) {
    const auto shards = PcaShards(i);
    EXPECT_LE(GradientError(p, RandomPoint(p.manifold(), rng), shards[0]),
              1e-5);
  }
}

TEST(Gradients, FrechetMatchesFiniteDifferences) {
  const Problem p = Problem::FrechetSpd(3);
  RngStream rng(2);
  for (int i = 0; i < 10; ++i) {
    const auto shards = SpdShards(i);
    EXPECT_LE(GradientError(p, RandomPoint(p.manifold(), rng), shards[1]),
              1e-5);
  }
}

TEST(Gradients, HspMatchesFiniteDifferences) {
  const Problem p = Problem::Hsp(2);
  RngStream rng(3);
  for (int i = 0; i < 10; ++i) {
    const auto shards = HspShards(i, nullptr);
    EXPECT_LE(GradientError(p, RandomPoint(p.manifold(), rng), shards[2]),
              1e-5);
  }
}

TEST(Gradients, SampleGradientsAreTangent) {
  RngStream rng(4);
  const Problem p = Problem::Hsp(2);
  const auto shards = HspShards(5, nullptr);
  const ManifoldPoint x = RandomPoint(p.manifold(), rng);
  for (const Sample& s : shards[0].data) {
    const TangentVector g = p.SampleGrad(x, s);
    EXPECT_NO_THROW(TangentVector::Create(x, g.coords()));
  }
}

TEST(Objective, PcaCostIsNegativeSquaredProjection) {
  const Problem p = Problem::Pca(3);
  const ManifoldPoint x = CanonicalPoint(p.manifold());
  const Sample s = PcaSample{Eigen::Vector3d(2.0, 1.0, -1.0)};
  EXPECT_DOUBLE_EQ(p.SampleCost(x, s), -4.0);
}

TEST(Objective, GlobalCostWeightsAgentsBySize) {
  const Problem p = Problem::Pca(6);
  std::vector<AgentShard> shards = GenSphereData({2, 6, 6, 0.1, 9});
  shards[1].data.resize(2);  // unequal shards
  RngStream rng(5);
  const ManifoldPoint x = RandomPoint(p.manifold(), rng);
  double pooled = 0.0;
  int count = 0;
  for (const AgentShard& sh : shards) {
    for (const Sample& s : sh.data) {
      pooled += p.SampleCost(x, s);
      ++count;
    }
  }
  EXPECT_NEAR(CostAndGrad(p, x, shards).cost, pooled / count, 1e-14);
}

TEST(Objective, ShardKindMismatchRejected) {
  const Problem p = Problem::FrechetSpd(3);
  const auto shards = PcaShards(0);
  EXPECT_TRUE(ThrowsCode([&] { p.CheckShards(shards); },
                         ErrorCode::kInvalidArgument));
}

TEST(Objective, KindNames) {
  EXPECT_EQ(ParseProblemKind("pca"), ProblemKind::kPca);
  EXPECT_EQ(ParseProblemKind("frechet_spd"), ProblemKind::kFrechetSpd);
  EXPECT_EQ(ParseProblemKind("hsp"), ProblemKind::kHsp);
  EXPECT_EQ(ProblemKindName(ProblemKind::kHsp), "hsp");
  EXPECT_THROW(ParseProblemKind("svm"), Error);
}

TEST(Oracle, PcaIsLeadingEigenvector) {
  const Problem p = Problem::Pca(8);
  const auto shards = PcaShards(3);
  const ManifoldPoint opt = OracleSolution(p, shards);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(8, 8);
  int n = 0;
  for (const AgentShard& sh : shards) {
    for (const Sample& s : sh.data) {
      const Eigen::VectorXd& z = std::get<PcaSample>(s).z;
      second += z * z.transpose();
      ++n;
    }
  }
  second /= n;
  const Eigen::VectorXd v = opt.coords().col(0);
  const double rayleigh = v.dot(second * v);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(second);
  EXPECT_NEAR(rayleigh, es.eigenvalues().maxCoeff(), 1e-12);
  EXPECT_LE(Norm(CostAndGrad(p, opt, shards).grad), 1e-10);
  // Sign convention: the largest-magnitude entry is positive.
  Eigen::Index arg;
  v.cwiseAbs().maxCoeff(&arg);
  EXPECT_GT(v(arg), 0.0);
  // The objective is even, so -opt is just as optimal.
  const ManifoldPoint neg = ManifoldPoint::Create(p.manifold(), -opt.coords());
  EXPECT_NEAR(p.DistanceToOptimum(neg, opt), 0.0, 1e-12);
}

TEST(Oracle, TwoCommutingMatricesGiveGeodesicMidpoint) {
  const Problem p = Problem::FrechetSpd(2);
  const Manifold& m = p.manifold();
  Eigen::Matrix2d a = Eigen::Vector2d(4.0, 0.5).asDiagonal();
  Eigen::Matrix2d b = Eigen::Vector2d(1.0, 2.0).asDiagonal();
  AgentShard shard{0, {SpdSample{ManifoldPoint::Create(m, a)},
                       SpdSample{ManifoldPoint::Create(m, b)}}};
  const std::vector<AgentShard> shards = {shard};
  const ManifoldPoint opt = OracleSolution(p, shards);
  Eigen::Matrix2d mid = Eigen::Vector2d(2.0, 1.0).asDiagonal();
  EXPECT_LE((opt.coords() - mid).norm(), 1e-9);
}

TEST(Oracle, KarcherMeanOfTwoHyperbolicPoints) {
  const Manifold m = Manifold::Hyperboloid(2);
  RngStream rng(6);
  const ManifoldPoint a = RandomPoint(m, rng, 2.0);
  const ManifoldPoint b = RandomPoint(m, rng, 2.0);
  const std::vector<ManifoldPoint> pts = {a, b};
  const std::vector<double> w = {1.0, 1.0};
  const ManifoldPoint mean = KarcherMean(a, pts, w);
  const ManifoldPoint mid = Exp(a, Log(a, b) * 0.5);
  EXPECT_NEAR(Dist(mean, mid), 0.0, 1e-8);
}

TEST(Oracle, KarcherMeanFailsWithoutProgress) {
  const Manifold m = Manifold::Spd(2);
  RngStream rng(7);
  const std::vector<ManifoldPoint> pts = {RandomPoint(m, rng),
                                          RandomPoint(m, rng)};
  const std::vector<double> w = {1.0, 1.0};
  EXPECT_TRUE(ThrowsCode([&] { KarcherMean(CanonicalPoint(m), pts, w, 0.0, 3); },
                         ErrorCode::kOracleFailed));
}

TEST(HspWeights, SolveTheRegularizedSystem) {
  RngStream rng(8);
  std::vector<Eigen::VectorXd> feats;
  for (int i = 0; i < 20; ++i) {
    Eigen::VectorXd w(3);
    for (int k = 0; k < 3; ++k) w(k) = 2 * rng.NextUniform() - 1;
    feats.push_back(w);
  }
  const Eigen::VectorXd q = Eigen::Vector3d(0.1, -0.2, 0.3);
  const double gamma = 1e-3, v = 0.7;
  const Eigen::VectorXd alpha = HspWeights(feats, q, gamma, v);
  auto k = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::exp(-(a - b).squaredNorm() / (4 * v * v));
  };
  Eigen::MatrixXd K(20, 20);
  Eigen::VectorXd kw(20);
  for (int i = 0; i < 20; ++i) {
    kw(i) = k(feats[i], q);
    for (int j = 0; j < 20; ++j) K(i, j) = k(feats[i], feats[j]);
  }
  K.diagonal().array() += gamma;
  EXPECT_LE((K * alpha - kw).norm(), 1e-10);
}

TEST(HspWeights, QueryOnATrainingPointWithTinyGamma) {
  std::vector<Eigen::VectorXd> feats = {Eigen::Vector2d(0, 0),
                                        Eigen::Vector2d(1, 0),
                                        Eigen::Vector2d(0, 1)};
  const Eigen::VectorXd alpha = HspWeights(feats, feats[1], 1e-12, 0.5);
  EXPECT_NEAR(alpha(0), 0.0, 1e-6);
  EXPECT_NEAR(alpha(1), 1.0, 1e-6);
  EXPECT_NEAR(alpha(2), 0.0, 1e-6);
}

TEST(Constants, Pca) {
  const auto shards = PcaShards(1);
  double theta = 0.0;
  for (const AgentShard& sh : shards) {
    for (const Sample& s : sh.data) {
      theta = std::max(theta, std::get<PcaSample>(s).z.squaredNorm());
    }
  }
  const ProblemConstants c = PcaConstants(shards);
  EXPECT_DOUBLE_EQ(c.lipschitz, 2 * theta);
  EXPECT_DOUBLE_EQ(c.smoothness, 2 * theta);
  EXPECT_DOUBLE_EQ(c.zeta, 1.0);
  EXPECT_DOUBLE_EQ(c.tau, c.smoothness);
}

TEST(Constants, CurvatureZeta) {
  EXPECT_DOUBLE_EQ(CurvatureZeta(0.0, 3.0), 1.0);
  EXPECT_DOUBLE_EQ(CurvatureZeta(1.0, 3.0), 1.0);
  EXPECT_NEAR(CurvatureZeta(-1.0, 2.0), 2.0 / std::tanh(2.0), 1e-15);
  EXPECT_NEAR(CurvatureZeta(-0.25, 2.0), 1.0 / std::tanh(1.0), 1e-15);
}

TEST(Constants, HspAndSpd) {
  Eigen::VectorXd q;
  const auto shards = HspShards(2, &q);
  double amax = 0.0;
  for (const AgentShard& sh : shards) {
    for (const Sample& s : sh.data) {
      amax = std::max(amax, std::abs(std::get<HspSample>(s).alpha_weight));
    }
  }
  const ProblemConstants h = HspConstants(shards, 4.0);
  EXPECT_NEAR(h.lipschitz, 2 * amax * 4.0, 1e-14);
  EXPECT_NEAR(h.smoothness, amax * 4.0 / std::tanh(4.0), 1e-14);
  EXPECT_DOUBLE_EQ(h.tau, h.lipschitz);
  const ProblemConstants s = SpdConstants(SpdShards(0), 1.0);
  EXPECT_DOUBLE_EQ(s.kappa_min, -0.5);
  EXPECT_DOUBLE_EQ(s.tau, 1.0);
  EXPECT_NEAR(s.smoothness, 2.0 * CurvatureZeta(-0.5, 1.0), 1e-15);
  EXPECT_TRUE(ThrowsCode([&] { SpdConstants(SpdShards(0), 0.0); },
                         ErrorCode::kInvalidConstants));
}

TEST(Constants, DiameterCoversSamplesAndStart) {
  const Problem p = Problem::FrechetSpd(3);
  const auto shards = SpdShards(4);
  const ManifoldPoint x0 = CanonicalPoint(p.manifold());
  const double m = EstimateDiameter(p, shards, x0);
  for (const AgentShard& sh : shards) {
    for (const Sample& s : sh.data) {
      EXPECT_LE(Dist(x0, std::get<SpdSample>(s).z), m + 1e-12);
    }
  }
  std::vector<ManifoldPoint> all = {x0};
  for (const AgentShard& sh : shards) {
    for (const Sample& s : sh.data) all.push_back(std::get<SpdSample>(s).z);
  }
  double brute = 0.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      brute = std::max(brute, Dist(all[i], all[j]));
    }
  }
  EXPECT_DOUBLE_EQ(m, brute);
  EXPECT_DOUBLE_EQ(EstimateDiameter(Problem::Pca(6), PcaShards(0),
                                    CanonicalPoint(Manifold::Sphere(5))),
                   std::numbers::pi);
}

TEST(StepRules, Prescriptions) {
  ProblemConstants c;
  c.lipschitz = 2.0;
  c.smoothness = 4.0;
  c.zeta = 4.0;
  EXPECT_DOUBLE_EQ(RecommendHyperparameters(StepRule::kSmooth, c, 10).alpha,
                   0.25);
  EXPECT_DOUBLE_EQ(RecommendHyperparameters(StepRule::kConvex, c, 10).alpha,
                   0.125);
  const HyperparameterHint ms =
      RecommendHyperparameters(StepRule::kMultiStep, c, 10, 3, 4.0);
  EXPECT_DOUBLE_EQ(ms.alpha, (2.0 - 1.0) / 4.0);
  EXPECT_EQ(ms.local_steps, 3);
  const HyperparameterHint vr =
      RecommendHyperparameters(StepRule::kVarianceReduced, c, 27);
  EXPECT_EQ(vr.inner_steps, 45);  // floor(270 / 6)
  EXPECT_NEAR(vr.alpha, 1.0 / (10 * 4.0 * 9.0 * 2.0), 1e-15);
  EXPECT_THROW(RecommendHyperparameters(StepRule::kMultiStep, c, 10, 1, 2.0),
               Error);
  EXPECT_EQ(ParseStepRule("variance_reduced"), StepRule::kVarianceReduced);
  EXPECT_EQ(StepRuleName(StepRule::kMultiStep), "multi_step");
  EXPECT_TRUE(ThrowsCode([] { ParseStepRule("adam"); },
                         ErrorCode::kUnsupported));
}

}  // namespace
}  // namespace geofed
