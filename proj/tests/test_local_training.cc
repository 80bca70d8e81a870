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

#include "geofed/local_training.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "geofed/data.h"
#include "geofed/status.h"
#include "test_util.h"

namespace geofed {
namespace {

using testing::RandomPoint;
using testing::ThrowsCode;

struct Fixture {
  Problem problem;
  AgentShard shard;
  ManifoldPoint x0;
};

Fixture MakeFixture(ProblemKind kind) {
  RngStream rng(17);
  switch (kind) {
    case ProblemKind::kPca: {
      const Problem p = Problem::Pca(7);
      return {p, GenSphereData({1, 15, 7, 0.1, 1})[0],
              RandomPoint(p.manifold(), rng)};
    }
    case ProblemKind::kFrechetSpd: {
      const Problem p = Problem::FrechetSpd(2);
      return {p, GenSpdData({1, 15, 2, 3.0, 2})[0],
              RandomPoint(p.manifold(), rng)};
    }
    case ProblemKind::kHsp:
    default: {
      const Problem p = Problem::Hsp(2);
      HspDataset ds = GenHspData({1, 15, 3, 2, 0.0, 0.3, 3});
      AssignHspWeights(ds.shards, ds.query, 1e-7, 1.2);
      return {p, ds.shards[0], RandomPoint(p.manifold(), rng)};
    }
  }
}

class TrainerTest : public ::testing::TestWithParam<ProblemKind> {};

TEST_P(TrainerTest, NoiselessFullBatchIsGradientDescent) {
  const Fixture f = MakeFixture(GetParam());
  RsgdConfig cfg;
  cfg.steps = 5;
  cfg.batch = f.shard.size();
  cfg.alpha = 0.05;
  const LocalResult r = DpRsgd(f.problem, f.x0, f.shard, cfg, RngStream(1));
  ManifoldPoint x = f.x0;
  for (int k = 0; k < 5; ++k) {
    x = Exp(x, LocalCostAndGrad(f.problem, x, f.shard).grad * -0.05);
    EXPECT_LE(Dist(x, r.visited[k + 1]), 1e-12);
  }
  EXPECT_EQ(r.step_count, 5);
  EXPECT_EQ(r.visited.size(), 6u);
  EXPECT_LE(Dist(r.point, x), 1e-12);
}

TEST_P(TrainerTest, SameStreamSameResult) {
  const Fixture f = MakeFixture(GetParam());
  RsvrgConfig cfg;
  cfg.outer = 3;
  cfg.inner = 4;
  cfg.sigma = NoiseScale(0.1);
  cfg.tau0 = cfg.tau1 = ClipThreshold(0.5);
  cfg.alpha = 0.05;
  const LocalResult a = DpRsvrg(f.problem, f.x0, f.shard, cfg, RngStream(5));
  const LocalResult b = DpRsvrg(f.problem, f.x0, f.shard, cfg, RngStream(5));
  const LocalResult c = DpRsvrg(f.problem, f.x0, f.shard, cfg, RngStream(6));
  EXPECT_EQ(a.point.coords(), b.point.coords());
  EXPECT_NE(a.point.coords(), c.point.coords());
  EXPECT_EQ(a.visited.size(), 12u);
  EXPECT_EQ(a.step_count, 12);
}

// One inner step per epoch reduces the variance-reduced trainer to the plain
// one: the correction cancels and both draw step k's noise from the same
// child stream.
TEST_P(TrainerTest, SingleInnerStepMatchesPlainTrainer) {
  const Fixture f = MakeFixture(GetParam());
  RsgdConfig a;
  a.steps = 20;
  a.batch = f.shard.size();
  a.tau = ClipThreshold(0.3);
  a.sigma = NoiseScale(0.05);
  a.alpha = 0.1;
  RsvrgConfig b;
  b.outer = 20;
  b.inner = 1;
  b.tau0 = ClipThreshold(0.3);
  b.tau1 = ClipThreshold(0.7);
  b.sigma = NoiseScale(0.05);
  b.alpha = 0.1;
  const RngStream rng(99);
  const LocalResult ra = DpRsgd(f.problem, f.x0, f.shard, a, rng);
  const LocalResult rb = DpRsvrg(f.problem, f.x0, f.shard, b, rng);
  for (int k = 0; k < 20; ++k) {
    EXPECT_LE((ra.visited[k].coords() - rb.visited[k].coords()).norm(), 1e-12);
  }
  EXPECT_LE((ra.point.coords() - rb.point.coords()).norm(), 1e-12);
}

TEST_P(TrainerTest, ClippingBoundsNoiselessSteps) {
  const Fixture f = MakeFixture(GetParam());
  RsgdConfig cfg;
  cfg.steps = 4;
  cfg.batch = 3;
  cfg.tau = ClipThreshold(1e-3);
  cfg.alpha = 0.5;
  const LocalResult r = DpRsgd(f.problem, f.x0, f.shard, cfg, RngStream(2));
  for (int k = 0; k < 4; ++k) {
    EXPECT_LE(Dist(r.visited[k], r.visited[k + 1]), 0.5 * 1e-3 + 1e-12);
  }
}

TEST_P(TrainerTest, UniformOutputPicksAVisitedIterate) {
  const Fixture f = MakeFixture(GetParam());
  RsgdConfig cfg;
  cfg.steps = 6;
  cfg.batch = 2;
  cfg.sigma = NoiseScale(0.05);
  cfg.alpha = 0.05;
  cfg.output = OutputOption::kUniformRandom;
  const LocalResult r = DpRsgd(f.problem, f.x0, f.shard, cfg, RngStream(8));
  bool found = false;
  for (const ManifoldPoint& v : r.visited) {
    found = found || v.coords() == r.point.coords();
  }
  EXPECT_TRUE(found);
}

INSTANTIATE_TEST_SUITE_P(AllProblems, TrainerTest,
                         ::testing::Values(ProblemKind::kPca,
                                           ProblemKind::kFrechetSpd,
                                           ProblemKind::kHsp),
                         [](const auto& info) {
                           return ProblemKindName(info.param);
                         });

TEST(Trainer, RejectsBadConfigurations) {
  const Fixture f = MakeFixture(ProblemKind::kPca);
  RsgdConfig cfg;
  cfg.batch = f.shard.size() + 1;
  EXPECT_TRUE(ThrowsCode(
      [&] { DpRsgd(f.problem, f.x0, f.shard, cfg, RngStream(1)); },
      ErrorCode::kBatchTooLarge));
  cfg.batch = 1;
  cfg.steps = 0;
  EXPECT_TRUE(ThrowsCode(
      [&] { DpRsgd(f.problem, f.x0, f.shard, cfg, RngStream(1)); },
      ErrorCode::kInvalidArgument));
  RsvrgConfig vr;
  vr.inner = 0;
  EXPECT_TRUE(ThrowsCode(
      [&] { DpRsvrg(f.problem, f.x0, f.shard, vr, RngStream(1)); },
      ErrorCode::kInvalidArgument));
  vr.inner = 1;
  vr.alpha = -1.0;
  EXPECT_TRUE(ThrowsCode(
      [&] { DpRsvrg(f.problem, f.x0, f.shard, vr, RngStream(1)); },
      ErrorCode::kInvalidArgument));
}

TEST(Trainer, OutputOptionNames) {
  EXPECT_EQ(ParseOutputOption("last"), OutputOption::kLast);
  EXPECT_EQ(ParseOutputOption("uniform"), OutputOption::kUniformRandom);
  EXPECT_EQ(OutputOptionName(OutputOption::kUniformRandom), "uniform");
  EXPECT_THROW(ParseOutputOption("best"), Error);
}

TEST(Trainer, VarianceReducedSolvesFrechetMeanWithoutNoise) {
  const Fixture f = MakeFixture(ProblemKind::kFrechetSpd);
  const std::vector<AgentShard> shards = {f.shard};
  const ManifoldPoint opt = OracleSolution(f.problem, shards);
  RsvrgConfig cfg;
  cfg.outer = 30;
  cfg.inner = 15;
  cfg.alpha = 0.1;
  const LocalResult r = DpRsvrg(f.problem, f.x0, f.shard, cfg, RngStream(4));
  EXPECT_LE(Dist(r.point, opt), 1e-6);
}

}  // namespace
}  // namespace geofed
