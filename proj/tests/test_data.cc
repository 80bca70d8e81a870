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

#include "geofed/data.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "geofed/status.h"
#include "test_util.h"

namespace geofed {
namespace {

using testing::ThrowsCode;

Eigen::MatrixXd StackPca(const AgentShard& shard) {
  const int n = static_cast<int>(std::get<PcaSample>(shard.data[0]).z.size());
  Eigen::MatrixXd z(shard.size(), n);
  for (int j = 0; j < shard.size(); ++j) {
    z.row(j) = std::get<PcaSample>(shard.data[j]).z.transpose();
  }
  return z;
}

TEST(SphereGen, ShardsRealizeTheDrawnSpectrum) {
  const SphereGenSpec spec{3, 20, 8, 0.05, 9};
  const std::vector<AgentShard> shards = GenSphereData(spec);
  ASSERT_EQ(shards.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(shards[i].agent_id, i);
    EXPECT_EQ(shards[i].size(), 20);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(StackPca(shards[i]));
    Eigen::VectorXd want = SphereSingularValues(spec, i);
    std::sort(want.data(), want.data() + want.size(), std::greater<>());
    EXPECT_LE((svd.singularValues() - want).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(SphereGen, DeterministicPerSeed) {
  const SphereGenSpec spec{2, 10, 6, 0.1, 4};
  const auto a = GenSphereData(spec);
  const auto b = GenSphereData(spec);
  SphereGenSpec other = spec;
  other.seed = 5;
  const auto c = GenSphereData(other);
  EXPECT_EQ(StackPca(a[1]), StackPca(b[1]));
  EXPECT_NE(StackPca(a[1]), StackPca(c[1]));
}

TEST(SphereGen, RejectsImpossibleSpecs) {
  EXPECT_TRUE(ThrowsCode([] { GenSphereData({1, 3, 25, 1e-3, 0}); },
                         ErrorCode::kGenError));
  EXPECT_TRUE(ThrowsCode([] { GenSphereData({1, 10, 5, 1e-3, 0}); },
                         ErrorCode::kGenError));
  EXPECT_TRUE(ThrowsCode([] { GenSphereData({1, 10, 6, 0.9, 0}); },
                         ErrorCode::kGenError));
  EXPECT_TRUE(ThrowsCode([] { GenSphereData({0, 10, 6, 0.1, 0}); },
                         ErrorCode::kGenError));
}

TEST(SpdGen, SamplesLieInTheRequestedBall) {
  const SpdGenSpec spec{2, 50, 3, 3.0, 7};
  const Manifold m = Manifold::Spd(3);
  const ManifoldPoint id = CanonicalPoint(m);
  for (const AgentShard& shard : GenSpdData(spec)) {
    ASSERT_EQ(shard.size(), 50);
    for (const Sample& s : shard.data) {
      EXPECT_LE(Dist(id, std::get<SpdSample>(s).z), 1.5 + 1e-12);
    }
  }
}

TEST(SpdGen, WishartMeanIsIdentity) {
  const SpdGenSpec spec{1, 10000, 2, 1e3, 11};
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(2, 2);
  const AgentShard shard = GenSpdData(spec)[0];
  for (const Sample& s : shard.data) mean += std::get<SpdSample>(s).z.coords();
  mean /= shard.size();
  EXPECT_LE((mean - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(),
            0.05);
}

TEST(SpdGen, TinyBallIsReported) {
  EXPECT_TRUE(ThrowsCode([] { GenSpdData({1, 10, 5, 1e-3, 1}); },
                         ErrorCode::kGenError));
  EXPECT_TRUE(ThrowsCode([] { GenSpdData({1, 10, 2, 0.0, 1}); },
                         ErrorCode::kGenError));
}

TEST(HspGen, NoiselessTargetsFollowTheMap) {
  const HspDataset ds = GenHspData({2, 8, 3, 2, 0.0, 0.3, 5});
  EXPECT_EQ(ds.map.rows(), 2);
  EXPECT_EQ(ds.map.cols(), 3);
  EXPECT_LE(Dist(ds.truth, HspTarget(ds.map, ds.query)), 1e-14);
  for (const AgentShard& shard : ds.shards) {
    for (const Sample& s : shard.data) {
      const HspSample& h = std::get<HspSample>(s);
      EXPECT_LE(h.w.cwiseAbs().maxCoeff(), 1.0);
      EXPECT_LE(Dist(h.y, HspTarget(ds.map, h.w)), 1e-12);
    }
  }
  EXPECT_TRUE(ThrowsCode([] { GenHspData({1, 1, 0, 2, 0.0, 0.3, 0}); },
                         ErrorCode::kGenError));
}

CsvSchema PcaSchema(int dim) { return {ProblemKind::kPca, dim, 0}; }

TEST(Csv, RoundTripKeepsAgentsAndValues) {
  const auto pca = GenSphereData({3, 7, 6, 0.1, 2});
  std::stringstream buf;
  WriteCsv(buf, pca);
  const auto back = ParseCsv(buf, PcaSchema(6), 3);
  ASSERT_EQ(back.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(StackPca(back[i]), StackPca(pca[i]));

  const auto spd = GenSpdData({2, 4, 3, 3.0, 2});
  std::stringstream sbuf;
  WriteCsv(sbuf, spd);
  const auto sback = ParseCsv(sbuf, {ProblemKind::kFrechetSpd, 3, 0}, 2);
  EXPECT_EQ(std::get<SpdSample>(sback[1].data[3]).z.coords(),
            std::get<SpdSample>(spd[1].data[3]).z.coords());

  const HspDataset hsp = GenHspData({2, 5, 3, 2, 0.0, 0.3, 1});
  std::stringstream hbuf;
  WriteCsv(hbuf, hsp.shards);
  const auto hback = ParseCsv(hbuf, {ProblemKind::kHsp, 2, 3}, 2);
  const HspSample& a = std::get<HspSample>(hback[0].data[2]);
  const HspSample& b = std::get<HspSample>(hsp.shards[0].data[2]);
  EXPECT_EQ(a.w, b.w);
  EXPECT_EQ(a.y.coords(), b.y.coords());
}

TEST(Csv, RoundRobinWithHeaderAndComments) {
  std::istringstream in(
      "a,b,c,d,e,f\n"
      "# comment\n"
      "1,0,0,0,0,0\n2,0,0,0,0,0\n3,0,0,0,0,0\n4,0,0,0,0,0\n");
  const auto shards = ParseCsv(in, PcaSchema(6), 2);
  ASSERT_EQ(shards.size(), 2u);
  EXPECT_EQ(shards[0].size(), 2);
  EXPECT_EQ(shards[1].size(), 2);
  EXPECT_EQ(std::get<PcaSample>(shards[0].data[1]).z(0), 3.0);
  EXPECT_EQ(std::get<PcaSample>(shards[1].data[0]).z(0), 2.0);
}

TEST(Csv, ExplicitAgentColumn) {
  std::istringstream in("1,1,0\n0,2,0\n1,3,0\n");
  const auto shards = ParseCsv(in, {ProblemKind::kPca, 2, 0}, 2);
  EXPECT_EQ(shards[0].size(), 1);
  EXPECT_EQ(shards[1].size(), 2);
  EXPECT_EQ(std::get<PcaSample>(shards[1].data[1]).z(0), 3.0);
}

TEST(Csv, ErrorsNameTheLine) {
  std::istringstream bad_number("1,2,3,4,5,6\n1,2,x,4,5,6\n");
  try {
    ParseCsv(bad_number, PcaSchema(6), 1);
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  std::istringstream bad_arity("1,2,3,4,5,6\n1,2,3\n");
  EXPECT_TRUE(ThrowsCode([&] { ParseCsv(bad_arity, PcaSchema(6), 1); },
                         ErrorCode::kParseError));
  std::istringstream not_spd("1,0,0,-1\n");
  EXPECT_TRUE(ThrowsCode(
      [&] { ParseCsv(not_spd, {ProblemKind::kFrechetSpd, 2, 0}, 1); },
      ErrorCode::kValidationError));
  std::istringstream too_few("1,0,0,0,0,0\n");
  EXPECT_TRUE(ThrowsCode([&] { ParseCsv(too_few, PcaSchema(6), 2); },
                         ErrorCode::kSplitError));
  EXPECT_TRUE(ThrowsCode([] { LoadCsv("/nonexistent/x.csv", PcaSchema(6), 1); },
                         ErrorCode::kParseError));
}

std::vector<Sample> Numbered(int n) {
  std::vector<Sample> out;
  for (int k = 0; k < n; ++k) {
    out.emplace_back(PcaSample{Eigen::VectorXd::Constant(1, k)});
  }
  return out;
}

TEST(Split, EqualShardsAreContiguous) {
  const auto shards = SplitShards(Numbered(100), 4, SplitPolicy::Equal());
  ASSERT_EQ(shards.size(), 4u);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(shards[i].size(), 25);
    EXPECT_EQ(shards[i].agent_id, i);
    EXPECT_EQ(std::get<PcaSample>(shards[i].data[0]).z(0), 25.0 * i);
  }
  EXPECT_TRUE(ThrowsCode(
      [] { SplitShards(Numbered(10), 3, SplitPolicy::Equal()); },
      ErrorCode::kSplitError));
  EXPECT_TRUE(ThrowsCode(
      [] { SplitShards(Numbered(2), 3, SplitPolicy::Equal()); },
      ErrorCode::kSplitError));
}

TEST(Split, ProportionalUsesLargestRemainder) {
  const auto shards =
      SplitShards(Numbered(8), 2, SplitPolicy::Proportional({1.0, 3.0}));
  EXPECT_EQ(shards[0].size(), 2);
  EXPECT_EQ(shards[1].size(), 6);
  const auto three =
      SplitShards(Numbered(10), 3, SplitPolicy::Proportional({1, 1, 1}));
  int total = 0;
  std::vector<double> seen;
  for (const AgentShard& s : three) {
    total += s.size();
    for (const Sample& x : s.data) seen.push_back(std::get<PcaSample>(x).z(0));
  }
  EXPECT_EQ(total, 10);
  std::vector<double> want(10);
  std::iota(want.begin(), want.end(), 0.0);
  EXPECT_EQ(seen, want);
  EXPECT_TRUE(ThrowsCode(
      [] { SplitShards(Numbered(8), 2, SplitPolicy::Proportional({1.0})); },
      ErrorCode::kSplitError));
  EXPECT_TRUE(ThrowsCode(
      [] { SplitShards(Numbered(8), 2, SplitPolicy::Proportional({1.0, -1})); },
      ErrorCode::kSplitError));
  EXPECT_TRUE(ThrowsCode(
      [] { SplitShards(Numbered(3), 2, SplitPolicy::Proportional({1, 100})); },
      ErrorCode::kSplitError));
}

}  // namespace
}  // namespace geofed
