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

#include "geofed/rng.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "geofed/status.h"

namespace geofed {
namespace {

TEST(Philox, KnownAnswerZero) {
  const auto out = Philox4x32({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x6627e8d5u);
  EXPECT_EQ(out[1], 0xe169c58du);
  EXPECT_EQ(out[2], 0xbc57ac4cu);
  EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerAllOnes) {
  const uint32_t f = 0xffffffffu;
  const auto out = Philox4x32({f, f, f, f}, {f, f});
  EXPECT_EQ(out[0], 0x408f276du);
  EXPECT_EQ(out[1], 0x41c83b0eu);
  EXPECT_EQ(out[2], 0xa20bc7c6u);
  EXPECT_EQ(out[3], 0x6d5451fdu);
}

TEST(Philox, KnownAnswerPi) {
  const auto out = Philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu,
                               0x03707344u},
                              {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out[0], 0xd16cfe09u);
  EXPECT_EQ(out[1], 0x94fdccebu);
  EXPECT_EQ(out[2], 0x5001e420u);
  EXPECT_EQ(out[3], 0x24126ea1u);
}

TEST(RngStream, SameSeedSameSequence) {
  RngStream a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.NextU64(), b.NextU64());
}

TEST(RngStream, DifferentSeedsDiffer) {
  RngStream a(1), b(2);
  int equal = 0;
  for (int i = 0; i < 100; ++i) equal += a.NextU64() == b.NextU64();
  EXPECT_EQ(equal, 0);
}

TEST(RngStream, ForkDoesNotAdvanceParent) {
  RngStream a(7), b(7);
  (void)a.Fork(StreamTag::kNoise, 3);
  EXPECT_EQ(a.NextU64(), b.NextU64());
}

TEST(RngStream, ForkIsDeterministicAndKeyed) {
  const RngStream root(9);
  RngStream x = root.Fork(StreamTag::kAgent, 4);
  RngStream y = root.Fork(StreamTag::kAgent, 4);
  RngStream z = root.Fork(StreamTag::kAgent, 5);
  RngStream w = root.Fork(StreamTag::kNoise, 4);
  const uint64_t vx = x.NextU64();
  EXPECT_EQ(vx, y.NextU64());
  EXPECT_NE(vx, z.NextU64());
  EXPECT_NE(vx, w.NextU64());
}

TEST(RngStream, ForkIndependentOfParentPosition) {
  RngStream a(3);
  const RngStream before = a.Fork(StreamTag::kBatch, 0);
  a.NextU64();
  a.NextNormal();
  RngStream after = a.Fork(StreamTag::kBatch, 0);
  RngStream b = before;
  EXPECT_EQ(b.NextU64(), after.NextU64());
}

TEST(RngStream, UniformMoments) {
  RngStream r(11);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = r.NextUniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sq += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.005);
  EXPECT_NEAR(sq / n - 0.25, 1.0 / 12.0, 0.002);
}

TEST(RngStream, NormalMoments) {
  RngStream r(12);
  const int n = 200000;
  double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = r.NextNormal();
    m1 += z;
    m2 += z * z;
    m3 += z * z * z;
    m4 += z * z * z * z;
  }
  EXPECT_NEAR(m1 / n, 0.0, 0.01);
  EXPECT_NEAR(m2 / n, 1.0, 0.015);
  EXPECT_NEAR(m3 / n, 0.0, 0.03);
  EXPECT_NEAR(m4 / n, 3.0, 0.06);
}

TEST(RngStream, UniformIntCoversRangeEvenly) {
  RngStream r(13);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) {
    const uint64_t k = r.UniformInt(7);
    ASSERT_LT(k, 7u);
    ++counts[k];
  }
  for (int c : counts) EXPECT_NEAR(c, n / 7.0, 400.0);
}

TEST(RngStream, UniformIntZeroThrows) {
  RngStream r(1);
  EXPECT_THROW(r.UniformInt(0), Error);
}

TEST(RngStream, SampleWithoutReplacementDistinct) {
  RngStream r(14);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<int> s = r.SampleWithoutReplacement(20, 8);
    ASSERT_EQ(s.size(), 8u);
    const std::set<int> uniq(s.begin(), s.end());
    EXPECT_EQ(uniq.size(), 8u);
    for (int v : s) {
      EXPECT_GE(v, 0);
      EXPECT_LT(v, 20);
    }
  }
}

TEST(RngStream, SampleWithoutReplacementMarginalsUniform) {
  RngStream r(15);
  std::vector<int> counts(10, 0);
  const int trials = 30000;
  for (int t = 0; t < trials; ++t) {
    for (int v : r.SampleWithoutReplacement(10, 3)) ++counts[v];
  }
  for (int c : counts) EXPECT_NEAR(c, trials * 0.3, 300.0);
}

TEST(RngStream, SampleWithoutReplacementRejectsBadSizes) {
  RngStream r(1);
  EXPECT_THROW(r.SampleWithoutReplacement(3, 4), Error);
  EXPECT_THROW(r.SampleWithoutReplacement(3, -1), Error);
}

}  // namespace
}  // namespace geofed
