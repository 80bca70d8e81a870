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

#include <cmath>
#include <numbers>
#include <utility>

#include "geofed/status.h"

namespace geofed {
namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void MulHiLo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
  const uint64_t product = static_cast<uint64_t>(a) * b;
  hi = static_cast<uint32_t>(product >> 32);
  lo = static_cast<uint32_t>(product);
}

}  // namespace

std::array<uint32_t, 4> Philox4x32(std::array<uint32_t, 4> ctr,
                                   std::array<uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    uint32_t hi0, lo0, hi1, lo1;
    MulHiLo(kPhiloxM0, ctr[0], hi0, lo0);
    MulHiLo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

RngStream::RngStream(uint64_t seed)
    : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
      stream_id_(0) {}

RngStream RngStream::Fork(uint64_t tag) const {
  // The child key is one Philox block of the parent key evaluated at a
  // counter reserved for derivation (high bit of the stream id set).
  const uint64_t id = stream_id_ | (uint64_t{1} << 63);
  const auto out = Philox4x32(
      {static_cast<uint32_t>(tag), static_cast<uint32_t>(tag >> 32),
       static_cast<uint32_t>(id), static_cast<uint32_t>(id >> 32)},
      key_);
  const uint64_t child_id =
      (static_cast<uint64_t>(out[3]) << 32 | out[2]) & ~(uint64_t{1} << 63);
  return RngStream({out[0], out[1]}, child_id);
}

void RngStream::Refill() {
  block_ = Philox4x32(
      {static_cast<uint32_t>(position_), static_cast<uint32_t>(position_ >> 32),
       static_cast<uint32_t>(stream_id_),
       static_cast<uint32_t>(stream_id_ >> 32)},
      key_);
  ++position_;
  block_used_ = 0;
}

uint64_t RngStream::NextU64() {
  if (block_used_ > 2) Refill();
  const uint64_t value =
      static_cast<uint64_t>(block_[block_used_]) << 32 | block_[block_used_ + 1];
  block_used_ += 2;
  return value;
}

double RngStream::NextUniform() {
  // 53 random bits, shifted by half an ulp so 0 is never produced.
  return (static_cast<double>(NextU64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::NextNormal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  const double u1 = NextUniform();
  const double u2 = NextUniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  has_spare_normal_ = true;
  return radius * std::cos(angle);
}

uint64_t RngStream::UniformInt(uint64_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "UniformInt(0)");
  // Rejection on the top of the range keeps the result exactly uniform.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t value;
  do {
    value = NextU64();
  } while (value >= limit);
  return value % n;
}

std::vector<int> RngStream::SampleWithoutReplacement(int n, int k) {
  if (k < 0 || k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot draw " + std::to_string(k) + " of " +
                    std::to_string(n) + " without replacement");
  }
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(UniformInt(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace geofed
