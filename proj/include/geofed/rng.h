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

#ifndef GEOFED_RNG_H_
#define GEOFED_RNG_H_

#include <array>
#include <cstdint>
#include <vector>

namespace geofed {

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
// easy as 1, 2, 3"). Exposed for known-answer testing.
std::array<uint32_t, 4> Philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key);

// Tags used to derive independent child streams. Values are part of the
// reproducibility contract: changing one changes every seeded result.
enum class StreamTag : uint64_t {
  kRound = 1,
  kAgent = 2,
  kSubsample = 3,
  kBatch = 4,
  kNoise = 5,
  kIndex = 6,
  kOutput = 7,
  kInit = 8,
  kData = 9,
  kRepeat = 10,
};

// A counter-based random stream. The output is a pure function of the key
// path (seed plus every Fork tag) and the position within the stream, so
// results never depend on which thread draws them or in which order
// independent streams are consumed.
//
// A single RngStream is not thread-safe; fork one per task instead.
class RngStream {
 public:
  explicit RngStream(uint64_t seed);

  // Child stream keyed by (this stream's key, tag). Does not advance this
  // stream.
  RngStream Fork(uint64_t tag) const;
  RngStream Fork(StreamTag tag) const {
    return Fork(static_cast<uint64_t>(tag));
  }
  RngStream Fork(StreamTag tag, uint64_t index) const {
    return Fork(tag).Fork(index);
  }

  uint64_t NextU64();
  // Uniform on the open interval (0, 1).
  double NextUniform();
  // Standard normal via Box-Muller.
  double NextNormal();
  // Uniform integer in [0, n). n must be positive.
  uint64_t UniformInt(uint64_t n);

  // k distinct indices drawn uniformly from [0, n) without replacement, in
  // draw order (partial Fisher-Yates).
  std::vector<int> SampleWithoutReplacement(int n, int k);

 private:
  RngStream(std::array<uint32_t, 2> key, uint64_t stream_id)
      : key_(key), stream_id_(stream_id) {}

  void Refill();

  std::array<uint32_t, 2> key_;
  uint64_t stream_id_;
  uint64_t position_ = 0;
  std::array<uint32_t, 4> block_{};
  int block_used_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace geofed

#endif  // GEOFED_RNG_H_
