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

#include "geofed/status.h"

namespace geofed {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidPoint: return "InvalidPoint";
    case ErrorCode::kBaseMismatch: return "BaseMismatch";
    case ErrorCode::kOutsideInjectivityRadius: return "OutsideInjectivityRadius";
    case ErrorCode::kInvalidRate: return "InvalidRate";
    case ErrorCode::kInvalidDelta: return "InvalidDelta";
    case ErrorCode::kEmptyComposition: return "EmptyComposition";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kBatchTooLarge: return "BatchTooLarge";
    case ErrorCode::kInvalidSample: return "InvalidSample";
    case ErrorCode::kInvalidConstants: return "InvalidConstants";
    case ErrorCode::kOracleFailed: return "OracleFailed";
    case ErrorCode::kAggregationFailed: return "AggregationFailed";
    case ErrorCode::kGenError: return "GenError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kSplitError: return "SplitError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace geofed
