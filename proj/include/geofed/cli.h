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

// Command-line front end:
//
//   geofed account --eps E --delta D --agents N --sampled S --rounds T
//                  [--delta-hat H] [--json]
//   geofed account --config FILE
//   geofed account --table1 [--csv FILE]
//   geofed gen {pca|spd|hsp} ... -o FILE
//   geofed run CONFIG [--no-dp] [--output-dir DIR] [--repeats R] [--seed S]
//
// Exit codes: 0 success, 1 runtime or config failure, 2 usage error.

#ifndef GEOFED_CLI_H_
#define GEOFED_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace geofed::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int Main(int argc, char** argv);

}  // namespace geofed::cli

#endif  // GEOFED_CLI_H_
