// Copyright 2026 The blotto-bwk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Statistical self-checks of the path sampler, the co-occurrence matrix and
// the edge estimator against enumeration and Monte-Carlo.

#include <cstdint>
#include <string>
#include <vector>

namespace blotto {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs on the fixed-set graph for (m, n), which must have at most 200 paths.
std::vector<CheckResult> run_validation(int m, int n, std::int64_t samples,
                                        std::uint64_t seed);

}  // namespace blotto
