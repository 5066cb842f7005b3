// Copyright 2026 The distlab authors
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

#include "distlab/markers.hpp"

#include <algorithm>

namespace distlab {

std::vector<MarkerInterval> merge_marker_intervals(std::vector<MarkerInterval> parts) {
  std::sort(parts.begin(), parts.end(),
            [](const MarkerInterval& a, const MarkerInterval& b) { return a.lo < b.lo; });
  std::vector<MarkerInterval> merged;
  for (const auto& p : parts) {
    if (p.hi < p.lo) continue;
    if (!merged.empty() && (p.lo < merged.back().hi || p.lo == merged.back().hi)) {
      if (merged.back().hi < p.hi) merged.back().hi = p.hi;
    } else {
      merged.push_back(p);
    }
  }
  return merged;
}

}  // namespace distlab
