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

#pragma once

#include <algorithm>
#include <vector>

namespace distlab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool empty() const { return hi < lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return hi - lo; }
};

// Sorted, merged union of closed intervals.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts) { for (auto& p : parts) add(p); }

  void add(const Interval& iv) {
    if (iv.empty()) return;
    parts_.push_back(iv);
    normalize();
  }

  void add(const IntervalSet& other) {
    for (const auto& p : other.parts_) parts_.push_back(p);
    normalize();
  }

  bool contains(double x) const {
    for (const auto& p : parts_)
      if (p.contains(x)) return true;
    return false;
  }

  bool empty() const { return parts_.empty(); }
  const std::vector<Interval>& parts() const { return parts_; }

  Interval hull() const {
    if (parts_.empty()) return Interval{0.0, -1.0};
    return Interval{parts_.front().lo, parts_.back().hi};
  }

 private:
  void normalize() {
    std::sort(parts_.begin(), parts_.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const auto& p : parts_) {
      if (!merged.empty() && p.lo <= merged.back().hi) {
        merged.back().hi = std::max(merged.back().hi, p.hi);
      } else {
        merged.push_back(p);
      }
    }
    parts_ = std::move(merged);
  }

  std::vector<Interval> parts_;
};

}  // namespace distlab
