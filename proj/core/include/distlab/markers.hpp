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

#include <string>
#include <vector>

#include "distlab/rational.hpp"

namespace distlab {

// Endpoints for marker-indexed support arithmetic: the ambient endpoints,
// the chart endpoints 0 and 1, and the markers x_q = phi(q) ordered by the
// exact rational index q.
struct SupportPoint {
  enum class Tag { kAmbientLo, kZero, kMarker, kOne, kAmbientHi };

  Tag tag = Tag::kZero;
  Rational q;  // meaningful for kMarker

  static SupportPoint ambient_lo() { return {Tag::kAmbientLo, Rational(0)}; }
  static SupportPoint zero() { return {Tag::kZero, Rational(0)}; }
  static SupportPoint marker(Rational q) { return {Tag::kMarker, q}; }
  static SupportPoint one() { return {Tag::kOne, Rational(0)}; }
  static SupportPoint ambient_hi() { return {Tag::kAmbientHi, Rational(0)}; }

  bool is_marker() const { return tag == Tag::kMarker; }

  // total order: -1 < 0 < x_q (by q) < 1 < 2
  bool operator<(const SupportPoint& o) const {
    if (tag != o.tag) {
      auto rank = [](Tag t) {
        switch (t) {
          case Tag::kAmbientLo: return 0;
          case Tag::kZero: return 1;
          case Tag::kMarker: return 2;
          case Tag::kOne: return 3;
          case Tag::kAmbientHi: return 4;
        }
        return 0;
      };
      return rank(tag) < rank(o.tag);
    }
    if (tag == Tag::kMarker) return q < o.q;
    return false;
  }
  bool operator==(const SupportPoint& o) const {
    if (tag != o.tag) return false;
    if (tag == Tag::kMarker) return q == o.q;
    return true;
  }

  std::string str() const {
    switch (tag) {
      case Tag::kAmbientLo: return "-1";
      case Tag::kZero: return "0";
      case Tag::kMarker: return "x_{" + q.str() + "}";
      case Tag::kOne: return "1";
      case Tag::kAmbientHi: return "2";
    }
    return "?";
  }
};

struct MarkerInterval {
  SupportPoint lo, hi;
  std::string str() const { return "[" + lo.str() + ", " + hi.str() + "]"; }
  bool operator==(const MarkerInterval& o) const { return lo == o.lo && hi == o.hi; }
};

// Sorted union with merging of touching intervals.
std::vector<MarkerInterval> merge_marker_intervals(std::vector<MarkerInterval> parts);

}  // namespace distlab
