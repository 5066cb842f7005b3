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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "distlab/dd.hpp"
#include "distlab/rational.hpp"

namespace distlab {

// The block times (iii)/(iv): for 2^{i-1} <= n < 2^i with i a positive even
// integer, s_n = log2(1 - 1/sqrt(ell_{i/2})) and t_n = 1/sqrt(ell_{i/2});
// zero on every other block.  ell values must be >= 2 wherever a block is
// active (s_n is undefined at ell = 1).
class Schedule {
 public:
  enum class EllRule { kNone, kJPlusOne, kExplicit };

  static Schedule none() { return Schedule(EllRule::kNone, {}); }
  static Schedule j_plus_one() { return Schedule(EllRule::kJPlusOne, {}); }
  static Schedule explicit_list(std::vector<std::int64_t> ells) {
    return Schedule(EllRule::kExplicit, std::move(ells));
  }

  EllRule rule() const { return rule_; }

  // ell_j for j >= 1; 0 when undefined (block stays inactive).
  std::int64_t ell(std::int64_t j) const {
    if (j < 1) return 0;
    switch (rule_) {
      case EllRule::kNone: return 0;
      case EllRule::kJPlusOne: return j + 1;
      case EllRule::kExplicit:
        return (j <= std::int64_t(ells_.size())) ? ells_[size_t(j - 1)] : 0;
    }
    return 0;
  }

  // i with 2^{i-1} <= n < 2^i for n >= 1.
  static int block_index(std::int64_t n) {
    int i = 0;
    while ((std::int64_t(1) << i) <= n) ++i;
    return i;
  }

  bool active(std::int64_t n) const {
    if (n < 1) return false;
    int i = block_index(n);
    if (i % 2 != 0) return false;
    std::int64_t l = ell(i / 2);
    if (l == 1)
      throw std::invalid_argument(
          "distlab::Schedule: ell = 1 on an active block (s_n undefined)");
    return l >= 2;
  }

  // t_n = 1/sqrt(ell); zero when inactive.
  DD t_n(std::int64_t n) const {
    if (!active(n)) return DD(0.0);
    return 1.0 / dd_sqrt(DD(double(ell(block_index(n) / 2))));
  }

  // 2^{s_n} = 1 - 1/sqrt(ell), exact by construction; 1 when inactive.
  DD s_factor(std::int64_t n) const {
    if (!active(n)) return DD(1.0);
    return DD(1.0) - t_n(n);
  }

  // s_n as a double (log-zone bookkeeping only).
  double s_n(std::int64_t n) const {
    if (!active(n)) return 0.0;
    return std::log2(s_factor(n).to_double());
  }

  // Largest j needed to define every block with n < 2^{i_max+1}.
  static int max_j_needed(int i_max) { return i_max / 2; }

  // Throws if active blocks up to i_max are not fully defined.
  void validate(int i_max) const {
    if (rule_ == EllRule::kNone) return;
    for (int i = 2; i <= i_max; i += 2) {
      std::int64_t l = ell(i / 2);
      if (rule_ == EllRule::kExplicit && l == 0)
        throw std::out_of_range(
            "distlab::Schedule: explicit ell list does not cover block i=" +
            std::to_string(i));
      if (l == 1)
        throw std::invalid_argument(
            "distlab::Schedule: ell = 1 is not allowed on active blocks");
    }
  }

  // The flow-time identity of the commutator on an active block:
  // r = (1 - 2^{s}) t = t^2 = 1/ell, exact as a rational.
  Rational commutator_time_exact(std::int64_t n) const {
    if (!active(n)) return Rational(0);
    return Rational(1, ell(block_index(n) / 2));
  }

 private:
  Schedule(EllRule rule, std::vector<std::int64_t> ells)
      : rule_(rule), ells_(std::move(ells)) {}

  EllRule rule_;
  std::vector<std::int64_t> ells_;
};

}  // namespace distlab
