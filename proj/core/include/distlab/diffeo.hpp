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
#include <string>
#include <vector>

#include "distlab/interval.hpp"
#include "distlab/primitives.hpp"

namespace distlab {

// A diffeomorphism of the ambient interval, stored lazily as a word of
// primitives with exponents +-1; word_[0] is applied last (leftmost factor).
// Deep powers therefore stay exact compositions.  Values are immutable and
// evaluation is pure.
class Diffeo {
 public:
  struct Letter {
    PrimitivePtr prim;
    int exp;  // +1 or -1
  };

  static constexpr std::size_t kMaxWordLength = 1000000;

  // Evaluation refuses words longer than this (runtime-adjustable guard
  // keeping desk-scale runs bounded).
  static std::size_t max_word_length();
  static void set_max_word_length(std::size_t n);

  Diffeo() : ambient_{-1.0, 2.0} {}
  explicit Diffeo(Interval ambient) : ambient_(ambient) {}
  Diffeo(PrimitivePtr prim, Interval ambient = Interval{-1.0, 2.0});

  const Interval& ambient() const { return ambient_; }
  const std::vector<Letter>& word() const { return word_; }
  std::size_t word_length() const { return word_.size(); }
  bool is_identity_word() const { return word_.empty(); }
  const IntervalSet& support() const { return support_; }

  DD eval_dd(const DD& x) const;
  double evaluate(double x) const { return eval_dd(DD(x)).to_double(); }

  // Exact chain rule over the word (sum of primitive log derivatives along
  // the orbit).  Use this for anything that can grow: derivatives of long
  // words overflow doubles long before the word length guard trips.
  DD log_derivative(const DD& x) const;
  double derivative(double x) const;

  std::string to_json_string() const;

  friend Diffeo compose(const Diffeo& a, const Diffeo& b);  // a after b
  friend Diffeo invert(const Diffeo& a);
  friend Diffeo conjugate(const Diffeo& a, const Diffeo& by);  // by a by^{-1}
  friend Diffeo power(const Diffeo& a, std::int64_t n);
  friend Diffeo commutator(const Diffeo& a, const Diffeo& b);  // a b a^{-1} b^{-1}

 private:
  void set_support(IntervalSet s) { support_ = std::move(s); }
  void check_guard() const;

  std::vector<Letter> word_;
  Interval ambient_;
  IntervalSet support_;
};

Diffeo compose(const Diffeo& a, const Diffeo& b);
Diffeo invert(const Diffeo& a);
Diffeo conjugate(const Diffeo& a, const Diffeo& by);
Diffeo power(const Diffeo& a, std::int64_t n);
Diffeo commutator(const Diffeo& a, const Diffeo& b);

// max |a(x) - b(x)| over a uniform grid (plus the ambient endpoints).
double sup_distance(const Diffeo& a, const Diffeo& b, int grid);
// sup_distance plus max |Da - Db| over the same grid.
double c1_distance(const Diffeo& a, const Diffeo& b, int grid);

// The numerical equality convention used everywhere downstream:
// sup_distance on a 1e4 grid with endpoint checks below 1e-8.
bool numerically_equal(const Diffeo& a, const Diffeo& b);

}  // namespace distlab
