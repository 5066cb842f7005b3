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

namespace distlab {

// The generating system Gamma = {fhat, f, g, hhat, h, psi}.
enum class Gen { kFhat, kF, kG, kHhat, kH, kPsi };

const char* gen_name(Gen g);
Gen gen_from_name(const std::string& name);

struct GenLetter {
  Gen gen;
  std::int64_t exp;  // nonzero
};

// A word over Gamma with signed exponents, kept freely reduced (adjacent
// letters with the same generator are merged, zero exponents dropped).
// letters()[0] is the leftmost factor (applied last).
class GeneratorWord {
 public:
  GeneratorWord() = default;
  explicit GeneratorWord(std::vector<GenLetter> letters);

  static GeneratorWord letter(Gen g, std::int64_t exp = 1);

  const std::vector<GenLetter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }

  // Word-metric cost of this expression: sum of |exponents|.
  std::int64_t length() const;

  GeneratorWord operator*(const GeneratorWord& rhs) const;  // this after rhs
  GeneratorWord inverse() const;
  GeneratorWord power(std::int64_t n) const;
  GeneratorWord conjugated_by(const GeneratorWord& u) const;  // u w u^{-1}

  std::string str() const;  // e.g. "fhat^2 f fhat^-2"
  std::string to_json_string() const;
  static GeneratorWord from_json_string(const std::string& json);

  bool operator==(const GeneratorWord& o) const;

 private:
  void reduce();
  std::vector<GenLetter> letters_;
};

// A word in {fhat, f} of length O(log n) evaluating to f^n, built from the
// base-2 Horner form of n via fhat f^m fhat^{-1} = f^{2m}.
GeneratorWord bs_power_word(std::int64_t n);

// The implemented bound on bs_power_word length (asserted exhaustively in
// tests): 2 floor(log2 n) + popcount(n).
std::int64_t bs_power_word_length_bound(std::int64_t n);

}  // namespace distlab
