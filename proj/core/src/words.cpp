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

#include "distlab/words.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace distlab {

const char* gen_name(Gen g) {
  switch (g) {
    case Gen::kFhat: return "fhat";
    case Gen::kF: return "f";
    case Gen::kG: return "g";
    case Gen::kHhat: return "hhat";
    case Gen::kH: return "h";
    case Gen::kPsi: return "psi";
  }
  return "?";
}

Gen gen_from_name(const std::string& name) {
  if (name == "fhat") return Gen::kFhat;
  if (name == "f") return Gen::kF;
  if (name == "g") return Gen::kG;
  if (name == "hhat") return Gen::kHhat;
  if (name == "h") return Gen::kH;
  if (name == "psi") return Gen::kPsi;
  throw std::invalid_argument("distlab: unknown generator '" + name + "'");
}

GeneratorWord::GeneratorWord(std::vector<GenLetter> letters)
    : letters_(std::move(letters)) {
  reduce();
}

GeneratorWord GeneratorWord::letter(Gen g, std::int64_t exp) {
  GeneratorWord w;
  if (exp != 0) w.letters_.push_back(GenLetter{g, exp});
  return w;
}

void GeneratorWord::reduce() {
  std::vector<GenLetter> out;
  for (const auto& l : letters_) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().gen == l.gen) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  letters_ = std::move(out);
}

std::int64_t GeneratorWord::length() const {
  std::int64_t n = 0;
  for (const auto& l : letters_) n += l.exp < 0 ? -l.exp : l.exp;
  return n;
}

GeneratorWord GeneratorWord::operator*(const GeneratorWord& rhs) const {
  std::vector<GenLetter> cat = letters_;
  cat.insert(cat.end(), rhs.letters_.begin(), rhs.letters_.end());
  return GeneratorWord(std::move(cat));
}

GeneratorWord GeneratorWord::inverse() const {
  std::vector<GenLetter> rev;
  rev.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    rev.push_back(GenLetter{it->gen, -it->exp});
  return GeneratorWord(std::move(rev));
}

GeneratorWord GeneratorWord::power(std::int64_t n) const {
  GeneratorWord acc;
  if (n == 0) return acc;
  GeneratorWord base = (n > 0) ? *this : inverse();
  std::int64_t m = (n > 0) ? n : -n;
  for (std::int64_t i = 0; i < m; ++i) acc = acc * base;
  return acc;
}

GeneratorWord GeneratorWord::conjugated_by(const GeneratorWord& u) const {
  return u * (*this) * u.inverse();
}

std::string GeneratorWord::str() const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (i) os << " ";
    os << gen_name(letters_[i].gen);
    if (letters_[i].exp != 1) os << "^" << letters_[i].exp;
  }
  return os.str();
}

std::string GeneratorWord::to_json_string() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& l : letters_) {
    j.push_back({{"gen", gen_name(l.gen)}, {"exp", l.exp}});
  }
  return j.dump();
}

GeneratorWord GeneratorWord::from_json_string(const std::string& json) {
  nlohmann::json j = nlohmann::json::parse(json);
  std::vector<GenLetter> letters;
  for (const auto& item : j) {
    letters.push_back(
        GenLetter{gen_from_name(item.at("gen").get<std::string>()),
                  item.at("exp").get<std::int64_t>()});
  }
  return GeneratorWord(std::move(letters));
}

bool GeneratorWord::operator==(const GeneratorWord& o) const {
  if (letters_.size() != o.letters_.size()) return false;
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i].gen != o.letters_[i].gen || letters_[i].exp != o.letters_[i].exp)
      return false;
  }
  return true;
}

GeneratorWord bs_power_word(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("distlab::bs_power_word: n >= 1 required");
  if (n == 1) return GeneratorWord::letter(Gen::kF);
  GeneratorWord half = bs_power_word(n / 2);
  GeneratorWord w =
      GeneratorWord::letter(Gen::kFhat) * half * GeneratorWord::letter(Gen::kFhat, -1);
  if (n % 2 == 1) w = w * GeneratorWord::letter(Gen::kF);
  return w;
}

std::int64_t bs_power_word_length_bound(std::int64_t n) {
  if (n < 1) return 0;
  int log2n = 63 - std::countl_zero(std::uint64_t(n));
  return 2 * std::int64_t(log2n) + std::popcount(std::uint64_t(n));
}

}  // namespace distlab
