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

#include "distlab/diffeo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace distlab {

Diffeo::Diffeo(PrimitivePtr prim, Interval ambient) : ambient_(ambient) {
  support_ = prim->support();
  word_.push_back(Letter{std::move(prim), +1});
}

namespace {
std::atomic<std::size_t> g_max_word_length{Diffeo::kMaxWordLength};
}  // namespace

std::size_t Diffeo::max_word_length() { return g_max_word_length.load(); }
void Diffeo::set_max_word_length(std::size_t n) { g_max_word_length.store(n); }

void Diffeo::check_guard() const {
  if (word_.size() > max_word_length())
    throw std::length_error("distlab::Diffeo: word length guard exceeded");
}

DD Diffeo::eval_dd(const DD& x) const {
  check_guard();
  DD y = x;
  for (auto it = word_.rbegin(); it != word_.rend(); ++it) {
    y = (it->exp > 0) ? it->prim->forward(y) : it->prim->inverse(y);
  }
  return y;
}

DD Diffeo::log_derivative(const DD& x) const {
  check_guard();
  DD y = x;
  DD acc(0.0);
  DD ld;
  for (auto it = word_.rbegin(); it != word_.rend(); ++it) {
    y = (it->exp > 0) ? it->prim->forward(y, &ld) : it->prim->inverse(y, &ld);
    acc += ld;
  }
  return acc;
}

double Diffeo::derivative(double x) const {
  double ld = log_derivative(DD(x)).to_double();
  if (ld > 700.0) return std::numeric_limits<double>::infinity();
  return std::exp(ld);
}

std::string Diffeo::to_json_string() const {
  std::ostringstream os;
  os << "{\"ambient\":[" << ambient_.lo << "," << ambient_.hi << "],\"word\":[";
  for (size_t i = 0; i < word_.size(); ++i) {
    if (i) os << ",";
    os << "{\"kind\":\"" << word_[i].prim->kind() << "\",\"name\":\""
       << word_[i].prim->name() << "\",\"exp\":" << word_[i].exp
       << ",\"params\":" << word_[i].prim->params_json() << "}";
  }
  os << "]}";
  return os.str();
}

Diffeo compose(const Diffeo& a, const Diffeo& b) {
  Diffeo r(a.ambient_);
  r.word_ = a.word_;
  r.word_.insert(r.word_.end(), b.word_.begin(), b.word_.end());
  IntervalSet s = a.support_;
  s.add(b.support_);
  r.set_support(std::move(s));
  return r;
}

Diffeo invert(const Diffeo& a) {
  Diffeo r(a.ambient_);
  r.word_.reserve(a.word_.size());
  for (auto it = a.word_.rbegin(); it != a.word_.rend(); ++it) {
    r.word_.push_back(Diffeo::Letter{it->prim, -it->exp});
  }
  r.set_support(a.support_);
  return r;
}

Diffeo conjugate(const Diffeo& a, const Diffeo& by) {
  Diffeo r = compose(compose(by, a), invert(by));
  // supp(by a by^{-1}) = by(supp a); transport endpoints with a small pad.
  IntervalSet s;
  for (const auto& part : a.support().parts()) {
    double lo = by.evaluate(part.lo);
    double hi = by.evaluate(part.hi);
    s.add(Interval{lo - 1e-12, hi + 1e-12});
  }
  r.set_support(std::move(s));
  return r;
}

Diffeo power(const Diffeo& a, std::int64_t n) {
  Diffeo r(a.ambient_);
  if (n == 0) return r;
  const Diffeo base = (n > 0) ? a : invert(a);
  std::int64_t m = (n > 0) ? n : -n;
  if (std::size_t(m) * a.word_.size() > Diffeo::max_word_length())
    throw std::length_error("distlab::power: word length guard exceeded");
  r.word_.reserve(std::size_t(m) * base.word_.size());
  for (std::int64_t i = 0; i < m; ++i)
    r.word_.insert(r.word_.end(), base.word_.begin(), base.word_.end());
  r.set_support(a.support_);
  return r;
}

Diffeo commutator(const Diffeo& a, const Diffeo& b) {
  return compose(compose(a, b), compose(invert(a), invert(b)));
}

namespace {

double grid_point(const Interval& ambient, int grid, int i) {
  return ambient.lo + (ambient.hi - ambient.lo) * double(i) / double(grid - 1);
}

}  // namespace

double sup_distance(const Diffeo& a, const Diffeo& b, int grid) {
  if (grid < 2) throw std::invalid_argument("distlab::sup_distance: grid >= 2");
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    double x = grid_point(a.ambient(), grid, i);
    double d = std::abs((a.eval_dd(DD(x)) - b.eval_dd(DD(x))).to_double());
    worst = std::max(worst, d);
  }
  // endpoint checks (fixed by every ambient diffeomorphism)
  for (double x : {a.ambient().lo, a.ambient().hi}) {
    worst = std::max(worst, std::abs(a.evaluate(x) - x));
    worst = std::max(worst, std::abs(b.evaluate(x) - x));
  }
  return worst;
}

double c1_distance(const Diffeo& a, const Diffeo& b, int grid) {
  double worst = sup_distance(a, b, grid);
  for (int i = 0; i < grid; ++i) {
    double x = grid_point(a.ambient(), grid, i);
    double da = a.derivative(x);
    double db = b.derivative(x);
    worst = std::max(worst, std::abs(da - db));
  }
  return worst;
}

bool numerically_equal(const Diffeo& a, const Diffeo& b) {
  return sup_distance(a, b, 10000) < 1e-8;
}

}  // namespace distlab
