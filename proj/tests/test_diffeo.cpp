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

#include <memory>
#include <random>

#include "doctest.h"
#include "distlab/kit.hpp"

using namespace distlab;

namespace {

const ConstructionKit& test_kit() {
  static ConstructionKit kit(std::make_shared<Chart>(FieldKind::kDoubleExp, 0.5),
                             Schedule::j_plus_one(), 4);
  return kit;
}

Diffeo sample_word(std::mt19937_64& rng, int max_len) {
  static const Gen gens[6] = {Gen::kFhat, Gen::kF, Gen::kG, Gen::kHhat, Gen::kH,
                              Gen::kPsi};
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> pick(0, 5);
  std::uniform_int_distribution<int> sgn(0, 1);
  Diffeo acc;
  int L = len(rng);
  for (int i = 0; i < L; ++i) {
    const Diffeo& g = test_kit().generator(gens[pick(rng)]);
    acc = compose(acc, sgn(rng) ? g : invert(g));
  }
  return acc;
}

}  // namespace

TEST_CASE("identity and fixed endpoints") {
  Diffeo id;
  CHECK(id.evaluate(0.3) == 0.3);
  CHECK(id.derivative(0.3) == 1.0);
  const auto& K = test_kit();
  CHECK(K.f().evaluate(-1.0) == -1.0);
  CHECK(K.psi().evaluate(2.0) == 2.0);
}

TEST_CASE("random words: monotone, sound supports, group axioms") {
  const auto& K = test_kit();
  (void)K;
  std::mt19937_64 rng(20260808);
  for (int trial = 0; trial < 8; ++trial) {
    Diffeo a = sample_word(rng, 8);
    Diffeo b = sample_word(rng, 8);
    Diffeo c = sample_word(rng, 4);

    double prev = -2.0;
    for (int i = 0; i <= 800; ++i) {
      double x = -1.0 + 3.0 * i / 800.0;
      double v = a.evaluate(x);
      CHECK(v > prev);
      if (!a.support().contains(x)) CHECK(std::abs(v - x) < 1e-12);
      prev = v;
    }
    CHECK(sup_distance(compose(compose(a, b), c), compose(a, compose(b, c)), 500) <
          1e-9);
    CHECK(sup_distance(compose(a, invert(a)), Diffeo(), 500) < 1e-9);
  }
}

TEST_CASE("derivative is the exact chain rule over the word") {
  std::mt19937_64 rng(99);
  Diffeo a = sample_word(rng, 5);
  Diffeo b = sample_word(rng, 5);
  for (double x : {-0.3, 0.21, 0.47, 0.52, 0.8, 1.4}) {
    DD lhs = compose(a, b).log_derivative(DD(x));
    DD rhs = a.log_derivative(b.eval_dd(DD(x))) + b.log_derivative(DD(x));
    CHECK(std::abs((lhs - rhs).to_double()) < 1e-22);
  }
}

TEST_CASE("power and conjugate word semantics") {
  const auto& K = test_kit();
  CHECK(power(K.g(), 0).is_identity_word());
  CHECK(sup_distance(power(K.f(), 3),
                     compose(K.f(), compose(K.f(), K.f())), 400) < 1e-25);
  CHECK(sup_distance(conjugate(K.g(), Diffeo()), K.g(), 400) < 1e-25);
  // supp(f^{-1} g f) = [x_{-1}, x_0]
  Diffeo cg = conjugate(K.g(), invert(K.f()));
  Interval hull = cg.support().hull();
  CHECK(hull.lo == doctest::Approx(K.marker(Rational(-1)).to_double()).epsilon(1e-9));
  CHECK(hull.hi == doctest::Approx(K.marker(Rational(0)).to_double()).epsilon(1e-9));
  // the visibly moved window sits where f maps into the chart-active part of
  // [x_0, x_1]; probe the preimage of its midpoint
  DD x0 = K.marker(Rational(0)), x1 = K.marker(Rational(1));
  DD probe = invert(K.f()).eval_dd(dd_mul_pwr2(x0 + x1, 0.5));
  CHECK(std::abs((cg.eval_dd(probe) - probe).to_double()) > 1e-8);
}

TEST_CASE("word length guard") {
  const auto& K = test_kit();
  CHECK_THROWS_AS(power(K.f(), 2000000), std::length_error);
}

TEST_CASE("numerical equality convention") {
  const auto& K = test_kit();
  CHECK(numerically_equal(compose(K.fhat(), invert(K.fhat())), Diffeo()));
  CHECK_FALSE(numerically_equal(K.f(), Diffeo()));
}

TEST_CASE("serialization describes the word") {
  const auto& K = test_kit();
  std::string js = conjugate(K.g(), invert(K.f())).to_json_string();
  CHECK(js.find("\"chart_conj\"") != std::string::npos);
  CHECK(js.find("\"flow_translate\"") != std::string::npos);
  CHECK(js.find("\"exp\":-1") != std::string::npos);
}
