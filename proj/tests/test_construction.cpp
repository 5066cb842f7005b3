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

#include "doctest.h"
#include "distlab/kit.hpp"

using namespace distlab;

namespace {

const ConstructionKit& test_kit() {
  static ConstructionKit kit(std::make_shared<Chart>(FieldKind::kDoubleExp, 0.5),
                             Schedule::j_plus_one(), 4);
  return kit;
}

}  // namespace

TEST_CASE("marker algebra under f and fhat") {
  const auto& K = test_kit();
  for (const Rational& q : {Rational(-4), Rational(-3, 4), Rational(-1, 2), Rational(0),
                            Rational(1, 2), Rational(1), Rational(2)}) {
    DD via_f = K.f().eval_dd(K.marker(q));
    CHECK(std::abs((via_f - K.marker(q + Rational(1))).to_double()) < 1e-12);
    DD via_fhat = K.fhat().eval_dd(K.marker(q));
    CHECK(std::abs((via_fhat - K.marker(q * Rational(2))).to_double()) < 1e-12);
  }
}

TEST_CASE("baumslag-solitar relation") {
  const auto& K = test_kit();
  for (int i = 1; i <= 3; ++i) {
    double d = sup_distance(conjugate(K.f(), power(K.fhat(), i)),
                            power(K.f(), std::int64_t(1) << i), 2500);
    CHECK(d < 1e-9);
  }
}

TEST_CASE("generator constraints from the construction") {
  const auto& K = test_kit();
  DD x0 = K.marker(Rational(0)), x1 = K.marker(Rational(1));
  CHECK(std::abs((K.g().eval_dd(x0) - x0).to_double()) < 1e-14);
  CHECK(std::abs((K.g().eval_dd(x1) - x1).to_double()) < 1e-14);
  double mid = 0.5 * (x0.to_double() + x1.to_double());
  CHECK(std::abs(K.g().evaluate(mid) - mid) > 1e-6);

  CHECK(std::abs(K.psi().eval_dd(K.marker(Rational(-3, 4))).to_double()) < 1e-12);
  CHECK(std::abs(K.psi().eval_dd(K.marker(Rational(1))).to_double() - 1.0) < 1e-12);
  double a = K.marker(Rational(-1, 2)).to_double();
  for (int j = 0; j <= 32; ++j) {
    double y = a + (x0.to_double() - a) * j / 32.0;
    CHECK(K.psi().evaluate(y) == y);
  }
}

TEST_CASE("schedule rules (iii)/(iv)") {
  Schedule s = Schedule::j_plus_one();
  // active exactly on blocks [2^{i-1}, 2^i) for even i
  CHECK_FALSE(s.active(1));
  CHECK(s.active(2));
  CHECK(s.active(3));
  CHECK_FALSE(s.active(4));  // i = 3 block
  CHECK_FALSE(s.active(7));
  CHECK(s.active(8));
  CHECK(s.active(15));
  CHECK_FALSE(s.active(16));
  CHECK_FALSE(s.active(-3));

  // ell = 4: 2^s = 1/2, t = 1/2, r = 1/4 exactly
  Schedule e4 = Schedule::explicit_list({4, 4, 4});
  CHECK(e4.s_factor(2) == DD(0.5));
  CHECK(e4.t_n(2) == DD(0.5));
  CHECK(e4.commutator_time_exact(2) == Rational(1, 4));
  CHECK(e4.s_n(2) == doctest::Approx(-1.0).epsilon(1e-15));

  CHECK_THROWS_AS(Schedule::explicit_list({1}).active(2), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::explicit_list({2}).validate(4), std::out_of_range);
  CHECK_NOTHROW(Schedule::none().validate(8));

  ConstructionKit trivial(test_kit().chart_ptr(), Schedule::none(), 2);
  CHECK(sup_distance(trivial.h(), Diffeo(), 800) == 0.0);
  CHECK(sup_distance(trivial.hhat(), Diffeo(), 800) == 0.0);
}

TEST_CASE("h_n factorization through fbar") {
  const auto& K = test_kit();
  CHECK(h_n_map(K, 0).is_identity_word());
  for (std::int64_t n : {1, 2, 4}) {
    Diffeo lhs = h_n_map(K, n);
    Diffeo rhs = compose(power(K.f(), -n),
                         compose(invert(K.f()), compose(power(K.fbar(), n), K.f())));
    CHECK(sup_distance(lhs, rhs, 2500) < 1e-9);
  }
  Interval hull = h_n_map(K, 2).support().hull();
  CHECK(hull.lo == doctest::Approx(K.marker(Rational(-2)).to_double()).epsilon(1e-9));
  CHECK(hull.hi == doctest::Approx(K.marker(Rational(0)).to_double()).epsilon(1e-9));
}

TEST_CASE("commutator chain localizes to [x_{-1/2}, x_0]") {
  const auto& K = test_kit();
  CommutatorChain ch = commutator_chain(K, 2);
  for (double y : {-0.7, -0.2, 1.1, 1.8}) {
    CHECK(std::abs(ch.c_n.evaluate(y) - y) < 1e-12);
  }
  double xm12 = K.marker(Rational(-1, 2)).to_double();
  double x0 = K.marker(Rational(0)).to_double();
  for (int j = 1; j < 24; ++j) {
    double y = xm12 * j / 24.0;
    CHECK(std::abs(ch.c_n.evaluate(y) - y) < 1e-9);
    double z = x0 + (1.0 - x0) * j / 24.0;
    CHECK(std::abs(ch.c_n.evaluate(z) - z) < 1e-9);
  }
  Diffeo core = commutator(K.h(), K.hhat());
  Diffeo rhs = conjugate(conjugate(core, power(K.f(), -4)), power(K.fhat(), -2));
  for (int j = 0; j <= 32; ++j) {
    double y = xm12 + (x0 - xm12) * j / 32.0;
    CHECK(std::abs((ch.c_n.eval_dd(DD(y)) - rhs.eval_dd(DD(y))).to_double()) < 1e-9);
  }
  CHECK_THROWS_AS(commutator_chain(K, 3), std::invalid_argument);
  CHECK_THROWS_AS(commutator_chain(K, 6), std::invalid_argument);  // > i_max here
}

TEST_CASE("key identity at i = 2") {
  const auto& K = test_kit();
  KeyIdentityResult res = key_identity_check(K, 2, 32);
  CHECK(res.ell == 2);
  CHECK(res.r_exact);
  CHECK(res.r_residual < 1e-30);
  CHECK(res.residual < 1e-7);
  CHECK(res.block_flow_residual < 1e-7);
}

TEST_CASE("support arithmetic reproduces the paper displays") {
  const auto& K = test_kit();

  MarkerSupport sh = support_of(K, GeneratorWord::letter(Gen::kH));
  REQUIRE(sh.parts.size() == 2);  // i_max = 4: runs [x_2, x_4] and [x_8, x_16]
  CHECK(sh.exact);
  CHECK(sh.parts[0] ==
        MarkerInterval{SupportPoint::marker(Rational(2)), SupportPoint::marker(Rational(4))});
  CHECK(sh.parts[1] == MarkerInterval{SupportPoint::marker(Rational(8)),
                                      SupportPoint::marker(Rational(16))});

  // supp(f^{-n} h f^n) for i = 4, n = 16
  GeneratorWord w = GeneratorWord::letter(Gen::kH)
                        .conjugated_by(GeneratorWord::letter(Gen::kF, -16));
  MarkerSupport s1 = support_of(K, w);
  CHECK(s1.exact);
  REQUIRE(s1.parts.size() == 2);
  CHECK(s1.parts[0] == MarkerInterval{SupportPoint::marker(Rational(-14)),
                                      SupportPoint::marker(Rational(-12))});
  CHECK(s1.parts[1] == MarkerInterval{SupportPoint::marker(Rational(-8)),
                                      SupportPoint::marker(Rational(0))});

  // then fhat^{-i}: indices divide by 2^i = 16
  GeneratorWord w2 = w.conjugated_by(GeneratorWord::letter(Gen::kFhat, -4));
  MarkerSupport s2 = support_of(K, w2);
  CHECK(s2.exact);
  REQUIRE(s2.parts.size() == 2);
  CHECK(s2.parts[0] == MarkerInterval{SupportPoint::marker(Rational(-7, 8)),
                                      SupportPoint::marker(Rational(-3, 4))});
  CHECK(s2.parts[1] == MarkerInterval{SupportPoint::marker(Rational(-1, 2)),
                                      SupportPoint::marker(Rational(0))});

  // the displayed arithmetic (2^{i-2} - 2^i)/2^i = -3/4, -2^{i-1}/2^i = -1/2
  CHECK(Rational((1 << 2) - (1 << 4)) / Rational(1 << 4) == Rational(-3, 4));
  CHECK(Rational(-(1 << 3)) / Rational(1 << 4) == Rational(-1, 2));

  // psi conjugation widens into [-1,0] u [x_{-1/2},x_0] u [1,2]
  GeneratorWord w3 = w2.conjugated_by(GeneratorWord::letter(Gen::kPsi));
  MarkerSupport s3 = support_of(K, w3);
  CHECK_FALSE(s3.exact);  // psi(x_{-7/8}) leaves the lattice; endpoints widen
  for (const auto& part : s3.parts) {
    bool left = !(SupportPoint::zero() < part.hi);
    bool core = !(part.lo < SupportPoint::marker(Rational(-1, 2))) &&
                !(SupportPoint::marker(Rational(0)) < part.hi);
    bool right = !(part.lo < SupportPoint::one());
    CHECK((left || core || right));
  }

  CHECK(support_of(K, GeneratorWord()).parts.empty());
}
