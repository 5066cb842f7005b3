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
#include "distlab/certificates.hpp"
#include "distlab/experiment.hpp"
#include "distlab/kopell.hpp"
#include "distlab/variation.hpp"

using namespace distlab;

namespace {

const ConstructionKit& test_kit() {
  static ConstructionKit kit(std::make_shared<Chart>(FieldKind::kDoubleExp, 0.5),
                             Schedule::j_plus_one(), 4);
  return kit;
}

}  // namespace

TEST_CASE("variation basics") {
  const auto& K = test_kit();
  CHECK(var_log_derivative(Diffeo(), 16).value == 0.0);
  VariationEstimate v = var_log_derivative(K.fhat(), 32);
  CHECK(v.value > 0.5);
  bool monotone = true;
  for (size_t i = 1; i < v.refinement_history.size(); ++i) {
    if (v.refinement_history[i].second < v.refinement_history[i - 1].second - 1e-12)
      monotone = false;
  }
  CHECK(monotone);
  CHECK_THROWS_AS(var_log_derivative(K.f(), 4), std::invalid_argument);
}

TEST_CASE("variation subadditivity on seeded random pairs") {
  const auto& K = test_kit();
  std::mt19937_64 rng(424242);
  static const Gen gens[6] = {Gen::kFhat, Gen::kF, Gen::kG, Gen::kHhat, Gen::kH,
                              Gen::kPsi};
  std::uniform_int_distribution<int> len(1, 6), pick(0, 5), sgn(0, 1);
  auto word = [&] {
    Diffeo acc;
    int L = len(rng);
    for (int i = 0; i < L; ++i) {
      const Diffeo& g = K.generator(gens[pick(rng)]);
      acc = compose(acc, sgn(rng) ? g : invert(g));
    }
    return acc;
  };
  for (int trial = 0; trial < 6; ++trial) {
    Diffeo a = word(), b = word();
    VariationEstimate e_ab = var_log_derivative(compose(a, b), 32);
    std::vector<double> img;
    for (double x : e_ab.partition_points) img.push_back(b.evaluate(x));
    VariationEstimate e_a = var_log_derivative(a, 32, img);
    VariationEstimate e_b = var_log_derivative(b, 32, e_ab.partition_points);
    CHECK(e_ab.value <= e_a.value + e_b.value + 1e-4);
  }
}

TEST_CASE("asymptotic distortion decays for the flow and not for fbar") {
  const auto& K = test_kit();
  AsymptoticDistortionEstimate f_tr = asymptotic_distortion(K.f(), 16, 32);
  REQUIRE(f_tr.trend.size() >= 4);
  CHECK(f_tr.trend.back().second < f_tr.trend.front().second);
  CHECK(f_tr.upper_estimate < f_tr.per_n.front().second);

  AsymptoticDistortionEstimate fb = asymptotic_distortion(K.fbar(), 16, 32);
  CHECK(fb.trend.back().second > 0.5);  // stays at a positive level
  CHECK(asymptotic_distortion(Diffeo(), 8, 32).upper_estimate == 0.0);
}

TEST_CASE("bs words") {
  CHECK(bs_power_word(1).length() == 1);
  GeneratorWord w8 = bs_power_word(8);
  CHECK(w8.length() == 7);
  CHECK(w8 == GeneratorWord::letter(Gen::kFhat, 3) * GeneratorWord::letter(Gen::kF) *
                  GeneratorWord::letter(Gen::kFhat, -3));
  for (std::int64_t n = 1; n <= 1000; ++n) {
    std::int64_t len = bs_power_word(n).length();
    CHECK(len == bs_power_word_length_bound(n));
    std::int64_t log2n = 0;
    while ((std::int64_t(1) << (log2n + 1)) <= n) ++log2n;
    std::int64_t pop = 0;
    for (std::int64_t m = n; m; m >>= 1) pop += m & 1;
    CHECK(len <= 2 * log2n + pop * (2 * log2n + 1));
  }
  CHECK_THROWS_AS(bs_power_word(0), std::invalid_argument);

  const auto& K = test_kit();
  for (std::int64_t n : {3, 8, 20}) {
    CHECK(sup_distance(K.realize(bs_power_word(n)), power(K.f(), n), 2000) < 1e-9);
  }
}

TEST_CASE("generator word algebra") {
  GeneratorWord w = GeneratorWord::letter(Gen::kF, 2) * GeneratorWord::letter(Gen::kF, -2);
  CHECK(w.empty());
  GeneratorWord a = GeneratorWord::letter(Gen::kFhat) * GeneratorWord::letter(Gen::kF) *
                    GeneratorWord::letter(Gen::kFhat, -1);
  CHECK(a.length() == 3);
  CHECK(a.inverse().inverse() == a);
  CHECK(a.power(2).length() == 3 * 2 - 2);  // interior fhat^{-1} fhat cancels
  GeneratorWord round = GeneratorWord::from_json_string(a.to_json_string());
  CHECK(round == a);
}

TEST_CASE("fbar certificate at i = 2") {
  const auto& K = test_kit();
  GrowthBound growth = derivative_growth_lower_bound(
      K.fbar(), {K.fhat(), K.f(), K.g(), K.hhat(), K.h(), K.psi()}, {2, 8}, 600);
  CHECK(growth.log_C > 0.0);
  FbarCertificate fc = fbar_power_certificate(K, 2, &growth, 2000);
  CHECK(fc.ell == 2);
  CHECK(fc.fn_word_length == 5);  // fhat^2 f fhat^-2
  CHECK(fc.h_budget == 136);      // 2*2*(10 + 4 + 20)
  CHECK(fc.h_word_length <= fc.h_budget);
  CHECK(fc.cert.upper_length <= fc.total_budget);
  CHECK(fc.cert.equality_residual < 1e-7);
  CHECK_FALSE(fc.cert.failed);
  CHECK(fc.cert.consistent);
  CHECK(fc.cert.to_json_string().find("fbar^2") != std::string::npos);
  CHECK_THROWS_AS(fbar_power_certificate(K, 0, nullptr, 100), std::invalid_argument);
  CHECK_THROWS_AS(fbar_power_certificate(K, 3, nullptr, 100), std::invalid_argument);
}

TEST_CASE("growth bound rejects the identity") {
  const auto& K = test_kit();
  CHECK_THROWS_AS(derivative_growth_lower_bound(Diffeo(), {K.f()}, {8}, 100),
                  std::invalid_argument);
}

TEST_CASE("lipschitz chain") {
  const auto& K = test_kit();
  LipschitzChain single = lipschitz_chain_check(K, GeneratorWord::letter(Gen::kF), 800);
  CHECK(single.holds);
  CHECK(single.measured_log_lip <= single.log_L + 1e-9);
  LipschitzChain bs = lipschitz_chain_check(K, bs_power_word(8), 800);
  CHECK(bs.holds);
  CHECK(bs.word_length == 7);
  CHECK_THROWS_AS(lipschitz_chain_check(K, GeneratorWord(), 100), std::invalid_argument);
}

TEST_CASE("kopell check trends") {
  const auto& K = test_kit();
  KopellResult zero = kopell_check(K, [](int) { return 0.0; }, 6, 12);
  for (double e : zero.e_n) CHECK(e < 1e-12);
  CHECK(zero.verdict == KopellResult::Verdict::kC1);

  KopellResult decay = kopell_check(K, [](int n) { return 1.0 / n; }, 12, 24);
  CHECK(decay.e_n[11] < decay.e_n[3]);
  for (const auto& cs : decay.samples) CHECK(cs.holds);

  KopellResult flat = kopell_check(K, [](int) { return 1.0; }, 12, 24);
  CHECK(flat.e_n.back() > 0.1);

  CHECK_THROWS_AS(kopell_check(K, Diffeo(), [](int) { return 0.5; }, 6, 8),
                  std::invalid_argument);
}

TEST_CASE("experiment config round trip and validation") {
  ExperimentConfig c;
  c.i_max = 4;
  c.seed = 77;
  ExperimentConfig back = ExperimentConfig::from_json_string(c.to_json_string());
  CHECK(back.i_max == 4);
  CHECK(back.seed == 77);
  CHECK(back.hash() == c.hash());

  ExperimentConfig odd;
  odd.i_max = 5;
  CHECK_THROWS_AS(odd.validate(), std::invalid_argument);
  ExperimentConfig neg;
  neg.tol_identity = -1.0;
  CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
  ExperimentConfig shorte;
  shorte.ell_rule = "explicit";
  shorte.ell_list = {2};
  shorte.i_max = 6;
  CHECK_THROWS_AS(shorte.validate(), std::out_of_range);
  // empty explicit list degrades to the all-zero schedule
  ExperimentConfig empty;
  empty.ell_rule = "explicit";
  empty.ell_list = {};
  CHECK_NOTHROW(empty.validate());
  CHECK(empty.schedule().rule() == Schedule::EllRule::kNone);
}
