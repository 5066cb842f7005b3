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

// Acceptance suite: every quantitative gate of the construction at desk
// scale (i <= 6, n <= 64), one pass/fail line per criterion.  Tolerances are
// pinned here; the two level constants marked "recorded" are regression
// values from the first oracle run of this binary with this exact
// configuration (double_exp field, basepoint 1/2, ell_j = j+1, i_max = 6).

#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "distlab/certificates.hpp"
#include "distlab/kopell.hpp"
#include "distlab/variation.hpp"

using namespace distlab;

namespace {

// ---- recorded oracle levels (regression constants) ----
// var(log D fbar^n)/n sits near this level for n in {16, 32, 64}
// (measured 14.1 .. 20.7 on the first oracle run).
constexpr double kFbarTrendLevel = 17.0;
// min over 4 <= n <= 32 of e_n for the constant sequence tau_n = 1
// (measured 0.3856 on the first oracle run).
constexpr double kKopellConstantFloor = 0.3856;

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

}  // namespace

int main() {
  auto chart = std::make_shared<Chart>(FieldKind::kDoubleExp, 0.5);
  ConstructionKit kit(chart, Schedule::j_plus_one(), 6);
  const int grid = 10000;

  // 1. Baumslag-Solitar relation fhat^i f fhat^{-i} = f^{2^i}
  {
    double worst = 0.0;
    for (int i = 1; i <= 4; ++i) {
      worst = std::max(worst, sup_distance(conjugate(kit.f(), power(kit.fhat(), i)),
                                           power(kit.f(), std::int64_t(1) << i), grid));
    }
    report(1, worst < 1e-8,
           "BS relation sup-distance " + fmt(worst) + " < 1e-8 (i = 1..4, 1e4 grid)");
  }

  // 2. Marker algebra under f and fhat
  {
    double worst = 0.0;
    for (const Rational& q : {Rational(-4), Rational(-3, 4), Rational(-1, 2), Rational(0),
                              Rational(1, 2), Rational(1), Rational(2)}) {
      worst = std::max(worst, std::abs((kit.f().eval_dd(kit.marker(q)) -
                                        kit.marker(q + Rational(1))).to_double()));
      worst = std::max(worst, std::abs((kit.fhat().eval_dd(kit.marker(q)) -
                                        kit.marker(q * Rational(2))).to_double()));
    }
    report(2, worst < 1e-9, "marker transport error " + fmt(worst) + " < 1e-9");
  }

  // 3. Support chain: psi fhat^{-i} f^{-n} h f^n fhat^i psi^{-1} fixes
  //    (0, x_{-1/2}) u (x_0, 1)
  {
    double worst = 0.0;
    double xm12 = kit.marker(Rational(-1, 2)).to_double();
    double x0 = kit.marker(Rational(0)).to_double();
    for (int i : {2, 4}) {
      std::int64_t n = std::int64_t(1) << i;
      Diffeo inner =
          conjugate(conjugate(kit.h(), power(kit.f(), -n)), power(kit.fhat(), -i));
      Diffeo conj = conjugate(inner, kit.psi());
      for (int j = 1; j < 200; ++j) {
        double y = xm12 * j / 200.0;
        worst = std::max(worst, std::abs(conj.evaluate(y) - y));
        double z = x0 + (1.0 - x0) * j / 200.0;
        worst = std::max(worst, std::abs(conj.evaluate(z) - z));
      }
    }
    report(3, worst < 1e-8,
           "support chain moves sampled gap points by " + fmt(worst) + " < 1e-8");
  }

  // 4. Key identity h_{n/2} = (fhat^i c_n fhat^{-i})^{ell_{i/2}}
  {
    double worst = 0.0, worst_r = 0.0;
    bool exact = true;
    for (int i : {2, 4}) {
      KeyIdentityResult res = key_identity_check(kit, i, i == 2 ? 40 : 24);
      worst = std::max(worst, std::max(res.residual, res.block_flow_residual));
      worst_r = std::max(worst_r, res.r_residual);
      exact = exact && res.r_exact;
    }
    report(4, worst < 1e-7 && exact && worst_r < 1e-30,
           "key identity residual " + fmt(worst) +
               " < 1e-7; r = (1-2^s)t = 1/ell exact (dd residual " + fmt(worst_r) + ")");
  }

  // 5. Word budget and sublinearity of the certified upper bounds
  GrowthBound growth;
  std::vector<FbarCertificate> certs;
  {
    std::vector<std::int64_t> n_list{2, 8, 32};
    for (std::int64_t n = 1; n <= 64; n *= 2) n_list.push_back(n);
    growth = derivative_growth_lower_bound(
        kit.fbar(), {kit.fhat(), kit.f(), kit.g(), kit.hhat(), kit.h(), kit.psi()},
        n_list, 2000);
    bool budgets = true;
    bool decreasing = true;
    double prev = 1e300;
    std::string detail;
    for (int i : {2, 4, 6}) {
      int g = (i == 2) ? grid : (i == 4 ? 2500 : 800);
      FbarCertificate fc = fbar_power_certificate(kit, i, &growth, g);
      certs.push_back(fc);
      if (fc.h_word_length > fc.h_budget) budgets = false;
      if (fc.cert.upper_length > fc.total_budget) budgets = false;
      double ratio = double(fc.cert.upper_length) / double(fc.cert.power_n);
      if (ratio >= prev) decreasing = false;
      prev = ratio;
      detail += " i=" + std::to_string(i) + ":" + std::to_string(fc.h_word_length) +
                "<=" + std::to_string(fc.h_budget);
    }
    report(5, budgets && decreasing,
           "h_{n/2} word within 2 ell (5i+4+4|f^n|) and upper(n)/n decreasing;" + detail);
  }

  // 6. Lower bound consistency and a Polterovich-Sodin witness
  {
    bool consistent = true;
    double worst_lower = 0.0;
    for (const auto& fc : certs) {
      if (fc.cert.equality_residual >= 1e-7) consistent = false;
      if (fc.cert.lower_bound > double(fc.cert.upper_length)) consistent = false;
      worst_lower = std::max(worst_lower, fc.cert.lower_bound);
    }
    bool witness = false;
    std::int64_t witness_n = 0;
    for (const auto& w : growth.witnesses) {
      if (w.n <= 64) {
        witness = true;
        witness_n = w.n;
        break;
      }
    }
    report(6, consistent && witness,
           "log(max Dfbar^n)/log C <= upper length for all certificates (max lower " +
               fmt(worst_lower) + "); witness Dfbar^n(x) >= n at n = " +
               std::to_string(witness_n));
  }

  // 7. Distortion trends: decay for f, a stable positive level for fbar
  {
    AsymptoticDistortionEstimate f_tr = asymptotic_distortion(kit.f(), 64, 64, chart);
    double v8 = 0, v64 = 0;
    for (auto& [n, v] : f_tr.trend) {
      if (n == 8) v8 = v;
      if (n == 64) v64 = v;
    }
    AsymptoticDistortionEstimate fb_tr =
        asymptotic_distortion(kit.fbar(), 64, 64, chart);
    double lo = 1e300, hi = 0.0;
    for (auto& [n, v] : fb_tr.trend) {
      if (n >= 16) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    bool ok = v64 < v8 && lo > 0.0 && hi < 2.0 * lo &&
              lo > kFbarTrendLevel / 1.5 && hi < kFbarTrendLevel * 1.5;
    report(7, ok,
           "f: var/n " + fmt(v8) + " -> " + fmt(v64) + " (decay); fbar: var/n in [" +
               fmt(lo) + ", " + fmt(hi) + "] around recorded level " +
               fmt(kFbarTrendLevel));
  }

  // 8. Kopell suite
  {
    KopellResult decay = kopell_check(kit, [](int n) { return 1.0 / n; }, 32, 40);
    bool monotone = true;
    for (int n = 4; n < 32; ++n) {
      if (decay.e_n[n] > decay.e_n[n - 1] * (1.0 + 1e-9)) monotone = false;
    }
    bool chain_ok = !decay.samples.empty();
    for (const auto& cs : decay.samples) chain_ok = chain_ok && cs.holds;

    KopellResult flat = kopell_check(kit, [](int) { return 1.0; }, 32, 40);
    double floor_val = 1e300;
    for (int n = 4; n <= 32; ++n) floor_val = std::min(floor_val, flat.e_n[n - 1]);
    for (const auto& cs : flat.samples) chain_ok = chain_ok && cs.holds;

    bool ok = monotone && decay.e_n[31] < 0.05 && floor_val > 0.8 * kKopellConstantFloor &&
              decay.verdict == KopellResult::Verdict::kC1 &&
              flat.verdict == KopellResult::Verdict::kNotC1 && chain_ok;
    report(8, ok,
           "tau=1/n: e_n monotone to " + fmt(decay.e_n[31]) + " < 0.05; tau=1 floor " +
               fmt(floor_val) + " >= 0.8 x recorded " + fmt(kKopellConstantFloor) +
               "; quantitative chain holds");
  }

  // 9. Lipschitz / entropy chain
  {
    bool all_hold = true, decreasing = true;
    double prev = 1e300;
    double logL = 0.0;
    for (int i = 1; i <= 6; ++i) {
      std::int64_t n = std::int64_t(1) << i;
      LipschitzChain chain = lipschitz_chain_check(kit, bs_power_word(n), 2000);
      logL = chain.log_L;
      if (!(chain.measured_log_lip <= chain.bound + 1e-6)) all_hold = false;
      double surrogate = double(chain.word_length) * chain.log_L / double(n);
      if (surrogate >= prev) decreasing = false;
      prev = surrogate;
    }
    report(9, all_hold && decreasing,
           "log Lip(f^n) <= ell_n log L + 1e-6 (log L = " + fmt(logL) +
               "), and (ell_n log L)/n decreasing over n = 2^i, i <= 6");
  }

  // 10. Subadditivity of var(log D) on 50 random word pairs
  {
    std::mt19937_64 rng(20260808);
    static const Gen gens[6] = {Gen::kFhat, Gen::kF, Gen::kG, Gen::kHhat, Gen::kH,
                                Gen::kPsi};
    std::uniform_int_distribution<int> len(1, 8), pick(0, 5), sgn(0, 1);
    auto word = [&] {
      Diffeo acc;
      int L = len(rng);
      for (int i = 0; i < L; ++i) {
        const Diffeo& g = kit.generator(gens[pick(rng)]);
        acc = compose(acc, sgn(rng) ? g : invert(g));
      }
      return acc;
    };
    double worst = -1e300;
    for (int trial = 0; trial < 50; ++trial) {
      Diffeo a = word(), b = word();
      VariationEstimate e_ab = var_log_derivative(compose(a, b), 64);
      std::vector<double> img;
      for (double x : e_ab.partition_points) img.push_back(b.evaluate(x));
      VariationEstimate e_a = var_log_derivative(a, 64, img);
      VariationEstimate e_b = var_log_derivative(b, 64, e_ab.partition_points);
      worst = std::max(worst, e_ab.value - e_a.value - e_b.value);
    }
    report(10, worst <= 1e-4,
           "var(log D(ab)) - var(log Da) - var(log Db) <= " + fmt(worst) +
               " over 50 pairs (tolerance 1e-4)");
  }

  std::printf("%d/10 criteria passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
