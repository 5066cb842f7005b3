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

#include "distlab/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace distlab {

std::string Certificate::to_json_string() const {
  nlohmann::json j;
  j["target"] = target;
  j["power_n"] = power_n;
  j["upper_word"] = nlohmann::json::parse(upper_word.to_json_string());
  j["upper_length"] = upper_length;
  j["equality_residual"] = equality_residual;
  j["residual_threshold"] = residual_threshold;
  j["failed"] = failed;
  j["lower_bound"] = lower_bound;
  j["consistent"] = consistent;
  return j.dump();
}

double measured_log_C(const ConstructionKit& kit, int grid) {
  double best = 0.0;
  double best_x = 0.0;
  const Interval amb{-1.0, 2.0};
  for (Gen g : {Gen::kFhat, Gen::kF, Gen::kG, Gen::kHhat, Gen::kH, Gen::kPsi}) {
    const Diffeo& d = kit.generator(g);
    for (int i = 0; i <= grid; ++i) {
      double x = amb.lo + (amb.hi - amb.lo) * double(i) / double(grid);
      double ld = std::abs(d.log_derivative(DD(x)).to_double());
      if (ld > best) {
        best = ld;
        best_x = x;
      }
    }
  }
  // one refinement pass around the detected maximum
  double h = 3.0 / double(grid);
  for (Gen g : {Gen::kFhat, Gen::kF, Gen::kG, Gen::kHhat, Gen::kH, Gen::kPsi}) {
    const Diffeo& d = kit.generator(g);
    for (int i = 0; i <= 64; ++i) {
      double x = best_x - h + 2.0 * h * double(i) / 64.0;
      if (x < amb.lo || x > amb.hi) continue;
      best = std::max(best, std::abs(d.log_derivative(DD(x)).to_double()));
    }
  }
  return best;
}

GrowthBound derivative_growth_lower_bound(const Diffeo& d, const std::vector<Diffeo>& gens,
                                          const std::vector<std::int64_t>& n_list,
                                          int grid) {
  if (gens.empty())
    throw std::invalid_argument("distlab::derivative_growth_lower_bound: no generators");
  if (sup_distance(d, Diffeo(), 1000) < 1e-8)
    throw std::invalid_argument(
        "distlab::derivative_growth_lower_bound: trivial element has no lower bound");

  GrowthBound out;
  const Interval amb = d.ambient();
  for (const Diffeo& g : gens) {
    for (int i = 0; i <= grid; ++i) {
      double x = amb.lo + (amb.hi - amb.lo) * double(i) / double(grid);
      out.log_C = std::max(out.log_C, std::abs(g.log_derivative(DD(x)).to_double()));
    }
  }

  std::vector<std::int64_t> ns = n_list;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.empty()) return out;
  std::int64_t n_top = ns.back();

  // walk orbits once, accumulating log D d^k(x) by the chain rule
  std::vector<double> max_log(ns.size(), -1e300);
  for (int i = 0; i <= grid; ++i) {
    double x0 = amb.lo + (amb.hi - amb.lo) * double(i) / double(grid);
    DD y(x0);
    DD acc(0.0);
    size_t slot = 0;
    for (std::int64_t k = 1; k <= n_top && slot < ns.size(); ++k) {
      DD ld = d.log_derivative(y);
      y = d.eval_dd(y);
      acc += ld;
      if (k == ns[slot]) {
        double a = acc.to_double();
        max_log[slot] = std::max(max_log[slot], a);
        if (a >= std::log(double(k)) && out.witnesses.size() < 200) {
          out.witnesses.push_back(GrowthBound::Witness{k, x0, a});
        }
        ++slot;
      }
    }
  }
  for (size_t s = 0; s < ns.size(); ++s) {
    out.entries.push_back(GrowthBound::Entry{
        ns[s], max_log[s], out.log_C > 0 ? max_log[s] / out.log_C : 0.0});
  }
  return out;
}

GeneratorWord h_half_word(const ConstructionKit& kit, int i) {
  if (i < 2 || i % 2 != 0 || i > kit.i_max())
    throw std::invalid_argument("distlab::h_half_word: i even with 2 <= i <= i_max");
  std::int64_t n = std::int64_t(1) << i;
  if (!kit.schedule().active(n / 2))
    throw std::invalid_argument("distlab::h_half_word: blocks [2^{i-1}, 2^i) inactive");
  std::int64_t ell = kit.schedule().ell(i / 2);

  GeneratorWord fn = bs_power_word(n);
  GeneratorWord fhat_i = GeneratorWord::letter(Gen::kFhat, i);
  GeneratorWord a = GeneratorWord::letter(Gen::kH).conjugated_by(fn.inverse());
  a = a.conjugated_by(fhat_i.inverse());
  GeneratorWord b = GeneratorWord::letter(Gen::kHhat).conjugated_by(fn.inverse());
  b = b.conjugated_by(fhat_i.inverse()).conjugated_by(GeneratorWord::letter(Gen::kPsi));
  GeneratorWord c = a * b * a.inverse() * b.inverse();
  return c.conjugated_by(fhat_i).power(ell);
}

FbarCertificate fbar_power_certificate(const ConstructionKit& kit, int i,
                                       const GrowthBound* growth, int grid) {
  if (i < 2 || i % 2 != 0)
    throw std::invalid_argument(
        "distlab::fbar_power_certificate: i must be a positive even integer");
  if (i > kit.i_max())
    throw std::invalid_argument("distlab::fbar_power_certificate: i exceeds i_max");
  FbarCertificate out;
  out.i = i;
  out.n = std::int64_t(1) << i;
  std::int64_t m = out.n / 2;
  out.ell = kit.schedule().ell(i / 2);

  GeneratorWord h_word = h_half_word(kit, i);
  out.h_word_length = h_word.length();
  out.fn_word_length = bs_power_word(out.n).length();
  out.h_budget = 2 * out.ell * (5 * i + 4 + 4 * out.fn_word_length);

  GeneratorWord fm = bs_power_word(m);
  GeneratorWord word = GeneratorWord::letter(Gen::kF) * fm * h_word *
                       GeneratorWord::letter(Gen::kF, -1);
  out.total_budget = out.h_budget + fm.length() + 2;

  out.cert.target = "fbar^" + std::to_string(m);
  out.cert.power_n = m;
  out.cert.upper_word = word;
  out.cert.upper_length = word.length();
  out.cert.residual_threshold = 1e-7;
  out.cert.equality_residual =
      sup_distance(kit.realize(word), power(kit.fbar(), m), grid);
  out.cert.failed = !(out.cert.equality_residual < out.cert.residual_threshold);
  if (growth) {
    for (const auto& e : growth->entries) {
      if (e.n == m) out.cert.lower_bound = e.lower_bound;
    }
  }
  out.cert.consistent = out.cert.lower_bound <= double(out.cert.upper_length);
  return out;
}

LipschitzChain lipschitz_chain_check(const ConstructionKit& kit, const GeneratorWord& word,
                                     int grid) {
  if (word.empty())
    throw std::invalid_argument("distlab::lipschitz_chain_check: empty word");
  LipschitzChain out;
  out.log_L = measured_log_C(kit, grid);
  out.word_length = word.length();
  out.bound = double(out.word_length) * out.log_L;
  Diffeo d = kit.realize(word);
  double best = -1e300;
  for (int i = 0; i <= grid; ++i) {
    double x = -1.0 + 3.0 * double(i) / double(grid);
    best = std::max(best, d.log_derivative(DD(x)).to_double());
  }
  out.measured_log_lip = best;
  out.holds = out.measured_log_lip <= out.bound + 1e-6;
  return out;
}

}  // namespace distlab
