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

#include "distlab/kit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace distlab {

namespace {

DD pchip_slope(const DD& m_left, const DD& m_right) {
  if (!(m_left.hi > 0.0) || !(m_right.hi > 0.0)) return DD(0.0);
  // harmonic mean; always within the monotonicity region (<= 2 min)
  return dd_mul_pwr2(m_left * m_right, 2.0) / (m_left + m_right);
}

}  // namespace

ConstructionKit::ConstructionKit(std::shared_ptr<const Chart> chart, Schedule schedule,
                                 int i_max)
    : chart_(std::move(chart)), schedule_(schedule), i_max_(i_max) {
  if (i_max_ < 2 || i_max_ % 2 != 0)
    throw std::invalid_argument("distlab::ConstructionKit: i_max must be even and >= 2");
  schedule_.validate(i_max_);

  DD x0 = chart_->marker(DD(0.0));
  DD x1 = chart_->marker(DD(1.0));

  f_ = Diffeo(make_flow_translate_primitive(chart_, DD(1.0), "f"));
  fhat_ = Diffeo(make_flow_scale_primitive(chart_, 1.0, "fhat"));
  g_ = Diffeo(make_conjugated_flow_primitive(chart_, DD(1.0), x0, x1, "g"));

  // hhat / h act on the finitely many active blocks n in [1, 2^{i_max+1});
  // every other block has time zero and stays exactly fixed.
  std::map<std::int64_t, BlockTime> h_blocks, hhat_blocks;
  std::int64_t n_cap = std::int64_t(1) << (i_max_ + 1);
  for (std::int64_t n = 1; n < n_cap; ++n) {
    if (!schedule_.active(n)) continue;
    BlockTime bt;
    bt.t = schedule_.t_n(n);
    bt.factor = schedule_.s_factor(n);
    bt.log2 = schedule_.s_n(n);
    h_blocks.emplace(n, bt);
    hhat_blocks.emplace(n, bt);
  }
  hhat_ = Diffeo(make_block_flow_primitive(chart_, true, hhat_blocks, x0, x1, "hhat"));
  h_ = Diffeo(make_block_flow_primitive(chart_, false, h_blocks, x0, x1, "h"));

  // merged active runs -> marker support of h and hhat
  {
    std::vector<MarkerInterval> runs;
    std::int64_t run_start = -1, prev = -2;
    for (const auto& [n, bt] : h_blocks) {
      if (n != prev + 1) {
        if (run_start >= 0)
          runs.push_back(MarkerInterval{SupportPoint::marker(Rational(run_start)),
                                        SupportPoint::marker(Rational(prev + 1))});
        run_start = n;
      }
      prev = n;
    }
    if (run_start >= 0)
      runs.push_back(MarkerInterval{SupportPoint::marker(Rational(run_start)),
                                    SupportPoint::marker(Rational(prev + 1))});
    h_support_ = std::move(runs);
  }

  // psi: monotone C^1 interpolant with the (v)/(vi) constraints, exact
  // identity on [x_{-1/2}, x_0], derivative clamped to 1 at the junctions.
  {
    DD xm34 = chart_->marker(DD(-0.75));
    DD xm12 = chart_->marker(DD(-0.5));
    DD m1 = (DD(0.0) - DD(-1.0)) / (xm34 - DD(-1.0));
    DD m2 = (xm12 - DD(0.0)) / (xm12 - xm34);
    DD m4 = (DD(1.0) - x0) / (x1 - x0);
    DD m5 = (DD(2.0) - DD(1.0)) / (DD(2.0) - x1);
    std::vector<CubicKnot> knots;
    knots.push_back({DD(-1.0), DD(-1.0), m1, false});
    knots.push_back({xm34, DD(0.0), pchip_slope(m1, m2), false});
    knots.push_back({xm12, xm12, DD(1.0), true});  // identity to x_0
    knots.push_back({x0, x0, DD(1.0), false});
    knots.push_back({x1, DD(1.0), pchip_slope(m4, m5), false});
    knots.push_back({DD(2.0), DD(2.0), m5, false});
    psi_ = Diffeo(make_monotone_cubic_primitive(std::move(knots), "psi"));
  }

  fbar_ = compose(f_, g_);
}

const Diffeo& ConstructionKit::generator(Gen gen) const {
  switch (gen) {
    case Gen::kFhat: return fhat_;
    case Gen::kF: return f_;
    case Gen::kG: return g_;
    case Gen::kHhat: return hhat_;
    case Gen::kH: return h_;
    case Gen::kPsi: return psi_;
  }
  throw std::invalid_argument("distlab: bad generator");
}

DD ConstructionKit::marker(const Rational& q) const {
  std::lock_guard<std::mutex> lock(marker_mu_);
  auto key = std::make_pair(q.num(), q.den());
  auto it = marker_cache_.find(key);
  if (it != marker_cache_.end()) return it->second;
  DD val = chart_->marker(q.to_dd());
  marker_cache_.emplace(key, val);
  return val;
}

std::vector<MarkerInterval> ConstructionKit::generator_support(Gen gen) const {
  switch (gen) {
    case Gen::kF:
    case Gen::kFhat:
      return {MarkerInterval{SupportPoint::zero(), SupportPoint::one()}};
    case Gen::kG:
      return {MarkerInterval{SupportPoint::marker(Rational(0)),
                             SupportPoint::marker(Rational(1))}};
    case Gen::kH:
    case Gen::kHhat:
      return h_support_;
    case Gen::kPsi:
      return {MarkerInterval{SupportPoint::ambient_lo(),
                             SupportPoint::marker(Rational(-1, 2))},
              MarkerInterval{SupportPoint::marker(Rational(0)),
                             SupportPoint::ambient_hi()}};
  }
  return {};
}

double ConstructionKit::support_point_value(const SupportPoint& p) const {
  switch (p.tag) {
    case SupportPoint::Tag::kAmbientLo: return -1.0;
    case SupportPoint::Tag::kZero: return 0.0;
    case SupportPoint::Tag::kMarker: return marker(p.q).to_double();
    case SupportPoint::Tag::kOne: return 1.0;
    case SupportPoint::Tag::kAmbientHi: return 2.0;
  }
  return 0.0;
}

Diffeo ConstructionKit::realize(const GeneratorWord& word) const {
  Diffeo acc;
  for (const auto& letter : word.letters()) {
    acc = compose(acc, power(generator(letter.gen), letter.exp));
  }
  return acc;
}

ConstructionKit build_kit(std::shared_ptr<const Chart> chart, Schedule schedule, int i_max) {
  return ConstructionKit(std::move(chart), schedule, i_max);
}

Diffeo h_n_map(const ConstructionKit& kit, std::int64_t m) {
  if (m < 0) throw std::invalid_argument("distlab::h_n_map: m >= 0 required");
  Diffeo acc;
  for (std::int64_t j = m; j >= 1; --j) {
    acc = compose(acc, conjugate(kit.g(), power(kit.f(), -j)));
  }
  return acc;
}

CommutatorChain commutator_chain(const ConstructionKit& kit, int i) {
  if (i < 2 || i % 2 != 0 || i > kit.i_max())
    throw std::invalid_argument(
        "distlab::commutator_chain: i must be even with 2 <= i <= i_max");
  std::int64_t n = std::int64_t(1) << i;
  CommutatorChain out;
  out.n = n;
  Diffeo fm_n = power(kit.f(), -n);
  Diffeo fhat_mi = power(kit.fhat(), -i);
  out.a_n = conjugate(conjugate(kit.h(), fm_n), fhat_mi);
  out.b_n = conjugate(conjugate(conjugate(kit.hhat(), fm_n), fhat_mi), kit.psi());
  out.c_n = commutator(out.a_n, out.b_n);
  return out;
}

// ---- support arithmetic ----

namespace {

struct PointBound {
  SupportPoint lb, ub;
  bool exact;
};

PointBound exact_point(SupportPoint p) { return {p, p, true}; }

// transport of one lattice point through generator^dir, with lattice
// bounding when the image leaves the lattice
PointBound transport_point(const ConstructionKit& kit, const SupportPoint& p, Gen gen,
                           int dir) {
  using Tag = SupportPoint::Tag;
  if (p.tag == Tag::kAmbientLo || p.tag == Tag::kAmbientHi) return exact_point(p);

  switch (gen) {
    case Gen::kF: {
      if (p.tag != Tag::kMarker) return exact_point(p);  // fixes 0 and 1
      return exact_point(SupportPoint::marker(p.q + Rational(dir)));
    }
    case Gen::kFhat: {
      if (p.tag != Tag::kMarker) return exact_point(p);
      Rational two(2);
      return exact_point(SupportPoint::marker(dir > 0 ? p.q * two : p.q / two));
    }
    case Gen::kG: {
      if (p.tag != Tag::kMarker) return exact_point(p);
      if (p.q <= Rational(0) || p.q >= Rational(1)) return exact_point(p);
      return {SupportPoint::marker(Rational(0)), SupportPoint::marker(Rational(1)),
              false};
    }
    case Gen::kH:
    case Gen::kHhat: {
      if (p.tag != Tag::kMarker) return exact_point(p);
      if (p.q.is_integer()) return exact_point(p);
      // block of the fractional marker
      std::int64_t k = std::int64_t(std::floor(p.q.to_double()));
      bool active = (k >= 1) && kit.schedule().active(k);
      if (!active) return exact_point(p);
      return {SupportPoint::marker(Rational(k)), SupportPoint::marker(Rational(k + 1)),
              false};
    }
    case Gen::kPsi: {
      const Rational qm34(-3, 4), qm12(-1, 2), q0(0), q1(1);
      if (dir > 0) {
        if (p.tag == Tag::kZero)
          return {SupportPoint::ambient_lo(), SupportPoint::zero(), false};
        if (p.tag == Tag::kOne)
          return {SupportPoint::one(), SupportPoint::ambient_hi(), false};
        const Rational& q = p.q;
        if (q == qm34) return exact_point(SupportPoint::zero());
        if (q >= qm12 && q <= q0) return exact_point(p);
        if (q == q1) return exact_point(SupportPoint::one());
        if (q < qm34)
          return {SupportPoint::ambient_lo(), SupportPoint::zero(), false};
        if (q < qm12)  // (-3/4, -1/2)
          return {SupportPoint::zero(), SupportPoint::marker(qm12), false};
        if (q < q1)  // (0, 1)
          return {SupportPoint::marker(q0), SupportPoint::one(), false};
        return {SupportPoint::one(), SupportPoint::ambient_hi(), false};  // q > 1
      }
      // psi^{-1}
      if (p.tag == Tag::kZero) return exact_point(SupportPoint::marker(qm34));
      if (p.tag == Tag::kOne) return exact_point(SupportPoint::marker(q1));
      const Rational& q = p.q;
      if (q >= qm12 && q <= q0) return exact_point(p);
      if (q < qm12)  // x_q in (0, x_{-1/2}) -> (x_{-3/4}, x_{-1/2})
        return {SupportPoint::marker(qm34), SupportPoint::marker(qm12), false};
      // x_q in (x_0, 1) -> (x_0, x_1)
      return {SupportPoint::marker(q0), SupportPoint::marker(q1), false};
    }
  }
  return exact_point(p);
}

struct IntervalBound {
  MarkerInterval iv;
  bool exact;
};

IntervalBound transport_interval(const ConstructionKit& kit, const MarkerInterval& iv,
                                 Gen gen, int dir) {
  PointBound lo = transport_point(kit, iv.lo, gen, dir);
  PointBound hi = transport_point(kit, iv.hi, gen, dir);
  return {MarkerInterval{lo.lb, hi.ub}, lo.exact && hi.exact};
}

// expanded single-exponent letters, leftmost first
std::vector<std::pair<Gen, int>> expand_letters(const GeneratorWord& w) {
  std::vector<std::pair<Gen, int>> out;
  for (const auto& l : w.letters()) {
    int s = l.exp > 0 ? 1 : -1;
    for (std::int64_t k = 0; k < (l.exp > 0 ? l.exp : -l.exp); ++k)
      out.emplace_back(l.gen, s);
  }
  return out;
}

void support_rec(const ConstructionKit& kit, std::vector<std::pair<Gen, int>> letters,
                 std::vector<MarkerInterval>* parts, bool* exact) {
  while (true) {
    if (letters.empty()) return;
    if (letters.size() == 1) {
      auto sup = kit.generator_support(letters[0].first);
      parts->insert(parts->end(), sup.begin(), sup.end());
      return;
    }
    // free cancellation at the seam can appear after peeling
    bool reduced = false;
    for (size_t i = 0; i + 1 < letters.size(); ++i) {
      if (letters[i].first == letters[i + 1].first &&
          letters[i].second == -letters[i + 1].second) {
        letters.erase(letters.begin() + i, letters.begin() + i + 2);
        reduced = true;
        break;
      }
    }
    if (reduced) continue;

    if (letters.front().first == letters.back().first &&
        letters.front().second == -letters.back().second) {
      // w = u w' u^{-1}: recurse then transport through u
      Gen gen = letters.front().first;
      int dir = letters.front().second;
      std::vector<std::pair<Gen, int>> inner(letters.begin() + 1, letters.end() - 1);
      std::vector<MarkerInterval> inner_parts;
      support_rec(kit, std::move(inner), &inner_parts, exact);
      for (const auto& iv : inner_parts) {
        IntervalBound b = transport_interval(kit, iv, gen, dir);
        if (!b.exact) *exact = false;
        parts->push_back(b.iv);
      }
      return;
    }

    // fallback: supp(u w') <= supp(u) + supp(w')
    auto sup = kit.generator_support(letters.front().first);
    parts->insert(parts->end(), sup.begin(), sup.end());
    letters.erase(letters.begin());
  }
}

}  // namespace

std::string MarkerSupport::str() const {
  if (parts.empty()) return "{}";
  std::ostringstream os;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) os << " u ";
    os << parts[i].str();
  }
  if (!exact) os << " (widened)";
  return os.str();
}

MarkerSupport support_of(const ConstructionKit& kit, const GeneratorWord& word) {
  MarkerSupport out;
  support_rec(kit, expand_letters(word), &out.parts, &out.exact);
  out.parts = merge_marker_intervals(std::move(out.parts));
  return out;
}

KeyIdentityResult key_identity_check(const ConstructionKit& kit, int i,
                                     int grid_per_block) {
  KeyIdentityResult res;
  res.i = i;
  std::int64_t n = std::int64_t(1) << i;
  res.n = n;
  std::int64_t m = n / 2;  // f^{-n} shifts the active blocks [2^{i-1}, 2^i) here
  if (!kit.schedule().active(m))
    throw std::invalid_argument(
        "distlab::key_identity_check: blocks [2^{i-1}, 2^i) are inactive");
  res.ell = kit.schedule().ell(i / 2);

  // flow-time arithmetic r = (1 - 2^s) t = 1/ell
  res.r_exact = kit.schedule().commutator_time_exact(m) == Rational(1, res.ell);
  {
    DD t = kit.schedule().t_n(m);
    DD r_num = (DD(1.0) - kit.schedule().s_factor(m)) * t;
    res.r_residual = std::abs((r_num - DD(1.0) / double(res.ell)).to_double());
  }

  Diffeo lhs = h_n_map(kit, m);
  CommutatorChain chain = commutator_chain(kit, i);
  Diffeo conj = conjugate(chain.c_n, power(kit.fhat(), i));
  Diffeo rhs = power(conj, res.ell);

  // time-r blockwise flow on [x_{-m}, x_0]; fhat^i c_n fhat^{-i} must agree
  // with it block by block (the Lie-algebra step of the argument)
  std::map<std::int64_t, BlockTime> r_blocks;
  for (std::int64_t k = -m; k < 0; ++k) {
    BlockTime bt;
    bt.t = DD(1.0) / double(res.ell);
    bt.factor = DD(1.0);
    bt.log2 = 0.0;
    r_blocks.emplace(k, bt);
  }
  Diffeo r_flow(make_block_flow_primitive(kit.chart_ptr(), false, r_blocks,
                                          kit.marker(Rational(0)), kit.marker(Rational(1)),
                                          "r_flow"));

  double worst = 0.0, worst_block = 0.0;
  for (std::int64_t k = -m; k < 0; ++k) {
    double lo = kit.marker(Rational(k)).to_double();
    double hi = kit.marker(Rational(k + 1)).to_double();
    // Half the samples uniform in space, half uniform in flow time; the
    // latter concentrate where the block maps act visibly.
    std::vector<DD> samples;
    for (int j = 0; j <= grid_per_block / 2; ++j) {
      samples.emplace_back(lo + (hi - lo) * double(j) / double(grid_per_block / 2));
    }
    for (int j = 1; j < grid_per_block / 2; ++j) {
      DD q = DD(double(k)) + DD(double(j)) / double(grid_per_block / 2);
      samples.push_back(kit.chart().marker(q));
    }
    for (const DD& yd : samples) {
      DD lv = lhs.eval_dd(yd);
      DD rv = rhs.eval_dd(yd);
      worst = std::max(worst, std::abs((lv - rv).to_double()));
      DD cv = conj.eval_dd(yd);
      DD fv = r_flow.eval_dd(yd);
      worst_block = std::max(worst_block, std::abs((cv - fv).to_double()));
    }
  }
  // a few samples outside the support, where both sides must fix points
  for (double y : {-0.5, 0.2, kit.marker(Rational(0)).to_double() + 1e-3, 0.9, 1.5}) {
    DD lv = lhs.eval_dd(DD(y));
    DD rv = rhs.eval_dd(DD(y));
    worst = std::max(worst, std::abs((lv - rv).to_double()));
  }
  res.residual = worst;
  res.block_flow_residual = worst_block;
  return res;
}

std::string ConstructionKit::summary_json_string() const {
  nlohmann::json j;
  j["field"] = field_kind_name(chart_->kind());
  j["basepoint"] = chart_->basepoint();
  j["i_max"] = i_max_;
  nlohmann::json markers;
  for (const Rational& q :
       {Rational(-4), Rational(-1), Rational(-3, 4), Rational(-1, 2), Rational(0),
        Rational(1, 2), Rational(1), Rational(2), Rational(4)}) {
    markers[q.str()] = marker(q).to_double();
  }
  j["markers"] = markers;
  nlohmann::json gens;
  for (Gen g : {Gen::kFhat, Gen::kF, Gen::kG, Gen::kHhat, Gen::kH, Gen::kPsi}) {
    nlohmann::json item;
    item["word_length"] = generator(g).word_length();
    nlohmann::json sup = nlohmann::json::array();
    for (const auto& iv : generator_support(g)) sup.push_back(iv.str());
    item["support"] = sup;
    gens[gen_name(g)] = item;
  }
  j["generators"] = gens;
  j["chart_round_trip"] = chart_->report().max_round_trip;
  j["chart_quadrature_rel"] = chart_->report().max_quadrature_rel;
  return j.dump(2);
}

}  // namespace distlab
