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

#include "distlab/primitives.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace distlab {

namespace {

class IdentityPrimitive final : public Primitive {
 public:
  std::string kind() const override { return "identity"; }
  std::string name() const override { return "id"; }
  DD forward(const DD& y, DD* ld) const override {
    if (ld) *ld = DD(0.0);
    return y;
  }
  DD inverse(const DD& y, DD* ld) const override {
    if (ld) *ld = DD(0.0);
    return y;
  }
  IntervalSet support() const override { return {}; }
  std::string params_json() const override { return "{}"; }
};

class AffinePrimitive final : public Primitive {
 public:
  AffinePrimitive(const DD& a, const DD& b) : a_(a), b_(b) {
    if (!(a.hi > 0.0))
      throw std::invalid_argument("distlab: affine primitive needs slope > 0");
    log_a_ = dd_log(a_);
  }
  std::string kind() const override { return "affine"; }
  std::string name() const override { return "affine"; }
  DD forward(const DD& y, DD* ld) const override {
    if (ld) *ld = log_a_;
    return a_ * y + b_;
  }
  DD inverse(const DD& y, DD* ld) const override {
    if (ld) *ld = -log_a_;
    return (y - b_) / a_;
  }
  IntervalSet support() const override {
    return IntervalSet({Interval{-1e300, 1e300}});
  }
  std::string params_json() const override {
    std::ostringstream os;
    os << "{\"a\":" << a_.to_double() << ",\"b\":" << b_.to_double() << "}";
    return os.str();
  }

 private:
  DD a_, b_, log_a_;
};

class FlowTranslatePrimitive final : public Primitive {
 public:
  FlowTranslatePrimitive(std::shared_ptr<const Chart> chart, const DD& t, std::string name)
      : chart_(std::move(chart)), t_(t), name_(std::move(name)) {}
  std::string kind() const override { return "flow_translate"; }
  std::string name() const override { return name_; }
  DD forward(const DD& y, DD* ld) const override {
    return chart_->flow_translate(y, t_, ld);
  }
  DD inverse(const DD& y, DD* ld) const override {
    return chart_->flow_translate(y, -t_, ld);
  }
  IntervalSet support() const override { return IntervalSet({Interval{0.0, 1.0}}); }
  std::string params_json() const override {
    std::ostringstream os;
    os << "{\"field\":\"" << field_kind_name(chart_->kind()) << "\",\"t\":" << t_.to_double()
       << "}";
    return os.str();
  }

 private:
  std::shared_ptr<const Chart> chart_;
  DD t_;
  std::string name_;
};

class FlowScalePrimitive final : public Primitive {
 public:
  FlowScalePrimitive(std::shared_ptr<const Chart> chart, double s, std::string name)
      : chart_(std::move(chart)), s_(s), name_(std::move(name)) {
    factor_ = dd_pow2(DD(s));
    inv_factor_ = DD(1.0) / factor_;
  }
  std::string kind() const override { return "flow_scale"; }
  std::string name() const override { return name_; }
  DD forward(const DD& y, DD* ld) const override {
    return chart_->flow_scale(y, factor_, s_, ld);
  }
  DD inverse(const DD& y, DD* ld) const override {
    return chart_->flow_scale(y, inv_factor_, -s_, ld);
  }
  IntervalSet support() const override { return IntervalSet({Interval{0.0, 1.0}}); }
  std::string params_json() const override {
    std::ostringstream os;
    os << "{\"field\":\"" << field_kind_name(chart_->kind()) << "\",\"s\":" << s_ << "}";
    return os.str();
  }

 private:
  std::shared_ptr<const Chart> chart_;
  double s_;
  DD factor_, inv_factor_;
  std::string name_;
};

class ConjugatedFlowPrimitive final : public Primitive {
 public:
  ConjugatedFlowPrimitive(std::shared_ptr<const Chart> chart, const DD& t, const DD& lo,
                          const DD& hi, std::string name)
      : chart_(std::move(chart)), t_(t), lo_(lo), hi_(hi), name_(std::move(name)) {
    width_ = hi_ - lo_;
    if (!(width_.hi > 0.0))
      throw std::invalid_argument("distlab: conjugated flow needs lo < hi");
  }
  std::string kind() const override { return "chart_conj"; }
  std::string name() const override { return name_; }
  DD forward(const DD& y, DD* ld) const override { return apply(y, t_, ld); }
  DD inverse(const DD& y, DD* ld) const override { return apply(y, -t_, ld); }
  IntervalSet support() const override {
    return IntervalSet({Interval{lo_.to_double(), hi_.to_double()}});
  }
  std::string params_json() const override {
    std::ostringstream os;
    os << "{\"t\":" << t_.to_double() << ",\"lo\":" << lo_.to_double()
       << ",\"hi\":" << hi_.to_double() << "}";
    return os.str();
  }

 private:
  DD apply(const DD& y, const DD& t, DD* ld) const {
    if (ld) *ld = DD(0.0);
    if (!(y > lo_ && y < hi_)) return y;
    DD z = (y - lo_) / width_;
    DD zp = chart_->flow_translate(z, t, ld);  // affine factors cancel in D
    return lo_ + zp * width_;
  }

  std::shared_ptr<const Chart> chart_;
  DD t_;
  DD lo_, hi_, width_;
  std::string name_;
};

class BlockFlowPrimitive final : public Primitive {
 public:
  BlockFlowPrimitive(std::shared_ptr<const Chart> chart, bool scaling,
                     std::map<std::int64_t, BlockTime> blocks, const DD& x0, const DD& x1,
                     std::string name)
      : chart_(std::move(chart)),
        scaling_(scaling),
        blocks_(std::move(blocks)),
        x0_(x0),
        x1_(x1),
        width_(x1 - x0),
        name_(std::move(name)) {}

  std::string kind() const override { return scaling_ ? "block_flow_scale" : "block_flow_translate"; }
  std::string name() const override { return name_; }

  DD forward(const DD& y, DD* ld) const override { return apply(y, +1, ld); }
  DD inverse(const DD& y, DD* ld) const override { return apply(y, -1, ld); }

  IntervalSet support() const override {
    IntervalSet s;
    for (const auto& [n, bt] : blocks_) {
      DD lo = chart_->marker(DD(double(n)));
      DD hi = chart_->marker(DD(double(n + 1)));
      s.add(Interval{lo.to_double(), hi.to_double()});
    }
    return s;
  }

  std::string params_json() const override {
    std::ostringstream os;
    os << "{\"scaling\":" << (scaling_ ? "true" : "false") << ",\"blocks\":[";
    bool first = true;
    for (const auto& [n, bt] : blocks_) {
      if (!first) os << ",";
      first = false;
      os << "{\"n\":" << n << ",\"time\":"
         << (scaling_ ? bt.log2 : bt.t.to_double()) << "}";
    }
    os << "]}";
    return os.str();
  }

 private:
  DD apply(const DD& y, int direction, DD* ld) const {
    if (ld) *ld = DD(0.0);
    if (blocks_.empty()) return y;
    if (!chart_->chartable(y)) return y;
    ChartTime x = chart_->time_of(y);
    if (x.log_zone()) return y;  // block index far beyond any active block
    DD nf = dd_floor(x.value());
    if (std::abs(nf.hi) > 9e15) return y;
    std::int64_t n = std::int64_t(nf.to_double());
    auto it = blocks_.find(n);
    if (it == blocks_.end()) return y;
    const BlockTime& bt = it->second;

    // y1 = f^{-n}(y) in [x_0, x_1], z = A(y1) in [0,1]
    DD ld1, ld2, ld3;
    DD y1 = chart_->flow_translate(y, DD(double(-n)), &ld1);
    DD z = (y1 - x0_) / width_;
    DD zp;
    if (scaling_) {
      DD factor = (direction > 0) ? bt.factor : DD(1.0) / bt.factor;
      double s = (direction > 0) ? bt.log2 : -bt.log2;
      zp = chart_->flow_scale(z, factor, s, &ld2);
    } else {
      DD t = (direction > 0) ? bt.t : -bt.t;
      zp = chart_->flow_translate(z, t, &ld2);
    }
    DD y1p = x0_ + zp * width_;
    DD yp = chart_->flow_translate(y1p, DD(double(n)), &ld3);
    if (ld) *ld = ld1 + ld2 + ld3;
    return yp;
  }

  std::shared_ptr<const Chart> chart_;
  bool scaling_;
  std::map<std::int64_t, BlockTime> blocks_;
  DD x0_, x1_, width_;
  std::string name_;
};

class MonotoneCubicPrimitive final : public Primitive {
 public:
  MonotoneCubicPrimitive(std::vector<CubicKnot> knots, std::string name)
      : knots_(std::move(knots)), name_(std::move(name)) {
    if (knots_.size() < 2)
      throw std::invalid_argument("distlab: cubic primitive needs >= 2 knots");
    for (size_t i = 0; i + 1 < knots_.size(); ++i) {
      if (!(knots_[i].x < knots_[i + 1].x))
        throw std::invalid_argument("distlab: cubic knots must be strictly increasing");
      if (!(knots_[i].y < knots_[i + 1].y))
        throw std::invalid_argument("distlab: cubic values must be strictly increasing");
    }
  }

  std::string kind() const override { return "piecewise_smooth"; }
  std::string name() const override { return name_; }

  DD forward(const DD& y, DD* ld) const override {
    if (ld) *ld = DD(0.0);
    size_t seg;
    if (!segment_by_x(y, &seg)) return y;
    if (knots_[seg].identity_to_next) return y;
    return hermite(seg, y, ld);
  }

  DD inverse(const DD& y, DD* ld) const override {
    if (ld) *ld = DD(0.0);
    size_t seg;
    if (!segment_by_value(y, &seg)) return y;
    if (knots_[seg].identity_to_next) return y;
    // Newton guarded by bisection on the strictly increasing cubic.
    DD lo = knots_[seg].x, hi = knots_[seg + 1].x;
    DD x = dd_mul_pwr2(lo + hi, 0.5);
    for (int it = 0; it < 40; ++it) {
      DD mid = dd_mul_pwr2(lo + hi, 0.5);
      (hermite(seg, mid, nullptr) < y ? lo : hi) = mid;
    }
    x = dd_mul_pwr2(lo + hi, 0.5);
    for (int it = 0; it < 3; ++it) {
      DD d;
      DD val = hermite(seg, x, &d);
      x = x - (val - y) / dd_exp(d);
      if (x < knots_[seg].x) x = knots_[seg].x;
      if (x > knots_[seg + 1].x) x = knots_[seg + 1].x;
    }
    if (ld) {
      DD d;
      hermite(seg, x, &d);
      *ld = -d;
    }
    return x;
  }

  IntervalSet support() const override {
    IntervalSet s;
    for (size_t i = 0; i + 1 < knots_.size(); ++i) {
      if (!knots_[i].identity_to_next)
        s.add(Interval{knots_[i].x.to_double(), knots_[i + 1].x.to_double()});
    }
    return s;
  }

  std::string params_json() const override {
    std::ostringstream os;
    os << "{\"knots\":[";
    for (size_t i = 0; i < knots_.size(); ++i) {
      if (i) os << ",";
      os << "{\"x\":" << knots_[i].x.to_double() << ",\"y\":" << knots_[i].y.to_double()
         << ",\"d\":" << knots_[i].d.to_double() << "}";
    }
    os << "]}";
    return os.str();
  }

 private:
  bool segment_by_x(const DD& x, size_t* seg) const {
    if (!(x > knots_.front().x && x < knots_.back().x)) return false;
    size_t lo = 0, hi = knots_.size() - 1;
    while (hi - lo > 1) {
      size_t mid = (lo + hi) / 2;
      (knots_[mid].x <= x ? lo : hi) = mid;
    }
    *seg = lo;
    return true;
  }

  bool segment_by_value(const DD& v, size_t* seg) const {
    if (!(v > knots_.front().y && v < knots_.back().y)) return false;
    size_t lo = 0, hi = knots_.size() - 1;
    while (hi - lo > 1) {
      size_t mid = (lo + hi) / 2;
      (knots_[mid].y <= v ? lo : hi) = mid;
    }
    *seg = lo;
    return true;
  }

  // value and log-derivative of the Hermite cubic on segment seg
  DD hermite(size_t seg, const DD& x, DD* log_deriv) const {
    const CubicKnot& k0 = knots_[seg];
    const CubicKnot& k1 = knots_[seg + 1];
    DD h = k1.x - k0.x;
    DD u = (x - k0.x) / h;
    DD u2 = u * u;
    DD u3 = u2 * u;
    DD h00 = dd_mul_pwr2(u3, 2.0) - 3.0 * u2 + 1.0;
    DD h10 = u3 - dd_mul_pwr2(u2, 2.0) + u;
    DD h01 = -dd_mul_pwr2(u3, 2.0) + 3.0 * u2;
    DD h11 = u3 - u2;
    DD val = h00 * k0.y + h10 * (h * k0.d) + h01 * k1.y + h11 * (h * k1.d);
    if (log_deriv) {
      DD d00 = 6.0 * (u2 - u);
      DD d10 = 3.0 * u2 - dd_mul_pwr2(u, 2.0) * 2.0 + 1.0;
      DD d01 = -d00;
      DD d11 = 3.0 * u2 - dd_mul_pwr2(u, 2.0);
      DD deriv = (d00 * k0.y + d10 * (h * k0.d) + d01 * k1.y + d11 * (h * k1.d)) / h;
      if (!(deriv.hi > 0.0))
        throw std::runtime_error("distlab: cubic primitive lost monotonicity");
      *log_deriv = dd_log(deriv);
    }
    return val;
  }

  std::vector<CubicKnot> knots_;
  std::string name_;
};

}  // namespace

PrimitivePtr make_identity_primitive() { return std::make_shared<IdentityPrimitive>(); }

PrimitivePtr make_affine_primitive(const DD& a, const DD& b) {
  return std::make_shared<AffinePrimitive>(a, b);
}

PrimitivePtr make_flow_translate_primitive(std::shared_ptr<const Chart> chart, const DD& t,
                                           std::string name) {
  return std::make_shared<FlowTranslatePrimitive>(std::move(chart), t, std::move(name));
}

PrimitivePtr make_flow_scale_primitive(std::shared_ptr<const Chart> chart, double s,
                                       std::string name) {
  return std::make_shared<FlowScalePrimitive>(std::move(chart), s, std::move(name));
}

PrimitivePtr make_conjugated_flow_primitive(std::shared_ptr<const Chart> chart, const DD& t,
                                            const DD& lo, const DD& hi, std::string name) {
  return std::make_shared<ConjugatedFlowPrimitive>(std::move(chart), t, lo, hi,
                                                   std::move(name));
}

PrimitivePtr make_block_flow_primitive(std::shared_ptr<const Chart> chart, bool scaling,
                                       std::map<std::int64_t, BlockTime> blocks,
                                       const DD& x0, const DD& x1, std::string name) {
  return std::make_shared<BlockFlowPrimitive>(std::move(chart), scaling, std::move(blocks),
                                              x0, x1, std::move(name));
}

PrimitivePtr make_monotone_cubic_primitive(std::vector<CubicKnot> knots, std::string name) {
  return std::make_shared<MonotoneCubicPrimitive>(std::move(knots), std::move(name));
}

}  // namespace distlab
