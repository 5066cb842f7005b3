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

#include "distlab/fields.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace distlab {

namespace {

class DiffeoMap final : public MonotoneMap {
 public:
  explicit DiffeoMap(Diffeo d) : fwd_(std::move(d)), inv_(invert(fwd_)) {}
  DD eval(const DD& x) const override { return fwd_.eval_dd(x); }
  DD eval_inverse(const DD& y) const override { return inv_.eval_dd(y); }
  DD log_deriv(const DD& x) const override { return fwd_.log_derivative(x); }
  std::string describe() const override { return "diffeo"; }

 private:
  Diffeo fwd_, inv_;
};

class ChartPhiMap final : public MonotoneMap {
 public:
  explicit ChartPhiMap(std::shared_ptr<const Chart> chart) : chart_(std::move(chart)) {}

  DD eval(const DD& x) const override {
    DD xc = x;
    if (xc.hi > 1e270) xc = DD(1e270);
    if (xc.hi < -1e270) xc = DD(-1e270);
    return chart_->point_of(ChartTime::from_dd(xc));
  }
  DD eval_inverse(const DD& y) const override {
    if (!chart_->chartable(y)) return DD(y.hi >= 0.5 ? 1e270 : -1e270);
    ChartTime t = chart_->time_of(y);
    if (t.log_zone()) return DD(t.sign() > 0 ? 1e270 : -1e270);
    return t.value();
  }
  DD log_deriv(const DD& x) const override {
    DD y = eval(x);
    if (!chart_->chartable(y)) return DD(-1e300);
    return -chart_->V(y);
  }
  std::string describe() const override {
    return "phi[" + field_kind_name(chart_->kind()) + "]";
  }

 private:
  std::shared_ptr<const Chart> chart_;
};

}  // namespace

std::shared_ptr<const MonotoneMap> as_monotone_map(Diffeo d) {
  return std::make_shared<DiffeoMap>(std::move(d));
}

std::shared_ptr<const MonotoneMap> chart_phi_map(std::shared_ptr<const Chart> chart) {
  return std::make_shared<ChartPhiMap>(std::move(chart));
}

VectorField1D VectorField1D::unit() {
  VectorField1D f;
  f.kind_ = Kind::kUnit;
  f.name_ = "X";
  f.domain_ = Interval{-1e300, 1e300};
  return f;
}

VectorField1D VectorField1D::linear_log2() {
  VectorField1D f;
  f.kind_ = Kind::kLinearLog2;
  f.name_ = "Xhat";
  f.domain_ = Interval{-1e300, 1e300};
  f.zeros_ = {0.0};
  return f;
}

VectorField1D VectorField1D::chart_Y(std::shared_ptr<const Chart> chart) {
  VectorField1D f;
  f.kind_ = Kind::kChartY;
  f.name_ = "Y[" + field_kind_name(chart->kind()) + "]";
  f.domain_ = Interval{0.0, 1.0};
  f.zeros_ = {0.0, 1.0};
  f.chart_ = std::move(chart);
  return f;
}

VectorField1D VectorField1D::chart_Yhat(std::shared_ptr<const Chart> chart) {
  VectorField1D f;
  f.kind_ = Kind::kChartYhat;
  f.name_ = "Yhat[" + field_kind_name(chart->kind()) + "]";
  f.domain_ = Interval{0.0, 1.0};
  f.zeros_ = {0.0, chart->basepoint(), 1.0};
  f.chart_ = std::move(chart);
  return f;
}

double VectorField1D::value(double y) const {
  switch (kind_) {
    case Kind::kUnit:
      return 1.0;
    case Kind::kLinearLog2:
      return y * dd_const::ln2.hi;
    case Kind::kChartY:
      return chart_->Y(y);
    case Kind::kChartYhat:
      return chart_->Yhat(y);
    case Kind::kPushforward: {
      DD z = transport_->eval_inverse(DD(y));
      double base_val = base_->value(z.to_double());
      if (base_val == 0.0) return 0.0;
      double ld = transport_->log_deriv(z).to_double();
      if (ld < -700.0) return 0.0;
      return std::exp(ld) * base_val;
    }
  }
  return 0.0;
}

DD VectorField1D::flow(const DD& t, const DD& y) const {
  switch (kind_) {
    case Kind::kUnit:
      return y + t;
    case Kind::kLinearLog2:
      return y * dd_pow2(t);
    case Kind::kChartY:
      return chart_->flow_translate(y, t);
    case Kind::kChartYhat:
      return chart_->flow_scale(y, dd_pow2(t), t.to_double());
    case Kind::kPushforward: {
      DD z = transport_->eval_inverse(y);
      return transport_->eval(base_->flow(t, z));
    }
  }
  return y;
}

DD VectorField1D::flow_log_deriv(const DD& t, const DD& y) const {
  DD ld(0.0);
  switch (kind_) {
    case Kind::kUnit:
      return DD(0.0);
    case Kind::kLinearLog2:
      return t * dd_const::ln2;
    case Kind::kChartY:
      chart_->flow_translate(y, t, &ld);
      return ld;
    case Kind::kChartYhat:
      chart_->flow_scale(y, dd_pow2(t), t.to_double(), &ld);
      return ld;
    case Kind::kPushforward: {
      DD z = transport_->eval_inverse(y);
      DD zp = base_->flow(t, z);
      return transport_->log_deriv(zp) + base_->flow_log_deriv(t, z) -
             transport_->log_deriv(z);
    }
  }
  return ld;
}

VectorField1D pushforward(const VectorField1D& field,
                          std::shared_ptr<const MonotoneMap> map) {
  VectorField1D f;
  f.kind_ = VectorField1D::Kind::kPushforward;
  f.name_ = map->describe() + "_*(" + field.name() + ")";
  DD lo = map->eval(DD(field.domain().lo));
  DD hi = map->eval(DD(field.domain().hi));
  f.domain_ = Interval{lo.to_double(), hi.to_double()};
  for (double z : field.zero_set()) {
    f.zeros_.push_back(map->eval(DD(z)).to_double());
  }
  std::sort(f.zeros_.begin(), f.zeros_.end());
  f.base_ = std::make_shared<VectorField1D>(field);
  f.transport_ = std::move(map);
  return f;
}

double flow(const VectorField1D& field, double t, double y) {
  return field.flow(DD(t), DD(y)).to_double();
}

double flow_derivative(const VectorField1D& field, double t, double y) {
  double ld = field.flow_log_deriv(DD(t), DD(y)).to_double();
  if (ld > 700.0) return std::numeric_limits<double>::infinity();
  return std::exp(ld);
}

std::vector<double> default_probe_samples() {
  return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
}

namespace {

FlatnessProbe make_probe(int k, const std::vector<double>& samples,
                         const std::function<double(double)>& log10_value,
                         const std::function<bool(double)>& clamped) {
  FlatnessProbe p;
  p.k = k;
  p.samples = samples;
  for (double y : samples) {
    double rep;
    if (clamped(y)) {
      // true ratio below every representable float; strictly ordered stand-in
      rep = -(1e300 + 1.0 / (y * (1.0 - y)));
    } else {
      rep = log10_value(y) - k * std::log10(y);
    }
    p.log10_ratio.push_back(rep);
  }
  p.decreasing = true;
  for (size_t i = 0; i + 1 < p.log10_ratio.size(); ++i) {
    if (p.log10_ratio[i + 1] > p.log10_ratio[i] + 1e-12) p.decreasing = false;
  }
  p.flat = !p.log10_ratio.empty() && p.log10_ratio.back() < -6.0;
  return p;
}

}  // namespace

FlatnessProbe flatness_probe_Y(const Chart& chart, int k,
                               const std::vector<double>& samples) {
  const double ln10 = std::log(10.0);
  bool double_exp = chart.kind() == FieldKind::kDoubleExp;
  return make_probe(
      k, samples,
      [&](double y) { return chart.log_Y(y) / ln10; },
      [&](double y) {
        if (!double_exp) return false;
        return 1.0 / (y * (1.0 - y)) > 700.0;  // V = e^w - e^4 beyond doubles
      });
}

FlatnessProbe flatness_probe_Yhat(const Chart& chart, int k,
                                  const std::vector<double>& samples) {
  const double ln10 = std::log(10.0);
  return make_probe(
      k, samples, [&](double y) { return chart.log_abs_Yhat(y) / ln10; },
      [](double) { return false; });
}

bool validate_field(const VectorField1D& field, int samples_per_component) {
  // Component boundaries: domain endpoints plus interior zeros.
  std::vector<double> bounds{field.domain().lo};
  for (double z : field.zero_set()) {
    if (z > field.domain().lo && z < field.domain().hi) bounds.push_back(z);
  }
  bounds.push_back(field.domain().hi);
  std::sort(bounds.begin(), bounds.end());

  double scale = 0.0;
  for (size_t c = 0; c + 1 < bounds.size(); ++c) {
    double lo = bounds[c], hi = bounds[c + 1];
    int sign = 0;
    for (int i = 1; i < samples_per_component; ++i) {
      double y = lo + (hi - lo) * double(i) / double(samples_per_component);
      double v = field.value(y);
      scale = std::max(scale, std::abs(v));
      if (v == 0.0) continue;  // flat tails may underflow to zero
      int s = v > 0 ? 1 : -1;
      if (sign == 0) sign = s;
      if (s != sign) return false;  // sign change inside a component
    }
  }
  if (scale == 0.0) return false;
  // vanishing at declared zeros (evaluate just off the zero)
  for (double z : field.zero_set()) {
    double eps = 1e-9 * std::max(1.0, std::abs(z));
    double v = std::abs(field.value(std::clamp(z + eps, field.domain().lo,
                                               field.domain().hi)));
    double v2 = std::abs(field.value(std::clamp(z - eps, field.domain().lo,
                                                field.domain().hi)));
    if (std::min(v, v2) > 1e-3 * scale) return false;
  }
  return true;
}

}  // namespace distlab
