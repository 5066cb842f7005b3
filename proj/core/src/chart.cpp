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

#include "distlab/chart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "distlab/quadrature.hpp"

// Chart numerics
// --------------
// Writing w = 1/(y(1-y)) and V(y) = -log Y(y), both supported fields have the
// form V = sigma(w) with a closed-form sigma.  The time integral
//     T(y) = int_{1/2}^{y} exp(V(u)) du
// is transformed to the V-line: with u(sigma) the upper-branch inverse of
// sigma(w(u)) and rho(sigma) = du/dsigma,
//     T = int_0^{V} e^sigma rho(sigma) dsigma.
// rho has a 1/sqrt(sigma) endpoint singularity, removed by sigma = tau^2:
//     T = H(sqrt(V)),   H(s) = int_0^s iota(tau) dtau,
//     iota(tau) = 2 e^{tau^2} / (dsigma/dw * sqrt(q w^3)),  q = (w-4)/sigma.
// Central zone (V <= 120): M(s) = log(H(s)/s) is analytic and fitted by
// Chebyshev polynomials in double-double; T = s exp(M(s)).
// Far zone (V > 120): T = e^V G(V) with G(V) = int_0^80 e^-xi rho(V-xi) dxi;
// N(lambda) = log G(e^lambda) is fitted per panel.  log|T| = V + N stays
// representable as a double up to the w = 700 cap, beyond which every flow
// is treated as exactly fixed (true displacements there are < 1e-290).

namespace distlab {

struct Chart::Model {
  FieldKind kind;

  // sigma(w) - sigma(4), given w - 4.
  DD sigma_from_wm4(const DD& wm4) const {
    if (kind == FieldKind::kDoubleExp) return dd_e4() * dd_expm1(wm4);
    return wm4;
  }
  // inverse of the above
  DD wm4_from_sigma(const DD& sigma) const {
    if (kind == FieldKind::kDoubleExp) return dd_log1p(sigma / dd_e4());
    return sigma;
  }
  DD dsigma_dw(const DD& sigma) const {
    if (kind == FieldKind::kDoubleExp) return sigma + dd_e4();
    return DD(1.0);
  }
  DD log_dsigma_dw(const DD& /*sigma*/, const DD& w) const {
    // for double_exp, sigma + e^4 = e^w exactly
    if (kind == FieldKind::kDoubleExp) return w;
    return DD(0.0);
  }
  // q = (w-4)/sigma, stable down to sigma = 0
  DD q_ratio(const DD& sigma) const {
    if (kind == FieldKind::kSingleExp) return DD(1.0);
    DD z = sigma / dd_e4();
    DD l1p_over_z;
    if (std::abs(z.hi) < 1e-8) {
      l1p_over_z = 1.0 - dd_mul_pwr2(z, 0.5) + (z * z) / 3.0;
    } else {
      l1p_over_z = dd_log1p(z) / z;
    }
    return l1p_over_z / dd_e4();
  }

  // integrand of H (no singularity anywhere on [0, s_hi])
  DD iota(const DD& tau) const {
    DD sigma = tau * tau;
    DD wm4 = wm4_from_sigma(sigma);
    DD w = wm4 + 4.0;
    DD q = q_ratio(sigma);
    return dd_mul_pwr2(dd_exp(sigma) / (dsigma_dw(sigma) * dd_sqrt(q * (w * w * w))), 2.0);
  }

  // log rho(sigma); requires sigma bounded away from 0 (far zone only)
  DD log_rho(const DD& sigma) const {
    DD wm4 = wm4_from_sigma(sigma);
    DD w = wm4 + 4.0;
    return -(log_dsigma_dw(sigma, w) + dd_mul_pwr2(dd_log(wm4 / w), 0.5) +
             dd_mul_pwr2(dd_log(w), 2.0));
  }

  // N(lambda) = log G(e^lambda) by quadrature, in ratio form so nothing
  // underflows even when rho(V) ~ 1e-310.
  DD N_by_quadrature(const DD& lambda) const {
    DD v = dd_exp(lambda);
    DD log_rho_v = log_rho(v);
    auto integrand = [&](const DD& xi) {
      return dd_exp(log_rho(v - xi) - log_rho_v - xi);
    };
    static const double breaks[] = {0.0, 2.0, 10.0, 30.0, 80.0};
    const auto& rule = gl_rule(48);
    DD sum(0.0);
    for (int i = 0; i + 1 < 5; ++i) {
      sum += rule.integrate(integrand, DD(breaks[i]), DD(breaks[i + 1]));
    }
    return log_rho_v + dd_log(sum);
  }
};

namespace {

double w_of_y_double(double y) { return 1.0 / (y * (1.0 - y)); }

// w - 4 = (2u-1)^2 / (u(1-u)), cancellation-free.
DD wm4_of_u(const DD& u) {
  DD d = dd_mul_pwr2(u, 2.0) - 1.0;
  return (d * d) / (u * (1.0 - u));
}

}  // namespace

FieldKind field_kind_from_name(const std::string& name) {
  if (name == "double_exp") return FieldKind::kDoubleExp;
  if (name == "single_exp") return FieldKind::kSingleExp;
  throw std::invalid_argument("distlab: unknown chart field '" + name + "'");
}

std::string field_kind_name(FieldKind kind) {
  return kind == FieldKind::kDoubleExp ? "double_exp" : "single_exp";
}

Chart::Chart(FieldKind kind, double basepoint) : kind_(kind), basepoint_(basepoint) {
  if (!(basepoint > 0.0 && basepoint < 1.0))
    throw ConstructionError("distlab::Chart: basepoint must lie in (0,1)");
  model_ = std::make_shared<Model>(Model{kind});
  build_tables();
  t0_ = time_raw(DD(basepoint));
  if (t0_.log_zone())
    throw ConstructionError("distlab::Chart: basepoint too close to the boundary");
  validate();
}

void Chart::build_tables() {
  s_hi_ = std::sqrt(kVSplit);
  const Model& m = *model_;

  // ---- central fit: M(s) = log(H(s)/s) at Lobatto nodes, H by one
  // cumulative composite Gauss sweep.
  std::vector<std::vector<DD>> panel_nodes;
  std::vector<std::pair<DD, DD>> panel_ranges;
  std::vector<double> central_breaks;
  if (kind_ == FieldKind::kDoubleExp) {
    central_breaks = {0.0, s_hi_};
  } else {
    central_breaks = {0.0, 1.0, 2.0, 4.0, 7.0, s_hi_};
  }
  int n_nodes = (kind_ == FieldKind::kDoubleExp) ? 96 : 64;

  std::vector<DD> all_nodes;
  for (size_t p = 0; p + 1 < central_breaks.size(); ++p) {
    auto xs = ChebyshevFit::lobatto_nodes(DD(central_breaks[p]), DD(central_breaks[p + 1]),
                                          n_nodes);
    for (const auto& x : xs) all_nodes.push_back(x);
  }

  const auto& rule = gl_rule(24);
  auto iota = [&](const DD& tau) { return m.iota(tau); };
  std::vector<DD> H(all_nodes.size());
  DD acc(0.0);
  DD prev(0.0);
  for (size_t k = 0; k < all_nodes.size(); ++k) {
    const DD& s = all_nodes[k];
    if (s > prev) {
      // subdivide so e^{tau^2} varies by at most e^3 per segment
      double lo = prev.to_double(), hi = s.to_double();
      int parts = std::max(1, int(std::ceil((hi * hi - lo * lo) / 3.0)));
      DD a = prev;
      for (int j = 1; j <= parts; ++j) {
        DD b = (j == parts) ? s : prev + (s - prev) * double(j) / double(parts);
        acc += rule.integrate(iota, a, b);
        a = b;
      }
      prev = s;
    }
    H[k] = acc;
  }
  t_split_ = H.back();

  // F(s) = H(s)/(s e^{s^2}) per panel.  H itself may have complex zeros near
  // the real axis, so log(H/s) is not polynomial-friendly; F is analytic with
  // the nearest singularity at |s| ~ 7.4i and spans only a factor ~1e4.
  std::vector<ChebyshevFit> central_panels;
  size_t off = 0;
  for (size_t p = 0; p + 1 < central_breaks.size(); ++p) {
    std::vector<DD> vals(n_nodes + 1);
    for (int k = 0; k <= n_nodes; ++k) {
      const DD& s = all_nodes[off + k];
      if (s.hi == 0.0) {
        vals[k] = m.iota(DD(0.0));  // H(s)/s -> iota(0)
      } else {
        vals[k] = H[off + k] / (s * dd_exp(s * s));
      }
    }
    central_panels.push_back(
        ChebyshevFit::from_values(vals, DD(central_breaks[p]), DD(central_breaks[p + 1])));
    off += n_nodes + 1;
  }
  if (central_panels.size() == 1) {
    central_ = central_panels[0];
    central_deriv_ = central_.derivative();
    central_is_paneled_ = false;
  } else {
    central_panels_ = std::move(central_panels);
    central_breaks_ = central_breaks;
    central_derivs_.clear();
    for (const auto& cp : central_panels_) central_derivs_.push_back(cp.derivative());
    central_is_paneled_ = true;
  }

  // ---- far fit: N(lambda) on [log V_split, log V_cap]
  DD sigma_cap = m.sigma_from_wm4(DD(kWDeep - 4.0));
  double lambda_lo = std::log(kVSplit);
  double lambda_cap = dd_log(sigma_cap).to_double();
  std::vector<double> lam_breaks{lambda_lo};
  double span = lambda_lo - 4.0;
  while (lam_breaks.back() < lambda_cap) {
    span *= 1.6;
    lam_breaks.push_back(std::min(4.0 + span, lambda_cap + 1e-9));
  }
  if (lam_breaks.size() < 2) lam_breaks.push_back(lambda_cap + 1e-9);
  lambda_cap_ = lam_breaks.back();
  far_ = PanelFit([&](const DD& lam) { return m.N_by_quadrature(lam); }, lam_breaks, 48);
  far_deriv_ = far_.derivative();

  // identity convention beyond the w cap
  DD v_cap = sigma_cap;
  DD n_cap = far_.eval(dd_log(v_cap));
  x_deep_ = (v_cap + n_cap).to_double();

  report_.central_tail = central_is_paneled_
                             ? [&] {
                                 double t = 0.0;
                                 for (const auto& cp : central_panels_)
                                   t = std::max(t, cp.tail_magnitude());
                                 return t;
                               }()
                             : central_.tail_magnitude();
  report_.far_tail = far_.tail_magnitude();
}

bool Chart::deep(const DD& y) const {
  double yd = y.to_double();
  if (yd <= 0.0 || yd >= 1.0) return false;
  return w_of_y_double(yd) > kWDeep;
}

bool Chart::chartable(const DD& y) const {
  double yd = y.to_double();
  if (yd <= 0.0 || yd >= 1.0) return false;
  return w_of_y_double(yd) <= kWDeep;
}

DD Chart::V(const DD& y) const {
  if (!(y > 0.0 && y < 1.0))
    throw std::domain_error("distlab::Chart::V: point outside (0,1)");
  DD u = (y >= 0.5) ? y : DD(1.0) - y;
  DD wm4 = wm4_of_u(u);
  if (wm4.hi > kWDeep - 4.0)
    throw PrecisionError("distlab::Chart::V: point inside the deep boundary zone");
  return model_->sigma_from_wm4(wm4);
}

DD Chart::central_F(const DD& s) const {
  if (!central_is_paneled_) return central_.eval(s);
  size_t i = std::upper_bound(central_breaks_.begin(), central_breaks_.end(), s.hi) -
             central_breaks_.begin();
  if (i == 0) i = 1;
  if (i >= central_breaks_.size()) i = central_breaks_.size() - 1;
  return central_panels_[i - 1].eval(s);
}

DD Chart::central_F_prime(const DD& s) const {
  if (!central_is_paneled_) return central_deriv_.eval(s);
  size_t i = std::upper_bound(central_breaks_.begin(), central_breaks_.end(), s.hi) -
             central_breaks_.begin();
  if (i == 0) i = 1;
  if (i >= central_breaks_.size()) i = central_breaks_.size() - 1;
  return central_derivs_[i - 1].eval(s);
}

double Chart::central_F_double(double s) const {
  if (!central_is_paneled_) return central_.eval_double(s);
  size_t i = std::upper_bound(central_breaks_.begin(), central_breaks_.end(), s) -
             central_breaks_.begin();
  if (i == 0) i = 1;
  if (i >= central_breaks_.size()) i = central_breaks_.size() - 1;
  return central_panels_[i - 1].eval_double(s);
}

double Chart::central_Fp_double(double s) const {
  if (!central_is_paneled_) return central_deriv_.eval_double(s);
  size_t i = std::upper_bound(central_breaks_.begin(), central_breaks_.end(), s) -
             central_breaks_.begin();
  if (i == 0) i = 1;
  if (i >= central_breaks_.size()) i = central_breaks_.size() - 1;
  return central_derivs_[i - 1].eval_double(s);
}

double Chart::central_M_double(double s) const {
  return s * s + std::log(std::max(central_F_double(s), 1e-300));
}

Chart::Loc Chart::locate(const DD& y) const {
  Loc loc;
  loc.side = (y.hi >= 0.5) ? 1 : -1;
  DD u = (loc.side > 0) ? y : DD(1.0) - y;
  loc.v = model_->sigma_from_wm4(wm4_of_u(u));
  return loc;
}

ChartTime Chart::time_from_loc(const Loc& loc) const {
  const DD& v = loc.v;
  if (v <= kVSplit) {
    DD s = dd_sqrt(v);
    if (s.hi == 0.0) return ChartTime::from_dd(DD(0.0));
    DD t = s * dd_exp(v) * central_F(s);
    return ChartTime::from_dd(dd_mul_pwr2(t, double(loc.side)));
  }
  DD lam = dd_log(v);
  DD log_t = v + far_.eval(lam);
  if (log_t <= ChartTime::kReentryLog) {
    return ChartTime::from_dd(dd_mul_pwr2(dd_exp(log_t), double(loc.side)));
  }
  return ChartTime::from_log(loc.side, log_t.to_double());
}

ChartTime Chart::time_raw(const DD& y) const { return time_from_loc(locate(y)); }

DD Chart::solve_central(const DD& abs_time) const {
  // kappa(s) = log s + s^2 + log F(s) is strictly increasing.  Bisection in
  // log s at double precision, two double Newton steps, then two Newton steps
  // in double-double on g(s) = s e^{s^2} F(s) in ratio form (no dd log).
  double Ld = std::log(std::max(abs_time.hi, 5e-324));
  double t_hi = std::log(s_hi_);
  double t_lo = Ld - central_M_double(s_hi_) - 2.0;
  for (int it = 0; it < 22; ++it) {
    double tm = 0.5 * (t_lo + t_hi);
    double v = tm + central_M_double(std::exp(tm));
    (v < Ld ? t_lo : t_hi) = tm;
  }
  double sd = std::exp(0.5 * (t_lo + t_hi));
  for (int it = 0; it < 2; ++it) {
    double f = central_F_double(sd);
    double kappa = std::log(sd) + sd * sd + std::log(std::max(f, 1e-300));
    double kp = 1.0 / sd + 2.0 * sd + central_Fp_double(sd) / f;
    sd -= (kappa - Ld) / kp;
    if (!(sd > 0.0)) sd = 1e-300;
    if (sd > s_hi_) sd = s_hi_;
  }
  DD s(sd);
  for (int it = 0; it < 2; ++it) {
    DD fval = central_F(s);
    DD r = abs_time / (s * dd_exp(s * s) * fval);
    DD denom = 1.0 + dd_mul_pwr2(s * s, 2.0) + s * central_F_prime(s) / fval;
    s = s + s * (r - 1.0) / denom;
    if (s.hi <= 0.0) s = DD(1e-300);
    if (s.hi > s_hi_) s = DD(s_hi_);
  }
  return s;
}

DD Chart::solve_far(const DD& log_abs_time) const {
  const DD& X = log_abs_time;
  double lam_lo = std::log(kVSplit);
  double Xd = X.to_double();
  double lam = std::log(std::max(Xd + 12.0, kVSplit));
  for (int it = 0; it < 6; ++it) {
    double n = far_.eval_double(std::clamp(lam, lam_lo, lambda_cap_));
    lam = std::log(std::max(Xd - n, kVSplit * 0.999));
  }
  DD lambda(std::clamp(lam, lam_lo, lambda_cap_));
  for (int it = 0; it < 3; ++it) {
    DD v = dd_exp(lambda);
    DD f = v + far_.eval(lambda) - X;
    DD fp = v + far_deriv_.eval(lambda);
    lambda = lambda - f / fp;
    if (lambda.hi < lam_lo) lambda = DD(lam_lo);
    if (lambda.hi > lambda_cap_) lambda = DD(lambda_cap_);
  }
  return dd_exp(lambda);  // V
}

DD Chart::point_from_v(const DD& v, int side) const {
  DD wm4 = model_->wm4_from_sigma(v);
  DD w = wm4 + 4.0;
  DD r = dd_sqrt(wm4 / w);
  if (side > 0) return dd_mul_pwr2(DD(1.0) + r, 0.5);
  return DD(2.0) / (w * (DD(1.0) + r));
}

DD Chart::point_raw(const ChartTime& x, DD* v_out) const {
  int side = x.sign();
  if (side == 0) {
    if (v_out) *v_out = DD(0.0);
    return DD(0.5);
  }
  DD v;
  if (!x.log_zone()) {
    DD a = dd_abs(x.value());
    if (a <= t_split_) {
      DD s = solve_central(a);
      v = s * s;
    } else {
      v = solve_far(dd_log(a));
    }
  } else {
    v = solve_far(DD(x.log_abs()));
  }
  if (v_out) *v_out = v;
  return point_from_v(v, side);
}

ChartTime Chart::time_of(const DD& y) const {
  if (!chartable(y))
    throw std::domain_error("distlab::Chart::time_of: point not chartable");
  return time_raw(y).translated(-t0_.value());
}

DD Chart::point_of(const ChartTime& x) const {
  return point_raw(x.translated(t0_.value()));
}

DD Chart::flow_translate(const DD& y, const DD& t, DD* log_deriv) const {
  if (log_deriv) *log_deriv = DD(0.0);
  if (!chartable(y)) return y;
  if (t.hi == 0.0 && t.lo == 0.0) return y;
  Loc loc = locate(y);
  ChartTime x = time_from_loc(loc);
  if (x.log_abs() > x_deep_ - 1.0) return y;
  // In the log zone the translation is below the representable resolution
  // and the true displacement is < 1e-250: exactly fixed by convention.
  if (x.log_zone()) return y;
  ChartTime xp = x.translated(t);
  if (xp.log_zone() || xp.log_abs() > x_deep_ - 1.0) return y;
  DD vp;
  DD yp = point_raw(xp, &vp);
  if (log_deriv) *log_deriv = loc.v - vp;
  return yp;
}

DD Chart::flow_scale(const DD& y, const DD& factor, double s, DD* log_deriv) const {
  if (log_deriv) *log_deriv = DD(0.0);
  if (!chartable(y)) return y;
  if (s == 0.0) return y;
  Loc loc = locate(y);
  ChartTime x = time_from_loc(loc);
  if (x.log_abs() > x_deep_ - 1.0) return y;
  ChartTime xp = x.scaled_pow2(factor, s);
  if (xp.log_abs() > x_deep_ - 1.0) return y;
  DD vp;
  DD yp = point_raw(xp, &vp);
  if (log_deriv) {
    if (x.log_zone() || xp.log_zone()) {
      // log T' - log T = s ln 2 exactly, so the direct difference of the
      // huge V values would drown in the double-precision log |T|.  Use
      // log D = (V + s ln2 - V') = N(log V') - N(log V), both O(1).
      *log_deriv = far_.eval(dd_log(vp)) - far_.eval(dd_log(loc.v));
    } else {
      *log_deriv = s * dd_const::ln2 + loc.v - vp;
    }
  }
  return yp;
}

DD Chart::time_by_quadrature(const DD& y) const {
  int side = (y.hi >= 0.5) ? 1 : -1;
  DD u = (side > 0) ? y : DD(1.0) - y;
  DD v = model_->sigma_from_wm4(wm4_of_u(u));
  if (v > kVSplit)
    throw std::invalid_argument("distlab::Chart::time_by_quadrature: central zone only");
  DD s = dd_sqrt(v);
  const auto& rule = gl_rule(32);
  auto iota = [&](const DD& tau) { return model_->iota(tau); };
  double hi = s.to_double();
  int parts = std::max(1, int(std::ceil(hi * hi / 3.0)));
  DD acc(0.0);
  DD a(0.0);
  for (int j = 1; j <= parts; ++j) {
    DD b = (j == parts) ? s : dd_mul_pwr2(s * double(j), 1.0) / double(parts);
    acc += rule.integrate(iota, a, b);
    a = b;
  }
  return dd_mul_pwr2(acc, double(side));
}

double Chart::Y(double y) const {
  if (y <= 0.0 || y >= 1.0) return 0.0;
  if (deep(DD(y))) return 0.0;
  return dd_exp(-V(DD(y))).to_double();
}

double Chart::log_Y(double y) const {
  if (y <= 0.0 || y >= 1.0) return -std::numeric_limits<double>::infinity();
  double w = w_of_y_double(y);
  if (w > kWDeep) {
    if (kind_ == FieldKind::kDoubleExp) {
      return w < 709.5 ? -(std::exp(w) - std::exp(4.0))
                       : -std::numeric_limits<double>::infinity();
    }
    return -(w - 4.0);
  }
  return -V(DD(y)).to_double();
}

double Chart::Yhat(double y) const {
  if (!chartable(DD(y))) return 0.0;
  double la = log_abs_Yhat(y);
  if (la < -700.0) return 0.0;
  int side = (y > basepoint_) ? 1 : (y < basepoint_ ? -1 : 0);
  return side * std::exp(la);
}

double Chart::log_abs_Yhat(double y) const {
  const double log_ln2 = std::log(dd_const::ln2.hi);
  if (y <= 0.0 || y >= 1.0) return -std::numeric_limits<double>::infinity();
  double w = w_of_y_double(y);
  if (w > kWDeep - 10.0) {
    // log|Yhat| = log ln2 + log|T| - V ~ log ln2 + log rho(V); the basepoint
    // shift of T is relatively ~e^{-V} here and invisible.
    double half_log_ratio = 0.5 * std::log1p(-4.0 / w);
    double log_ds = (kind_ == FieldKind::kDoubleExp) ? w : 0.0;
    return log_ln2 - log_ds - half_log_ratio - 2.0 * std::log(w);
  }
  DD yd(y);
  DD v = V(yd);
  if (v <= kVSplit) {
    // T measured from the basepoint, so use the shifted time here.
    ChartTime x = time_of(yd);
    DD a = dd_abs(x.value());
    if (a.hi == 0.0) return -std::numeric_limits<double>::infinity();
    return (DD(log_ln2) + dd_log(a) - v).to_double();
  }
  return (DD(log_ln2) + far_.eval(dd_log(v))).to_double();
}

void Chart::validate() {
  double max_rt = 0.0;
  std::vector<double> ys;
  for (double u : {0.0016, 0.002, 0.004, 0.01, 0.03, 0.08, 0.15, 0.22, 0.3, 0.38,
                   0.43, 0.46, 0.48, 0.49, 0.497, 0.4999}) {
    ys.push_back(u);
    ys.push_back(1.0 - u);
  }
  double max_rt_log = 0.0;
  for (double y : ys) {
    DD yd(y);
    if (!chartable(yd)) continue;
    ChartTime x = time_raw(yd);
    if (x.log_abs() > x_deep_ - 1.0) continue;
    DD back = point_raw(x);
    double err = std::abs((back - yd).to_double());
    // In the log zone |T| carries only double precision; the resulting
    // ~1e-18 spatial error sits where every map is within 1e-200 of the
    // identity, so it never amplifies.  Track the zones separately.
    (x.log_zone() ? max_rt_log : max_rt) = std::max(x.log_zone() ? max_rt_log : max_rt, err);
  }
  report_.max_round_trip = std::max(max_rt, max_rt_log);

  double max_q = 0.0;
  for (double y : {0.45, 0.47, 0.49, 0.499, 0.52, 0.56, 0.6, 0.62}) {
    DD t_direct = time_by_quadrature(DD(y));
    ChartTime t_fast = time_raw(DD(y));
    if (t_fast.log_zone() || t_direct.hi == 0.0) continue;
    double rel =
        std::abs(((t_fast.value() - t_direct) / t_direct).to_double());
    max_q = std::max(max_q, rel);
  }
  report_.max_quadrature_rel = max_q;

  if (max_rt > 1e-25)
    throw PrecisionError("distlab::Chart: linear-zone round-trip error above 1e-25");
  if (max_rt_log > 1e-14)
    throw PrecisionError("distlab::Chart: log-zone round-trip error above 1e-14");
  if (max_q > 1e-20)
    throw PrecisionError("distlab::Chart: quadrature cross-check above 1e-20");
}

Chart make_chart(const std::string& field_name, double basepoint) {
  if (field_name == "pinched") {
    // value y(1-y)(y-1/2)^2 vanishes at the interior point 1/2, so du/Y is
    // not integrable across it and no flow chart exists.
    throw ConstructionError(
        "distlab::make_chart: field 'pinched' vanishes at interior point 1/2; "
        "1/Y is not integrable across an interior zero");
  }
  return Chart(field_kind_from_name(field_name), basepoint);
}

}  // namespace distlab
