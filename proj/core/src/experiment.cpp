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

#include "distlab/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "distlab/certificates.hpp"
#include "distlab/fields.hpp"
#include "distlab/kopell.hpp"
#include "distlab/variation.hpp"

namespace distlab {

using nlohmann::json;

void ExperimentConfig::validate() const {
  if (i_max < 2 || i_max % 2 != 0)
    throw std::invalid_argument("config: i_max must be even and >= 2");
  if (grid < 100) throw std::invalid_argument("config: grid too small");
  if (var_partition < 16) throw std::invalid_argument("config: var_partition >= 16");
  if (n_max < 8) throw std::invalid_argument("config: n_max >= 8");
  for (double t : {tol_identity, tol_marker, tol_support, tol_key_identity,
                   tol_certificate, tol_subadditivity}) {
    if (!(t > 0.0)) throw std::invalid_argument("config: tolerances must be positive");
  }
  if (ell_rule != "j_plus_1" && ell_rule != "explicit" && ell_rule != "none")
    throw std::invalid_argument("config: ell rule must be j_plus_1 | explicit | none");
  schedule().validate(i_max);
}

Schedule ExperimentConfig::schedule() const {
  if (ell_rule == "j_plus_1") return Schedule::j_plus_one();
  if (ell_rule == "none" || ell_list.empty()) return Schedule::none();
  return Schedule::explicit_list(ell_list);
}

std::string ExperimentConfig::to_json_string() const {
  json j;
  j["field"] = field;
  j["basepoint"] = basepoint;
  j["ell"]["rule"] = ell_rule;
  j["ell"]["list"] = ell_list;
  j["i_max"] = i_max;
  j["grid"] = grid;
  j["var_partition"] = var_partition;
  j["n_max"] = n_max;
  j["kopell_n_max"] = kopell_n_max;
  j["seed"] = seed;
  j["out_dir"] = out_dir;
  j["tolerances"] = {{"identity", tol_identity},       {"marker", tol_marker},
                     {"support", tol_support},         {"key_identity", tol_key_identity},
                     {"certificate", tol_certificate}, {"subadditivity", tol_subadditivity}};
  return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json_string(const std::string& text) {
  json j = json::parse(text);
  ExperimentConfig c;
  c.field = j.value("field", c.field);
  c.basepoint = j.value("basepoint", c.basepoint);
  if (j.contains("ell")) {
    c.ell_rule = j["ell"].value("rule", c.ell_rule);
    if (j["ell"].contains("list"))
      c.ell_list = j["ell"]["list"].get<std::vector<std::int64_t>>();
  }
  c.i_max = j.value("i_max", c.i_max);
  c.grid = j.value("grid", c.grid);
  c.var_partition = j.value("var_partition", c.var_partition);
  c.n_max = j.value("n_max", c.n_max);
  c.kopell_n_max = j.value("kopell_n_max", c.kopell_n_max);
  c.seed = j.value("seed", c.seed);
  c.out_dir = j.value("out_dir", c.out_dir);
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    c.tol_identity = t.value("identity", c.tol_identity);
    c.tol_marker = t.value("marker", c.tol_marker);
    c.tol_support = t.value("support", c.tol_support);
    c.tol_key_identity = t.value("key_identity", c.tol_key_identity);
    c.tol_certificate = t.value("certificate", c.tol_certificate);
    c.tol_subadditivity = t.value("subadditivity", c.tol_subadditivity);
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_string(ss.str());
}

std::string ExperimentConfig::hash() const {
  // FNV-1a over the canonical json
  std::string s = to_json_string();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool ExperimentResult::any_failure() const {
  for (const auto& s : suites)
    for (const auto& r : s.records)
      if (r.status == "fail" || r.status == "error") return true;
  return false;
}

bool ExperimentResult::any_error() const {
  for (const auto& s : suites)
    for (const auto& r : s.records)
      if (r.status == "error") return true;
  return false;
}

std::string ExperimentResult::report_json_string() const {
  json j;
  j["config"] = json::parse(config.to_json_string());
  j["config_hash"] = config.hash();
  json suites_j = json::array();
  for (const auto& s : suites) {
    json sj;
    sj["suite"] = s.name;
    sj["seconds"] = s.seconds;
    json recs = json::array();
    for (const auto& r : s.records) {
      recs.push_back({{"name", r.name},
                      {"provenance", r.provenance},
                      {"status", r.status},
                      {"measured", r.measured},
                      {"threshold", r.threshold},
                      {"note", r.note},
                      {"config_hash", config.hash()}});
    }
    sj["records"] = recs;
    suites_j.push_back(sj);
  }
  j["suites"] = suites_j;
  return j.dump(2);
}

namespace {

struct Recorder {
  std::string suite;
  std::vector<CheckRecord>* out;

  void check(const std::string& name, const std::string& prov, double measured,
             double threshold, bool ok, const std::string& note = "") {
    out->push_back(CheckRecord{suite, name, prov, ok ? "pass" : "fail", measured,
                               threshold, note});
  }
  void below(const std::string& name, const std::string& prov, double measured,
             double threshold, const std::string& note = "") {
    check(name, prov, measured, threshold, measured < threshold, note);
  }
  void flag(const std::string& name, const std::string& prov, bool ok,
            const std::string& note = "") {
    check(name, prov, ok ? 1.0 : 0.0, 1.0, ok, note);
  }
  void skip(const std::string& name, const std::string& prov, const std::string& note) {
    out->push_back(CheckRecord{suite, name, prov, "skip", 0.0, 0.0, note});
  }
  void error(const std::string& name, const std::string& prov, const std::string& what) {
    out->push_back(CheckRecord{suite, name, prov, "error", 0.0, 0.0, what});
  }
};

double timed_seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

Diffeo random_word(const ConstructionKit& kit, std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len_dist(1, max_len);
  std::uniform_int_distribution<int> gen_dist(0, 5);
  std::uniform_int_distribution<int> sign_dist(0, 1);
  static const Gen gens[6] = {Gen::kFhat, Gen::kF, Gen::kG, Gen::kHhat, Gen::kH, Gen::kPsi};
  Diffeo acc;
  int len = len_dist(rng);
  for (int i = 0; i < len; ++i) {
    const Diffeo& g = kit.generator(gens[gen_dist(rng)]);
    acc = compose(acc, sign_dist(rng) ? g : invert(g));
  }
  return acc;
}

}  // namespace

ExperimentRunner::ExperimentRunner(ExperimentConfig config) : config_(std::move(config)) {
  config_.validate();
  chart_ = std::make_shared<Chart>(field_kind_from_name(config_.field), config_.basepoint);
}

const ConstructionKit& ExperimentRunner::kit() {
  if (!kit_) kit_.emplace(chart_, config_.schedule(), config_.i_max);
  return *kit_;
}

SuiteReport ExperimentRunner::run_chart_suite() {
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.name = "chart";
  Recorder r{rep.name, &rep.records};
  try {
    const Chart& c = *chart_;
    r.below("round_trip", "make_chart", c.report().max_round_trip, 1e-11);
    r.below("quadrature_cross_check", "make_chart", c.report().max_quadrature_rel, 1e-12);
    r.below("phi_0_is_basepoint", "make_chart",
            std::abs(c.marker(DD(0.0)).to_double() - c.basepoint()), 1e-13);
    {
      DD f1 = c.flow_translate(DD(c.basepoint()), DD(1.0));
      r.below("phi_1_is_time1_flow", "make_chart",
              std::abs((c.marker(DD(1.0)) - f1).to_double()), 1e-13);
    }
    for (int k = 1; k <= 8; ++k) {
      FlatnessProbe p = flatness_probe_Y(c, k, default_probe_samples());
      r.flag("flatness_Y_k" + std::to_string(k), "make_chart", p.decreasing && p.flat,
             "last log10 ratio " + fmt(p.log10_ratio.back()));
      FlatnessProbe ph = flatness_probe_Yhat(c, k, default_probe_samples());
      r.flag("flatness_Yhat_k" + std::to_string(k), "make_chart",
             ph.decreasing && ph.flat, "last log10 ratio " + fmt(ph.log10_ratio.back()));
    }

    VectorField1D X = VectorField1D::unit();
    VectorField1D Xhat = VectorField1D::linear_log2();
    VectorField1D Y = VectorField1D::chart_Y(chart_);

    double worst = 0.0;
    for (double x : {-3.0, -0.5, 0.0, 1.25, 7.0})
      worst = std::max(worst, std::abs(flow(X, 1.0, x) - (x + 1.0)));
    r.below("flow_X_translation", "flow", worst, 1e-14);
    worst = 0.0;
    for (double x : {-3.0, -0.5, 0.0, 1.25, 7.0})
      worst = std::max(worst, std::abs(flow(Xhat, 1.0, x) - 2.0 * x));
    r.below("flow_Xhat_doubling", "flow", worst, 1e-14);
    worst = 0.0;
    for (double y : {0.31, 0.5, 0.62})
      worst = std::max(worst, std::abs(flow(Y, 0.0, y) - y));
    r.below("flow_time0_identity", "flow", worst, 1e-14);

    worst = 0.0;
    for (double x : {-2.0, 0.3, 5.0})
      worst = std::max(worst, std::abs(flow_derivative(Xhat, 1.0, x) - 2.0));
    r.below("flow_derivative_Xhat", "flow_derivative", worst, 1e-13);
    worst = 0.0;
    for (double t : {-1.5, 0.25, 3.0})
      worst = std::max(worst, std::abs(flow_derivative(X, t, 0.7) - 1.0));
    r.below("flow_derivative_X", "flow_derivative", worst, 1e-14);
    {
      double y1 = flow(Y, 1.0, 0.5);
      double cocycle =
          flow_derivative(Y, 1.0, 0.5) * flow_derivative(Y, -1.0, y1);
      r.below("flow_derivative_inverse_cocycle", "flow_derivative",
              std::abs(cocycle - 1.0), 1e-10);
    }

    // flow group law on samples
    worst = 0.0;
    for (double s : {-1.0, 0.5, 2.0})
      for (double t : {-0.5, 1.0})
        for (double y : {0.42, 0.5, 0.57}) {
          DD lhs = Y.flow(DD(s + t), DD(y));
          DD rhs = Y.flow(DD(s), Y.flow(DD(t), DD(y)));
          worst = std::max(worst, std::abs((lhs - rhs).to_double()));
        }
    r.below("flow_group_law", "flow", worst, 1e-12);

    // derivative vs centered differences
    worst = 0.0;
    for (double y : {0.44, 0.48, 0.52, 0.56}) {
      double h = 1e-7;
      double fd = (flow(Y, 1.0, y + h) - flow(Y, 1.0, y - h)) / (2.0 * h);
      double an = flow_derivative(Y, 1.0, y);
      worst = std::max(worst, std::abs(fd - an) / std::max(an, 1e-300));
    }
    r.below("flow_derivative_vs_fd", "flow_derivative", worst, 1e-6);

    // chart conjugacy phi(q+1) = Phi_Y^1(phi(q)) for rationals in [-8, 8]
    worst = 0.0;
    for (int num = -32; num <= 28; num += 3) {
      DD q = DD(double(num)) / 4.0;
      DD lhs = c.marker(q + 1.0);
      DD rhs = c.flow_translate(c.marker(q), DD(1.0));
      worst = std::max(worst, std::abs((lhs - rhs).to_double()));
    }
    r.below("chart_conjugacy_markers", "make_chart", worst, 1e-12);

    // pushforwards
    {
      VectorField1D pf = pushforward(X, as_monotone_map(Diffeo(
                                            make_affine_primitive(DD(1.0), DD(0.3)))));
      double w = 0.0;
      for (double y : {-0.5, 0.2, 1.4}) w = std::max(w, std::abs(pf.value(y) - 1.0));
      r.below("pushforward_translation_invariance", "pushforward", w, 1e-12);
    }
    {
      VectorField1D pf = pushforward(X, chart_phi_map(chart_));
      double w = 0.0;
      for (double y : {0.35, 0.45, 0.5, 0.55, 0.65})
        w = std::max(w, std::abs(pf.value(y) - c.Y(y)) / std::max(c.Y(y), 1e-300));
      r.below("pushforward_X_by_phi_is_Y", "pushforward", w, 1e-9);
      r.flag("pushforward_field_valid", "pushforward", validate_field(pf),
             "sign constancy and endpoint vanishing");
    }
    {
      // flow of a pushforward = conjugated flow
      const ConstructionKit& K = kit();
      auto m = as_monotone_map(K.fhat());
      VectorField1D pf = pushforward(Y, m);
      double w = 0.0;
      for (int i = 1; i < 1000; ++i) {
        double y = i / 1000.0;
        DD lhs = pf.flow(DD(0.5), DD(y));
        DD rhs = m->eval(Y.flow(DD(0.5), m->eval_inverse(DD(y))));
        w = std::max(w, std::abs((lhs - rhs).to_double()));
      }
      r.below("pushforward_flow_conjugacy", "pushforward", w, 1e-9);
    }
    {
      bool threw = false;
      try {
        make_chart("pinched");
      } catch (const ConstructionError&) {
        threw = true;
      }
      r.flag("pinched_field_rejected", "make_chart", threw,
             "interior zero makes 1/Y non-integrable");
    }
  } catch (const std::exception& e) {
    r.error("suite", "make_chart", e.what());
  }
  rep.seconds = timed_seconds(t0);
  return rep;
}

SuiteReport ExperimentRunner::run_diffeo_suite() {
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.name = "diffeo";
  Recorder r{rep.name, &rep.records};
  try {
    const ConstructionKit& K = kit();
    std::mt19937_64 rng(config_.seed ^ 0xd1ffe0u);

    r.below("identity_evaluate", "evaluate", std::abs(Diffeo().evaluate(0.3) - 0.3),
            1e-16);
    {
      double w = 0.0;
      for (const Rational& q : {Rational(-2), Rational(-1, 2), Rational(0), Rational(1)}) {
        DD lhs = K.f().eval_dd(K.marker(q));
        w = std::max(w, std::abs((lhs - K.marker(q + Rational(1))).to_double()));
      }
      r.below("evaluate_f_marker_shift", "evaluate", w, config_.tol_marker);
    }
    {
      double w = 0.0;
      for (const Rational& q : {Rational(-2), Rational(-1, 2), Rational(1)}) {
        DD lhs = K.fhat().eval_dd(K.marker(q));
        w = std::max(w, std::abs((lhs - K.marker(q * Rational(2))).to_double()));
      }
      r.below("evaluate_fhat_marker_doubling", "evaluate", w, config_.tol_marker);
    }

    // randomized words: monotonicity, support soundness, group axioms
    double worst_mono = 0.0, worst_sound = 0.0, worst_assoc = 0.0, worst_inv = 0.0;
    for (int trial = 0; trial < 12; ++trial) {
      Diffeo a = random_word(K, rng, 8);
      Diffeo b = random_word(K, rng, 8);
      Diffeo c = random_word(K, rng, 4);
      double prev = -2.0;
      bool first = true;
      for (int i = 0; i <= 1000; ++i) {
        double x = -1.0 + 3.0 * i / 1000.0;
        double v = a.evaluate(x);
        if (!first && !(v > prev)) worst_mono = std::max(worst_mono, prev - v);
        prev = v;
        first = false;
        if (!a.support().contains(x))
          worst_sound = std::max(worst_sound, std::abs(v - x));
      }
      Diffeo ab_c = compose(compose(a, b), c);
      Diffeo a_bc = compose(a, compose(b, c));
      worst_assoc = std::max(worst_assoc, sup_distance(ab_c, a_bc, 1000));
      worst_inv = std::max(worst_inv, sup_distance(compose(a, invert(a)), Diffeo(), 1000));
    }
    r.below("monotonicity_random_words", "evaluate", worst_mono, 1e-15);
    r.below("support_soundness", "evaluate", worst_sound, 1e-12);
    r.below("associativity_samples", "compose", worst_assoc, 1e-9);
    r.below("inverse_cancellation", "invert", worst_inv, 1e-9);

    // derivative cocycle is structural: compare compose against the sum
    {
      Diffeo a = random_word(K, rng, 5);
      Diffeo b = random_word(K, rng, 5);
      double w = 0.0;
      for (double x : {-0.4, 0.2, 0.45, 0.5, 0.55, 0.8, 1.3}) {
        DD lhs = compose(a, b).log_derivative(DD(x));
        DD rhs = a.log_derivative(b.eval_dd(DD(x))) + b.log_derivative(DD(x));
        w = std::max(w, std::abs((lhs - rhs).to_double()));
      }
      r.below("derivative_cocycle", "derivative", w, 1e-20,
              "exact by construction over the word");
    }

    // derivative of fbar vs centered differences, taken in double-double:
    // the map has fine structure at the 1e-3 scale, so double-precision
    // differences bottom out near 2e-6 regardless of step choice
    {
      double w = 0.0;
      const DD h(1e-9);
      for (int i = 1; i < 1000; ++i) {
        double x = 0.40 + 0.20 * i / 1000.0;
        DD fd = (K.fbar().eval_dd(DD(x) + h) - K.fbar().eval_dd(DD(x) - h)) /
                dd_mul_pwr2(h, 2.0);
        double an = K.fbar().derivative(x);
        w = std::max(w, std::abs(fd.to_double() - an) / std::max(std::abs(an), 1e-12));
      }
      r.below("fbar_derivative_vs_fd", "derivative", w, 1e-6);
    }

    r.below("compose_f_finv_identity", "compose",
            sup_distance(compose(K.f(), invert(K.f())), Diffeo(), 10000), 1e-10);
    {
      Diffeo a = random_word(K, rng, 6);
      r.below("conjugate_by_identity", "conjugate", sup_distance(conjugate(a, Diffeo()), a, 1000),
              1e-12);
    }
    {
      // supp(f^{-1} g f) = [x_{-1}, x_0]
      Diffeo cg = conjugate(K.g(), invert(K.f()));
      Interval hull = cg.support().hull();
      double lo = K.marker(Rational(-1)).to_double();
      double hi = K.marker(Rational(0)).to_double();
      double w = std::max(std::abs(hull.lo - lo), std::abs(hull.hi - hi));
      r.below("conjugate_support_transport", "conjugate", w, 1e-9);
    }
    r.below("sup_distance_reflexive", "sup_distance",
            sup_distance(K.g(), K.g(), 512), 1e-300);
    r.below("c1_distance_identity", "sup_distance", c1_distance(Diffeo(), Diffeo(), 512),
            1e-300);
    r.below("bs_relation_once", "sup_distance",
            sup_distance(conjugate(K.f(), K.fhat()), power(K.f(), 2), 10000), 1e-9);
    {
      // power semantics
      double w = std::abs((power(K.f(), 3).eval_dd(K.marker(Rational(0))) -
                           K.marker(Rational(3))).to_double());
      r.below("power_marker_orbit", "power", w, config_.tol_marker);
      r.below("power_zero_identity", "power", sup_distance(power(K.g(), 0), Diffeo(), 512),
              1e-300);
      DD x(0.47);
      DD lhs = power(K.f(), 2).log_derivative(x);
      DD rhs = K.f().log_derivative(K.f().eval_dd(x)) + K.f().log_derivative(x);
      r.below("power_chain_rule", "power", std::abs((lhs - rhs).to_double()), 1e-25);
    }
    {
      std::string js = K.fbar().to_json_string();
      bool ok = false;
      try {
        auto parsed = json::parse(js);
        ok = parsed.contains("word") && parsed["word"].size() == 2;
      } catch (...) {
      }
      r.flag("word_serialization_parses", "evaluate", ok);
    }
  } catch (const std::exception& e) {
    r.error("suite", "evaluate", e.what());
  }
  rep.seconds = timed_seconds(t0);
  return rep;
}

SuiteReport ExperimentRunner::run_construction_suite() {
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.name = "construction";
  Recorder r{rep.name, &rep.records};
  try {
    const ConstructionKit& K = kit();
    csv_["kit_summary.json"] = K.summary_json_string() + "\n";

    // marker transport under f and fhat (acceptance criterion 2 set)
    {
      const std::vector<Rational> qs = {Rational(-4),    Rational(-3, 4), Rational(-1, 2),
                                        Rational(0),     Rational(1, 2),  Rational(1),
                                        Rational(2)};
      double wf = 0.0, wfh = 0.0;
      for (const auto& q : qs) {
        wf = std::max(wf, std::abs((K.f().eval_dd(K.marker(q)) -
                                    K.marker(q + Rational(1))).to_double()));
        wfh = std::max(wfh, std::abs((K.fhat().eval_dd(K.marker(q)) -
                                      K.marker(q * Rational(2))).to_double()));
      }
      r.below("marker_transport_f", "build_kit", wf, config_.tol_marker);
      r.below("marker_transport_fhat", "build_kit", wfh, config_.tol_marker);
    }
    {
      double prev = -1.0;
      bool inc = true;
      for (int num = -16; num <= 16; ++num) {
        double v = K.marker(Rational(num, 4)).to_double();
        if (v <= prev) inc = false;
        prev = v;
      }
      r.flag("marker_monotone", "build_kit", inc);
    }

    // Baumslag-Solitar for i = 1..4
    for (int i = 1; i <= 4; ++i) {
      double d = sup_distance(conjugate(K.f(), power(K.fhat(), i)),
                              power(K.f(), std::int64_t(1) << i), config_.grid);
      r.below("bs_relation_i" + std::to_string(i), "build_kit", d, config_.tol_identity);
    }

    // g and psi pointwise constraints
    {
      DD x0 = K.marker(Rational(0)), x1 = K.marker(Rational(1));
      double w = std::max(std::abs((K.g().eval_dd(x0) - x0).to_double()),
                          std::abs((K.g().eval_dd(x1) - x1).to_double()));
      r.below("g_fixes_interval_ends", "build_kit", w, 1e-12);
      double mid = 0.5 * (x0.to_double() + x1.to_double());
      r.check("g_nontrivial_inside", "build_kit",
              std::abs(K.g().evaluate(mid) - mid), 1e-6,
              std::abs(K.g().evaluate(mid) - mid) > 1e-6);
      double wpsi = std::max(
          std::abs(K.psi().eval_dd(K.marker(Rational(-3, 4))).to_double()),
          std::abs(K.psi().eval_dd(K.marker(Rational(1))).to_double() - 1.0));
      r.below("psi_constraints", "build_kit", wpsi, config_.tol_marker);
      double wid = 0.0;
      double a = K.marker(Rational(-1, 2)).to_double();
      double b = x0.to_double();
      for (int j = 0; j <= 64; ++j) {
        double y = a + (b - a) * j / 64.0;
        wid = std::max(wid, std::abs(K.psi().evaluate(y) - y));
      }
      r.below("psi_identity_segment", "build_kit", wid, 1e-15);
    }

    // inactive schedule -> hhat = h = id
    {
      ConstructionKit K0(chart_, Schedule::none(), config_.i_max);
      double w = std::max(sup_distance(K0.h(), Diffeo(), 2000),
                          sup_distance(K0.hhat(), Diffeo(), 2000));
      r.below("schedule_none_trivial_h", "build_kit", w, 1e-300);
    }
    {
      bool threw = false;
      try {
        Schedule bad = Schedule::explicit_list({1, 2, 3});
        bad.active(2);
      } catch (const std::invalid_argument&) {
        threw = true;
      }
      r.flag("ell_equal_1_rejected", "build_kit", threw);
    }

    // h_n identity h_n = f^{-n} f^{-1} fbar^n f and support
    {
      r.below("h0_empty_product", "h_n_map", sup_distance(h_n_map(K, 0), Diffeo(), 512),
              1e-300);
      double w = 0.0;
      for (std::int64_t n : {1, 2, 4}) {
        Diffeo lhs = h_n_map(K, n);
        Diffeo rhs = compose(power(K.f(), -n),
                             compose(invert(K.f()), compose(power(K.fbar(), n), K.f())));
        w = std::max(w, sup_distance(lhs, rhs, config_.grid));
      }
      r.below("h_n_vs_fbar_factorization", "h_n_map", w, config_.tol_identity);
      Diffeo h1 = h_n_map(K, 1);
      Interval hull = h1.support().hull();
      double lo = K.marker(Rational(-1)).to_double();
      double hi = K.marker(Rational(0)).to_double();
      r.below("h1_support", "h_n_map",
              std::max(std::abs(hull.lo - lo), std::abs(hull.hi - hi)), 1e-9);
    }

    if (K.schedule().rule() == Schedule::EllRule::kNone) {
      r.skip("key_identity", "key_identity_check",
             "schedule is all-zero (rule (iv) everywhere): hhat = h = id");
      r.skip("commutator_chain", "commutator_chain", "inactive schedule");
    } else {
      // commutator chain supports (i = 2)
      {
        CommutatorChain ch = commutator_chain(K, 2);
        double w1 = 0.0;
        for (double y : {-0.8, -0.3, 1.2, 1.9}) {
          w1 = std::max(w1, std::abs(ch.c_n.evaluate(y) - y));
        }
        r.below("c_n_trivial_outside_01", "commutator_chain", w1, config_.tol_support);
        double w2 = 0.0;
        double xm12 = K.marker(Rational(-1, 2)).to_double();
        double x0 = K.marker(Rational(0)).to_double();
        for (int j = 1; j < 48; ++j) {
          double y = 0.0 + xm12 * j / 48.0;
          w2 = std::max(w2, std::abs(ch.c_n.evaluate(y) - y));
          double z = x0 + (1.0 - x0) * j / 48.0;
          w2 = std::max(w2, std::abs(ch.c_n.evaluate(z) - z));
        }
        r.below("c_n_trivial_inside_gaps", "commutator_chain", w2, config_.tol_support);
        // on [x_{-1/2}, x_0]: c_n = fhat^{-i} f^{-n} (h hhat h^{-1} hhat^{-1}) f^n fhat^i
        Diffeo core = commutator(K.h(), K.hhat());
        Diffeo rhs = conjugate(conjugate(core, power(K.f(), -4)), power(K.fhat(), -2));
        double w3 = 0.0;
        for (int j = 0; j <= 64; ++j) {
          double y = xm12 + (x0 - xm12) * j / 64.0;
          w3 = std::max(w3,
                        std::abs((ch.c_n.eval_dd(DD(y)) - rhs.eval_dd(DD(y))).to_double()));
        }
        r.below("c_n_core_formula", "commutator_chain", w3, config_.tol_identity);
      }

      // support chain (acceptance criterion 3)
      for (int i : {2, 4}) {
        std::int64_t n = std::int64_t(1) << i;
        Diffeo inner = conjugate(conjugate(K.h(), power(K.f(), -n)), power(K.fhat(), -i));
        Diffeo conj = conjugate(inner, K.psi());
        double w = 0.0;
        double xm12 = K.marker(Rational(-1, 2)).to_double();
        double x0 = K.marker(Rational(0)).to_double();
        for (int j = 1; j < 200; ++j) {
          double y = xm12 * j / 200.0;
          w = std::max(w, std::abs(conj.evaluate(y) - y));
          double z = x0 + (1.0 - x0) * j / 200.0;
          if (z < 1.0) w = std::max(w, std::abs(conj.evaluate(z) - z));
        }
        r.below("support_chain_i" + std::to_string(i), "support_of", w,
                config_.tol_support);
      }

      // exact marker-index support displays
      {
        MarkerSupport sh = support_of(K, GeneratorWord::letter(Gen::kH));
        std::string expect;
        {
          std::vector<MarkerInterval> parts;
          for (int ip = 2; ip <= config_.i_max; ip += 2) {
            parts.push_back(MarkerInterval{
                SupportPoint::marker(Rational(std::int64_t(1) << (ip - 1))),
                SupportPoint::marker(Rational(std::int64_t(1) << ip))});
          }
          parts = merge_marker_intervals(std::move(parts));
          MarkerSupport tmp;
          tmp.parts = parts;
          expect = tmp.str();
        }
        r.flag("supp_h_active_runs", "support_of", sh.exact && sh.str() == expect,
               sh.str());

        int i = (config_.i_max >= 4) ? 4 : 2;
        std::int64_t n = std::int64_t(1) << i;
        GeneratorWord w = GeneratorWord::letter(Gen::kH)
                              .conjugated_by(GeneratorWord::letter(Gen::kF, -n))
                              .conjugated_by(GeneratorWord::letter(Gen::kFhat, -i));
        MarkerSupport s = support_of(K, w);
        // (2^{i-2} - 2^i)/2^i = -3/4 and -2^{i-1}/2^i = -1/2
        bool arith = (Rational((std::int64_t(1) << (i - 2)) - n) / Rational(n) ==
                      Rational(-3, 4)) &&
                     (Rational(-(std::int64_t(1) << (i - 1))) / Rational(n) ==
                      Rational(-1, 2));
        bool has_core = false;
        for (const auto& part : s.parts) {
          if (part.lo == SupportPoint::marker(Rational(-1, 2)) &&
              part.hi == SupportPoint::marker(Rational(0)))
            has_core = true;
        }
        r.flag("supp_conjugate_indices", "support_of", arith && has_core && s.exact,
               s.str());

        GeneratorWord wpsi = w.conjugated_by(GeneratorWord::letter(Gen::kPsi));
        MarkerSupport spsi = support_of(K, wpsi);
        bool inside = true;
        for (const auto& part : spsi.parts) {
          bool ok_piece =
              (part.hi < SupportPoint::zero() || part.hi == SupportPoint::zero()) ||
              (SupportPoint::one() < part.lo || part.lo == SupportPoint::one()) ||
              (!(part.lo < SupportPoint::marker(Rational(-1, 2))) &&
               !(SupportPoint::marker(Rational(0)) < part.hi));
          inside = inside && ok_piece;
        }
        r.flag("supp_psi_conjugate_display", "support_of", inside, spsi.str());
        MarkerSupport se = support_of(K, GeneratorWord());
        r.flag("supp_identity_empty", "support_of", se.parts.empty(), se.str());
      }

      // key identity (acceptance criterion 4) and schedule arithmetic
      for (int i = 2; i <= config_.i_max; i += 2) {
        int gpb = (i >= 6) ? 12 : 40;
        KeyIdentityResult res = key_identity_check(K, i, gpb);
        r.below("key_identity_residual_i" + std::to_string(i), "key_identity_check",
                res.residual, config_.tol_key_identity,
                "ell=" + std::to_string(res.ell));
        r.below("key_identity_block_flow_i" + std::to_string(i), "key_identity_check",
                res.block_flow_residual, config_.tol_key_identity);
        r.flag("key_identity_r_exact_i" + std::to_string(i), "key_identity_check",
               res.r_exact && res.r_residual < 1e-30,
               "r residual " + fmt(res.r_residual));
      }

      // schedule limit: active s_n, t_n decrease along blocks
      {
        bool dec = true;
        double prev_s = 1e300, prev_t = 1e300;
        for (int i = 2; i <= config_.i_max; i += 2) {
          std::int64_t n = std::int64_t(1) << (i - 1);
          double s = std::abs(K.schedule().s_n(n));
          double t = K.schedule().t_n(n).to_double();
          if (s > prev_s || t > prev_t) dec = false;
          prev_s = s;
          prev_t = t;
        }
        r.flag("schedule_times_decreasing", "build_kit", dec);
      }

      // C^1-at-endpoints probe: per-active-run max |Dh - 1| decreases toward
      // the right endpoint.  Sample time-uniformly inside three blocks of
      // each run; uniform-in-space sampling aliases the thin action windows.
      {
        bool dec_h = true, dec_hh = true;
        double prev_h = 1e300, prev_hh = 1e300;
        for (int i = 2; i <= config_.i_max; i += 2) {
          std::int64_t lo_n = std::int64_t(1) << (i - 1);
          double mh = 0.0, mhh = 0.0;
          for (std::int64_t k : {lo_n, (3 * lo_n) / 2, 2 * lo_n - 1}) {
            for (int j = 1; j < 32; ++j) {
              DD q = DD(double(k)) + DD(double(j)) / 32.0;
              DD y = K.chart().marker(q);
              mh = std::max(mh,
                            std::abs(std::expm1(K.h().log_derivative(y).to_double())));
              mhh = std::max(
                  mhh, std::abs(std::expm1(K.hhat().log_derivative(y).to_double())));
            }
          }
          if (mh > prev_h) dec_h = false;
          if (mhh > prev_hh) dec_hh = false;
          prev_h = mh;
          prev_hh = mhh;
        }
        r.flag("h_block_c1_trend", "build_kit", dec_h);
        r.flag("hhat_block_c1_trend", "build_kit", dec_hh);
      }
    }
  } catch (const std::exception& e) {
    r.error("suite", "build_kit", e.what());
  }
  rep.seconds = timed_seconds(t0);
  return rep;
}

SuiteReport ExperimentRunner::run_distortion_suite() {
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.name = "distortion";
  Recorder r{rep.name, &rep.records};
  std::ostringstream csv;
  csv << "target,n,var,var_over_n,partition_size\n";
  try {
    const ConstructionKit& K = kit();
    std::mt19937_64 rng(config_.seed ^ 0xd157u);

    r.below("var_identity_zero", "var_log_derivative",
            var_log_derivative(Diffeo(), config_.var_partition).value, 1e-12);
    {
      VariationEstimate v = var_log_derivative(K.fhat(), config_.var_partition);
      r.check("var_fhat_positive", "var_log_derivative", v.value, 0.1, v.value > 0.1);
      bool mono = true;
      for (size_t i = 1; i < v.refinement_history.size(); ++i) {
        if (v.refinement_history[i].second < v.refinement_history[i - 1].second - 1e-12)
          mono = false;
      }
      r.flag("refinement_monotone", "var_log_derivative", mono);
    }

    // subadditivity on random pairs (shared partitions keep the estimates
    // comparable; partition sums only grow under refinement)
    {
      double worst = -1e300;
      int violations = 0;
      for (int trial = 0; trial < 50; ++trial) {
        Diffeo a = random_word(K, rng, 8);
        Diffeo b = random_word(K, rng, 8);
        Diffeo ab = compose(a, b);
        VariationEstimate e_ab = var_log_derivative(ab, config_.var_partition);
        std::vector<double> img;
        img.reserve(e_ab.partition_points.size());
        for (double x : e_ab.partition_points) img.push_back(b.evaluate(x));
        VariationEstimate e_a = var_log_derivative(a, config_.var_partition, img);
        VariationEstimate e_b =
            var_log_derivative(b, config_.var_partition, e_ab.partition_points);
        double slack = e_ab.value - e_a.value - e_b.value;
        worst = std::max(worst, slack);
        if (slack > config_.tol_subadditivity) ++violations;
      }
      r.check("subadditivity_random_pairs", "var_log_derivative", worst,
              config_.tol_subadditivity, violations == 0,
              "max slack over 50 pairs");
    }

    // conjugation comparison var(u a u^-1) <= var a + 2 var u
    {
      double worst = -1e300;
      for (int trial = 0; trial < 8; ++trial) {
        Diffeo a = random_word(K, rng, 6);
        Diffeo u = random_word(K, rng, 6);
        Diffeo lhs = conjugate(a, u);
        VariationEstimate e_l = var_log_derivative(lhs, config_.var_partition);
        Diffeo uinv = invert(u);
        std::vector<double> seeds_a, seeds_u;
        for (double x : e_l.partition_points) {
          double z = uinv.evaluate(x);
          seeds_a.push_back(z);
          seeds_u.push_back(z);
          seeds_u.push_back(a.evaluate(z));
        }
        VariationEstimate e_a = var_log_derivative(a, config_.var_partition, seeds_a);
        VariationEstimate e_u = var_log_derivative(u, config_.var_partition, seeds_u);
        worst = std::max(worst, e_l.value - e_a.value - 2.0 * e_u.value);
      }
      r.check("conjugation_variation_bound", "var_log_derivative", worst,
              config_.tol_subadditivity, worst <= config_.tol_subadditivity);
    }

    // trends
    {
      AsymptoticDistortionEstimate f_tr = asymptotic_distortion(K.f(), config_.n_max,
                                                                config_.var_partition,
                                                                chart_);
      for (size_t i = 0; i < f_tr.per_n.size(); ++i) {
        csv << "f," << f_tr.per_n[i].first << "," << fmt(f_tr.per_n[i].second) << ","
            << fmt(f_tr.trend[i].second) << "," << f_tr.partition_sizes[i].second << "\n";
      }
      double v8 = 0.0, v64 = 0.0;
      for (auto& [n, v] : f_tr.trend) {
        if (n == 8) v8 = v;
        if (n == config_.n_max) v64 = v;
      }
      r.check("f_trend_decay", "asymptotic_distortion", v64, v8, v64 < v8,
              "var/n at n_max vs n=8");
      double v1 = f_tr.per_n.front().second;
      r.check("f_upper_below_var1", "asymptotic_distortion", f_tr.upper_estimate, v1,
              f_tr.upper_estimate < v1);

      AsymptoticDistortionEstimate fb_tr = asymptotic_distortion(
          K.fbar(), config_.n_max, config_.var_partition, chart_);
      for (size_t i = 0; i < fb_tr.per_n.size(); ++i) {
        csv << "fbar," << fb_tr.per_n[i].first << "," << fmt(fb_tr.per_n[i].second) << ","
            << fmt(fb_tr.trend[i].second) << "," << fb_tr.partition_sizes[i].second
            << "\n";
      }
      double lo = 1e300, hi = 0.0;
      for (auto& [n, v] : fb_tr.trend) {
        if (n >= 16) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      r.check("fbar_trend_positive", "asymptotic_distortion", lo, 0.0, lo > 0.0);
      r.check("fbar_trend_band", "asymptotic_distortion", hi / std::max(lo, 1e-300), 2.0,
              hi < 2.0 * lo, "max/min of var/n over n >= 16");

      r.check("identity_distortion_zero", "asymptotic_distortion",
              asymptotic_distortion(Diffeo(), 8, config_.var_partition).upper_estimate,
              1e-12,
              asymptotic_distortion(Diffeo(), 8, config_.var_partition).upper_estimate <
                  1e-12);

      // single flow maps: var/n decays for time-t flows
      bool flows_decay = true;
      for (double t : {0.5, 1.0, 2.0}) {
        Diffeo ft(make_flow_translate_primitive(chart_, DD(t), "flow_t"));
        AsymptoticDistortionEstimate tr =
            asymptotic_distortion(ft, 32, config_.var_partition, chart_);
        double a8 = 0.0, a32 = 0.0;
        for (auto& [n, v] : tr.trend) {
          if (n == 8) a8 = v;
          if (n == 32) a32 = v;
        }
        for (size_t i = 0; i < tr.per_n.size(); ++i) {
          csv << "flow_t" << t << "," << tr.per_n[i].first << ","
              << fmt(tr.per_n[i].second) << "," << fmt(tr.trend[i].second) << ","
              << tr.partition_sizes[i].second << "\n";
        }
        if (!(a32 < a8)) flows_decay = false;
      }
      r.flag("flow_maps_distortion_decay", "asymptotic_distortion", flows_decay);
    }
  } catch (const std::exception& e) {
    r.error("suite", "asymptotic_distortion", e.what());
  }
  csv_["distortion_trend.csv"] = csv.str();
  rep.seconds = timed_seconds(t0);
  return rep;
}

SuiteReport ExperimentRunner::run_certificate_suite() {
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.name = "certify";
  Recorder r{rep.name, &rep.records};
  std::ostringstream csv;
  csv << "i,n,upper_len,lower,paper_budget,residual\n";
  try {
    const ConstructionKit& K = kit();

    // bs words
    {
      r.flag("bs_n1", "bs_power_word", bs_power_word(1).length() == 1);
      GeneratorWord w8 = bs_power_word(8);
      GeneratorWord expect8 = GeneratorWord::letter(Gen::kFhat, 3) *
                              GeneratorWord::letter(Gen::kF) *
                              GeneratorWord::letter(Gen::kFhat, -3);
      r.flag("bs_n8_form", "bs_power_word", w8 == expect8 && w8.length() == 7, w8.str());
      double w = 0.0;
      for (std::int64_t n : {3, 8, 20}) {
        w = std::max(w, sup_distance(K.realize(bs_power_word(n)), power(K.f(), n),
                                     config_.grid));
      }
      r.below("bs_residuals", "bs_power_word", w, config_.tol_identity);
      bool bound_ok = true;
      for (std::int64_t n = 1; n <= 1000; ++n) {
        std::int64_t len = bs_power_word(n).length();
        std::int64_t log2n = 0;
        while ((std::int64_t(1) << (log2n + 1)) <= n) ++log2n;
        std::int64_t pop = 0;
        for (std::int64_t m = n; m; m >>= 1) pop += m & 1;
        if (len != bs_power_word_length_bound(n)) bound_ok = false;
        if (len > 2 * log2n + pop * (2 * log2n + 1)) bound_ok = false;
      }
      r.flag("bs_length_formula_exhaustive", "bs_power_word", bound_ok,
             "n <= 1000: len == 2 floor(log2 n) + popcount(n)");
    }

    if (K.schedule().rule() == Schedule::EllRule::kNone) {
      r.skip("fbar_certificates", "fbar_power_certificate", "inactive schedule");
    } else {
      std::vector<std::int64_t> n_list;
      for (int i = 2; i <= config_.i_max; i += 2) n_list.push_back((1 << i) / 2);
      for (std::int64_t n = 1; n <= config_.n_max; n *= 2) n_list.push_back(n);
      GrowthBound growth = derivative_growth_lower_bound(
          K.fbar(),
          {K.fhat(), K.f(), K.g(), K.hhat(), K.h(), K.psi()}, n_list, 2000);
      r.check("growth_log_C", "derivative_growth_lower_bound", growth.log_C, 0.0,
              growth.log_C > 0.0);
      r.flag("polterovich_sodin_witness", "derivative_growth_lower_bound",
             !growth.witnesses.empty(),
             growth.witnesses.empty()
                 ? "none found"
                 : ("first witness n=" + std::to_string(growth.witnesses.front().n)));
      {
        bool threw = false;
        try {
          derivative_growth_lower_bound(Diffeo(), {K.f()}, {8}, 200);
        } catch (const std::invalid_argument&) {
          threw = true;
        }
        r.flag("trivial_element_rejected", "derivative_growth_lower_bound", threw);
      }

      double prev_ratio = 1e300;
      bool ratios_decreasing = true;
      nlohmann::json certs_json = nlohmann::json::array();
      for (int i = 2; i <= config_.i_max; i += 2) {
        int grid = (i >= 6) ? 800 : (i >= 4 ? 2500 : config_.grid);
        FbarCertificate fc = fbar_power_certificate(K, i, &growth, grid);
        {
          nlohmann::json cj = nlohmann::json::parse(fc.cert.to_json_string());
          cj["i"] = i;
          cj["grid"] = grid;
          cj["h_word_length"] = fc.h_word_length;
          cj["h_budget"] = fc.h_budget;
          cj["total_budget"] = fc.total_budget;
          cj["log_C"] = growth.log_C;
          certs_json.push_back(cj);
        }
        csv << i << "," << fc.n << "," << fc.cert.upper_length << ","
            << fmt(fc.cert.lower_bound) << "," << fc.total_budget << ","
            << fmt(fc.cert.equality_residual) << "\n";
        r.flag("cert_budget_i" + std::to_string(i), "fbar_power_certificate",
               fc.h_word_length <= fc.h_budget &&
                   fc.cert.upper_length <= fc.total_budget,
               "h word " + std::to_string(fc.h_word_length) + " <= " +
                   std::to_string(fc.h_budget));
        r.below("cert_residual_i" + std::to_string(i), "fbar_power_certificate",
                fc.cert.equality_residual, config_.tol_certificate,
                "grid " + std::to_string(grid));
        r.flag("cert_consistent_i" + std::to_string(i), "fbar_power_certificate",
               fc.cert.consistent && !fc.cert.failed);
        double ratio = double(fc.cert.upper_length) / double(fc.cert.power_n);
        if (ratio >= prev_ratio) ratios_decreasing = false;
        prev_ratio = ratio;

        // round-trip determinism of the serialized certificate word
        GeneratorWord round =
            GeneratorWord::from_json_string(fc.cert.upper_word.to_json_string());
        r.flag("cert_roundtrip_i" + std::to_string(i), "fbar_power_certificate",
               round == fc.cert.upper_word);
      }
      csv_["certificates.json"] = certs_json.dump(2) + "\n";
      r.flag("cert_upper_ratio_decreasing", "fbar_power_certificate", ratios_decreasing,
             "upper(n)/n strictly decreasing over even i");
      {
        bool threw = false;
        try {
          fbar_power_certificate(K, 0, nullptr, 200);
        } catch (const std::invalid_argument&) {
          threw = true;
        }
        r.flag("cert_i0_rejected", "fbar_power_certificate", threw);
      }
    }
  } catch (const std::exception& e) {
    r.error("suite", "fbar_power_certificate", e.what());
  }
  csv_["certificates.csv"] = csv.str();
  rep.seconds = timed_seconds(t0);
  return rep;
}

SuiteReport ExperimentRunner::run_kopell_suite() {
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.name = "kopell";
  Recorder r{rep.name, &rep.records};
  std::ostringstream csv;
  csv << "mode,n,e_n\n";
  try {
    const ConstructionKit& K = kit();
    int n_max = config_.kopell_n_max;

    KopellResult zero = kopell_check(K, [](int) { return 0.0; }, 8, 16);
    double worst0 = 0.0;
    for (double e : zero.e_n) worst0 = std::max(worst0, e);
    r.below("tau_zero_all_identity", "kopell_check", worst0, 1e-12);
    r.flag("tau_zero_verdict_c1", "kopell_check",
           zero.verdict == KopellResult::Verdict::kC1);

    KopellResult decay = kopell_check(K, [](int n) { return 1.0 / n; }, n_max, 40);
    for (size_t k = 0; k < decay.e_n.size(); ++k)
      csv << "one_over_n," << (k + 1) << "," << fmt(decay.e_n[k]) << "\n";
    bool monotone = true;
    for (int n = 4; n < n_max; ++n) {
      if (decay.e_n[n] > decay.e_n[n - 1] * (1.0 + 1e-9)) monotone = false;
    }
    r.flag("tau_decay_monotone", "kopell_check", monotone,
           "e_n nonincreasing over 4 <= n <= n_max");
    r.below("tau_decay_final", "kopell_check", decay.e_n.back(), 0.05);
    r.flag("tau_decay_verdict_c1", "kopell_check",
           decay.verdict == KopellResult::Verdict::kC1);
    bool chain_ok = !decay.samples.empty();
    double worst_ratio = 0.0;
    for (const auto& cs : decay.samples) {
      if (!cs.holds) chain_ok = false;
      if (cs.step3_bound > 0)
        worst_ratio = std::max(worst_ratio, cs.step3_lhs / cs.step3_bound);
    }
    r.flag("kopell_quantitative_chain", "kopell_check", chain_ok,
           "max lhs/bound " + fmt(worst_ratio));

    KopellResult flat = kopell_check(K, [](int) { return 1.0; }, n_max, 40);
    for (size_t k = 0; k < flat.e_n.size(); ++k)
      csv << "constant," << (k + 1) << "," << fmt(flat.e_n[k]) << "\n";
    double floor_val = 1e300;
    for (int n = 4; n <= n_max; ++n) floor_val = std::min(floor_val, flat.e_n[n - 1]);
    r.check("tau_constant_floor", "kopell_check", floor_val, 0.0, floor_val > 0.0,
            "min e_n over 4 <= n <= n_max");
    r.flag("tau_constant_not_c1", "kopell_check",
           flat.verdict == KopellResult::Verdict::kNotC1);

    {
      bool threw = false;
      try {
        kopell_check(K, Diffeo(), [](int) { return 0.5; }, 8, 8);
      } catch (const std::invalid_argument&) {
        threw = true;
      }
      r.flag("kopell_precondition_error", "kopell_check", threw,
             "identity f_inner rejected");
    }
  } catch (const std::exception& e) {
    r.error("suite", "kopell_check", e.what());
  }
  csv_["kopell.csv"] = csv.str();
  rep.seconds = timed_seconds(t0);
  return rep;
}

SuiteReport ExperimentRunner::run_lipschitz_suite() {
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.name = "lipschitz";
  Recorder r{rep.name, &rep.records};
  std::ostringstream csv;
  csv << "i,n,ell_n,log_L,measured_log_lip,bound\n";
  try {
    const ConstructionKit& K = kit();

    LipschitzChain single = lipschitz_chain_check(K, GeneratorWord::letter(Gen::kF), 2000);
    r.flag("single_generator", "lipschitz_chain_check",
           single.holds && single.measured_log_lip <= single.log_L + 1e-9);
    LipschitzChain cube =
        lipschitz_chain_check(K, GeneratorWord::letter(Gen::kFhat, 3), 2000);
    r.flag("fhat_cubed_submultiplicative", "lipschitz_chain_check", cube.holds);

    bool all_hold = true;
    bool surrogate_decreasing = true;
    double prev = 1e300;
    for (int i = 1; i <= 6; ++i) {
      std::int64_t n = std::int64_t(1) << i;
      GeneratorWord w = bs_power_word(n);
      LipschitzChain chain = lipschitz_chain_check(K, w, 2000);
      if (!chain.holds) all_hold = false;
      double surrogate = double(chain.word_length) * chain.log_L / double(n);
      csv << i << "," << n << "," << chain.word_length << "," << fmt(chain.log_L) << ","
          << fmt(chain.measured_log_lip) << "," << fmt(chain.bound) << "\n";
      if (surrogate >= prev) surrogate_decreasing = false;
      prev = surrogate;
    }
    r.flag("bs_words_lipschitz_bound", "lipschitz_chain_check", all_hold,
           "log Lip(f^n) <= ell_n log L + 1e-6");
    r.flag("entropy_surrogate_decreasing", "lipschitz_chain_check", surrogate_decreasing,
           "(ell_n log L)/n decreasing along n = 2^i");
  } catch (const std::exception& e) {
    r.error("suite", "lipschitz_chain_check", e.what());
  }
  csv_["lipschitz.csv"] = csv.str();
  rep.seconds = timed_seconds(t0);
  return rep;
}

ExperimentResult ExperimentRunner::run(const std::vector<std::string>& only) {
  auto want = [&](const std::string& name) {
    if (only.empty()) return true;
    for (const auto& s : only)
      if (s == name) return true;
    return false;
  };
  ExperimentResult out;
  out.config = config_;
  if (want("chart")) out.suites.push_back(run_chart_suite());
  if (want("diffeo")) out.suites.push_back(run_diffeo_suite());
  if (want("construction")) out.suites.push_back(run_construction_suite());
  if (want("distortion")) out.suites.push_back(run_distortion_suite());
  if (want("certify")) out.suites.push_back(run_certificate_suite());
  if (want("kopell")) out.suites.push_back(run_kopell_suite());
  if (want("lipschitz")) out.suites.push_back(run_lipschitz_suite());
  out.csv = csv_;
  return out;
}

}  // namespace distlab
