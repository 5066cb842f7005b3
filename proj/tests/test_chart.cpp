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

#include <cmath>
#include <memory>

#include "doctest.h"
#include "distlab/chart.hpp"
#include "distlab/fields.hpp"

using namespace distlab;

namespace {

std::shared_ptr<const Chart> default_chart() {
  static auto chart = std::make_shared<Chart>(FieldKind::kDoubleExp, 0.5);
  return chart;
}

}  // namespace

TEST_CASE("chart construction validates itself") {
  const Chart& c = *default_chart();
  CHECK(c.report().max_round_trip < 1e-11);  // spec round-trip requirement
  CHECK(c.report().max_quadrature_rel < 1e-20);
  CHECK(c.marker(DD(0.0)).to_double() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("time integral against independent quadrature") {
  const Chart& c = *default_chart();
  for (double y : {0.44, 0.46, 0.505, 0.55, 0.61}) {
    DD direct = c.time_by_quadrature(DD(y));
    ChartTime fast = c.time_of(DD(y));
    REQUIRE(!fast.log_zone());
    CHECK(std::abs(((fast.value() - direct) / direct).to_double()) < 1e-24);
  }
}

TEST_CASE("phi conjugates translation to the flow") {
  const Chart& c = *default_chart();
  for (int num = -32; num <= 28; ++num) {
    DD q = DD(double(num)) / 4.0;
    DD lhs = c.marker(q + 1.0);
    DD rhs = c.flow_translate(c.marker(q), DD(1.0));
    CHECK(std::abs((lhs - rhs).to_double()) < 1e-13);
  }
}

TEST_CASE("scale flow round trips across the far zone") {
  const Chart& c = *default_chart();
  for (double y : {0.19, 0.21, 0.26, 0.35, 0.152, 0.05, 0.94}) {
    DD a = c.flow_scale(DD(y), DD(2.0), 1.0);
    DD b = c.flow_scale(a, DD(0.5), -1.0);
    CHECK(std::abs((b - DD(y)).to_double()) < 1e-13);
  }
}

TEST_CASE("deep boundary zone is exactly fixed") {
  const Chart& c = *default_chart();
  for (double y : {1e-4, 1e-8, 0.0005, 1.0 - 1e-7}) {
    CHECK(c.flow_translate(DD(y), DD(1.0)).to_double() == y);
    CHECK(c.flow_scale(DD(y), DD(2.0), 1.0).to_double() == y);
  }
}

TEST_CASE("derivatives match finite differences") {
  const Chart& c = *default_chart();
  for (double y : {0.43, 0.47, 0.5, 0.53, 0.58}) {
    DD ld;
    c.flow_translate(DD(y), DD(1.0), &ld);
    double h = 1e-7;
    double fd = (c.flow_translate(DD(y + h), DD(1.0)).to_double() -
                 c.flow_translate(DD(y - h), DD(1.0)).to_double()) /
                (2 * h);
    CHECK(std::exp(ld.to_double()) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("flatness probes pass for double_exp and discriminate single_exp") {
  const Chart& c = *default_chart();
  for (int k = 1; k <= 8; ++k) {
    FlatnessProbe py = flatness_probe_Y(c, k, default_probe_samples());
    CHECK(py.decreasing);
    CHECK(py.flat);
    FlatnessProbe ph = flatness_probe_Yhat(c, k, default_probe_samples());
    CHECK(ph.decreasing);
    CHECK(ph.flat);
  }
  Chart single(FieldKind::kSingleExp, 0.5);
  FlatnessProbe ok = flatness_probe_Y(single, 8, default_probe_samples());
  CHECK(ok.flat);  // Y itself is flat enough
  FlatnessProbe bad = flatness_probe_Yhat(single, 3, default_probe_samples());
  CHECK_FALSE(bad.flat);  // Yhat ~ y^2 fails at k = 3
  CHECK_FALSE(bad.decreasing);
}

TEST_CASE("named fields and errors") {
  CHECK_THROWS_AS(make_chart("pinched"), ConstructionError);
  CHECK_THROWS_AS(make_chart("no_such_field"), std::invalid_argument);
  CHECK_THROWS_AS(Chart(FieldKind::kDoubleExp, 1.5), ConstructionError);
}

TEST_CASE("off-center basepoint shifts the chart origin") {
  Chart c(FieldKind::kDoubleExp, 0.47);
  CHECK(c.marker(DD(0.0)).to_double() == doctest::Approx(0.47).epsilon(1e-15));
  DD x1 = c.marker(DD(1.0));
  DD f1 = c.flow_translate(DD(0.47), DD(1.0));
  CHECK(std::abs((x1 - f1).to_double()) < 1e-14);
}

TEST_CASE("vector fields: flows, derivatives, pushforward") {
  auto chart = default_chart();
  VectorField1D X = VectorField1D::unit();
  VectorField1D Xhat = VectorField1D::linear_log2();
  VectorField1D Y = VectorField1D::chart_Y(chart);
  VectorField1D Yhat = VectorField1D::chart_Yhat(chart);

  CHECK(flow(X, 1.0, 2.25) == doctest::Approx(3.25).epsilon(1e-15));
  CHECK(flow(Xhat, 1.0, -0.3) == doctest::Approx(-0.6).epsilon(1e-15));
  CHECK(flow(Y, 0.0, 0.37) == doctest::Approx(0.37).epsilon(1e-15));
  CHECK(flow_derivative(Xhat, 1.0, 5.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(flow_derivative(X, -2.0, 0.1) == doctest::Approx(1.0).epsilon(1e-15));

  // fixed points of the fields are fixed by the flows
  CHECK(flow(Xhat, 3.0, 0.0) == 0.0);
  CHECK(flow(Yhat, 1.0, 0.5) == doctest::Approx(0.5).epsilon(1e-14));

  // Yhat value identity: Yhat(y) = ln2 * T(y) * Y(y)
  for (double y : {0.44, 0.52, 0.6}) {
    ChartTime t = chart->time_of(DD(y));
    double expect = dd_const::ln2.hi * t.value().to_double() * chart->Y(y);
    CHECK(Yhat.value(y) == doctest::Approx(expect).epsilon(1e-12));
  }

  VectorField1D pf = pushforward(X, chart_phi_map(chart));
  for (double y : {0.4, 0.5, 0.62}) {
    CHECK(pf.value(y) == doctest::Approx(chart->Y(y)).epsilon(1e-9));
  }
  CHECK(validate_field(Y));
  CHECK(validate_field(Yhat));
  CHECK(validate_field(pf));
}
