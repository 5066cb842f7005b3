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

#include "distlab/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace distlab {

namespace {

constexpr double kMinCellWidth = 1e-10;
constexpr double kStopRelChange = 1e-4;
constexpr int kMaxPartition = 24000;

struct Cell {
  double a, b;
  double la, lb;  // log D at the endpoints
  double contrib() const { return std::abs(lb - la); }
};

}  // namespace

VariationEstimate var_log_derivative(const Diffeo& d, int initial_partition,
                                     const std::vector<double>& seed_points) {
  if (initial_partition < 16)
    throw std::invalid_argument("distlab::var_log_derivative: initial partition >= 16");

  const Interval amb = d.ambient();
  std::vector<double> pts;
  pts.reserve(initial_partition + seed_points.size() + 1);
  for (int i = 0; i <= initial_partition; ++i)
    pts.push_back(amb.lo + (amb.hi - amb.lo) * double(i) / double(initial_partition));
  for (double s : seed_points) {
    if (s > amb.lo && s < amb.hi) pts.push_back(s);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  auto logd = [&](double x) { return d.log_derivative(DD(x)).to_double(); };

  std::vector<Cell> cells;
  cells.reserve(pts.size());
  double prev_x = pts[0];
  double prev_l = logd(prev_x);
  for (size_t i = 1; i < pts.size(); ++i) {
    double l = logd(pts[i]);
    cells.push_back(Cell{prev_x, pts[i], prev_l, l});
    prev_x = pts[i];
    prev_l = l;
  }

  VariationEstimate est;
  auto total = [&] {
    double v = 0.0;
    for (const auto& c : cells) v += c.contrib();
    return v;
  };

  double value = total();
  est.refinement_history.emplace_back(int(cells.size()), value);

  for (int pass = 0; pass < 60; ++pass) {
    if (int(cells.size()) >= kMaxPartition) break;
    // bisect the top quarter of cells by contribution
    std::vector<size_t> order(cells.size());
    std::iota(order.begin(), order.end(), size_t(0));
    std::sort(order.begin(), order.end(), [&](size_t i, size_t j) {
      return cells[i].contrib() > cells[j].contrib();
    });
    size_t n_split = std::max<size_t>(1, cells.size() / 4);
    std::vector<Cell> next;
    next.reserve(cells.size() + n_split);
    std::vector<bool> split(cells.size(), false);
    size_t done = 0;
    for (size_t idx : order) {
      if (done >= n_split) break;
      if (cells[idx].b - cells[idx].a <= kMinCellWidth) continue;
      if (cells[idx].contrib() == 0.0) continue;
      split[idx] = true;
      ++done;
    }
    if (done == 0) break;
    for (size_t i = 0; i < cells.size(); ++i) {
      if (!split[i]) {
        next.push_back(cells[i]);
        continue;
      }
      double mid = 0.5 * (cells[i].a + cells[i].b);
      double lm = logd(mid);
      next.push_back(Cell{cells[i].a, mid, cells[i].la, lm});
      next.push_back(Cell{mid, cells[i].b, lm, cells[i].lb});
    }
    cells = std::move(next);
    double new_value = total();
    est.refinement_history.emplace_back(int(cells.size()), new_value);
    double rel = (new_value - value) / std::max(new_value, 1e-300);
    value = new_value;
    if (rel < kStopRelChange && pass >= 1) break;
  }

  est.value = value;
  est.partition_size = int(cells.size());
  est.partition_points.reserve(cells.size() + 1);
  est.partition_points.push_back(cells.front().a);
  for (const auto& c : cells) est.partition_points.push_back(c.b);
  return est;
}

std::vector<double> time_uniform_seeds(const Chart& chart, double span) {
  std::vector<double> seeds;
  int k_max = int(std::ceil(span * 4.0));
  seeds.reserve(2 * k_max + 1);
  for (int k = -k_max; k <= k_max; ++k) {
    DD q = DD(double(k)) / 4.0;
    seeds.push_back(chart.point_of(ChartTime::from_dd(q)).to_double());
  }
  return seeds;
}

AsymptoticDistortionEstimate asymptotic_distortion(const Diffeo& d, std::int64_t n_max,
                                                   int initial_partition,
                                                   std::shared_ptr<const Chart> chart) {
  if (n_max < 8)
    throw std::invalid_argument("distlab::asymptotic_distortion: n_max >= 8");
  AsymptoticDistortionEstimate out;
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t n = 1; n <= n_max; n *= 2) {
    try {
      // fbar advances chart time by up to ~1.7 units per step, so the orbit
      // windows of d^n live within |T| <= 2n + O(1)
      std::vector<double> seeds;
      if (chart) seeds = time_uniform_seeds(*chart, double(2 * n + 6));
      VariationEstimate est = var_log_derivative(power(d, n), initial_partition, seeds);
      out.per_n.emplace_back(n, est.value);
      out.trend.emplace_back(n, est.value / double(n));
      out.partition_sizes.emplace_back(n, est.partition_size);
      best = std::min(best, est.value / double(n));
      out.achieved_n_max = n;
    } catch (const std::length_error&) {
      break;  // word guard: report the partial trend
    }
  }
  out.upper_estimate = out.per_n.empty() ? 0.0 : best;
  return out;
}

}  // namespace distlab
