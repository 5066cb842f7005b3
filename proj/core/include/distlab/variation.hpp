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

#pragma once

#include <cstdint>
#include <vector>

#include "distlab/diffeo.hpp"

namespace distlab {

// Partition sum for var(log Df), refined adaptively by bisecting the cells
// with the largest |delta log D| until the total stabilizes.  Partition sums
// only grow under refinement, so `value` is a certified lower bound of the
// total variation and `refinement_history` is nondecreasing.
struct VariationEstimate {
  double value = 0.0;
  int partition_size = 0;
  std::vector<std::pair<int, double>> refinement_history;
  std::vector<double> partition_points;  // final partition (for shared-grid tests)
};

VariationEstimate var_log_derivative(const Diffeo& d, int initial_partition = 64,
                                     const std::vector<double>& seed_points = {});

// var(log Df^n)/n along n = 1, 2, 4, ..., n_max.  Fekete: the limit is the
// infimum, so min over computed n is an upper estimate of dist_inf.
//
// When a chart is supplied, the partition for the n-th power is seeded
// uniformly in flow time over [-(n+3), n+3].  log D of a deep word
// oscillates on the orbit preimages of the generator supports, which are
// unit-width blocks in chart coordinates but exponentially thin in ambient
// ones; without the seeding the adaptive bisection cannot find them.
struct AsymptoticDistortionEstimate {
  std::vector<std::pair<std::int64_t, double>> per_n;   // n -> var(log Df^n)
  std::vector<std::pair<std::int64_t, double>> trend;   // n -> var/n
  std::vector<std::pair<std::int64_t, int>> partition_sizes;
  double upper_estimate = 0.0;
  std::int64_t achieved_n_max = 0;  // < requested when the word guard tripped
};

AsymptoticDistortionEstimate asymptotic_distortion(
    const Diffeo& d, std::int64_t n_max, int initial_partition = 64,
    std::shared_ptr<const Chart> chart = nullptr);

// Time-uniform seed points phi(k/4), |k/4| <= span (helper for callers that
// estimate a single deep word).
std::vector<double> time_uniform_seeds(const Chart& chart, double span);

}  // namespace distlab
