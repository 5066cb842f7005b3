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

#include <memory>
#include <mutex>
#include <map>
#include <string>
#include <vector>

#include "distlab/chart.hpp"
#include "distlab/diffeo.hpp"
#include "distlab/markers.hpp"
#include "distlab/schedule.hpp"
#include "distlab/words.hpp"

namespace distlab {

// Everything named in the construction: the chart, the six generators
//   f    = time-1 flow of Y               (identity outside [0,1])
//   fhat = time-1 flow of Yhat            (doubling in the chart)
//   g    = phi0^{-1} f phi0               (supported on [x_0, x_1])
//   hhat, h = blockwise flows with times from the schedule
//   psi  = the support-control map (identity on [x_{-1/2}, x_0],
//          psi(x_{-3/4}) = 0, psi(x_1) = 1)
// together with fbar = f o g and exact marker-index arithmetic for the
// points x_q = phi(q).  Immutable after construction; all queries are pure
// (the marker cache is internally synchronized).
class ConstructionKit {
 public:
  ConstructionKit(std::shared_ptr<const Chart> chart, Schedule schedule, int i_max);

  const Chart& chart() const { return *chart_; }
  std::shared_ptr<const Chart> chart_ptr() const { return chart_; }
  const Schedule& schedule() const { return schedule_; }
  int i_max() const { return i_max_; }

  const Diffeo& f() const { return f_; }
  const Diffeo& fhat() const { return fhat_; }
  const Diffeo& g() const { return g_; }
  const Diffeo& hhat() const { return hhat_; }
  const Diffeo& h() const { return h_; }
  const Diffeo& psi() const { return psi_; }
  const Diffeo& fbar() const { return fbar_; }
  const Diffeo& generator(Gen gen) const;

  // x_q = phi(q), exact rational index (cached).
  DD marker(const Rational& q) const;
  double marker_double(const Rational& q) const { return marker(q).to_double(); }

  // Marker-interval support of one generator (exact lattice form).
  std::vector<MarkerInterval> generator_support(Gen gen) const;

  // Numeric value of a support point in ambient coordinates.
  double support_point_value(const SupportPoint& p) const;

  // Realize a generator word as a lazy Diffeo.
  Diffeo realize(const GeneratorWord& word) const;

  std::string summary_json_string() const;

 private:
  std::shared_ptr<const Chart> chart_;
  Schedule schedule_;
  int i_max_;
  Diffeo f_, fhat_, g_, hhat_, h_, psi_, fbar_;
  std::vector<MarkerInterval> h_support_;  // merged active runs
  mutable std::mutex marker_mu_;
  mutable std::map<std::pair<std::int64_t, std::int64_t>, DD> marker_cache_;
};

ConstructionKit build_kit(std::shared_ptr<const Chart> chart, Schedule schedule, int i_max);

// h_m = (f^{-m} g f^m)(f^{-(m-1)} g f^{m-1}) ... (f^{-1} g f); h_0 = id.
// Equals f^{-m} f^{-1} fbar^m f pointwise; supported in [x_{-m}, x_0].
Diffeo h_n_map(const ConstructionKit& kit, std::int64_t m);

struct CommutatorChain {
  Diffeo a_n;  // fhat^{-i} f^{-n} h f^n fhat^{i}
  Diffeo b_n;  // psi fhat^{-i} f^{-n} hhat f^n fhat^{i} psi^{-1}
  Diffeo c_n;  // [a_n, b_n]
  std::int64_t n;
};

CommutatorChain commutator_chain(const ConstructionKit& kit, int i);

// Support of a word over Gamma, by exact marker-index arithmetic on the
// conjugation structure.  The union always contains the true support; when a
// transport leaves the marker lattice the endpoints are widened to the
// nearest lattice points and `exact` is cleared.
struct MarkerSupport {
  std::vector<MarkerInterval> parts;
  bool exact = true;
  std::string str() const;
};

MarkerSupport support_of(const ConstructionKit& kit, const GeneratorWord& word);

// The claim h_{n/2} = (fhat^i c_n fhat^{-i})^{ell_{i/2}} for n = 2^i, checked
// on a grid refined inside [x_{-n/2}, x_0], plus the per-block flow-time
// identity r = (1 - 2^s) t = 1/ell (exact rational arithmetic and numerics).
struct KeyIdentityResult {
  int i = 0;
  std::int64_t n = 0;
  std::int64_t ell = 0;
  double residual = 0.0;            // sup |h_{n/2} - (fhat^i c_n fhat^{-i})^ell|
  double block_flow_residual = 0.0; // sup |fhat^i c_n fhat^{-i} - time-r block flow|
  bool r_exact = false;             // (1-2^s)t == 1/ell as exact rationals
  double r_residual = 0.0;          // |(1-2^s)t - 1/ell| in double-double
};

KeyIdentityResult key_identity_check(const ConstructionKit& kit, int i,
                                     int grid_per_block = 48);

}  // namespace distlab
