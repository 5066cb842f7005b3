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

#include <functional>
#include <vector>

#include "distlab/dd.hpp"

namespace distlab {

// Gauss-Legendre rule on [-1, 1] with double-double nodes and weights.
struct GaussLegendre {
  std::vector<DD> nodes;
  std::vector<DD> weights;

  explicit GaussLegendre(int n);

  // Integrate f over [a, b].
  DD integrate(const std::function<DD(const DD&)>& f, const DD& a, const DD& b) const;
};

// Shared rules (computed once, immutable afterwards).
const GaussLegendre& gl_rule(int n);

}  // namespace distlab
