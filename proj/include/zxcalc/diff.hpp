// Copyright 2026 The zxcalc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zxcalc/diagram.hpp"
#include "zxcalc/interp.hpp"

namespace zx::diff {

// One isolated occurrence of the target parameter: a one-legged green box
// hanging off the structure, in the dragged-out normal form.
struct ParamOccurrence {
  VertexId vertex;
  Label label;
  int k = 0; // Phase coefficient; 0 for Func labels
};

// Rewrites every green box whose label references `param` into an
// unparameterised spider with the label isolated on a one-legged box.
// Occurrences come back in ascending vertex-id order of the result.
std::pair<Diagram, std::vector<ParamOccurrence>> normalize_occurrences(
    const Diagram& d, const std::string& param);

// Which derivative construction to emit for pure-phase diagrams.
enum class DiffRoute {
  General,       // ratio boxes carry i*k; within the 4-vertex-per-occurrence bound
  PhaseFactored, // integer ratio boxes, one global i through the W head
};

// Single-diagram derivative with respect to `param`: each occurrence gets a
// transposed-triangle + ratio-box gadget, all gadget controls joined through
// one W spider whose head selects |1>. Diagrams without the parameter come
// back multiplied by the zero scalar (the pink pi dot).
Diagram differentiate(const Diagram& d, const std::string& param,
                      DiffRoute route = DiffRoute::General);

// Point derivative: occurrences whose label vanishes at the binding take the
// plain f'(theta0) box arm instead of the ratio gadget. The binding must
// contain `param` and any other parameters of d.
Tensor differentiate_at(const Diagram& d, const std::string& param, const Binding& b);

// Derivative via the single shifted diagram of the parameter-shift rule.
// Requires exactly one k=+1 and one k=-1 Phase occurrence of `param`.
Tensor shift_rule_eval(const Diagram& d, const std::string& param, const Binding& b);

// Central difference (evaluate at theta+h minus theta-h) / 2h.
Tensor finite_difference(const Diagram& d, const std::string& param, const Binding& b,
                         double h);

}  // namespace zx::diff
