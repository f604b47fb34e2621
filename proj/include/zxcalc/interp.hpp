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

#include <map>
#include <string>
#include <vector>

#include "zxcalc/diagram.hpp"
#include "zxcalc/tensor.hpp"

namespace zx {

// Real parameter values, radians.
using Binding = std::map<std::string, double>;

struct EvalOptions {
  int max_rank = 26;         // wire-count guard for intermediate tensors
  bool reverse_ties = false; // flip the deterministic tie-break (for tests)
};

Complex label_value(const Label& label, const Binding& b);
Complex label_derivative(const Label& label, const Binding& b);

// Contracts the diagram to the matrix of its standard interpretation as a
// linear map, times sqrt(2)^scalar_log.
Tensor evaluate(const Diagram& d, const Binding& b = {}, const EvalOptions& opts = {});

// Greedy pairwise contraction schedule: each step merges two nodes, picked
// to minimize the open wire count of the result, ties by lowest vertex id.
struct ContractionPlan {
  std::vector<std::pair<VertexId, VertexId>> steps;
  int max_wires = 0; // open wires of the largest intermediate, boundary included
  int max_cut = 0;   // same, not counting boundary wires
};

ContractionPlan contraction_order(const Diagram& d, bool reverse_ties = false);

}  // namespace zx
