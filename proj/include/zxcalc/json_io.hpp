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

#include "zxcalc/diagram.hpp"
#include "zxcalc/interp.hpp"
#include "zxcalc/tensor.hpp"

namespace zx {

// Diagram wire format:
//   {"vertices": [{"id": 0, "kind": "green", "params": {...}}, ...],
//    "edges": [[[0,0],[1,2]], ...],
//    "inputs": [port, ...], "outputs": [port, ...],
//    "scalar_log": 0}
// Ports are [vertexId, legIndex] or ["in"|"out", slot]; complex numbers are
// [re, im] pairs. "inputs"/"outputs" give the peer port of each boundary
// slot in order; "edges" holds the vertex-vertex wires. Boundary ports are
// also accepted inside "edges" on input and canonicalized on output, so
// parse(serialize(d)) == d.
std::string diagram_to_json(const Diagram& d, int indent = -1);
Diagram diagram_from_json(const std::string& text);

std::string tensor_to_json(const Tensor& t, int indent = -1);

// "theta=0.3,phi=1.5" or JSON object {"theta": 0.3}
Binding parse_bindings(const std::string& text);

}  // namespace zx
