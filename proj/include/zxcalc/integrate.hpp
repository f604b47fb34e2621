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
#include <vector>

#include "zxcalc/diagram.hpp"
#include "zxcalc/interp.hpp"

namespace zx::integrate {

// Uniform definite integration over [-pi, pi]: returns the parameter-free
// diagram G with evaluate(G) = (1/2pi) Integral evaluate(d) d(param).
// Occurrences must be Phase labels sharing one |k|; unbalanced +/- counts
// are fixed up with pink dummy spiders first. The balanced count must be
// at most 3 for the ZX-native gadget.
Diagram integrate_uniform(const Diagram& d, const std::string& param);

// The weight-class map sum_w s_w s_w^dagger on p wires, s_w the unnormalized
// sum of weight-w basis states. p in {1, 2, 3}; entries are exact integers.
Diagram weight_class_gadget(unsigned p);

// Emits the gadget into an open diagram, wiring its ket-side legs to `kets`
// and bra-side legs to `bras` (both of size p).
void emit_weight_class_gadget(Diagram& d, const std::vector<Port>& kets,
                              const std::vector<Port>& bras);

// The integrated squared-derivative cycle: the four-legged state
// sum_x |x, ~x, ~x, x> wired to the given ports in that leg order.
void emit_cycle_gadget(Diagram& d, const std::vector<Port>& legs);

// The cycle as a standalone (0 -> 4) diagram.
Diagram cycle_gadget_state();

// Trapezoid rule over [-pi, pi] with `nodes` points; exact for trigonometric
// polynomials of degree below nodes/2.
Tensor quadrature_oracle(const Diagram& d, const std::string& param, const Binding& b,
                         unsigned nodes);

// Numeric fallback for occurrence counts beyond the ZX-native gadget range:
// integrates by quadrature at evaluation time instead of building a diagram.
Tensor integrate_value(const Diagram& d, const std::string& param, const Binding& b);

}  // namespace zx::integrate
