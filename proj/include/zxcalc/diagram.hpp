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

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "zxcalc/common.hpp"

namespace zx {

// ---------------------------------------------------------------------------
// Labels carried by green box spiders.
//
// A green box with label value a denotes |0..0><0..0| + a |1..1><1..1|.
// The label is either a fixed complex number, an exponentiated phase
// e^{i(k*theta + c)} of a named real parameter, or a handle into the
// function registry for a user-supplied differentiable f(theta).
// ---------------------------------------------------------------------------

struct ConstLabel {
  Complex value;
  friend bool operator==(const ConstLabel&, const ConstLabel&) = default;
};

struct PhaseLabel {
  std::string param;
  int k = 1;      // nonzero integer coefficient
  double c = 0.0; // constant offset, radians
  friend bool operator==(const PhaseLabel&, const PhaseLabel&) = default;
};

struct FuncLabel {
  std::string param;
  std::string handle; // name in the FuncRegistry
  friend bool operator==(const FuncLabel&, const FuncLabel&) = default;
};

using Label = std::variant<ConstLabel, PhaseLabel, FuncLabel>;

inline Label const_label(Complex a) { return ConstLabel{a}; }
inline Label phase_label(std::string param, int k = 1, double c = 0.0) {
  return PhaseLabel{std::move(param), k, c};
}

// ---------------------------------------------------------------------------
// Generator vertices. Leg numbering conventions:
//   GreenBox(n, m): legs 0..n-1 input side, n..n+m-1 output side. The
//     tensor is symmetric in its legs, so the split is bookkeeping only.
//   PinkSpider(n, m): same numbering; tensor is the parity indicator.
//   Hadamard: legs 0, 1 (symmetric).
//   Triangle / TriangleInverse: leg 1 -> leg 0 is the matrix [[1,1],[0,1]]
//     (resp. [[1,-1],[0,1]]); using the legs the other way round gives the
//     transpose, which is how the flipped triangle of the calculus is drawn.
//   WSpider(m): leg 0 is the head, legs 1..m the arms.
//     |0..0><0| + sum_k |0..010..0><1|.
// ---------------------------------------------------------------------------

struct GreenBox {
  Label label;
  unsigned n = 0, m = 0;
  friend bool operator==(const GreenBox&, const GreenBox&) = default;
};

struct PinkSpider {
  bool pi = false; // tau in {0, pi}
  unsigned n = 0, m = 0;
  friend bool operator==(const PinkSpider&, const PinkSpider&) = default;
};

struct Hadamard {
  friend bool operator==(const Hadamard&, const Hadamard&) = default;
};

struct Triangle {
  friend bool operator==(const Triangle&, const Triangle&) = default;
};

struct TriangleInverse {
  friend bool operator==(const TriangleInverse&, const TriangleInverse&) = default;
};

struct WSpider {
  unsigned m = 1; // arm count, >= 1
  friend bool operator==(const WSpider&, const WSpider&) = default;
};

using VertexKind =
    std::variant<GreenBox, PinkSpider, Hadamard, Triangle, TriangleInverse, WSpider>;

unsigned leg_count(const VertexKind& kind);

using VertexId = std::uint32_t;

// A port is one attachment point: a vertex leg or a boundary slot.
struct Port {
  enum class Kind : std::uint8_t { Vertex, In, Out };
  Kind kind = Kind::Vertex;
  VertexId vertex = 0;
  unsigned index = 0; // leg index, or boundary slot

  static Port leg(VertexId v, unsigned leg) { return {Kind::Vertex, v, leg}; }
  static Port in(unsigned slot) { return {Kind::In, 0, slot}; }
  static Port out(unsigned slot) { return {Kind::Out, 0, slot}; }

  friend auto operator<=>(const Port&, const Port&) = default;
};

struct Edge {
  Port a, b;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// ---------------------------------------------------------------------------
// Open diagram: vertices + undirected edges over ports, with ordered input
// and output boundary slots. Scalars accumulated by derived notation are
// tracked as an exact integer power of sqrt(2) and only multiplied in at
// evaluation time.
//
// Diagrams are built incrementally (open/add_generator/connect/mark_*) and
// become immutable after finalize(); all later operations are pure.
// ---------------------------------------------------------------------------

class Diagram {
 public:
  Diagram() = default;

  // Unfinalized diagram with n_in/n_out unwired boundary slots.
  static Diagram open(unsigned n_in, unsigned n_out);

  // n parallel wires. Errors with ArityMismatch when n_in != n_out: a wire
  // diagram cannot leave boundary slots dangling.
  static Diagram empty(unsigned n_in, unsigned n_out);

  VertexId add_generator(const VertexKind& kind);
  void connect(Port p, Port q);
  void mark_input(Port p, unsigned slot) { connect(Port::in(slot), p); }
  void mark_output(Port p, unsigned slot) { connect(Port::out(slot), p); }
  void add_scalar_sqrt2(std::int64_t pow);

  // Validates the covering invariants and freezes the diagram.
  void finalize();
  bool finalized() const { return finalized_; }

  unsigned n_inputs() const { return n_in_; }
  unsigned n_outputs() const { return n_out_; }
  const std::map<VertexId, VertexKind>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::int64_t scalar_log() const { return sqrt2_pow_; }
  const VertexKind& kind_of(VertexId v) const;
  std::size_t vertex_count() const { return vertices_.size(); }

  // Names of all parameters referenced by Phase/Func labels.
  std::set<std::string> parameters() const;

  friend bool operator==(const Diagram& x, const Diagram& y);

 private:
  friend class DiagramAssembler;

  void require_editable() const;
  void check_port(const Port& p) const;

  std::map<VertexId, VertexKind> vertices_;
  std::vector<Edge> edges_;
  std::set<Port> used_;
  unsigned n_in_ = 0, n_out_ = 0;
  std::int64_t sqrt2_pow_ = 0;
  VertexId next_id_ = 0;
  bool finalized_ = false;
};

// Sequential composition: f first, then g. evaluate = eval(g) * eval(f).
Diagram compose_seq(const Diagram& f, const Diagram& g);

// Parallel composition: f on the more significant qubits.
Diagram compose_par(const Diagram& f, const Diagram& g);

// Conjugate transpose. Swaps inputs/outputs and conjugates every label.
// Func labels need a registered conjugate handle, else NotDaggerable.
Diagram dagger(const Diagram& d);

// Plain transpose (the vertically flipped diagram): boundary swap only.
Diagram transpose(const Diagram& d);

// --- single-generator diagrams ---------------------------------------------

// Vertex with its first n legs wired to inputs and the rest to outputs,
// following each kind's leg convention.
Diagram single(const VertexKind& kind, unsigned n_in, unsigned n_out);

Diagram gbox(const Label& label, unsigned n, unsigned m);
Diagram gbox(Complex a, unsigned n, unsigned m);
Diagram gstate(Complex a);              // |0> + a|1>
Diagram geffect(Complex a);             // <0| + a<1|
Diagram pinkd(bool pi, unsigned n, unsigned m);
Diagram pink_state(bool pi);            // |0> or |1>
Diagram pink_effect(bool pi);           // <0| or <1|
Diagram pink_dot(bool pi);              // scalar 1 or 0
Diagram had();
Diagram tri();                          // [[1,1],[0,1]]
Diagram tri_t();                        // transpose, legs used flipped
Diagram tri_inv();                      // [[1,-1],[0,1]]
Diagram tri_inv_t();
Diagram w2();                           // W spider, head input, 2 arm outputs
Diagram w_native(unsigned m);           // W spider, head input, m arm outputs
Diagram w_flip(unsigned m);             // arms as inputs, head as output
Diagram wire();
Diagram swap_diag();
Diagram cap();                          // 0 -> 2, |00> + |11>
Diagram cup();                          // 2 -> 0
Diagram scalar_box(Complex v);          // closed diagram with value v
Diagram scalar_box(const Label& label); // closed diagram with the label value
Diagram sqrt2_scalar(std::int64_t pow); // closed diagram with value sqrt(2)^pow

// CNOT, control on the first wire: green copy on the control, pink parity
// on the target. Exact integer matrix under the rescaled pink convention.
Diagram cnot_diagram();
// CZ: two green copies joined through a Hadamard, times sqrt(2).
Diagram cz_diagram();

// --- derived notation -------------------------------------------------------

// Green spider with phase alpha: green box with label e^{i alpha}.
Diagram green_phase_spider(double alpha, unsigned n, unsigned m);
Diagram green_phase_spider(const Label& label, unsigned n, unsigned m);

// Pink spider expanded into Hadamards around a green box plus the
// 2^{(m+n-2)/2} scalar, matching the native generator's integer matrix.
Diagram pink_spider_derived(bool pi, unsigned n, unsigned m);

// X-rotation spider: Hadamard-conjugated green phase spider, carrying the
// e^{i alpha/2} global phase of the displayed matrix.
Diagram x_phase_spider(double alpha);
Diagram x_phase_spider(const Label& label);

// W spider expanded into table generators: an associativity tree of two-arm
// W blocks, each realized with pink spiders, triangles and green boxes.
Diagram w_spider_derived(unsigned m);

// Basis AND gate (2 -> 1): triangles lift bits to box labels, the green
// merge multiplies them, the inverse triangle lowers the product back.
Diagram and_gate_diagram();

}  // namespace zx
