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

#include "zxcalc/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "zxcalc/funcreg.hpp"

namespace zx {

unsigned leg_count(const VertexKind& kind) {
  return std::visit(
      [](const auto& k) -> unsigned {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, GreenBox>) return k.n + k.m;
        if constexpr (std::is_same_v<T, PinkSpider>) return k.n + k.m;
        if constexpr (std::is_same_v<T, Hadamard>) return 2;
        if constexpr (std::is_same_v<T, Triangle>) return 2;
        if constexpr (std::is_same_v<T, TriangleInverse>) return 2;
        if constexpr (std::is_same_v<T, WSpider>) return k.m + 1;
      },
      kind);
}

// ---------------------------------------------------------------------------
// Diagram construction
// ---------------------------------------------------------------------------

Diagram Diagram::open(unsigned n_in, unsigned n_out) {
  Diagram d;
  d.n_in_ = n_in;
  d.n_out_ = n_out;
  return d;
}

Diagram Diagram::empty(unsigned n_in, unsigned n_out) {
  if (n_in != n_out)
    fail(ErrorKind::ArityMismatch,
         "empty(" + std::to_string(n_in) + ", " + std::to_string(n_out) +
             "): unconnected boundary slots are not allowed");
  Diagram d = open(n_in, n_out);
  for (unsigned i = 0; i < n_in; ++i) d.connect(Port::in(i), Port::out(i));
  d.finalize();
  return d;
}

void Diagram::require_editable() const {
  if (finalized_) fail(ErrorKind::InvalidDiagram, "diagram is finalized and immutable");
}

void Diagram::check_port(const Port& p) const {
  switch (p.kind) {
    case Port::Kind::Vertex: {
      auto it = vertices_.find(p.vertex);
      if (it == vertices_.end())
        fail(ErrorKind::UnknownVertex, "vertex " + std::to_string(p.vertex));
      if (p.index >= leg_count(it->second))
        fail(ErrorKind::UnknownVertex,
             "vertex " + std::to_string(p.vertex) + " has no leg " + std::to_string(p.index));
      break;
    }
    case Port::Kind::In:
      if (p.index >= n_in_)
        fail(ErrorKind::UnknownVertex, "no input slot " + std::to_string(p.index));
      break;
    case Port::Kind::Out:
      if (p.index >= n_out_)
        fail(ErrorKind::UnknownVertex, "no output slot " + std::to_string(p.index));
      break;
  }
}

VertexId Diagram::add_generator(const VertexKind& kind) {
  require_editable();
  if (const auto* w = std::get_if<WSpider>(&kind); w && w->m < 1)
    fail(ErrorKind::InvalidDiagram, "W spider needs at least one arm");
  if (const auto* g = std::get_if<GreenBox>(&kind)) {
    if (const auto* ph = std::get_if<PhaseLabel>(&g->label); ph && ph->k == 0)
      fail(ErrorKind::InvalidDiagram, "phase label with k = 0");
  }
  VertexId id = next_id_++;
  vertices_.emplace(id, kind);
  return id;
}

void Diagram::connect(Port p, Port q) {
  require_editable();
  check_port(p);
  check_port(q);
  if (used_.count(p)) fail(ErrorKind::PortOccupied, "first port already wired");
  if (q == p) fail(ErrorKind::PortOccupied, "cannot wire a port to itself");
  if (used_.count(q)) fail(ErrorKind::PortOccupied, "second port already wired");
  used_.insert(p);
  used_.insert(q);
  if (q < p) std::swap(p, q);
  edges_.push_back({p, q});
}

void Diagram::add_scalar_sqrt2(std::int64_t pow) {
  require_editable();
  sqrt2_pow_ += pow;
}

void Diagram::finalize() {
  require_editable();
  for (const auto& [id, kind] : vertices_) {
    unsigned legs = leg_count(kind);
    for (unsigned l = 0; l < legs; ++l)
      if (!used_.count(Port::leg(id, l)))
        fail(ErrorKind::InvalidDiagram,
             "dangling leg " + std::to_string(l) + " on vertex " + std::to_string(id));
  }
  for (unsigned i = 0; i < n_in_; ++i)
    if (!used_.count(Port::in(i)))
      fail(ErrorKind::InvalidDiagram, "dangling input slot " + std::to_string(i));
  for (unsigned i = 0; i < n_out_; ++i)
    if (!used_.count(Port::out(i)))
      fail(ErrorKind::InvalidDiagram, "dangling output slot " + std::to_string(i));
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& x, const Edge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  finalized_ = true;
}

const VertexKind& Diagram::kind_of(VertexId v) const {
  auto it = vertices_.find(v);
  if (it == vertices_.end()) fail(ErrorKind::UnknownVertex, "vertex " + std::to_string(v));
  return it->second;
}

std::set<std::string> Diagram::parameters() const {
  std::set<std::string> out;
  for (const auto& [id, kind] : vertices_) {
    if (const auto* g = std::get_if<GreenBox>(&kind)) {
      if (const auto* ph = std::get_if<PhaseLabel>(&g->label)) out.insert(ph->param);
      if (const auto* fn = std::get_if<FuncLabel>(&g->label)) out.insert(fn->param);
    }
  }
  return out;
}

bool operator==(const Diagram& x, const Diagram& y) {
  return x.n_in_ == y.n_in_ && x.n_out_ == y.n_out_ && x.sqrt2_pow_ == y.sqrt2_pow_ &&
         x.vertices_ == y.vertices_ && x.edges_ == y.edges_;
}

// ---------------------------------------------------------------------------
// Composition splicing. Boundary junctions between the composed parts have
// exactly two incident edge ends; chains of junctions collapse to a single
// edge and pure junction cycles contribute a closed loop, value 2.
// ---------------------------------------------------------------------------

namespace {

struct SPort {
  enum Kind { Vertex, In, Out, Junction } kind;
  VertexId vertex = 0;
  unsigned index = 0;

  bool is_junction() const { return kind == Junction; }
  Port to_port() const {
    switch (kind) {
      case Vertex: return Port::leg(vertex, index);
      case In: return Port::in(index);
      case Out: return Port::out(index);
      default: fail(ErrorKind::InvalidDiagram, "unresolved junction");
    }
  }
};

struct SEdge {
  SPort a, b;
};

// Collapses junction chains, connecting final ports into d. Adds two powers
// of sqrt(2) per closed junction loop.
void splice_into(Diagram& d, const std::vector<SEdge>& edges, unsigned n_junctions) {
  // endpoint index: (edge, side) pairs per junction
  std::vector<std::vector<std::pair<std::size_t, int>>> at_junction(n_junctions);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].a.is_junction()) at_junction[edges[e].a.index].push_back({e, 0});
    if (edges[e].b.is_junction()) at_junction[edges[e].b.index].push_back({e, 1});
  }
  for (unsigned j = 0; j < n_junctions; ++j) {
    if (at_junction[j].size() != 2)
      fail(ErrorKind::InvalidDiagram, "composition junction not covered exactly twice");
  }

  // No two edge ends at a junction share an edge index: a single edge with
  // both ends on one junction would need a port reused in the source diagram.
  std::vector<bool> visited(edges.size(), false);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (visited[e]) continue;
    SPort start, other;
    if (!edges[e].a.is_junction()) {
      start = edges[e].a;
      other = edges[e].b;
    } else if (!edges[e].b.is_junction()) {
      start = edges[e].b;
      other = edges[e].a;
    } else {
      continue; // junction-junction edge; reached from a chain end or a loop
    }
    visited[e] = true;
    std::size_t cur = e;
    while (other.is_junction()) {
      const auto& ends = at_junction[other.index];
      auto chosen = (ends[0].first == cur) ? ends[1] : ends[0];
      cur = chosen.first;
      visited[cur] = true;
      other = (chosen.second == 0) ? edges[cur].b : edges[cur].a;
    }
    d.connect(start.to_port(), other.to_port());
  }
  // remaining unvisited edges form pure junction cycles
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (visited[e]) continue;
    std::size_t cur = e;
    visited[e] = true;
    SPort pos = edges[e].b;
    while (true) {
      const auto& ends = at_junction[pos.index];
      auto chosen = (ends[0].first == cur) ? ends[1] : ends[0];
      cur = chosen.first;
      if (visited[cur]) break;
      visited[cur] = true;
      pos = (chosen.second == 0) ? edges[cur].b : edges[cur].a;
    }
    d.add_scalar_sqrt2(2); // a closed loop of wire evaluates to 2
  }
}

void require_finalized(const Diagram& d, const char* what) {
  if (!d.finalized()) fail(ErrorKind::NotFinalized, std::string(what) + " requires a finalized diagram");
}

SPort map_port(const Port& p, const std::map<VertexId, VertexId>& vmap,
               SPort::Kind in_to, SPort::Kind out_to, unsigned in_ofs, unsigned out_ofs) {
  switch (p.kind) {
    case Port::Kind::Vertex: return {SPort::Vertex, vmap.at(p.vertex), p.index};
    case Port::Kind::In: return {in_to, 0, p.index + in_ofs};
    case Port::Kind::Out: return {out_to, 0, p.index + out_ofs};
  }
  fail(ErrorKind::InvalidDiagram, "bad port");
}

std::map<VertexId, VertexId> copy_vertices(const Diagram& src, Diagram& dst) {
  std::map<VertexId, VertexId> vmap;
  for (const auto& [id, kind] : src.vertices()) vmap[id] = dst.add_generator(kind);
  return vmap;
}

}  // namespace

Diagram compose_seq(const Diagram& f, const Diagram& g) {
  require_finalized(f, "compose_seq");
  require_finalized(g, "compose_seq");
  if (f.n_outputs() != g.n_inputs())
    fail(ErrorKind::ArityMismatch,
         "compose_seq: " + std::to_string(f.n_outputs()) + " outputs vs " +
             std::to_string(g.n_inputs()) + " inputs");
  Diagram d = Diagram::open(f.n_inputs(), g.n_outputs());
  d.add_scalar_sqrt2(f.scalar_log() + g.scalar_log());
  auto fmap = copy_vertices(f, d);
  auto gmap = copy_vertices(g, d);
  std::vector<SEdge> edges;
  for (const Edge& e : f.edges())
    edges.push_back({map_port(e.a, fmap, SPort::In, SPort::Junction, 0, 0),
                     map_port(e.b, fmap, SPort::In, SPort::Junction, 0, 0)});
  for (const Edge& e : g.edges())
    edges.push_back({map_port(e.a, gmap, SPort::Junction, SPort::Out, 0, 0),
                     map_port(e.b, gmap, SPort::Junction, SPort::Out, 0, 0)});
  splice_into(d, edges, f.n_outputs());
  d.finalize();
  return d;
}

Diagram compose_par(const Diagram& f, const Diagram& g) {
  require_finalized(f, "compose_par");
  require_finalized(g, "compose_par");
  Diagram d = Diagram::open(f.n_inputs() + g.n_inputs(), f.n_outputs() + g.n_outputs());
  d.add_scalar_sqrt2(f.scalar_log() + g.scalar_log());
  auto fmap = copy_vertices(f, d);
  auto gmap = copy_vertices(g, d);
  std::vector<SEdge> edges;
  for (const Edge& e : f.edges())
    edges.push_back({map_port(e.a, fmap, SPort::In, SPort::Out, 0, 0),
                     map_port(e.b, fmap, SPort::In, SPort::Out, 0, 0)});
  for (const Edge& e : g.edges())
    edges.push_back({map_port(e.a, gmap, SPort::In, SPort::Out, f.n_inputs(), f.n_outputs()),
                     map_port(e.b, gmap, SPort::In, SPort::Out, f.n_inputs(), f.n_outputs())});
  splice_into(d, edges, 0);
  d.finalize();
  return d;
}

namespace {

Label conj_label(const Label& label) {
  if (const auto* c = std::get_if<ConstLabel>(&label)) return ConstLabel{std::conj(c->value)};
  if (const auto* p = std::get_if<PhaseLabel>(&label)) return PhaseLabel{p->param, -p->k, -p->c};
  const auto& fn = std::get<FuncLabel>(label);
  FuncDef def = FuncRegistry::instance().get(fn.handle);
  if (def.conj_handle.empty())
    fail(ErrorKind::NotDaggerable, "function '" + fn.handle + "' has no registered conjugate");
  return FuncLabel{fn.param, def.conj_handle};
}

Diagram flip_boundary(const Diagram& d, bool conjugate) {
  require_finalized(d, conjugate ? "dagger" : "transpose");
  Diagram r = Diagram::open(d.n_outputs(), d.n_inputs());
  r.add_scalar_sqrt2(d.scalar_log());
  std::map<VertexId, VertexId> vmap;
  for (const auto& [id, kind] : d.vertices()) {
    VertexKind k = kind;
    if (auto* g = std::get_if<GreenBox>(&k)) {
      if (conjugate) g->label = conj_label(g->label);
      std::swap(g->n, g->m);
    } else if (auto* p = std::get_if<PinkSpider>(&k)) {
      std::swap(p->n, p->m);
    }
    vmap[id] = r.add_generator(k);
  }
  auto flip = [&](const Port& p) -> Port {
    switch (p.kind) {
      case Port::Kind::Vertex: return Port::leg(vmap.at(p.vertex), p.index);
      case Port::Kind::In: return Port::out(p.index);
      case Port::Kind::Out: return Port::in(p.index);
    }
    fail(ErrorKind::InvalidDiagram, "bad port");
  };
  for (const Edge& e : d.edges()) r.connect(flip(e.a), flip(e.b));
  r.finalize();
  return r;
}

}  // namespace

Diagram dagger(const Diagram& d) { return flip_boundary(d, true); }
Diagram transpose(const Diagram& d) { return flip_boundary(d, false); }

// ---------------------------------------------------------------------------
// Single-generator diagrams and derived notation
// ---------------------------------------------------------------------------

Diagram single(const VertexKind& kind, unsigned n_in, unsigned n_out) {
  if (n_in + n_out != leg_count(kind))
    fail(ErrorKind::ArityMismatch, "single: boundary does not match leg count");
  Diagram d = Diagram::open(n_in, n_out);
  VertexId v = d.add_generator(kind);
  // Triangles read leg 1 -> leg 0 as their matrix; everything else wires
  // input side first.
  bool flip = std::holds_alternative<Triangle>(kind) || std::holds_alternative<TriangleInverse>(kind);
  for (unsigned i = 0; i < n_in; ++i) d.mark_input(Port::leg(v, flip ? 1 - i : i), i);
  for (unsigned j = 0; j < n_out; ++j)
    d.mark_output(Port::leg(v, flip ? 1 - (n_in + j) : n_in + j), j);
  d.finalize();
  return d;
}

Diagram gbox(const Label& label, unsigned n, unsigned m) {
  return single(GreenBox{label, n, m}, n, m);
}
Diagram gbox(Complex a, unsigned n, unsigned m) { return gbox(const_label(a), n, m); }
Diagram gstate(Complex a) { return gbox(a, 0, 1); }
Diagram geffect(Complex a) { return gbox(a, 1, 0); }

Diagram pinkd(bool pi, unsigned n, unsigned m) { return single(PinkSpider{pi, n, m}, n, m); }
Diagram pink_state(bool pi) { return pinkd(pi, 0, 1); }
Diagram pink_effect(bool pi) { return pinkd(pi, 1, 0); }
Diagram pink_dot(bool pi) { return pinkd(pi, 0, 0); }

Diagram had() { return single(Hadamard{}, 1, 1); }
Diagram tri() { return single(Triangle{}, 1, 1); }
Diagram tri_inv() { return single(TriangleInverse{}, 1, 1); }

namespace {
Diagram transposed_triangle(bool inverse) {
  Diagram d = Diagram::open(1, 1);
  VertexId v = d.add_generator(inverse ? VertexKind{TriangleInverse{}} : VertexKind{Triangle{}});
  d.mark_input(Port::leg(v, 0), 0);
  d.mark_output(Port::leg(v, 1), 0);
  d.finalize();
  return d;
}
}  // namespace

Diagram tri_t() { return transposed_triangle(false); }
Diagram tri_inv_t() { return transposed_triangle(true); }

Diagram w_native(unsigned m) { return single(WSpider{m}, 1, m); }
Diagram w2() { return w_native(2); }

Diagram w_flip(unsigned m) {
  Diagram d = Diagram::open(m, 1);
  VertexId v = d.add_generator(WSpider{m});
  for (unsigned i = 0; i < m; ++i) d.mark_input(Port::leg(v, 1 + i), i);
  d.mark_output(Port::leg(v, 0), 0);
  d.finalize();
  return d;
}

Diagram wire() { return Diagram::empty(1, 1); }

Diagram swap_diag() {
  Diagram d = Diagram::open(2, 2);
  d.connect(Port::in(0), Port::out(1));
  d.connect(Port::in(1), Port::out(0));
  d.finalize();
  return d;
}

Diagram cap() {
  Diagram d = Diagram::open(0, 2);
  d.connect(Port::out(0), Port::out(1));
  d.finalize();
  return d;
}

Diagram cup() {
  Diagram d = Diagram::open(2, 0);
  d.connect(Port::in(0), Port::in(1));
  d.finalize();
  return d;
}

Diagram scalar_box(const Label& label) {
  // floating green box: the bare scalar
  Diagram d = Diagram::open(0, 0);
  d.add_generator(GreenBox{label, 0, 0});
  d.finalize();
  return d;
}
Diagram scalar_box(Complex v) { return scalar_box(const_label(v)); }

Diagram sqrt2_scalar(std::int64_t pow) {
  Diagram d = Diagram::open(0, 0);
  d.add_scalar_sqrt2(pow);
  d.finalize();
  return d;
}

Diagram cnot_diagram() {
  Diagram d = Diagram::open(2, 2);
  VertexId c = d.add_generator(GreenBox{const_label(1.0), 1, 2});
  VertexId t = d.add_generator(PinkSpider{false, 2, 1});
  d.mark_input(Port::leg(c, 0), 0);
  d.mark_output(Port::leg(c, 1), 0);
  d.connect(Port::leg(c, 2), Port::leg(t, 1));
  d.mark_input(Port::leg(t, 0), 1);
  d.mark_output(Port::leg(t, 2), 1);
  d.finalize();
  return d;
}

Diagram cz_diagram() {
  Diagram d = Diagram::open(2, 2);
  VertexId a = d.add_generator(GreenBox{const_label(1.0), 1, 2});
  VertexId b = d.add_generator(GreenBox{const_label(1.0), 1, 2});
  VertexId h = d.add_generator(Hadamard{});
  d.mark_input(Port::leg(a, 0), 0);
  d.mark_output(Port::leg(a, 1), 0);
  d.mark_input(Port::leg(b, 0), 1);
  d.mark_output(Port::leg(b, 1), 1);
  d.connect(Port::leg(a, 2), Port::leg(h, 0));
  d.connect(Port::leg(h, 1), Port::leg(b, 2));
  d.add_scalar_sqrt2(1);
  d.finalize();
  return d;
}

Diagram green_phase_spider(const Label& label, unsigned n, unsigned m) {
  return gbox(label, n, m);
}
Diagram green_phase_spider(double alpha, unsigned n, unsigned m) {
  return gbox(std::exp(Complex(0.0, alpha)), n, m);
}

Diagram pink_spider_derived(bool pi, unsigned n, unsigned m) {
  Diagram d = Diagram::open(n, m);
  VertexId g = d.add_generator(GreenBox{const_label(pi ? Complex(-1.0) : Complex(1.0)), n, m});
  for (unsigned i = 0; i < n; ++i) {
    VertexId h = d.add_generator(Hadamard{});
    d.mark_input(Port::leg(h, 0), i);
    d.connect(Port::leg(h, 1), Port::leg(g, i));
  }
  for (unsigned j = 0; j < m; ++j) {
    VertexId h = d.add_generator(Hadamard{});
    d.connect(Port::leg(g, n + j), Port::leg(h, 0));
    d.mark_output(Port::leg(h, 1), j);
  }
  d.add_scalar_sqrt2(static_cast<std::int64_t>(n) + m - 2);
  d.finalize();
  return d;
}

Diagram x_phase_spider(const Label& label) {
  return compose_seq(compose_seq(had(), gbox(label, 1, 1)), had());
}
Diagram x_phase_spider(double alpha) {
  return x_phase_spider(const_label(std::exp(Complex(0.0, alpha))));
}

namespace {

// AND gate on basis states: triangles turn bits into box labels, the green
// merge multiplies them, the inverse triangle maps the product back.
//   AND = T^{-1} . G_1(2,1) . (T (x) T)
Diagram and_gate() {
  Diagram d = Diagram::open(2, 1);
  VertexId ta = d.add_generator(Triangle{});
  VertexId tb = d.add_generator(Triangle{});
  VertexId merge = d.add_generator(GreenBox{const_label(1.0), 2, 1});
  VertexId ti = d.add_generator(TriangleInverse{});
  d.mark_input(Port::leg(ta, 1), 0);
  d.mark_input(Port::leg(tb, 1), 1);
  d.connect(Port::leg(ta, 0), Port::leg(merge, 0));
  d.connect(Port::leg(tb, 0), Port::leg(merge, 1));
  d.connect(Port::leg(merge, 2), Port::leg(ti, 1));
  d.mark_output(Port::leg(ti, 0), 0);
  d.finalize();
  return d;
}

// diag(1,1,1,0): copy both wires, AND the copies, feed through a zero box
// and discard with <0| + <1|.
Diagram lambda_zero() {
  Diagram pair_copy = compose_par(gbox(1.0, 1, 2), gbox(1.0, 1, 2));
  Diagram mid = compose_par(compose_par(wire(), swap_diag()), wire());
  Diagram and_col =
      compose_par(wire(), compose_par(wire(), compose_seq(and_gate(), compose_seq(gbox(0.0, 1, 1), geffect(1.0)))));
  // wires: [a, a', b, b'] -> [a, b, a', b'] -> AND(a', b') discarded
  Diagram d = compose_seq(pair_copy, compose_seq(mid, and_col));
  return d;
}

// W with two arms from table generators: kill the |11> component of the pink
// copy.  W2 = diag(1,1,1,0) . pink0(1,2)
Diagram w2_decomposed() {
  return compose_seq(pinkd(false, 1, 2), lambda_zero());
}

}  // namespace

Diagram w_spider_derived(unsigned m) {
  if (m < 1) fail(ErrorKind::InvalidDiagram, "W spider needs at least one arm");
  if (m == 1) return wire();
  Diagram d = w2_decomposed();
  for (unsigned arms = 2; arms < m; ++arms)
    d = compose_seq(d, compose_par(w2_decomposed(), Diagram::empty(arms - 1, arms - 1)));
  return d;
}

Diagram and_gate_diagram() { return and_gate(); }

}  // namespace zx
