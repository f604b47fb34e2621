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

#include "zxcalc/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "zxcalc/diff.hpp"

namespace zx::integrate {

namespace {

// sum_w s_w s_w^dagger on three wires: A + X^3 A X^3 with A = W3 W3^T,
// realized as a classically controlled X ring around the W pair. The
// green hub sums the control.
void emit_weight3(Diagram& d, const std::vector<Port>& kets, const std::vector<Port>& bras,
                  bool trace_third) {
  VertexId wk = d.add_generator(WSpider{3});
  VertexId wb = d.add_generator(WSpider{3});
  d.connect(Port::leg(wk, 0), Port::leg(wb, 0));
  VertexId hub = d.add_generator(GreenBox{const_label(1.0), 0, 6});
  std::vector<Port> outer(6);
  for (unsigned i = 0; i < 6; ++i) {
    VertexId x = d.add_generator(PinkSpider{false, 2, 1});
    VertexId w = i < 3 ? wk : wb;
    d.connect(Port::leg(w, 1 + (i % 3)), Port::leg(x, 0));
    d.connect(Port::leg(hub, i), Port::leg(x, 1));
    outer[i] = Port::leg(x, 2);
  }
  for (unsigned i = 0; i < (trace_third ? 2u : 3u); ++i) {
    d.connect(outer[i], kets[i]);
    d.connect(outer[3 + i], bras[i]);
  }
  if (trace_third) {
    d.connect(outer[2], outer[5]);
    d.add_scalar_sqrt2(-2);
  }
}

}  // namespace

void emit_weight_class_gadget(Diagram& d, const std::vector<Port>& kets,
                              const std::vector<Port>& bras) {
  if (kets.size() != bras.size())
    fail(ErrorKind::ArityMismatch, "gadget needs equally many ket and bra legs");
  switch (kets.size()) {
    case 1:
      d.connect(kets[0], bras[0]);
      return;
    case 2:
      emit_weight3(d, kets, bras, true);
      return;
    case 3:
      emit_weight3(d, kets, bras, false);
      return;
    default:
      fail(ErrorKind::UnsupportedArity,
           "weight-class gadget supports up to 3 occurrence pairs, got " +
               std::to_string(kets.size()));
  }
}

Diagram weight_class_gadget(unsigned p) {
  if (p < 1 || p > 3) fail(ErrorKind::UnsupportedArity, "weight-class gadget needs 1 <= p <= 3");
  Diagram d = Diagram::open(p, p);
  std::vector<Port> kets, bras;
  for (unsigned i = 0; i < p; ++i) {
    kets.push_back(Port::out(i));
    bras.push_back(Port::in(i));
  }
  emit_weight_class_gadget(d, kets, bras);
  d.finalize();
  return d;
}

void emit_cycle_gadget(Diagram& d, const std::vector<Port>& legs) {
  if (legs.size() != 4) fail(ErrorKind::ArityMismatch, "cycle gadget has four legs");
  VertexId hub = d.add_generator(GreenBox{const_label(1.0), 0, 4});
  d.connect(Port::leg(hub, 0), legs[0]);
  for (unsigned i : {1u, 2u}) {
    VertexId x = d.add_generator(PinkSpider{true, 1, 1});
    d.connect(Port::leg(hub, i), Port::leg(x, 0));
    d.connect(Port::leg(x, 1), legs[i]);
  }
  d.connect(Port::leg(hub, 3), legs[3]);
}

Diagram cycle_gadget_state() {
  Diagram d = Diagram::open(0, 4);
  emit_cycle_gadget(d, {Port::out(0), Port::out(1), Port::out(2), Port::out(3)});
  d.finalize();
  return d;
}

Diagram integrate_uniform(const Diagram& d, const std::string& param) {
  auto [nd, occs] = diff::normalize_occurrences(d, param);
  if (occs.empty()) return nd;
  int abs_k = 0;
  for (const auto& o : occs) {
    if (o.k == 0)
      fail(ErrorKind::UnsupportedOccurrence,
           "only exponentiated-phase occurrences can be integrated");
    if (abs_k == 0) abs_k = std::abs(o.k);
    if (std::abs(o.k) != abs_k)
      fail(ErrorKind::MixedCoefficients,
           "occurrences of '" + param + "' disagree on |k|");
  }
  std::size_t p = 0, q = 0;
  for (const auto& o : occs) (o.k > 0 ? p : q)++;
  std::size_t width = std::max(p, q);
  if (width > 3)
    fail(ErrorKind::UnsupportedArity,
         "more than 3 occurrence pairs; use the numeric fallback integrate_value");

  Diagram r = Diagram::open(nd.n_inputs(), nd.n_outputs());
  r.add_scalar_sqrt2(nd.scalar_log());
  std::set<VertexId> boxes;
  for (const auto& o : occs) boxes.insert(o.vertex);
  std::map<VertexId, VertexId> vmap;
  for (const auto& [id, kind] : nd.vertices()) {
    if (boxes.count(id)) continue;
    vmap[id] = r.add_generator(kind);
  }
  // attachment points, in occurrence order, by sign
  std::map<VertexId, Port> attach;
  bool direct_pair = false;
  VertexId direct_a = 0, direct_b = 0;
  for (const Edge& e : nd.edges()) {
    bool abox = e.a.kind == Port::Kind::Vertex && boxes.count(e.a.vertex);
    bool bbox = e.b.kind == Port::Kind::Vertex && boxes.count(e.b.vertex);
    if (abox && bbox) {
      // two occurrence boxes wired to each other: relay through an identity
      // spider so both get a gadget attachment point
      direct_pair = true;
      direct_a = e.a.vertex;
      direct_b = e.b.vertex;
      continue;
    }
    if (abox || bbox) {
      const Port& boxp = abox ? e.a : e.b;
      Port other = abox ? e.b : e.a;
      if (other.kind == Port::Kind::Vertex) other.vertex = vmap.at(other.vertex);
      attach[boxp.vertex] = other;
      continue;
    }
    auto map_port = [&](Port pt) {
      if (pt.kind == Port::Kind::Vertex) pt.vertex = vmap.at(pt.vertex);
      return pt;
    };
    r.connect(map_port(e.a), map_port(e.b));
  }
  if (direct_pair) {
    VertexId relay = r.add_generator(GreenBox{const_label(1.0), 1, 1});
    attach[direct_a] = Port::leg(relay, 0);
    attach[direct_b] = Port::leg(relay, 1);
  }

  // constant offsets survive as inline boxes in front of the gadget leg
  auto gadget_port = [&](const diff::ParamOccurrence& o) -> Port {
    Port at = attach.at(o.vertex);
    const auto& ph = std::get<PhaseLabel>(o.label);
    if (ph.c == 0.0) return at;
    VertexId cbox = r.add_generator(GreenBox{const_label(std::polar(1.0, ph.c)), 1, 1});
    r.connect(Port::leg(cbox, 1), at);
    return Port::leg(cbox, 0);
  };
  std::vector<Port> kets, bras;
  for (const auto& o : occs) (o.k > 0 ? kets : bras).push_back(gadget_port(o));
  // pink dummy spiders balance unequal occurrence counts
  while (kets.size() < width) {
    VertexId dummy = r.add_generator(PinkSpider{false, 0, 1});
    kets.push_back(Port::leg(dummy, 0));
  }
  while (bras.size() < width) {
    VertexId dummy = r.add_generator(PinkSpider{false, 0, 1});
    bras.push_back(Port::leg(dummy, 0));
  }
  emit_weight_class_gadget(r, kets, bras);
  r.finalize();
  return r;
}

Tensor quadrature_oracle(const Diagram& d, const std::string& param, const Binding& b,
                         unsigned nodes) {
  if (nodes < 2) fail(ErrorKind::InvalidDiagram, "quadrature needs at least 2 nodes");
  Tensor acc(d.n_outputs(), d.n_inputs());
  Binding bind = b;
  for (unsigned t = 0; t < nodes; ++t) {
    bind[param] = -kPi + 2.0 * kPi * t / nodes;
    Tensor v = evaluate(d, bind);
    for (std::size_t i = 0; i < acc.data.size(); ++i) acc.data[i] += v.data[i];
  }
  return scale(std::move(acc), Complex(1.0 / nodes));
}

Tensor integrate_value(const Diagram& d, const std::string& param, const Binding& b) {
  auto [nd, occs] = diff::normalize_occurrences(d, param);
  unsigned max_k = 1, count = std::max<unsigned>(1, static_cast<unsigned>(occs.size()));
  for (const auto& o : occs) {
    if (o.k == 0)
      fail(ErrorKind::UnsupportedOccurrence,
           "only exponentiated-phase occurrences can be integrated");
    max_k = std::max(max_k, static_cast<unsigned>(std::abs(o.k)));
  }
  return quadrature_oracle(d, param, b, 4 * max_k * count + 8);
}

}  // namespace zx::integrate
