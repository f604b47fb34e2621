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

#include "zxcalc/rules.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "zxcalc/integrate.hpp"
#include "zxcalc/interp.hpp"
#include "zxcalc/rng.hpp"

namespace zx::rules {

namespace {

const Complex kI(0.0, 1.0);

using Sides = std::pair<Diagram, Diagram>;
using Builder = std::function<Sides(const std::vector<Complex>&)>;

RuleInstance rule(std::string name, std::vector<LabelSpec> labels, Builder build,
                  std::string note = "") {
  return RuleInstance{std::move(name), std::move(labels), std::move(build), std::move(note)};
}

LabelSpec any() { return {LabelSpec::Kind::ComplexAny}; }
LabelSpec nonzero() { return {LabelSpec::Kind::ComplexNonzero}; }
LabelSpec angle() { return {LabelSpec::Kind::Angle}; }
LabelSpec tau() { return {LabelSpec::Kind::Tau}; }

// --- rule table -------------------------------------------------------------

Sides build_s1(const std::vector<Complex>& v) {
  // two green boxes fused over one wire multiply their labels
  Diagram lhs = Diagram::open(3, 3);
  VertexId a = lhs.add_generator(GreenBox{const_label(v[0]), 2, 2});
  VertexId b = lhs.add_generator(GreenBox{const_label(v[1]), 2, 2});
  lhs.mark_input(Port::leg(a, 0), 0);
  lhs.mark_input(Port::leg(a, 1), 1);
  lhs.mark_output(Port::leg(a, 2), 0);
  lhs.connect(Port::leg(a, 3), Port::leg(b, 0));
  lhs.mark_input(Port::leg(b, 1), 2);
  lhs.mark_output(Port::leg(b, 2), 1);
  lhs.mark_output(Port::leg(b, 3), 2);
  lhs.finalize();
  return {lhs, gbox(v[0] * v[1], 3, 3)};
}

Sides build_s2(const std::vector<Complex>&) { return {gbox(1.0, 1, 1), wire()}; }

Sides build_s3(const std::vector<Complex>&) {
  // the green (0,2) spider is the cap, and the snake equation holds
  Diagram snake = compose_seq(compose_par(cap(), wire()), compose_par(wire(), cup()));
  return {compose_par(gbox(1.0, 0, 2), snake), compose_par(cap(), wire())};
}

Sides build_ept(const std::vector<Complex>&) { return {pink_dot(false), Diagram::empty(0, 0)}; }

Sides build_b1(const std::vector<Complex>&) {
  return {compose_seq(gstate(1.0), pinkd(false, 1, 2)), compose_par(gstate(1.0), gstate(1.0))};
}

Sides build_b2(const std::vector<Complex>&) {
  Diagram lhs = compose_seq(pinkd(false, 2, 1), gbox(1.0, 1, 2));
  Diagram rhs = compose_seq(
      compose_seq(compose_par(gbox(1.0, 1, 2), gbox(1.0, 1, 2)),
                  compose_par(compose_par(wire(), swap_diag()), wire())),
      compose_par(pinkd(false, 2, 1), pinkd(false, 2, 1)));
  return {lhs, rhs};
}

Sides build_b3(const std::vector<Complex>& v) {
  Diagram lhs = compose_seq(pink_state(true), gbox(v[0], 1, 2));
  Diagram rhs = compose_par(scalar_box(v[0]), compose_par(pink_state(true), pink_state(true)));
  return {lhs, rhs};
}

Sides build_brk(const std::vector<Complex>&) {
  // the flipped AND copies |1>
  Diagram lhs = compose_seq(pink_state(true), transpose(and_gate_diagram()));
  Diagram rhs = compose_par(pink_state(true), pink_state(true));
  return {lhs, rhs};
}

Sides build_bas0(const std::vector<Complex>&) {
  return {compose_seq(pink_state(false), tri()), pink_state(false)};
}

Sides build_bas1(const std::vector<Complex>&) {
  return {compose_seq(pink_state(true), tri()), gstate(1.0)};
}

Sides build_suc(const std::vector<Complex>& v) {
  return {compose_seq(tri(), geffect(v[0])), geffect(v[0] + 1.0)};
}

Sides build_inv(const std::vector<Complex>&) {
  Diagram lhs = compose_par(compose_seq(tri(), tri_inv()), compose_seq(tri_inv(), tri()));
  return {lhs, Diagram::empty(2, 2)};
}

Sides build_zero(const std::vector<Complex>&) {
  return {gbox(0.0, 1, 1), compose_seq(pink_effect(false), pink_state(false))};
}

Sides build_eu(const std::vector<Complex>&) {
  // sqrt(2) H = T^t . diag(1,-2) . T
  Diagram rhs = compose_par(compose_seq(compose_seq(tri(), gbox(-2.0, 1, 1)), tri_t()),
                            sqrt2_scalar(-1));
  return {had(), rhs};
}

Sides build_sym(const std::vector<Complex>&) {
  return {compose_seq(w2(), swap_diag()), w2()};
}

Sides build_aso(const std::vector<Complex>&) {
  return {compose_seq(w2(), compose_par(w2(), wire())),
          compose_seq(w2(), compose_par(wire(), w2()))};
}

Sides build_pcy(const std::vector<Complex>&) {
  // pink pi transposes, green pi inverts, pushed through the triangle
  Diagram lhs = compose_par(compose_seq(pinkd(true, 1, 1), tri()),
                            compose_seq(gbox(-1.0, 1, 1), tri()));
  Diagram rhs = compose_par(compose_seq(tri_t(), pinkd(true, 1, 1)),
                            compose_seq(tri_inv(), gbox(-1.0, 1, 1)));
  return {lhs, rhs};
}

// --- derived lemmas ----------------------------------------------------------

Sides build_s1r(const std::vector<Complex>& v) {
  bool t1 = v[0].real() != 0.0, t2 = v[1].real() != 0.0;
  Diagram lhs = compose_seq(pinkd(t1, 1, 2), compose_par(pinkd(t2, 1, 1), wire()));
  return {lhs, pinkd(t1 != t2, 1, 2)};
}

Sides build_h2(const std::vector<Complex>&) { return {compose_seq(had(), had()), wire()}; }

Sides build_tri_transpose(const std::vector<Complex>&) {
  Diagram lhs = compose_seq(compose_seq(pinkd(true, 1, 1), tri()), pinkd(true, 1, 1));
  return {lhs, tri_t()};
}

Sides build_tri_inverse_pi(const std::vector<Complex>&) {
  Diagram lhs = compose_seq(compose_seq(gbox(-1.0, 1, 1), tri()), gbox(-1.0, 1, 1));
  return {lhs, tri_inv()};
}

Sides build_bra1_stab(const std::vector<Complex>&) {
  return {compose_seq(tri(), pink_effect(true)), pink_effect(true)};
}

Sides build_hopf(const std::vector<Complex>&) {
  Diagram lhs = compose_seq(pinkd(false, 1, 2), gbox(1.0, 2, 1));
  Diagram rhs = compose_seq(pink_effect(false), gstate(1.0));
  return {lhs, rhs};
}

Sides build_pic(const std::vector<Complex>& v) {
  Complex a = v[0];
  Diagram lhs = compose_seq(pinkd(true, 1, 1), gbox(a, 1, 2));
  Diagram rhs = compose_par(
      scalar_box(a),
      compose_seq(gbox(1.0 / a, 1, 2), compose_par(pinkd(true, 1, 1), pinkd(true, 1, 1))));
  return {lhs, rhs};
}

Sides build_pi_commutation(const std::vector<Complex>&) {
  Diagram lhs = compose_seq(gbox(-1.0, 1, 1), pinkd(false, 1, 2));
  Diagram rhs = compose_seq(pinkd(false, 1, 2), compose_par(gbox(-1.0, 1, 1), gbox(-1.0, 1, 1)));
  return {lhs, rhs};
}

Sides build_piwtopicap(const std::vector<Complex>&) {
  Diagram lhs = compose_seq(pink_state(true), w2());
  Diagram rhs = Diagram::open(0, 2);
  VertexId x = rhs.add_generator(PinkSpider{true, 1, 1});
  rhs.mark_output(Port::leg(x, 0), 0);
  rhs.mark_output(Port::leg(x, 1), 1); // bent through the cap
  rhs.finalize();
  return {lhs, rhs};
}

// --- appendix lemmas ---------------------------------------------------------

Sides build_zerobox(const std::vector<Complex>&) {
  return {compose_seq(gbox(0.0, 1, 1), tri()), gbox(0.0, 1, 1)};
}

Sides build_rdecomp(const std::vector<Complex>&) {
  Diagram rhs = compose_par(
      compose_seq(compose_seq(had(), gbox(1.0, 1, 2)), compose_par(had(), had())),
      sqrt2_scalar(1));
  return {pinkd(false, 1, 2), rhs};
}

Sides build_bas0t(const std::vector<Complex>&) {
  return {compose_seq(pink_state(false), tri_t()), gstate(1.0)};
}

Sides build_bas1t(const std::vector<Complex>&) {
  return {compose_seq(pink_state(true), tri_t()), pink_state(true)};
}

Sides build_trihopf(const std::vector<Complex>&) {
  Diagram lhs = compose_seq(compose_seq(gbox(1.0, 1, 2), compose_par(tri(), wire())),
                            pinkd(false, 2, 1));
  return {lhs, tri()};
}

Sides build_triloop(const std::vector<Complex>&) {
  Diagram lhs = Diagram::open(0, 0);
  VertexId t = lhs.add_generator(Triangle{});
  lhs.connect(Port::leg(t, 0), Port::leg(t, 1));
  lhs.finalize();
  return {lhs, sqrt2_scalar(2)};
}

Sides build_cnotstable(const std::vector<Complex>&) {
  Diagram lhs = compose_seq(compose_par(pinkd(true, 1, 1), wire()), cnot_diagram());
  Diagram rhs = compose_seq(cnot_diagram(), compose_par(pinkd(true, 1, 1), pinkd(true, 1, 1)));
  return {lhs, rhs};
}

Sides build_wplug(const std::vector<Complex>&) {
  return {compose_seq(w2(), compose_par(wire(), geffect(1.0))), tri()};
}

Sides build_wsum(const std::vector<Complex>& v) {
  Diagram lhs = compose_seq(compose_par(gstate(v[0]), gstate(v[1])), w_flip(2));
  return {lhs, gstate(v[0] + v[1])};
}

// the two-occurrence differentiation core: W head selecting |1|, ratio boxes
// +-i, transposed triangles
Diagram diff_gadget_core(Complex r1, Complex r2, const Label& f1, const Label& f2,
                         bool with_boxes) {
  Diagram d = Diagram::open(0, 2);
  VertexId head = d.add_generator(PinkSpider{true, 0, 1});
  VertexId w = d.add_generator(WSpider{2});
  d.connect(Port::leg(head, 0), Port::leg(w, 0));
  for (int arm = 0; arm < 2; ++arm) {
    VertexId rb = d.add_generator(GreenBox{const_label(arm == 0 ? r1 : r2), 1, 1});
    VertexId t = d.add_generator(Triangle{});
    d.connect(Port::leg(w, 1 + arm), Port::leg(rb, 0));
    d.connect(Port::leg(rb, 1), Port::leg(t, 0)); // transposed triangle
    if (with_boxes) {
      VertexId fb = d.add_generator(GreenBox{arm == 0 ? f1 : f2, 1, 1});
      d.connect(Port::leg(t, 1), Port::leg(fb, 0));
      d.mark_output(Port::leg(fb, 1), arm);
    } else {
      d.mark_output(Port::leg(t, 1), arm);
    }
  }
  d.finalize();
  return d;
}

Sides build_w2pitri(const std::vector<Complex>&) {
  Diagram lhs = diff_gadget_core(kI, -kI, const_label(1.0), const_label(1.0), false);
  // i(|10> - |01>) as a pink pi and a green pi on a bent wire, scalar i
  Diagram rhs = Diagram::open(0, 2);
  VertexId x = rhs.add_generator(PinkSpider{true, 1, 1});
  VertexId g = rhs.add_generator(GreenBox{const_label(-1.0), 1, 1});
  rhs.mark_output(Port::leg(x, 0), 0);
  rhs.connect(Port::leg(x, 1), Port::leg(g, 1));
  rhs.mark_output(Port::leg(g, 0), 1);
  rhs.finalize();
  return {lhs, compose_par(rhs, scalar_box(kI))};
}

Sides build_diffexampletop(const std::vector<Complex>& v) {
  double alpha = v[0].real();
  Complex f1 = std::polar(1.0, alpha), f2 = std::polar(1.0, -alpha);
  Diagram lhs = diff_gadget_core(kI, -kI, const_label(f1), const_label(f2), true);
  // i [ e^{i a} |10> - e^{-i a} |01> ]: the pi-shifted pair on a pink pi cap
  Diagram rhs = Diagram::open(0, 2);
  VertexId x = rhs.add_generator(PinkSpider{true, 1, 1});
  VertexId b1 = rhs.add_generator(GreenBox{const_label(f1), 1, 1});
  VertexId b2 = rhs.add_generator(GreenBox{const_label(std::polar(1.0, kPi - alpha)), 1, 1});
  rhs.connect(Port::leg(x, 0), Port::leg(b1, 0));
  rhs.mark_output(Port::leg(b1, 1), 0);
  rhs.connect(Port::leg(x, 1), Port::leg(b2, 0));
  rhs.mark_output(Port::leg(b2, 1), 1);
  rhs.finalize();
  return {lhs, compose_par(rhs, scalar_box(kI))};
}

// a dragged-out occurrence stub: 3-legged identity green spider
struct Stub {
  VertexId id;
  Port wire_a() const { return Port::leg(id, 0); }
  Port wire_b() const { return Port::leg(id, 1); }
  Port extra() const { return Port::leg(id, 2); }
};

Stub add_stub(Diagram& d) { return {d.add_generator(GreenBox{const_label(1.0), 1, 2})}; }

Sides build_2gn1rpi(const std::vector<Complex>&) {
  // two wired stubs with a pink pi on the bent path evaluate to zero
  Diagram lhs = Diagram::open(0, 2);
  Stub s1 = add_stub(lhs), s2 = add_stub(lhs);
  VertexId x = lhs.add_generator(PinkSpider{true, 1, 1});
  lhs.mark_output(s1.wire_a(), 0);
  lhs.connect(s1.wire_b(), Port::leg(x, 0));
  lhs.connect(Port::leg(x, 1), s2.wire_b());
  lhs.mark_output(s2.wire_a(), 1);
  lhs.connect(s1.extra(), s2.extra());
  lhs.finalize();
  return {lhs, compose_par(pink_dot(true), cap())};
}

Sides build_2gn1rpi1r0(const std::vector<Complex>&) {
  Diagram lhs = Diagram::open(0, 2);
  Stub s1 = add_stub(lhs), s2 = add_stub(lhs);
  VertexId x = lhs.add_generator(PinkSpider{true, 1, 1});
  VertexId r0 = lhs.add_generator(PinkSpider{false, 1, 1});
  lhs.mark_output(s1.wire_a(), 0);
  lhs.connect(s1.wire_b(), Port::leg(x, 0));
  lhs.connect(Port::leg(x, 1), Port::leg(r0, 0));
  lhs.connect(Port::leg(r0, 1), s2.wire_b());
  lhs.mark_output(s2.wire_a(), 1);
  lhs.connect(s1.extra(), s2.extra());
  lhs.finalize();
  return {lhs, compose_par(pink_dot(true), cap())};
}

Sides build_2gn2rpis(const std::vector<Complex>&) {
  // integrating the squared derivative insert gives the cycle gadget
  Diagram lhs = Diagram::open(0, 4);
  std::vector<Port> kets, bras;
  for (int copy = 0; copy < 2; ++copy) {
    Stub sp = add_stub(lhs), sm = add_stub(lhs);
    VertexId z = lhs.add_generator(GreenBox{const_label(-1.0), 1, 1});
    VertexId x = lhs.add_generator(PinkSpider{true, 1, 1});
    lhs.mark_output(sp.wire_a(), 2 * copy);
    lhs.connect(sp.wire_b(), Port::leg(z, 0));
    lhs.connect(Port::leg(z, 1), Port::leg(x, 0));
    lhs.connect(Port::leg(x, 1), sm.wire_b());
    lhs.mark_output(sm.wire_a(), 2 * copy + 1);
    kets.push_back(sp.extra());
    bras.push_back(sm.extra());
    // the factored i of each derivative copy
    VertexId ib = lhs.add_generator(GreenBox{const_label(kI), 0, 1});
    VertexId ie = lhs.add_generator(PinkSpider{true, 1, 0});
    lhs.connect(Port::leg(ib, 0), Port::leg(ie, 0));
  }
  integrate::emit_weight_class_gadget(lhs, kets, bras);
  lhs.finalize();
  return {lhs, integrate::cycle_gadget_state()};
}

Sides build_ket00plusketo1(const std::vector<Complex>&) {
  Diagram lhs = compose_seq(gstate(1.0), w2());
  // (I (x) X)(T (x) I) cap
  Diagram rhs = Diagram::open(0, 2);
  VertexId t = rhs.add_generator(Triangle{});
  VertexId x = rhs.add_generator(PinkSpider{true, 1, 1});
  rhs.connect(Port::leg(t, 1), Port::leg(x, 0));
  rhs.mark_output(Port::leg(t, 0), 0);
  rhs.mark_output(Port::leg(x, 1), 1);
  rhs.finalize();
  return {lhs, rhs};
}

Sides build_cycle1(const std::vector<Complex>&) {
  Diagram h4 = compose_par(compose_par(had(), had()), compose_par(had(), had()));
  Diagram lhs = compose_seq(integrate::cycle_gadget_state(), h4);
  Diagram rhs = Diagram::open(0, 4);
  VertexId p = rhs.add_generator(PinkSpider{false, 0, 4});
  VertexId g1 = rhs.add_generator(GreenBox{const_label(-1.0), 1, 1});
  VertexId g2 = rhs.add_generator(GreenBox{const_label(-1.0), 1, 1});
  rhs.mark_output(Port::leg(p, 0), 0);
  rhs.connect(Port::leg(p, 1), Port::leg(g1, 0));
  rhs.mark_output(Port::leg(g1, 1), 1);
  rhs.connect(Port::leg(p, 2), Port::leg(g2, 0));
  rhs.mark_output(Port::leg(g2, 1), 2);
  rhs.mark_output(Port::leg(p, 3), 3);
  rhs.add_scalar_sqrt2(-2);
  rhs.finalize();
  return {lhs, rhs};
}

Sides build_cycle2(const std::vector<Complex>&) {
  // the cycle fuses into the stub spiders it hangs from
  Diagram lhs = Diagram::open(4, 4);
  std::vector<Port> legs;
  for (unsigned i = 0; i < 4; ++i) {
    Stub s = add_stub(lhs);
    lhs.mark_input(s.wire_a(), i);
    lhs.mark_output(s.wire_b(), i);
    legs.push_back(s.extra());
  }
  integrate::emit_cycle_gadget(lhs, legs);
  lhs.finalize();

  Diagram rhs = Diagram::open(4, 4);
  VertexId hub = rhs.add_generator(GreenBox{const_label(1.0), 0, 6});
  rhs.mark_input(Port::leg(hub, 0), 0);
  rhs.mark_output(Port::leg(hub, 1), 0);
  for (unsigned i : {1u, 2u}) {
    VertexId x = rhs.add_generator(PinkSpider{true, 1, 1});
    Stub s = add_stub(rhs);
    rhs.connect(Port::leg(hub, 1 + i), Port::leg(x, 0));
    rhs.connect(Port::leg(x, 1), s.extra());
    rhs.mark_input(s.wire_a(), i);
    rhs.mark_output(s.wire_b(), i);
  }
  rhs.mark_input(Port::leg(hub, 4), 3);
  rhs.mark_output(Port::leg(hub, 5), 3);
  rhs.finalize();
  return {lhs, rhs};
}

std::vector<RuleInstance> make_catalog() {
  std::vector<RuleInstance> base;
  base.push_back(rule("S1", {any(), any()}, build_s1));
  base.push_back(rule("S2", {}, build_s2));
  base.push_back(rule("S3", {}, build_s3));
  base.push_back(rule("Ept", {}, build_ept));
  base.push_back(rule("B1", {}, build_b1));
  base.push_back(rule("B2", {}, build_b2));
  base.push_back(rule("B3", {any()}, build_b3));
  base.push_back(rule("Brk", {}, build_brk, "AND flip encoded via the triangle AND gate"));
  base.push_back(rule("Bas0", {}, build_bas0));
  base.push_back(rule("Bas1", {}, build_bas1));
  base.push_back(rule("Suc", {any()}, build_suc));
  base.push_back(rule("Inv", {}, build_inv));
  base.push_back(rule("Zero", {}, build_zero));
  base.push_back(rule("EU", {}, build_eu,
                      "Euler form of H via triangles: sqrt2 H = T^t diag(1,-2) T"));
  base.push_back(rule("Sym", {}, build_sym));
  base.push_back(rule("Aso", {}, build_aso));
  base.push_back(rule("Pcy", {}, build_pcy, "pi cycles through the triangle, both colors"));

  std::vector<RuleInstance> out;
  for (const auto& r : base) out.push_back(r);
  for (const auto& r : base) {
    Builder flip = [b = r.build](const std::vector<Complex>& v) {
      auto [lhs, rhs] = b(v);
      return Sides{transpose(lhs), transpose(rhs)};
    };
    out.push_back(rule(r.name + "-vflip", r.free_labels, std::move(flip)));
  }

  out.push_back(rule("S1r", {tau(), tau()}, build_s1r));
  out.push_back(rule("H2", {}, build_h2));
  out.push_back(rule("triangle-transpose", {}, build_tri_transpose));
  out.push_back(rule("triangle-inverse-by-pi", {}, build_tri_inverse_pi));
  out.push_back(rule("bra1-stabilize", {}, build_bra1_stab));
  out.push_back(rule("Hopf", {}, build_hopf));
  out.push_back(rule("Pic", {nonzero()}, build_pic, "copied phase escapes as the scalar a"));
  out.push_back(rule("pi-commutation", {}, build_pi_commutation));
  out.push_back(rule("piwtopicap", {}, build_piwtopicap));

  out.push_back(rule("zerobox", {}, build_zerobox));
  out.push_back(rule("rdecomp", {}, build_rdecomp,
                     "pink = sqrt2 * H-conjugated green, the integer rescaling"));
  out.push_back(rule("bas0t", {}, build_bas0t));
  out.push_back(rule("bas1t", {}, build_bas1t));
  out.push_back(rule("trihopf", {}, build_trihopf));
  out.push_back(rule("triloop", {}, build_triloop));
  out.push_back(rule("cnotstable", {}, build_cnotstable));
  out.push_back(rule("wplug", {}, build_wplug));
  out.push_back(rule("wsum", {any(), any()}, build_wsum));
  out.push_back(rule("w2pitri", {}, build_w2pitri));
  out.push_back(rule("diffexampletop", {angle()}, build_diffexampletop));
  out.push_back(rule("2gn1rpi", {}, build_2gn1rpi));
  out.push_back(rule("2gn1rpi1r0", {}, build_2gn1rpi1r0));
  out.push_back(rule("2gn2rpis", {}, build_2gn2rpis,
                     "squared-derivative integration collapses to the cycle gadget"));
  out.push_back(rule("ket00plusketo1", {}, build_ket00plusketo1));
  out.push_back(rule("cycle-1", {}, build_cycle1,
                     "cycle gadget under Hadamards, scalars solved exactly"));
  out.push_back(rule("cycle-2", {}, build_cycle2, "cycle fused into its stub spiders"));
  return out;
}

Complex sample_label(const LabelSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case LabelSpec::Kind::ComplexAny: {
      if (rng.next_double() < 0.2) {
        static const Complex specials[4] = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}};
        return specials[rng.below(4)];
      }
      return std::polar(rng.uniform(0.2, 2.0), rng.angle());
    }
    case LabelSpec::Kind::ComplexNonzero: {
      if (rng.next_double() < 0.2) {
        static const Complex specials[3] = {{1, 0}, {-1, 0}, {0, 1}};
        return specials[rng.below(3)];
      }
      return std::polar(rng.uniform(0.2, 2.0), rng.angle());
    }
    case LabelSpec::Kind::Angle: return Complex(rng.angle(), 0.0);
    case LabelSpec::Kind::Tau: return Complex(rng.below(2) ? kPi : 0.0, 0.0);
  }
  return Complex(0.0);
}

}  // namespace

const std::vector<RuleInstance>& catalog() {
  static const std::vector<RuleInstance> rules = make_catalog();
  return rules;
}

RuleReport check_rule(const RuleInstance& rule, int samples, std::uint64_t seed) {
  RuleReport report{rule.name, 0, 0.0, false};
  int n = rule.free_labels.empty() ? 1 : std::max(1, samples);
  Rng rng(Rng::mix(seed, Rng::hash_str(rule.name)));
  for (int i = 0; i < n; ++i) {
    std::vector<Complex> labels;
    for (const auto& spec : rule.free_labels) labels.push_back(sample_label(spec, rng));
    auto [lhs, rhs] = rule.build(labels);
    Tensor tl = evaluate(lhs);
    Tensor tr = evaluate(rhs);
    double dev = (tl.n_in == tr.n_in && tl.n_out == tr.n_out)
                     ? max_abs_diff(tl, tr)
                     : std::numeric_limits<double>::infinity();
    report.max_deviation = std::max(report.max_deviation, dev);
    ++report.samples;
  }
  report.pass = report.max_deviation <= kRuleTolerance;
  return report;
}

std::vector<RuleReport> check_catalog(int samples, std::uint64_t seed, int threads,
                                      const std::string& only) {
  std::vector<const RuleInstance*> selected;
  for (const auto& r : catalog())
    if (only.empty() || r.name == only) selected.push_back(&r);
  if (!only.empty() && selected.empty())
    fail(ErrorKind::ParseError, "no rule named '" + only + "' in the catalog");
  std::vector<RuleReport> reports(selected.size());
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(selected.size())));
  if (threads == 1) {
    for (std::size_t i = 0; i < selected.size(); ++i)
      reports[i] = check_rule(*selected[i], samples, seed);
    return reports;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < selected.size(); i = next.fetch_add(1))
        reports[i] = check_rule(*selected[i], samples, seed);
    });
  for (auto& th : pool) th.join();
  return reports;
}

// ---------------------------------------------------------------------------
// Simplifier
// ---------------------------------------------------------------------------

namespace {

struct MutableGraph {
  std::map<VertexId, VertexKind> verts;
  std::map<Port, Port> peer;
  std::int64_t sqrt2 = 0;
  unsigned n_in = 0, n_out = 0;

  static MutableGraph from(const Diagram& d) {
    MutableGraph g;
    g.verts = d.vertices();
    g.sqrt2 = d.scalar_log();
    g.n_in = d.n_inputs();
    g.n_out = d.n_outputs();
    for (const Edge& e : d.edges()) {
      g.peer[e.a] = e.b;
      g.peer[e.b] = e.a;
    }
    return g;
  }

  std::vector<Port> legs_of(VertexId v) const {
    std::vector<Port> out;
    for (unsigned l = 0; l < leg_count(verts.at(v)); ++l) out.push_back(Port::leg(v, l));
    return out;
  }

  void unlink(Port p) {
    auto it = peer.find(p);
    if (it == peer.end()) return;
    peer.erase(it->second);
    peer.erase(p);
  }

  void link(Port a, Port b) {
    peer[a] = b;
    peer[b] = a;
  }

  // removes a two-legged vertex, splicing its neighbours together
  void splice_out(VertexId v) {
    Port l0 = Port::leg(v, 0), l1 = Port::leg(v, 1);
    Port a = peer.at(l0), b = peer.at(l1);
    unlink(l0);
    unlink(l1);
    verts.erase(v);
    if (a == l1) {
      // self-loop through the vertex: a closed circle remains
      sqrt2 += 2;
      return;
    }
    link(a, b);
  }

  Diagram to_diagram() const {
    Diagram d = Diagram::open(n_in, n_out);
    d.add_scalar_sqrt2(sqrt2);
    std::map<VertexId, VertexId> vmap;
    for (const auto& [id, kind] : verts) vmap[id] = d.add_generator(kind);
    auto map_port = [&](Port p) {
      if (p.kind == Port::Kind::Vertex) p.vertex = vmap.at(p.vertex);
      return p;
    };
    for (const auto& [a, b] : peer)
      if (a < b) d.connect(map_port(a), map_port(b));
    d.finalize();
    return d;
  }
};

bool is_green(const VertexKind& k) { return std::holds_alternative<GreenBox>(k); }
bool is_pink(const VertexKind& k) { return std::holds_alternative<PinkSpider>(k); }

// Const x Const or Phase + Phase of one parameter
bool labels_fuse(const Label& x, const Label& y, Label& out) {
  if (const auto* cx = std::get_if<ConstLabel>(&x)) {
    if (const auto* cy = std::get_if<ConstLabel>(&y)) {
      out = const_label(cx->value * cy->value);
      return true;
    }
    return false;
  }
  const auto* px = std::get_if<PhaseLabel>(&x);
  const auto* py = std::get_if<PhaseLabel>(&y);
  if (px && py && px->param == py->param) {
    int k = px->k + py->k;
    double c = px->c + py->c;
    if (k == 0)
      out = const_label(std::polar(1.0, c));
    else
      out = PhaseLabel{px->param, k, c};
    return true;
  }
  return false;
}

// rebuilds vertex v without the given legs, keeping relative leg order
void drop_legs(MutableGraph& g, VertexId v, const std::set<unsigned>& dropped) {
  VertexKind kind = g.verts.at(v);
  unsigned legs = leg_count(kind);
  std::vector<Port> keep_peers;
  std::vector<unsigned> keep_legs;
  for (unsigned l = 0; l < legs; ++l)
    if (!dropped.count(l)) {
      keep_legs.push_back(l);
      keep_peers.push_back(g.peer.at(Port::leg(v, l)));
    }
  for (unsigned l = 0; l < legs; ++l) g.unlink(Port::leg(v, l));
  unsigned remaining = static_cast<unsigned>(keep_legs.size());
  if (auto* gb = std::get_if<GreenBox>(&kind)) {
    gb->n = 0;
    gb->m = remaining;
  } else if (auto* pk = std::get_if<PinkSpider>(&kind)) {
    pk->n = 0;
    pk->m = remaining;
  }
  g.verts[v] = kind;
  for (unsigned i = 0; i < remaining; ++i) g.link(Port::leg(v, i), keep_peers[i]);
}

// merge w into v for same-color spiders; returns false when labels refuse
bool fuse_pair(MutableGraph& g, VertexId v, VertexId w) {
  VertexKind kv = g.verts.at(v), kw = g.verts.at(w);
  VertexKind merged;
  if (is_green(kv)) {
    Label out;
    if (!labels_fuse(std::get<GreenBox>(kv).label, std::get<GreenBox>(kw).label, out))
      return false;
    // fully connected pairs close to 1 + ab, which a floating box (= bare
    // label) cannot carry; leave them to the evaluator
    unsigned open = 0;
    for (VertexId src : {v, w})
      for (Port p : g.legs_of(src)) {
        Port q = g.peer.at(p);
        if (!(q.kind == Port::Kind::Vertex && (q.vertex == v || q.vertex == w))) ++open;
      }
    if (open == 0) return false;
    merged = GreenBox{out, 0, 0};
  } else {
    merged = PinkSpider{std::get<PinkSpider>(kv).pi != std::get<PinkSpider>(kw).pi, 0, 0};
  }
  std::vector<Port> ext_peers;
  unsigned connecting = 0;
  for (VertexId src : {v, w}) {
    for (Port p : g.legs_of(src)) {
      Port q = g.peer.at(p);
      if (q.kind == Port::Kind::Vertex && (q.vertex == v || q.vertex == w)) {
        if (src == v && q.vertex == w) ++connecting; // count each joint wire once
        continue;
      }
      ext_peers.push_back(q);
    }
  }
  // joint wires beyond the first: a pink circle each, value 2; green drops free
  if (is_pink(g.verts.at(v))) {
    // wires fully inside the fused pair: connecting v-w wires plus any
    // self-loops, each contributing one power of two
    unsigned internal = connecting;
    for (VertexId src : {v, w})
      for (Port p : g.legs_of(src)) {
        Port q = g.peer.at(p);
        if (q.kind == Port::Kind::Vertex && q.vertex == src && p < q) ++internal;
      }
    g.sqrt2 += 2 * static_cast<std::int64_t>(internal - 1);
  }
  for (Port p : g.legs_of(v)) g.unlink(p);
  for (Port p : g.legs_of(w)) g.unlink(p);
  g.verts.erase(w);
  unsigned legs = static_cast<unsigned>(ext_peers.size());
  if (auto* gb = std::get_if<GreenBox>(&merged)) gb->m = legs;
  if (auto* pk = std::get_if<PinkSpider>(&merged)) pk->m = legs;
  g.verts[v] = merged;
  for (unsigned i = 0; i < legs; ++i) g.link(Port::leg(v, i), ext_peers[i]);
  return true;
}

}  // namespace

Diagram simplify(const Diagram& d) {
  if (!d.finalized()) fail(ErrorKind::NotFinalized, "simplify");
  MutableGraph g = MutableGraph::from(d);
  auto ids = [&g] {
    std::vector<VertexId> v;
    for (const auto& [id, kind] : g.verts) v.push_back(id);
    return v;
  };
  bool changed = true;
  while (changed) {
    changed = false;

    // spider self-loops; a green closing to zero legs traces to 1 + a,
    // which the floating box cannot hold, so it stays put
    for (VertexId v : ids()) {
      if (changed) break;
      const VertexKind& kind = g.verts.at(v);
      if (!is_green(kind) && !is_pink(kind)) continue;
      if (is_green(kind) && leg_count(kind) == 2) continue;
      for (Port p : g.legs_of(v)) {
        Port q = g.peer.at(p);
        if (q.kind == Port::Kind::Vertex && q.vertex == v && p < q) {
          if (is_pink(kind)) g.sqrt2 += 2;
          drop_legs(g, v, {p.index, q.index});
          changed = true;
          break;
        }
      }
    }
    if (changed) continue;

    // same-color fusion over at least one wire
    for (VertexId v : ids()) {
      if (changed) break;
      const VertexKind& kind = g.verts.at(v);
      if (!is_green(kind) && !is_pink(kind)) continue;
      for (Port p : g.legs_of(v)) {
        Port q = g.peer.at(p);
        if (q.kind != Port::Kind::Vertex || q.vertex == v) continue;
        VertexId w = q.vertex;
        if (w < v) continue;
        const VertexKind& kw = g.verts.at(w);
        if (is_green(kind) != is_green(kw) || is_pink(kind) != is_pink(kw)) continue;
        if (fuse_pair(g, v, w)) {
          changed = true;
          break;
        }
      }
    }
    if (changed) continue;

    // identity spiders: green 1 and pink tau=0 on two legs
    for (VertexId v : ids()) {
      if (changed) break;
      const VertexKind& kind = g.verts.at(v);
      if (leg_count(kind) != 2) continue;
      bool ident = false;
      if (const auto* gb = std::get_if<GreenBox>(&kind)) {
        const auto* c = std::get_if<ConstLabel>(&gb->label);
        ident = c && c->value == Complex(1.0);
      } else if (const auto* pk = std::get_if<PinkSpider>(&kind)) {
        ident = !pk->pi;
      }
      if (ident) {
        g.splice_out(v);
        changed = true;
      }
    }
    if (changed) continue;

    // Hadamard pairs on a wire
    for (VertexId v : ids()) {
      if (changed) break;
      if (!g.verts.count(v) || !std::holds_alternative<Hadamard>(g.verts.at(v))) continue;
      for (unsigned l = 0; l < 2 && !changed; ++l) {
        Port q = g.peer.at(Port::leg(v, l));
        if (q.kind != Port::Kind::Vertex || q.vertex == v) continue;
        if (!std::holds_alternative<Hadamard>(g.verts.at(q.vertex))) continue;
        VertexId w = q.vertex;
        Port va = Port::leg(v, 1 - l), wa = Port::leg(w, 1 - q.index);
        Port pa = g.peer.at(va), pb = g.peer.at(wa);
        g.unlink(Port::leg(v, l));
        if (pa == wa) {
          // doubly connected pair: closed H-H circle, trace is 2
          g.unlink(va);
          g.sqrt2 += 2;
        } else {
          g.unlink(va);
          g.unlink(wa);
          g.link(pa, pb);
        }
        g.verts.erase(v);
        g.verts.erase(w);
        changed = true;
      }
    }
  }
  return g.to_diagram();
}

}  // namespace zx::rules
