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

#include "zxcalc/diff.hpp"

#include <algorithm>
#include <cmath>

#include "zxcalc/funcreg.hpp"

namespace zx::diff {

namespace {

constexpr double kVanishTol = 1e-9;
const Complex kI(0.0, 1.0);

bool references(const Label& label, const std::string& param) {
  if (const auto* p = std::get_if<PhaseLabel>(&label)) return p->param == param;
  if (const auto* f = std::get_if<FuncLabel>(&label)) return f->param == param;
  return false;
}

// d/dtheta of f divided by f, registered on demand for Func gadget boxes.
std::string ratio_handle(const std::string& handle) {
  std::string name = "dlog:" + handle;
  auto& reg = FuncRegistry::instance();
  if (!reg.has(name)) {
    FuncDef base = reg.get(handle);
    FuncDef ratio;
    ratio.f = [base](double t) { return base.df(t) / base.f(t); };
    ratio.df = [base](double) {
      // quotient rule would need f''; the gadget never differentiates ratios
      fail(ErrorKind::UnsupportedOccurrence, "ratio boxes cannot be differentiated again");
      return Complex(0.0);
    };
    reg.register_func(name, ratio);
  }
  return name;
}

}  // namespace

std::pair<Diagram, std::vector<ParamOccurrence>> normalize_occurrences(
    const Diagram& d, const std::string& param) {
  if (!d.finalized()) fail(ErrorKind::NotFinalized, "normalize_occurrences");
  Diagram r = Diagram::open(d.n_inputs(), d.n_outputs());
  r.add_scalar_sqrt2(d.scalar_log());
  std::map<VertexId, VertexId> vmap;
  std::vector<std::pair<VertexId, VertexId>> dragged; // (new spider, original id)
  std::vector<ParamOccurrence> occs;
  for (const auto& [id, kind] : d.vertices()) {
    const auto* g = std::get_if<GreenBox>(&kind);
    if (g && references(g->label, param) && leg_count(kind) == 0) {
      // floating scalar box: isolate the label behind a <1| plug
      VertexId plug = r.add_generator(PinkSpider{true, 1, 0});
      VertexId box = r.add_generator(GreenBox{g->label, 0, 1});
      r.connect(Port::leg(box, 0), Port::leg(plug, 0));
      vmap[id] = plug;
    } else if (g && references(g->label, param) && leg_count(kind) != 1) {
      // drag the label out onto a one-legged box
      VertexId spider = r.add_generator(GreenBox{const_label(1.0), g->n, g->m + 1});
      vmap[id] = spider;
      dragged.push_back({spider, id});
    } else {
      vmap[id] = r.add_generator(kind);
    }
  }
  for (const Edge& e : d.edges()) {
    auto map_port = [&](Port p) {
      if (p.kind == Port::Kind::Vertex) p.vertex = vmap.at(p.vertex);
      return p;
    };
    r.connect(map_port(e.a), map_port(e.b));
  }
  for (const auto& [spider, orig] : dragged) {
    const auto& g = std::get<GreenBox>(d.kind_of(orig));
    VertexId box = r.add_generator(GreenBox{g.label, 0, 1});
    r.connect(Port::leg(spider, leg_count(d.kind_of(orig))), Port::leg(box, 0));
  }
  r.finalize();
  for (const auto& [id, kind] : r.vertices()) {
    const auto* g = std::get_if<GreenBox>(&kind);
    if (g && references(g->label, param)) {
      int k = 0;
      if (const auto* p = std::get_if<PhaseLabel>(&g->label)) k = p->k;
      occs.push_back({id, g->label, k});
    }
  }
  std::sort(occs.begin(), occs.end(),
            [](const ParamOccurrence& a, const ParamOccurrence& b) { return a.vertex < b.vertex; });
  return {r, occs};
}

namespace {

// Ratio labels per occurrence: either the Lemma-3.3 box content, or for the
// point construction a fixed complex value.
struct GadgetSpec {
  VertexId box;
  Label f_label;
  Label ratio;    // for the triangle arm
  bool plain_box; // vanishing arm: replace the occurrence by a ratio-free box
  Label plain_label;
};

Diagram build_derivative(const Diagram& nd, const std::vector<GadgetSpec>& specs, bool factored_i) {
  Diagram r = Diagram::open(nd.n_inputs(), nd.n_outputs());
  r.add_scalar_sqrt2(nd.scalar_log());
  std::map<VertexId, VertexId> vmap;
  std::map<VertexId, const GadgetSpec*> by_box;
  for (const auto& s : specs) by_box[s.box] = &s;
  for (const auto& [id, kind] : nd.vertices()) {
    auto it = by_box.find(id);
    if (it == by_box.end()) {
      vmap[id] = r.add_generator(kind);
    } else if (it->second->plain_box) {
      vmap[id] = r.add_generator(GreenBox{it->second->plain_label, 1, 1});
    } else {
      vmap[id] = r.add_generator(GreenBox{it->second->f_label, 1, 1});
    }
  }
  // original single leg of each occurrence box becomes leg 1 (the out side)
  for (const Edge& e : nd.edges()) {
    auto map_port = [&](Port p) {
      if (p.kind == Port::Kind::Vertex) {
        bool occ = by_box.count(p.vertex) > 0;
        p.vertex = vmap.at(p.vertex);
        if (occ) p.index = 1;
      }
      return p;
    };
    r.connect(map_port(e.a), map_port(e.b));
  }
  // the W spider joining the gadget controls, head selecting |1>
  std::size_t s = specs.size();
  VertexId head_src = r.add_generator(PinkSpider{true, 0, 1});
  Port head = Port::leg(head_src, 0);
  if (factored_i) {
    VertexId ibox = r.add_generator(GreenBox{const_label(kI), 1, 1});
    r.connect(head, Port::leg(ibox, 0));
    head = Port::leg(ibox, 1);
  }
  std::vector<Port> arms;
  if (s == 1) {
    arms.push_back(head);
  } else {
    VertexId w = r.add_generator(WSpider{static_cast<unsigned>(s)});
    r.connect(head, Port::leg(w, 0));
    for (std::size_t j = 0; j < s; ++j) arms.push_back(Port::leg(w, 1 + j));
  }
  for (std::size_t j = 0; j < s; ++j) {
    const GadgetSpec& spec = specs[j];
    if (spec.plain_box) {
      r.connect(arms[j], Port::leg(vmap.at(spec.box), 0));
      continue;
    }
    VertexId ratio = r.add_generator(GreenBox{spec.ratio, 1, 1});
    VertexId t = r.add_generator(Triangle{});
    r.connect(arms[j], Port::leg(ratio, 0));
    // triangle used transposed: leg 0 toward the control side
    r.connect(Port::leg(ratio, 1), Port::leg(t, 0));
    r.connect(Port::leg(t, 1), Port::leg(vmap.at(spec.box), 0));
  }
  r.finalize();
  return r;
}

}  // namespace

Diagram differentiate(const Diagram& d, const std::string& param, DiffRoute route) {
  auto [nd, occs] = normalize_occurrences(d, param);
  if (occs.empty()) return compose_par(d, pink_dot(true));
  bool pure_phase = std::all_of(occs.begin(), occs.end(),
                                [](const ParamOccurrence& o) { return o.k != 0; });
  bool factored = route == DiffRoute::PhaseFactored;
  if (factored && !pure_phase)
    fail(ErrorKind::UnsupportedOccurrence,
         "the factored-i construction needs pure phase occurrences");
  std::vector<GadgetSpec> specs;
  for (const auto& o : occs) {
    GadgetSpec s{o.vertex, o.label, const_label(0.0), false, const_label(0.0)};
    if (o.k != 0) {
      s.ratio = const_label(factored ? Complex(double(o.k)) : kI * double(o.k));
    } else {
      const auto& fn = std::get<FuncLabel>(o.label);
      if (!FuncRegistry::instance().get(fn.handle).nonvanishing)
        fail(ErrorKind::VanishingFunction,
             "function '" + fn.handle + "' may vanish; use differentiate_at");
      s.ratio = FuncLabel{fn.param, ratio_handle(fn.handle)};
    }
    specs.push_back(std::move(s));
  }
  return build_derivative(nd, specs, factored);
}

Tensor differentiate_at(const Diagram& d, const std::string& param, const Binding& b) {
  if (!b.count(param)) fail(ErrorKind::UnboundParameter, param);
  auto [nd, occs] = normalize_occurrences(d, param);
  if (occs.empty()) return evaluate(compose_par(d, pink_dot(true)), b);
  std::vector<GadgetSpec> specs;
  for (const auto& o : occs) {
    Complex f = label_value(o.label, b);
    Complex df = label_derivative(o.label, b);
    GadgetSpec s{o.vertex, o.label, const_label(0.0), false, const_label(0.0)};
    if (std::abs(f) <= kVanishTol) {
      s.plain_box = true;
      s.plain_label = const_label(df);
    } else {
      s.ratio = const_label(df / f);
    }
    specs.push_back(std::move(s));
  }
  return evaluate(build_derivative(nd, specs, false), b);
}

Tensor shift_rule_eval(const Diagram& d, const std::string& param, const Binding& b) {
  auto [nd, occs] = normalize_occurrences(d, param);
  const PhaseLabel* plus = nullptr;
  const PhaseLabel* minus = nullptr;
  VertexId plus_box = 0, minus_box = 0;
  if (occs.size() == 2) {
    for (const auto& o : occs) {
      const auto* p = std::get_if<PhaseLabel>(&o.label);
      if (p && p->k == 1 && !plus) {
        plus = p;
        plus_box = o.vertex;
      } else if (p && p->k == -1 && !minus) {
        minus = p;
        minus_box = o.vertex;
      }
    }
  }
  if (!plus || !minus)
    fail(ErrorKind::ShapeMismatch,
         "parameter-shift form needs exactly one +theta and one -theta occurrence");

  Diagram r = Diagram::open(nd.n_inputs(), nd.n_outputs());
  r.add_scalar_sqrt2(nd.scalar_log());
  std::map<VertexId, VertexId> vmap;
  for (const auto& [id, kind] : nd.vertices()) {
    if (id == plus_box || id == minus_box) continue;
    vmap[id] = r.add_generator(kind);
  }
  Port plus_attach, minus_attach;
  bool have_plus = false, have_minus = false, boxes_joined = false;
  for (const Edge& e : nd.edges()) {
    auto box_end = [&](const Port& p) {
      return p.kind == Port::Kind::Vertex && (p.vertex == plus_box || p.vertex == minus_box);
    };
    if (box_end(e.a) && box_end(e.b)) {
      boxes_joined = true;
      continue;
    }
    if (box_end(e.a) || box_end(e.b)) {
      const Port& boxp = box_end(e.a) ? e.a : e.b;
      const Port& other = box_end(e.a) ? e.b : e.a;
      Port mapped = other;
      if (mapped.kind == Port::Kind::Vertex) mapped.vertex = vmap.at(mapped.vertex);
      if (boxp.vertex == plus_box) {
        plus_attach = mapped;
        have_plus = true;
      } else {
        minus_attach = mapped;
        have_minus = true;
      }
      continue;
    }
    auto map_port = [&](Port p) {
      if (p.kind == Port::Kind::Vertex) p.vertex = vmap.at(p.vertex);
      return p;
    };
    r.connect(map_port(e.a), map_port(e.b));
  }
  // pi inserted on the -theta occurrence, the pair joined through a pink pi
  // and a bent wire, global scalar i
  VertexId g1 = r.add_generator(GreenBox{phase_label(param, 1, plus->c), 1, 1});
  VertexId g2 = r.add_generator(GreenBox{phase_label(param, -1, minus->c + kPi), 1, 1});
  VertexId x = r.add_generator(PinkSpider{true, 1, 1});
  r.connect(Port::leg(g1, 0), Port::leg(x, 0));
  r.connect(Port::leg(x, 1), Port::leg(g2, 0));
  if (boxes_joined && !have_plus && !have_minus) {
    r.connect(Port::leg(g1, 1), Port::leg(g2, 1));
  } else if (have_plus && have_minus) {
    r.connect(Port::leg(g1, 1), plus_attach);
    r.connect(Port::leg(g2, 1), minus_attach);
  } else {
    fail(ErrorKind::ShapeMismatch, "occurrence boxes are not separately attached");
  }
  VertexId ib = r.add_generator(GreenBox{const_label(kI), 0, 1});
  VertexId ie = r.add_generator(PinkSpider{true, 1, 0});
  r.connect(Port::leg(ib, 0), Port::leg(ie, 0));
  r.finalize();
  return evaluate(r, b);
}

Tensor finite_difference(const Diagram& d, const std::string& param, const Binding& b,
                         double h) {
  if (h <= 0) fail(ErrorKind::InvalidDiagram, "finite_difference needs h > 0");
  Binding hi = b, lo = b;
  auto it = b.find(param);
  if (it == b.end()) fail(ErrorKind::UnboundParameter, param);
  hi[param] = it->second + h;
  lo[param] = it->second - h;
  return scale(sub(evaluate(d, hi), evaluate(d, lo)), Complex(1.0 / (2.0 * h)));
}

}  // namespace zx::diff
