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

// Seeded random diagram generators for property tests.

#pragma once

#include <string>
#include <vector>

#include "zxcalc/diagram.hpp"
#include "zxcalc/interp.hpp"
#include "zxcalc/rng.hpp"

namespace zx::testgen {

struct Options {
  unsigned wires = 3;
  unsigned depth = 6;
  std::vector<std::string> params; // eligible phase parameters
  unsigned max_occurrences = 6;
  int max_abs_k = 2;
  bool closed = false; // cap the boundary with basis states/effects
};

// Circuit-shaped random diagram over the generator set; wire count is
// preserved layer to layer so arities always line up.
inline Diagram random_diagram(Rng& rng, const Options& opt) {
  Diagram d = Diagram::open(opt.closed ? 0 : opt.wires, opt.closed ? 0 : opt.wires);
  std::vector<Port> front(opt.wires);
  if (opt.closed) {
    for (unsigned q = 0; q < opt.wires; ++q) {
      VertexId v = d.add_generator(PinkSpider{rng.below(2) == 1, 0, 1});
      front[q] = Port::leg(v, 0);
    }
  } else {
    for (unsigned q = 0; q < opt.wires; ++q) front[q] = Port::in(q);
  }
  unsigned occ = 0;
  auto pass1 = [&](unsigned q, const VertexKind& kind) {
    VertexId v = d.add_generator(kind);
    d.connect(front[q], Port::leg(v, 0));
    front[q] = Port::leg(v, 1);
  };
  for (unsigned layer = 0; layer < opt.depth; ++layer) {
    unsigned q = static_cast<unsigned>(rng.below(opt.wires));
    switch (rng.below(8)) {
      case 0: { // constant green box
        Complex a = std::polar(rng.uniform(0.3, 1.6), rng.angle());
        pass1(q, GreenBox{const_label(a), 1, 1});
        break;
      }
      case 1: { // phase spider
        if (!opt.params.empty() && occ < opt.max_occurrences) {
          int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(opt.max_abs_k)));
          if (rng.below(2)) k = -k;
          const std::string& p = opt.params[rng.below(opt.params.size())];
          pass1(q, GreenBox{phase_label(p, k, rng.angle()), 1, 1});
          ++occ;
        } else {
          pass1(q, Hadamard{});
        }
        break;
      }
      case 2: pass1(q, Hadamard{}); break;
      case 3: pass1(q, rng.below(2) ? VertexKind{Triangle{}} : VertexKind{TriangleInverse{}}); break;
      case 4: pass1(q, PinkSpider{rng.below(2) == 1, 1, 1}); break;
      case 5: { // CNOT-shaped pair on adjacent wires
        if (opt.wires < 2) { pass1(q, Hadamard{}); break; }
        unsigned a = q % (opt.wires - 1), b = a + 1;
        VertexId c = d.add_generator(GreenBox{const_label(1.0), 1, 2});
        VertexId t = d.add_generator(PinkSpider{false, 2, 1});
        d.connect(front[a], Port::leg(c, 0));
        d.connect(front[b], Port::leg(t, 0));
        d.connect(Port::leg(c, 2), Port::leg(t, 1));
        front[a] = Port::leg(c, 1);
        front[b] = Port::leg(t, 2);
        break;
      }
      case 6: { // swap by crossing
        if (opt.wires < 2) { pass1(q, Triangle{}); break; }
        unsigned a = q % (opt.wires - 1);
        std::swap(front[a], front[a + 1]);
        break;
      }
      case 7: { // cup then cap on adjacent wires
        if (opt.wires < 2) { pass1(q, PinkSpider{false, 1, 1}); break; }
        unsigned a = q % (opt.wires - 1), b = a + 1;
        d.connect(front[a], front[b]);
        VertexId capv = d.add_generator(GreenBox{const_label(1.0), 0, 2});
        front[a] = Port::leg(capv, 0);
        front[b] = Port::leg(capv, 1);
        break;
      }
    }
  }
  if (opt.closed) {
    for (unsigned q = 0; q < opt.wires; ++q) {
      VertexId v = d.add_generator(PinkSpider{rng.below(2) == 1, 1, 0});
      d.connect(front[q], Port::leg(v, 0));
    }
  } else {
    for (unsigned q = 0; q < opt.wires; ++q) d.mark_output(front[q], q);
  }
  d.finalize();
  return d;
}

// Diagram with exactly one k=+1 and one k=-1 occurrence of `param`, the
// parameter-shift shape, around random structure.
inline Diagram random_density_pair(Rng& rng, const std::string& param, unsigned wires = 2) {
  Options opt;
  opt.wires = wires;
  opt.depth = 4;
  Diagram left = random_diagram(rng, opt);
  Diagram mid = random_diagram(rng, opt);
  Diagram right = random_diagram(rng, opt);
  Diagram plus = compose_par(gbox(phase_label(param, 1, 0.0), 1, 1),
                             Diagram::empty(wires - 1, wires - 1));
  Diagram minus = compose_par(Diagram::empty(wires - 1, wires - 1),
                              gbox(phase_label(param, -1, 0.0), 1, 1));
  return compose_seq(compose_seq(compose_seq(compose_seq(left, plus), mid), minus), right);
}

inline Binding random_binding(const Diagram& d, Rng& rng) {
  Binding b;
  for (const std::string& p : d.parameters()) b[p] = rng.angle();
  return b;
}

}  // namespace zx::testgen
