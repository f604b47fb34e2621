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

#include <doctest.h>

#include "support/gen.hpp"
#include "zxcalc/diagram.hpp"
#include "zxcalc/funcreg.hpp"
#include "zxcalc/interp.hpp"
#include "zxcalc/json_io.hpp"

using namespace zx;

namespace {
Tensor mat2(Complex a, Complex b, Complex c, Complex d) {
  Tensor t(1, 1);
  t.at(0, 0) = a;
  t.at(0, 1) = b;
  t.at(1, 0) = c;
  t.at(1, 1) = d;
  return t;
}
}  // namespace

TEST_CASE("empty diagrams") {
  CHECK(approx_equal(evaluate(Diagram::empty(1, 1)), Tensor::identity(1), 1e-12));
  CHECK(approx_equal(evaluate(Diagram::empty(0, 0)), Tensor::scalar(1.0), 1e-12));
  CHECK(approx_equal(evaluate(Diagram::empty(3, 3)), Tensor::identity(3), 1e-12));
  CHECK_THROWS_AS(Diagram::empty(2, 1), ZXError);
  try {
    Diagram::empty(2, 1);
  } catch (const ZXError& e) {
    CHECK(e.kind() == ErrorKind::ArityMismatch);
  }
}

TEST_CASE("incremental construction and its error paths") {
  Diagram d = Diagram::open(1, 1);
  VertexId t = d.add_generator(Triangle{});
  d.mark_input(Port::leg(t, 1), 0);
  CHECK_THROWS_AS(d.connect(Port::leg(t, 1), Port::out(0)), ZXError); // occupied
  CHECK_THROWS_AS(d.connect(Port::leg(t, 7), Port::out(0)), ZXError); // no such leg
  CHECK_THROWS_AS(d.connect(Port::leg(99, 0), Port::out(0)), ZXError); // no such vertex
  SUBCASE("finalize rejects dangling legs") {
    CHECK_THROWS_AS(d.finalize(), ZXError);
  }
  SUBCASE("evaluates once complete") {
    d.mark_output(Port::leg(t, 0), 0);
    d.finalize();
    CHECK(approx_equal(evaluate(d), mat2(1, 1, 0, 1), 1e-12));
    CHECK_THROWS_AS(d.add_generator(Hadamard{}), ZXError); // immutable now
  }
}

TEST_CASE("generator matrices") {
  CHECK(approx_equal(evaluate(tri()), mat2(1, 1, 0, 1), 1e-12));
  CHECK(approx_equal(evaluate(tri_inv()), mat2(1, -1, 0, 1), 1e-12));
  Complex a(0.8, -0.4);
  CHECK(approx_equal(evaluate(gbox(a, 1, 1)), mat2(1, 0, 0, a), 1e-12));
  // W spider with head as input: rows |00>,|01>,|10>,|11>
  Tensor w = evaluate(w_native(2));
  Tensor expect(2, 1);
  expect.at(0, 0) = 1;
  expect.at(1, 1) = 1;
  expect.at(2, 1) = 1;
  CHECK(approx_equal(w, expect, 1e-12));
}

TEST_CASE("composition semantics") {
  CHECK(approx_equal(evaluate(compose_seq(had(), had())), Tensor::identity(1), 1e-12));
  CHECK(approx_equal(evaluate(compose_seq(tri_inv(), tri())), Tensor::identity(1), 1e-12));
  Diagram f = gbox(Complex(0.3, 0.1), 1, 1);
  CHECK(approx_equal(evaluate(compose_seq(f, Diagram::empty(1, 1))), evaluate(f), 1e-12));
  CHECK_THROWS_AS(compose_seq(cap(), had()), ZXError);

  SUBCASE("parallel scalars multiply") {
    // floating boxes carry the bare scalar
    Complex a(0.2, 0.5), b(-1.0, 0.25);
    Diagram p = compose_par(gbox(a, 0, 0), gbox(b, 0, 0));
    CHECK(std::abs(evaluate(p).at(0, 0) - a * b) < 1e-12);
  }
  SUBCASE("swap is the displayed permutation") {
    Tensor s = evaluate(swap_diag());
    Tensor e(2, 2);
    e.at(0, 0) = e.at(1, 2) = e.at(2, 1) = e.at(3, 3) = 1;
    CHECK(approx_equal(s, e, 1e-12));
  }
  SUBCASE("functoriality on random diagrams") {
    Rng rng(11);
    for (int i = 0; i < 25; ++i) {
      testgen::Options opt;
      opt.wires = 2;
      opt.depth = 4;
      Diagram f1 = testgen::random_diagram(rng, opt);
      Diagram f2 = testgen::random_diagram(rng, opt);
      CHECK(max_abs_diff(evaluate(compose_seq(f1, f2)),
                         matmul(evaluate(f2), evaluate(f1))) < 1e-10);
      CHECK(max_abs_diff(evaluate(compose_par(f1, f2)),
                         kron(evaluate(f1), evaluate(f2))) < 1e-10);
    }
  }
  SUBCASE("interchange law") {
    Rng rng(12);
    for (int i = 0; i < 25; ++i) {
      testgen::Options opt;
      opt.wires = 2;
      opt.depth = 3;
      Diagram f1 = testgen::random_diagram(rng, opt);
      Diagram f2 = testgen::random_diagram(rng, opt);
      Diagram g1 = testgen::random_diagram(rng, opt);
      Diagram g2 = testgen::random_diagram(rng, opt);
      Tensor lhs = evaluate(compose_par(compose_seq(f1, f2), compose_seq(g1, g2)));
      Tensor rhs = evaluate(compose_seq(compose_par(f1, g1), compose_par(f2, g2)));
      CHECK(max_abs_diff(lhs, rhs) < 1e-10);
    }
  }
}

TEST_CASE("dagger") {
  CHECK(approx_equal(evaluate(dagger(had())), evaluate(had()), 1e-12));
  SUBCASE("phase labels conjugate") {
    Diagram d = gbox(phase_label("theta", 1, 0.0), 1, 1);
    Diagram dd = dagger(d);
    const auto& g = std::get<GreenBox>(dd.vertices().begin()->second);
    const auto& ph = std::get<PhaseLabel>(g.label);
    CHECK(ph.k == -1);
  }
  SUBCASE("dagger twice is the identity on evaluations") {
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
      testgen::Options opt;
      opt.wires = 2;
      opt.depth = 5;
      Diagram d = testgen::random_diagram(rng, opt);
      CHECK(max_abs_diff(evaluate(dagger(dagger(d))), evaluate(d)) < 1e-10);
      CHECK(max_abs_diff(evaluate(dagger(d)), dagger_t(evaluate(d))) < 1e-10);
    }
  }
  SUBCASE("unregistered conjugates refuse") {
    FuncRegistry::instance().register_func("oneway", {[](double t) { return Complex(t, 1.0); },
                                                      [](double) { return Complex(1.0); },
                                                      "",
                                                      false});
    Diagram d = Diagram::open(0, 1);
    VertexId v = d.add_generator(GreenBox{FuncLabel{"t", "oneway"}, 0, 1});
    d.mark_output(Port::leg(v, 0), 0);
    d.finalize();
    CHECK_THROWS_AS(dagger(d), ZXError);
  }
}

TEST_CASE("derived notation") {
  SUBCASE("pink spider expansion matches the native generator") {
    for (unsigned n = 0; n <= 2; ++n)
      for (unsigned m = (n == 0 ? 1u : 0u); m <= 2; ++m) {
        CHECK(max_abs_diff(evaluate(pink_spider_derived(false, n, m)),
                           evaluate(pinkd(false, n, m))) < 1e-12);
        CHECK(max_abs_diff(evaluate(pink_spider_derived(true, n, m)),
                           evaluate(pinkd(true, n, m))) < 1e-12);
      }
  }
  SUBCASE("pink pi (1,1) is Pauli X") {
    CHECK(approx_equal(evaluate(pink_spider_derived(true, 1, 1)), mat2(0, 1, 1, 0), 1e-12));
  }
  SUBCASE("w spider expansion hits the closed form exactly") {
    for (unsigned m = 1; m <= 3; ++m) {
      Tensor derived = evaluate(w_spider_derived(m));
      Tensor native = evaluate(w_native(m));
      CHECK(max_abs_diff(derived, native) == 0.0);
      for (const Complex& v : derived.data) {
        CHECK(v.imag() == 0.0);
        CHECK((v.real() == 0.0 || v.real() == 1.0));
      }
    }
  }
  SUBCASE("w head selects all-zeros or the one-hot sum") {
    for (unsigned m = 2; m <= 3; ++m) {
      Tensor zero = evaluate(compose_seq(pink_state(false), w_native(m)));
      Tensor one = evaluate(compose_seq(pink_state(true), w_native(m)));
      for (std::size_t i = 0; i < zero.rows(); ++i) {
        CHECK(zero.at(i, 0) == Complex(i == 0 ? 1.0 : 0.0));
        CHECK(one.at(i, 0) == Complex(std::popcount(i) == 1 ? 1.0 : 0.0));
      }
    }
  }
  SUBCASE("map-state duality: bending pink pi with a cap") {
    Diagram bent = compose_seq(cap(), compose_par(pink_spider_derived(true, 1, 1), wire()));
    Tensor t = evaluate(bent);
    Tensor e(2, 0);
    e.at(1, 0) = 1; // |01>
    e.at(2, 0) = 1; // |10>
    CHECK(approx_equal(t, e, 1e-12));
  }
  SUBCASE("green phase spider at alpha") {
    Tensor t = evaluate(green_phase_spider(0.9, 1, 1));
    CHECK(std::abs(t.at(1, 1) - std::polar(1.0, 0.9)) < 1e-12);
  }
}

TEST_CASE("json round trip") {
  Rng rng(14);
  for (int i = 0; i < 50; ++i) {
    testgen::Options opt;
    opt.wires = 1 + static_cast<unsigned>(rng.below(3));
    opt.depth = 5;
    opt.params = {"a", "b"};
    Diagram d = testgen::random_diagram(rng, opt);
    Diagram back = diagram_from_json(diagram_to_json(d));
    CHECK(back == d);
  }
  SUBCASE("func labels survive") {
    Diagram d = Diagram::open(0, 1);
    VertexId v = d.add_generator(GreenBox{FuncLabel{"t", "sin"}, 0, 1});
    d.mark_output(Port::leg(v, 0), 0);
    d.finalize();
    CHECK(diagram_from_json(diagram_to_json(d)) == d);
  }
  SUBCASE("parse errors carry positions") {
    CHECK_THROWS_AS(diagram_from_json("{\"vertices\": ["), ZXError);
    CHECK_THROWS_AS(diagram_from_json("{}"), ZXError);
  }
  SUBCASE("boundary ports accepted inside edges") {
    Diagram d = diagram_from_json(
        R"({"vertices":[],"edges":[[["in",0],["out",0]]],"inputs":[["out",0]],"outputs":[["in",0]],"scalar_log":0})");
    CHECK(approx_equal(evaluate(d), Tensor::identity(1), 1e-12));
  }
}

TEST_CASE("scalar bookkeeping stays exact") {
  // loops created by composition contribute exact powers of two
  Diagram circle = compose_seq(cap(), cup());
  CHECK(evaluate(circle).at(0, 0) == Complex(2.0));
  CHECK(circle.scalar_log() == 2);
  Diagram snake = compose_seq(compose_par(cap(), wire()), compose_par(wire(), cup()));
  CHECK(approx_equal(evaluate(snake), Tensor::identity(1), 1e-12));
}
