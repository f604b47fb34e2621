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
#include <string>
#include <utility>
#include <vector>

#include "zxcalc/diagram.hpp"
#include "zxcalc/interp.hpp"

namespace zx::bp {

struct Gate {
  enum class Kind { RZ, RX, CNOT, CZ, H };
  Kind kind;
  unsigned q1 = 0, q2 = 0;
  std::string param; // empty: fixed rotation
  double angle = 0.0;
};

struct Ansatz {
  unsigned n = 0;
  std::vector<Gate> gates;
  std::vector<std::string> params; // order of first appearance, each used once
};

// One gate per line: rz q name | rx q name | cnot c t | cz a b | h q, with a
// "qubits n" header. Rotation angles may be numeric literals instead of
// parameter names for fixed rotations.
Ansatz parse_circuit(const std::string& text);

// Hardware-efficient layer: H on every qubit, a CZ chain, then one RX per
// qubit. n parameters named theta_0 .. theta_{n-1}.
Ansatz sim9(unsigned n);

struct PauliTerm {
  double weight = 1.0;
  std::string ops; // over I X Y Z, one per qubit
};

struct PauliHamiltonian {
  std::vector<PauliTerm> terms;
  static PauliHamiltonian all_z(unsigned n);
  // "ZZ", "0.5*ZI + 0.5*IZ", "XX - 0.25*YY"
  static PauliHamiltonian parse(const std::string& text, unsigned n);
};

// n-in n-out diagram evaluating to the gate-by-gate unitary product.
Diagram ansatz_to_diagram(const Ansatz& a);

// <0| U^dag H U |0> with every parameterised spider fused out: per
// Hamiltonian term a closed core with 2m boundary legs, ordered
// [+theta_1, -theta_1, +theta_2, -theta_2, ...]. Plugging phase boxes onto
// the legs recovers the expectation.
struct ExpectationDiagram {
  struct Core {
    Diagram diagram;
    double weight = 1.0;
  };
  std::vector<Core> cores;
  std::vector<std::string> params;

  // (ket-side leg, bra-side leg) of a parameter
  std::pair<unsigned, unsigned> leg_index(const std::string& param) const;
};

ExpectationDiagram expectation_diagram(const Ansatz& a, const PauliHamiltonian& h);

// Closes a core with phase boxes; evaluating under b gives the term value.
Diagram close_core(const ExpectationDiagram& e, std::size_t term, const Binding& b = {});
double expectation_value(const ExpectationDiagram& e, const Binding& b);

// E(d<H>/d theta_j), by differentiating and integrating diagrams. Zero by
// the uniform-integration lemma; returned for verification.
double gradient_mean(const ExpectationDiagram& e, unsigned j);

// The closed, parameter-free variance diagram: two expectation cores with
// the theta_j legs joined by the cycle gadget and every other parameter's
// leg quadruple joined by the two-pair weight-class gadget.
Diagram variance_diagram(const ExpectationDiagram& e, unsigned j, std::size_t term_ket = 0,
                         std::size_t term_bra = 0);

// Var(d<H>/d theta_j) via the variance diagram, expanded bilinearly over
// Hamiltonian terms.
double variance_value(const ExpectationDiagram& e, unsigned j, int max_rank = 26);

struct VarianceReport {
  std::string param;
  double variance = 0.0;
  double mean = 0.0;
  double std_error = 0.0; // of the variance estimate; 0 for the diagram route
  std::string method;     // "diagram" or "monte-carlo"
  long samples = 0;
  double runtime_seconds = 0.0;
};

VarianceReport monte_carlo_variance(const Ansatz& a, const PauliHamiltonian& h, unsigned j,
                                    long samples, std::uint64_t seed, int threads = 0);

// Dense statevector oracle, independent of the diagram machinery.
double dense_expectation(const Ansatz& a, const PauliHamiltonian& h, const Binding& b);
// Parameter-shift derivative on the dense simulator; exact for this gate set.
double dense_gradient(const Ansatz& a, const PauliHamiltonian& h, unsigned j, const Binding& b);

struct Sim9Row {
  unsigned n = 0, j = 0;
  double variance = 0.0, bound = 0.0;
  bool ok = false;
};
struct Sim9Report {
  std::vector<Sim9Row> rows;
  bool cycle_lemmas_ok = false;
  bool all_ok = false;
};

// Builds the Example-5.1 ansatz with H = Z^n, checks every parameter's
// variance against 1/2^{n-2}, and re-verifies the two cycle lemmas on the
// gadget subdiagrams.
Sim9Report sim9_bound_check(unsigned n, int max_rank = 26);

// Variance diagram member with the integration hubs fixed to classical
// values; summing over all 2^m assignments recovers variance_value.
double variance_member(const ExpectationDiagram& e, unsigned j, const std::vector<bool>& bits,
                       std::size_t term_ket = 0, std::size_t term_bra = 0);

// Scalar of the alternating triangle / X-flip transfer line from the
// variance decomposition; bounded by 4 over all bit assignments.
double line_scalar(const std::vector<bool>& bits);

struct LineReport {
  unsigned n_max = 0;
  double max_value = 0.0;
  bool pass = false;
};
// Exhaustively evaluates the line for every x in {0,1}^n, n <= n_max.
LineReport check_line_lemma(unsigned n_max);

}  // namespace zx::bp
