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

// Acceptance suite: one line per criterion, nonzero exit on any failure.
// The CLI determinism criterion shells out to the zx binary; its path comes
// from ZX_CLI_PATH (set by the test harness) or argv[1].

#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "support/gen.hpp"
#include "zxcalc/bp.hpp"
#include "zxcalc/diff.hpp"
#include "zxcalc/integrate.hpp"
#include "zxcalc/json_io.hpp"
#include "zxcalc/rules.hpp"

using namespace zx;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// --- criterion 1: rule soundness -------------------------------------------

void criterion_rule_soundness() {
  Timer timer;
  auto reports = rules::check_catalog(50, 42, 0);
  double worst = 0.0;
  std::string failures;
  for (const auto& r : reports) {
    worst = std::max(worst, r.max_deviation);
    if (!r.pass) failures += " " + r.name;
  }
  double secs = timer.seconds();
  bool pass = failures.empty() && secs <= 60.0;
  report(1, pass,
         "rule soundness: " + std::to_string(reports.size()) + " catalog entries x 50 samples, "
         "max deviation " + fmt(worst) + " (tol 1e-10), " + fmt(secs) + " s" +
         (failures.empty() ? "" : ", failing:" + failures));
}

// --- criterion 2: differentiation vs finite differences ---------------------

void criterion_differentiation() {
  Timer timer;
  Rng rng(42);
  double worst = 0.0;
  std::size_t worst_overhead = 0;
  bool size_ok = true;
  int count = 0;
  while (count < 200) {
    testgen::Options opt;
    opt.wires = 1 + static_cast<unsigned>(rng.below(3));
    opt.depth = 5 + static_cast<unsigned>(rng.below(4));
    opt.params = {"theta", "phi"};
    opt.max_occurrences = 6;
    opt.max_abs_k = 2;
    Diagram d = testgen::random_diagram(rng, opt);
    auto occs = diff::normalize_occurrences(d, "theta").second;
    if (occs.empty()) continue;
    ++count;
    Binding b = testgen::random_binding(d, rng);
    Diagram deriv = diff::differentiate(d, "theta");
    Tensor got = evaluate(deriv, b);
    Tensor want = diff::finite_difference(d, "theta", b, 1e-5);
    worst = std::max(worst, max_abs_diff(got, want));
    std::size_t overhead = deriv.vertex_count() - d.vertex_count();
    worst_overhead = std::max(worst_overhead, (overhead + occs.size() - 1) / occs.size());
    if (overhead > 4 * occs.size()) size_ok = false;
  }
  double secs = timer.seconds();
  bool pass = worst <= 1e-6 && size_ok && secs <= 120.0;
  report(2, pass,
         "differentiation: 200 random diagrams, max |diagram - finite difference| " +
             fmt(worst) + " (tol 1e-6), worst overhead " + std::to_string(worst_overhead) +
             " vertices/occurrence (limit 4), " + fmt(secs) + " s");
}

// --- criterion 3: parameter-shift equivalence -------------------------------

void criterion_parameter_shift() {
  Rng rng(42);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Diagram d = testgen::random_density_pair(rng, "theta", 2);
    Binding b = testgen::random_binding(d, rng);
    b["theta"] = rng.angle();
    Tensor shift = diff::shift_rule_eval(d, "theta", b);
    Tensor via = evaluate(diff::differentiate(d, "theta"), b);
    worst = std::max(worst, max_abs_diff(shift, via));
  }
  report(3, worst <= 1e-10,
         "parameter shift: 100 density pairs, max |shift - differentiate| " + fmt(worst) +
             " (tol 1e-10)");
}

// --- criterion 4: integration gadgets ---------------------------------------

Diagram ambient_with_occurrences(Rng& rng, unsigned plus, unsigned minus, int k) {
  testgen::Options opt;
  opt.wires = 2;
  opt.depth = 4;
  Diagram d = testgen::random_diagram(rng, opt);
  for (unsigned i = 0; i < plus; ++i)
    d = compose_seq(d, compose_par(gbox(phase_label("a", k, rng.angle()), 1, 1), wire()));
  for (unsigned i = 0; i < minus; ++i)
    d = compose_seq(d, compose_par(wire(), gbox(phase_label("a", -k, rng.angle()), 1, 1)));
  return d;
}

void criterion_integration() {
  bool exact_ok = true;
  for (unsigned p = 1; p <= 3; ++p) {
    Tensor g = evaluate(integrate::weight_class_gadget(p));
    for (std::size_t x = 0; x < g.rows(); ++x)
      for (std::size_t y = 0; y < g.cols(); ++y)
        if (g.at(x, y) !=
            Complex(std::popcount(x) == std::popcount(y) ? 1.0 : 0.0))
          exact_ok = false;
  }
  Rng rng(42);
  double worst = 0.0;
  for (unsigned p = 1; p <= 3; ++p) {
    for (int rep = 0; rep < 100; ++rep) {
      int k = 1 + static_cast<int>(rng.below(2));
      unsigned minus = p;
      if (rep % 4 == 1 && p > 1) minus = p - 1; // dummy-balanced asymmetric cases
      if (rep % 4 == 3) minus = p > 1 ? p - 2 + 1 : 0;
      Diagram d = ambient_with_occurrences(rng, p, minus, k);
      Diagram g = integrate::integrate_uniform(d, "a");
      Binding b = testgen::random_binding(g, rng);
      worst = std::max(worst,
                       max_abs_diff(evaluate(g, b),
                                    integrate::quadrature_oracle(d, "a", b, 1024)));
    }
  }
  bool pass = exact_ok && worst <= 1e-8;
  report(4, pass,
         std::string("integration gadgets: expansions ") +
             (exact_ok ? "exact" : "NOT exact") +
             ", 300 random ambient diagrams vs 1024-node quadrature, max deviation " +
             fmt(worst) + " (tol 1e-8)");
}

// --- criterion 5: zero gradient mean ----------------------------------------

void criterion_gradient_mean() {
  double worst = 0.0;
  for (unsigned n = 2; n <= 5; ++n) {
    bp::ExpectationDiagram e =
        bp::expectation_diagram(bp::sim9(n), bp::PauliHamiltonian::all_z(n));
    for (unsigned j = 0; j < n; ++j)
      worst = std::max(worst, std::abs(bp::gradient_mean(e, j)));
  }
  Rng rng(42);
  for (int i = 0; i < 5; ++i) {
    bp::Ansatz a;
    a.n = 2;
    for (int g = 0; g < 3; ++g) {
      std::string name = "p" + std::to_string(g);
      a.params.push_back(name);
      a.gates.push_back({rng.below(2) ? bp::Gate::Kind::RZ : bp::Gate::Kind::RX,
                         static_cast<unsigned>(rng.below(2)), 0, name, 0.0});
      if (rng.below(2)) a.gates.push_back({bp::Gate::Kind::CNOT, 0, 1, "", 0.0});
      else a.gates.push_back({bp::Gate::Kind::H, static_cast<unsigned>(rng.below(2)), 0, "", 0.0});
    }
    bp::ExpectationDiagram e = bp::expectation_diagram(a, bp::PauliHamiltonian::all_z(2));
    for (unsigned j = 0; j < a.params.size(); ++j)
      worst = std::max(worst, std::abs(bp::gradient_mean(e, j)));
  }
  report(5, worst <= 1e-10,
         "zero gradient mean: sim9 n=2..5 and random 2-qubit circuits, max |mean| " +
             fmt(worst) + " (tol 1e-10)");
}

// --- criterion 6: variance route equality -----------------------------------

double nested_quadrature_variance(const bp::Ansatz& a, const bp::PauliHamiltonian& h,
                                  unsigned j, unsigned nodes) {
  std::size_t m = a.params.size(), total = 1;
  for (std::size_t q = 0; q < m; ++q) total *= nodes;
  double acc = 0.0;
  for (std::size_t it = 0; it < total; ++it) {
    std::size_t rem = it;
    Binding b;
    for (std::size_t q = 0; q < m; ++q) {
      b[a.params[q]] = -kPi + 2.0 * kPi * static_cast<double>(rem % nodes) / nodes;
      rem /= nodes;
    }
    double g = bp::dense_gradient(a, h, j, b);
    acc += g * g;
  }
  return acc / static_cast<double>(total);
}

void criterion_variance_routes() {
  Timer timer;
  double worst_quad = 0.0, worst_sigma = 0.0;
  // analytic anchor: 1-qubit RX with H = Z
  bp::Ansatz rx = bp::parse_circuit("qubits 1\nrx 0 t\n");
  bp::ExpectationDiagram erx = bp::expectation_diagram(rx, bp::PauliHamiltonian::all_z(1));
  double anchor = std::abs(bp::variance_value(erx, 0) - 0.5);
  // toys plus sim9 n=2..4, every parameter, vs nested quadrature and MC
  std::vector<std::pair<bp::Ansatz, bp::PauliHamiltonian>> cases;
  cases.push_back({rx, bp::PauliHamiltonian::all_z(1)});
  cases.push_back({bp::parse_circuit("qubits 1\nh 0\nrz 0 t\nh 0\n"),
                   bp::PauliHamiltonian::all_z(1)});
  cases.push_back({bp::parse_circuit("qubits 2\nrx 0 s\ncnot 0 1\nrz 1 t\nh 0\n"),
                   bp::PauliHamiltonian::all_z(2)});
  for (unsigned n = 2; n <= 4; ++n) cases.push_back({bp::sim9(n), bp::PauliHamiltonian::all_z(n)});
  for (const auto& [a, h] : cases) {
    bp::ExpectationDiagram e = bp::expectation_diagram(a, h);
    for (unsigned j = 0; j < a.params.size(); ++j) {
      double var = bp::variance_value(e, j);
      worst_quad = std::max(worst_quad, std::abs(var - nested_quadrature_variance(a, h, j, 8)));
      auto mc = bp::monte_carlo_variance(a, h, j, 100000, 42, 0);
      double sigmas = std::abs(mc.variance - var) / std::max(mc.std_error, 1e-12);
      worst_sigma = std::max(worst_sigma, sigmas);
    }
  }
  double secs = timer.seconds();
  bool pass = anchor <= 1e-9 && worst_quad <= 1e-6 && worst_sigma <= 3.0 && secs <= 600.0;
  report(6, pass,
         "variance routes: anchor |Var - 1/2| = " + fmt(anchor) +
             " (tol 1e-9), max |diagram - nested quadrature| " + fmt(worst_quad) +
             " (tol 1e-6), Monte Carlo within " + fmt(worst_sigma) + " sigma (limit 3), " +
             fmt(secs) + " s");
}

// --- criterion 7: sim9 bound and the line lemma ------------------------------

void criterion_sim9_bound() {
  bool ok = true;
  double worst_margin = -1e9;
  for (unsigned n = 2; n <= 6; ++n) {
    auto rep = bp::sim9_bound_check(n);
    ok = ok && rep.all_ok;
    for (const auto& row : rep.rows)
      worst_margin = std::max(worst_margin, row.variance - row.bound);
  }
  auto line = bp::check_line_lemma(10);
  ok = ok && line.pass;
  report(7, ok,
         "sim9 bound: n=2..6 all parameters within 1/2^{n-2} (worst margin " +
             fmt(worst_margin) + "), line lemma max |value| " + fmt(line.max_value) +
             " <= 4 exhaustively to n=10");
}

// --- criterion 8: CLI determinism -------------------------------------------

std::string run_cmd(const std::string& cmd) {
  std::array<char, 4096> buf;
  std::string out;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  pclose(pipe);
  return out;
}

void criterion_cli_determinism(const std::string& cli) {
  if (cli.empty()) {
    report(8, false, "CLI determinism: zx binary path not provided (ZX_CLI_PATH)");
    return;
  }
  std::string dir = "acceptance_tmp";
  if (std::system(("mkdir -p " + dir).c_str()) != 0) { report(8, false, "CLI determinism: cannot create temp dir"); return; }
  {
    Diagram d = compose_par(gbox(phase_label("theta", 1, 0), 1, 1),
                            gbox(phase_label("theta", -1, 0), 1, 1));
    std::ofstream(dir + "/pair.json") << diagram_to_json(d, 2);
    std::ofstream(dir + "/circuit.txt") << "qubits 2\nh 0\ncz 0 1\nrx 0 a\nrx 1 b\n";
  }
  std::vector<std::string> commands = {
      cli + " eval " + dir + "/pair.json --bind theta=0.3",
      cli + " diff " + dir + "/pair.json --param theta",
      cli + " grad-check " + dir + "/pair.json --param theta --samples 10 --seed 7 --json",
      cli + " integrate " + dir + "/pair.json --param theta",
      cli + " int-check " + dir + "/pair.json --param theta --nodes 64 --samples 5 --seed 7 --json",
      cli + " verify-rules --samples 5 --seed 7 --threads 2 --json",
      cli + " variance " + dir + "/circuit.txt --ham ZZ --mc 2000 --seed 9 --threads 2 --json",
      cli + " bp-scan --ansatz sim9 --n-min 2 --n-max 4",
      cli + " --help",
      cli + " variance --help",
  };
  bool ok = true;
  std::string bad;
  for (const auto& cmd : commands) {
    std::string a = run_cmd(cmd);
    std::string b = run_cmd(cmd);
    if (a.empty() || a != b) {
      ok = false;
      bad += " [" + cmd + "]";
    }
  }
  report(8, ok, ok ? "CLI determinism: " + std::to_string(commands.size()) +
                         " seeded commands byte-identical across runs"
                   : "CLI determinism: mismatch or empty output:" + bad);
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  if (const char* env = std::getenv("ZX_CLI_PATH")) cli = env;
  if (argc > 1) cli = argv[1];

  criterion_rule_soundness();
  criterion_differentiation();
  criterion_parameter_shift();
  criterion_integration();
  criterion_gradient_mean();
  criterion_variance_routes();
  criterion_sim9_bound();
  criterion_cli_determinism(cli);

  if (g_failures == 0) {
    std::printf("acceptance: all 8 criteria PASS\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
