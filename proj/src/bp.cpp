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

#include "zxcalc/bp.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "zxcalc/diff.hpp"
#include "zxcalc/integrate.hpp"
#include "zxcalc/rng.hpp"
#include "zxcalc/rules.hpp"

namespace zx::bp {

namespace {

const Complex kI(0.0, 1.0);

void validate(const Ansatz& a) {
  std::set<std::string> seen;
  for (const Gate& g : a.gates) {
    unsigned top = std::max(g.q1, g.kind == Gate::Kind::CNOT || g.kind == Gate::Kind::CZ ? g.q2 : g.q1);
    if (top >= a.n) fail(ErrorKind::InvalidDiagram, "qubit index out of range");
    if ((g.kind == Gate::Kind::CNOT || g.kind == Gate::Kind::CZ) && g.q1 == g.q2)
      fail(ErrorKind::InvalidDiagram, "two-qubit gate needs distinct qubits");
    if (!g.param.empty() && !seen.insert(g.param).second)
      fail(ErrorKind::InvalidDiagram, "parameter '" + g.param + "' appears more than once");
  }
}

}  // namespace

Ansatz parse_circuit(const std::string& text) {
  Ansatz a;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    auto bad = [&](const std::string& why) {
      fail(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": " + why);
    };
    if (!have_header) {
      if (word != "qubits") bad("expected 'qubits n' header");
      if (!(ls >> a.n) || a.n == 0) bad("bad qubit count");
      have_header = true;
      continue;
    }
    Gate g;
    auto read_q = [&](unsigned& q) {
      long v = -1;
      if (!(ls >> v) || v < 0 || v >= static_cast<long>(a.n)) bad("bad qubit index");
      q = static_cast<unsigned>(v);
    };
    if (word == "rz" || word == "rx") {
      g.kind = word == "rz" ? Gate::Kind::RZ : Gate::Kind::RX;
      read_q(g.q1);
      std::string arg;
      if (!(ls >> arg)) bad("rotation needs a parameter name or angle");
      char* end = nullptr;
      double v = std::strtod(arg.c_str(), &end);
      if (end && *end == '\0') {
        g.angle = v; // fixed rotation
      } else {
        g.param = arg;
        if (std::find(a.params.begin(), a.params.end(), arg) == a.params.end())
          a.params.push_back(arg);
      }
    } else if (word == "cnot") {
      g.kind = Gate::Kind::CNOT;
      read_q(g.q1);
      read_q(g.q2);
    } else if (word == "cz") {
      g.kind = Gate::Kind::CZ;
      read_q(g.q1);
      read_q(g.q2);
    } else if (word == "h") {
      g.kind = Gate::Kind::H;
      read_q(g.q1);
    } else {
      bad("unknown gate '" + word + "'");
    }
    a.gates.push_back(std::move(g));
  }
  if (!have_header) fail(ErrorKind::ParseError, "missing 'qubits n' header");
  validate(a);
  return a;
}

Ansatz sim9(unsigned n) {
  if (n < 1) fail(ErrorKind::InvalidDiagram, "sim9 needs at least one qubit");
  Ansatz a;
  a.n = n;
  for (unsigned q = 0; q < n; ++q) a.gates.push_back({Gate::Kind::H, q, 0, "", 0.0});
  for (unsigned q = 0; q + 1 < n; ++q) a.gates.push_back({Gate::Kind::CZ, q, q + 1, "", 0.0});
  for (unsigned q = 0; q < n; ++q) {
    std::string name = "theta" + std::to_string(q);
    a.gates.push_back({Gate::Kind::RX, q, 0, name, 0.0});
    a.params.push_back(name);
  }
  validate(a);
  return a;
}

PauliHamiltonian PauliHamiltonian::all_z(unsigned n) {
  return {{PauliTerm{1.0, std::string(n, 'Z')}}};
}

PauliHamiltonian PauliHamiltonian::parse(const std::string& text, unsigned n) {
  PauliHamiltonian h;
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) fail(ErrorKind::ParseError, "empty Hamiltonian");
  std::size_t pos = 0;
  while (pos < t.size()) {
    double sign = 1.0;
    if (t[pos] == '+') ++pos;
    else if (t[pos] == '-') { sign = -1.0; ++pos; }
    std::size_t next = pos;
    while (next < t.size() && t[next] != '+' && t[next] != '-') ++next;
    std::string term = t.substr(pos, next - pos);
    pos = next;
    double w = sign;
    auto star = term.find('*');
    if (star != std::string::npos) {
      try {
        w = sign * std::stod(term.substr(0, star));
      } catch (const std::exception&) {
        fail(ErrorKind::ParseError, "bad weight in '" + term + "'");
      }
      term = term.substr(star + 1);
    }
    if (term.size() != n)
      fail(ErrorKind::ParseError, "Pauli string '" + term + "' is not " + std::to_string(n) +
                                      " characters");
    for (char c : term)
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
        fail(ErrorKind::ParseError, "Pauli letters are I, X, Y, Z");
    h.terms.push_back({w, term});
  }
  return h;
}

// ---------------------------------------------------------------------------
// Diagram construction
// ---------------------------------------------------------------------------

namespace {

// frontier-style builder shared by the unitary and expectation diagrams
struct Wiring {
  Diagram* d;
  std::vector<Port> front;

  void pass1(unsigned q, const VertexKind& kind) {
    VertexId v = d->add_generator(kind);
    d->connect(front[q], Port::leg(v, 0));
    front[q] = Port::leg(v, 1);
  }

  void gate(const Gate& g, bool dagger_side, Port* stub_out) {
    switch (g.kind) {
      case Gate::Kind::RZ:
      case Gate::Kind::RX: {
        bool rx = g.kind == Gate::Kind::RX;
        if (rx) pass1(g.q1, Hadamard{});
        if (g.param.empty()) {
          double ang = dagger_side ? -g.angle : g.angle;
          pass1(g.q1, GreenBox{const_label(std::polar(1.0, ang)), 1, 1});
        } else if (stub_out) {
          // dragged-out form: identity spider with the label leg exposed
          VertexId v = d->add_generator(GreenBox{const_label(1.0), 1, 2});
          d->connect(front[g.q1], Port::leg(v, 0));
          front[g.q1] = Port::leg(v, 1);
          *stub_out = Port::leg(v, 2);
        } else {
          pass1(g.q1, GreenBox{phase_label(g.param, dagger_side ? -1 : 1, 0.0), 1, 1});
        }
        if (rx) pass1(g.q1, Hadamard{});
        break;
      }
      case Gate::Kind::H:
        pass1(g.q1, Hadamard{});
        break;
      case Gate::Kind::CNOT: {
        VertexId c = d->add_generator(GreenBox{const_label(1.0), 1, 2});
        VertexId t = d->add_generator(PinkSpider{false, 2, 1});
        d->connect(front[g.q1], Port::leg(c, 0));
        d->connect(front[g.q2], Port::leg(t, 0));
        d->connect(Port::leg(c, 2), Port::leg(t, 1));
        front[g.q1] = Port::leg(c, 1);
        front[g.q2] = Port::leg(t, 2);
        break;
      }
      case Gate::Kind::CZ: {
        VertexId x = d->add_generator(GreenBox{const_label(1.0), 1, 2});
        VertexId y = d->add_generator(GreenBox{const_label(1.0), 1, 2});
        VertexId h = d->add_generator(Hadamard{});
        d->connect(front[g.q1], Port::leg(x, 0));
        d->connect(front[g.q2], Port::leg(y, 0));
        d->connect(Port::leg(x, 2), Port::leg(h, 0));
        d->connect(Port::leg(h, 1), Port::leg(y, 2));
        d->add_scalar_sqrt2(1);
        front[g.q1] = Port::leg(x, 1);
        front[g.q2] = Port::leg(y, 1);
        break;
      }
    }
  }
};

}  // namespace

Diagram ansatz_to_diagram(const Ansatz& a) {
  validate(a);
  Diagram d = Diagram::open(a.n, a.n);
  Wiring w{&d, {}};
  for (unsigned q = 0; q < a.n; ++q) w.front.push_back(Port::in(q));
  for (const Gate& g : a.gates) w.gate(g, false, nullptr);
  for (unsigned q = 0; q < a.n; ++q) d.mark_output(w.front[q], q);
  d.finalize();
  return d;
}

std::pair<unsigned, unsigned> ExpectationDiagram::leg_index(const std::string& param) const {
  for (unsigned j = 0; j < params.size(); ++j)
    if (params[j] == param) return {2 * j, 2 * j + 1};
  fail(ErrorKind::UnboundParameter, param);
}

ExpectationDiagram expectation_diagram(const Ansatz& a, const PauliHamiltonian& h) {
  validate(a);
  ExpectationDiagram e;
  e.params = a.params;
  unsigned m = static_cast<unsigned>(a.params.size());
  for (const PauliTerm& term : h.terms) {
    if (term.ops.size() != a.n)
      fail(ErrorKind::ArityMismatch, "Pauli string length differs from the qubit count");
    Diagram d = Diagram::open(0, 2 * m);
    Wiring w{&d, {}};
    std::map<std::string, Port> ket_stub, bra_stub;
    for (unsigned q = 0; q < a.n; ++q) {
      VertexId z = d.add_generator(PinkSpider{false, 0, 1});
      w.front.push_back(Port::leg(z, 0));
    }
    for (const Gate& g : a.gates) {
      Port stub;
      w.gate(g, false, &stub);
      if (!g.param.empty()) ket_stub[g.param] = stub;
    }
    for (unsigned q = 0; q < a.n; ++q) {
      switch (term.ops[q]) {
        case 'I': break;
        case 'Z': w.pass1(q, GreenBox{const_label(-1.0), 1, 1}); break;
        case 'X': w.pass1(q, PinkSpider{true, 1, 1}); break;
        case 'Y': {
          // Y = i X Z
          w.pass1(q, GreenBox{const_label(-1.0), 1, 1});
          w.pass1(q, PinkSpider{true, 1, 1});
          VertexId ib = d.add_generator(GreenBox{const_label(kI), 0, 1});
          VertexId ie = d.add_generator(PinkSpider{true, 1, 0});
          d.connect(Port::leg(ib, 0), Port::leg(ie, 0));
          break;
        }
      }
    }
    for (auto it = a.gates.rbegin(); it != a.gates.rend(); ++it) {
      Port stub;
      w.gate(*it, true, &stub);
      if (!it->param.empty()) bra_stub[it->param] = stub;
    }
    for (unsigned q = 0; q < a.n; ++q) {
      VertexId z = d.add_generator(PinkSpider{false, 1, 0});
      d.connect(w.front[q], Port::leg(z, 0));
    }
    for (unsigned j = 0; j < m; ++j) {
      d.mark_output(ket_stub.at(a.params[j]), 2 * j);
      d.mark_output(bra_stub.at(a.params[j]), 2 * j + 1);
    }
    d.finalize();
    e.cores.push_back({std::move(d), term.weight});
  }
  return e;
}

Diagram close_core(const ExpectationDiagram& e, std::size_t term, const Binding&) {
  const Diagram& core = e.cores.at(term).diagram;
  unsigned m = static_cast<unsigned>(e.params.size());
  Diagram boxes = Diagram::open(2 * m, 0);
  for (unsigned j = 0; j < m; ++j) {
    VertexId plus = boxes.add_generator(GreenBox{phase_label(e.params[j], 1, 0.0), 1, 0});
    VertexId minus = boxes.add_generator(GreenBox{phase_label(e.params[j], -1, 0.0), 1, 0});
    boxes.mark_input(Port::leg(plus, 0), 2 * j);
    boxes.mark_input(Port::leg(minus, 0), 2 * j + 1);
  }
  boxes.finalize();
  return compose_seq(core, boxes);
}

double expectation_value(const ExpectationDiagram& e, const Binding& b) {
  double total = 0.0;
  for (std::size_t t = 0; t < e.cores.size(); ++t) {
    Complex v = evaluate(close_core(e, t), b).at(0, 0);
    total += e.cores[t].weight * v.real();
  }
  return total;
}

double gradient_mean(const ExpectationDiagram& e, unsigned j) {
  if (j >= e.params.size()) fail(ErrorKind::InvalidDiagram, "parameter index out of range");
  double total = 0.0;
  for (std::size_t t = 0; t < e.cores.size(); ++t) {
    Diagram d = diff::differentiate(close_core(e, t), e.params[j]);
    for (const std::string& p : e.params) d = integrate::integrate_uniform(d, p);
    total += e.cores[t].weight * evaluate(d).at(0, 0).real();
  }
  return total;
}

namespace {

// copies a closed core into `d`, returning the gadget attachment point of
// each boundary leg
std::vector<Port> copy_core(Diagram& d, const Diagram& core) {
  std::map<VertexId, VertexId> vmap;
  for (const auto& [id, kind] : core.vertices()) vmap[id] = d.add_generator(kind);
  std::vector<Port> legs(core.n_outputs());
  for (const Edge& e : core.edges()) {
    bool a_out = e.a.kind == Port::Kind::Out;
    bool b_out = e.b.kind == Port::Kind::Out;
    auto map_port = [&](Port p) {
      p.vertex = vmap.at(p.vertex);
      return p;
    };
    if (a_out || b_out) {
      const Port& slot = a_out ? e.a : e.b;
      const Port& peer = a_out ? e.b : e.a;
      legs[slot.index] = map_port(peer);
      continue;
    }
    d.connect(map_port(e.a), map_port(e.b));
  }
  d.add_scalar_sqrt2(core.scalar_log());
  return legs;
}

void emit_fixed_cycle(Diagram& d, const std::vector<Port>& legs, bool x) {
  const bool pattern[4] = {x, !x, !x, x};
  for (unsigned i = 0; i < 4; ++i) {
    VertexId s = d.add_generator(PinkSpider{pattern[i], 0, 1});
    d.connect(Port::leg(s, 0), legs[i]);
  }
}

void emit_fixed_weight(Diagram& d, const std::vector<Port>& kets, const std::vector<Port>& bras,
                       bool c) {
  VertexId wk = d.add_generator(WSpider{3});
  VertexId wb = d.add_generator(WSpider{3});
  d.connect(Port::leg(wk, 0), Port::leg(wb, 0));
  std::vector<Port> outer(6);
  for (unsigned i = 0; i < 6; ++i) {
    VertexId xg = d.add_generator(PinkSpider{false, 2, 1});
    VertexId ctrl = d.add_generator(PinkSpider{c, 0, 1});
    VertexId w = i < 3 ? wk : wb;
    d.connect(Port::leg(w, 1 + (i % 3)), Port::leg(xg, 0));
    d.connect(Port::leg(ctrl, 0), Port::leg(xg, 1));
    outer[i] = Port::leg(xg, 2);
  }
  for (unsigned i = 0; i < 2; ++i) {
    d.connect(outer[i], kets[i]);
    d.connect(outer[3 + i], bras[i]);
  }
  d.connect(outer[2], outer[5]);
  d.add_scalar_sqrt2(-2);
}

Diagram build_variance(const ExpectationDiagram& e, unsigned j, std::size_t term_ket,
                       std::size_t term_bra, const std::vector<bool>* bits) {
  if (j >= e.params.size()) fail(ErrorKind::InvalidDiagram, "parameter index out of range");
  Diagram d = Diagram::open(0, 0);
  std::vector<Port> legs1 = copy_core(d, e.cores.at(term_ket).diagram);
  std::vector<Port> legs2 = copy_core(d, e.cores.at(term_bra).diagram);
  for (unsigned i = 0; i < e.params.size(); ++i) {
    Port p1 = legs1[2 * i], m1 = legs1[2 * i + 1];
    Port p2 = legs2[2 * i], m2 = legs2[2 * i + 1];
    if (i == j) {
      if (bits)
        emit_fixed_cycle(d, {p1, m1, p2, m2}, (*bits)[i]);
      else
        integrate::emit_cycle_gadget(d, {p1, m1, p2, m2});
    } else {
      if (bits)
        emit_fixed_weight(d, {p1, p2}, {m1, m2}, (*bits)[i]);
      else
        integrate::emit_weight_class_gadget(d, {p1, p2}, {m1, m2});
    }
  }
  d.finalize();
  return d;
}

}  // namespace

Diagram variance_diagram(const ExpectationDiagram& e, unsigned j, std::size_t term_ket,
                         std::size_t term_bra) {
  return build_variance(e, j, term_ket, term_bra, nullptr);
}

double variance_value(const ExpectationDiagram& e, unsigned j, int max_rank) {
  double total = 0.0;
  EvalOptions opts;
  opts.max_rank = max_rank;
  for (std::size_t s = 0; s < e.cores.size(); ++s)
    for (std::size_t t = 0; t < e.cores.size(); ++t) {
      double w = e.cores[s].weight * e.cores[t].weight;
      total += w * evaluate(build_variance(e, j, s, t, nullptr), {}, opts).at(0, 0).real();
    }
  return total;
}

double variance_member(const ExpectationDiagram& e, unsigned j, const std::vector<bool>& bits,
                       std::size_t term_ket, std::size_t term_bra) {
  if (bits.size() != e.params.size())
    fail(ErrorKind::ArityMismatch, "one bit per parameter");
  return evaluate(build_variance(e, j, term_ket, term_bra, &bits)).at(0, 0).real();
}

// ---------------------------------------------------------------------------
// Dense statevector oracle
// ---------------------------------------------------------------------------

namespace {

struct StateVec {
  unsigned n;
  std::vector<Complex> v;

  explicit StateVec(unsigned qubits) : n(qubits), v(std::size_t(1) << qubits, Complex(0.0)) {
    v[0] = 1.0;
  }

  unsigned shift(unsigned q) const { return n - 1 - q; }

  void apply1(unsigned q, const Complex m[2][2]) {
    std::size_t bit = std::size_t(1) << shift(q);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i & bit) continue;
      Complex a = v[i], b = v[i | bit];
      v[i] = m[0][0] * a + m[0][1] * b;
      v[i | bit] = m[1][0] * a + m[1][1] * b;
    }
  }

  void cnot(unsigned c, unsigned t) {
    std::size_t cb = std::size_t(1) << shift(c), tb = std::size_t(1) << shift(t);
    for (std::size_t i = 0; i < v.size(); ++i)
      if ((i & cb) && !(i & tb)) std::swap(v[i], v[i | tb]);
  }

  void cz(unsigned a, unsigned b) {
    std::size_t ab = std::size_t(1) << shift(a), bb = std::size_t(1) << shift(b);
    for (std::size_t i = 0; i < v.size(); ++i)
      if ((i & ab) && (i & bb)) v[i] = -v[i];
  }

  void run(const Ansatz& a, const Binding& bind) {
    for (const Gate& g : a.gates) {
      switch (g.kind) {
        case Gate::Kind::RZ: {
          double t = g.param.empty() ? g.angle : bind.at(g.param);
          const Complex m[2][2] = {{1.0, 0.0}, {0.0, std::polar(1.0, t)}};
          apply1(g.q1, m);
          break;
        }
        case Gate::Kind::RX: {
          double t = g.param.empty() ? g.angle : bind.at(g.param);
          Complex ph = std::polar(1.0, t / 2.0);
          Complex c = ph * std::cos(t / 2.0), s = ph * Complex(0, -1) * std::sin(t / 2.0);
          const Complex m[2][2] = {{c, s}, {s, c}};
          apply1(g.q1, m);
          break;
        }
        case Gate::Kind::H: {
          const double r = 0.70710678118654752440;
          const Complex m[2][2] = {{r, r}, {r, -r}};
          apply1(g.q1, m);
          break;
        }
        case Gate::Kind::CNOT: cnot(g.q1, g.q2); break;
        case Gate::Kind::CZ: cz(g.q1, g.q2); break;
      }
    }
  }

  double pauli_expectation(const PauliHamiltonian& h) const {
    double total = 0.0;
    for (const PauliTerm& term : h.terms) {
      std::vector<Complex> w = v;
      Complex phase(1.0);
      // apply the string, then take the inner product
      for (unsigned q = 0; q < n; ++q) {
        std::size_t bit = std::size_t(1) << shift(q);
        switch (term.ops[q]) {
          case 'I': break;
          case 'Z':
            for (std::size_t i = 0; i < w.size(); ++i)
              if (i & bit) w[i] = -w[i];
            break;
          case 'X':
            for (std::size_t i = 0; i < w.size(); ++i)
              if (!(i & bit)) std::swap(w[i], w[i | bit]);
            break;
          case 'Y':
            for (std::size_t i = 0; i < w.size(); ++i)
              if (!(i & bit)) {
                Complex a = w[i], b = w[i | bit];
                w[i] = Complex(0, -1) * b;
                w[i | bit] = Complex(0, 1) * a;
              }
            break;
        }
      }
      (void)phase;
      Complex acc(0.0);
      for (std::size_t i = 0; i < v.size(); ++i) acc += std::conj(v[i]) * w[i];
      total += term.weight * acc.real();
    }
    return total;
  }
};

}  // namespace

double dense_expectation(const Ansatz& a, const PauliHamiltonian& h, const Binding& b) {
  StateVec s(a.n);
  s.run(a, b);
  return s.pauli_expectation(h);
}

double dense_gradient(const Ansatz& a, const PauliHamiltonian& h, unsigned j, const Binding& b) {
  if (j >= a.params.size()) fail(ErrorKind::InvalidDiagram, "parameter index out of range");
  Binding hi = b, lo = b;
  hi[a.params[j]] += kPi / 2.0;
  lo[a.params[j]] -= kPi / 2.0;
  return (dense_expectation(a, h, hi) - dense_expectation(a, h, lo)) / 2.0;
}

VarianceReport monte_carlo_variance(const Ansatz& a, const PauliHamiltonian& h, unsigned j,
                                    long samples, std::uint64_t seed, int threads) {
  if (samples < 100) fail(ErrorKind::InvalidDiagram, "monte carlo needs at least 100 samples");
  auto start = std::chrono::steady_clock::now();
  std::vector<double> grads(static_cast<std::size_t>(samples));
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, threads);
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long i = next.fetch_add(1); i < samples; i = next.fetch_add(1)) {
      Rng rng(Rng::mix(seed, static_cast<std::uint64_t>(i)));
      Binding b;
      for (const std::string& p : a.params) b[p] = rng.angle();
      grads[static_cast<std::size_t>(i)] = dense_gradient(a, h, j, b);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  double mean = 0.0;
  for (double g : grads) mean += g;
  mean /= static_cast<double>(samples);
  double var = 0.0, m4 = 0.0;
  for (double g : grads) {
    double dev = g - mean;
    var += dev * dev;
    m4 += dev * dev * dev * dev;
  }
  var /= static_cast<double>(samples - 1);
  m4 /= static_cast<double>(samples);
  double se = std::sqrt(std::max(0.0, m4 - var * var) / static_cast<double>(samples));
  auto stop = std::chrono::steady_clock::now();
  VarianceReport r;
  r.param = a.params.at(j);
  r.variance = var;
  r.mean = mean;
  r.std_error = se;
  r.method = "monte-carlo";
  r.samples = samples;
  r.runtime_seconds = std::chrono::duration<double>(stop - start).count();
  return r;
}

Sim9Report sim9_bound_check(unsigned n, int max_rank) {
  if (n < 2) fail(ErrorKind::InvalidDiagram, "the bound check needs n >= 2");
  Sim9Report report;
  Ansatz a = sim9(n);
  ExpectationDiagram e = expectation_diagram(a, PauliHamiltonian::all_z(n));
  double bound = std::ldexp(1.0, 2 - static_cast<int>(n));
  report.all_ok = true;
  for (unsigned j = 0; j < n; ++j) {
    Sim9Row row;
    row.n = n;
    row.j = j;
    row.variance = variance_value(e, j, max_rank);
    row.bound = bound;
    row.ok = row.variance <= bound + 1e-9;
    report.all_ok = report.all_ok && row.ok;
    report.rows.push_back(row);
  }
  report.cycle_lemmas_ok = true;
  for (const auto& r : rules::catalog()) {
    if (r.name == "cycle-1" || r.name == "cycle-2") {
      auto rep = rules::check_rule(r, 1, 7);
      report.cycle_lemmas_ok = report.cycle_lemmas_ok && rep.pass;
    }
  }
  report.all_ok = report.all_ok && report.cycle_lemmas_ok;
  return report;
}

// ---------------------------------------------------------------------------
// The appendix transfer line
// ---------------------------------------------------------------------------

double line_scalar(const std::vector<bool>& bits) {
  // The transfer line read off the variance decomposition: a chain of
  // spiders linked by Hadamard wires, each site plugged with an X-basis
  // flip given by its bit. Scaled by 4 it takes the values 4 and 0 on one
  // site, 2 on two sites, and never exceeds 4.
  std::size_t n = bits.size();
  if (n == 0) fail(ErrorKind::InvalidDiagram, "the line needs at least one site");
  Diagram d = Diagram::open(0, 0);
  std::vector<VertexId> site(n);
  for (std::size_t q = 0; q < n; ++q) {
    unsigned legs = 1 + (q > 0) + (q + 1 < n);
    site[q] = d.add_generator(GreenBox{const_label(1.0), 0, legs});
    VertexId h = d.add_generator(Hadamard{});
    VertexId plug = d.add_generator(PinkSpider{bits[q], 1, 0});
    d.connect(Port::leg(site[q], 0), Port::leg(h, 0));
    d.connect(Port::leg(h, 1), Port::leg(plug, 0));
  }
  for (std::size_t q = 0; q + 1 < n; ++q) {
    VertexId h = d.add_generator(Hadamard{});
    d.connect(Port::leg(site[q], q > 0 ? 2 : 1), Port::leg(h, 0));
    d.connect(Port::leg(h, 1), Port::leg(site[q + 1], 1));
  }
  // the overall 4, n plus-state halvings, and one sqrt2 per neighbour link
  d.add_scalar_sqrt2(3);
  d.finalize();
  Complex v = evaluate(d).at(0, 0);
  return v.real();
}

LineReport check_line_lemma(unsigned n_max) {
  LineReport r;
  r.n_max = n_max;
  r.pass = true;
  for (unsigned n = 1; n <= n_max; ++n) {
    for (std::uint64_t x = 0; x < (std::uint64_t(1) << n); ++x) {
      std::vector<bool> bits(n);
      for (unsigned i = 0; i < n; ++i) bits[i] = (x >> i) & 1;
      double v = line_scalar(bits);
      r.max_value = std::max(r.max_value, std::abs(v));
      if (std::abs(v) > 4.0 + 1e-9) r.pass = false;
    }
  }
  return r;
}

}  // namespace zx::bp
