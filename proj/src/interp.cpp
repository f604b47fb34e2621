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

#include "zxcalc/interp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "zxcalc/funcreg.hpp"

namespace zx {

Complex label_value(const Label& label, const Binding& b) {
  if (const auto* c = std::get_if<ConstLabel>(&label)) return c->value;
  if (const auto* p = std::get_if<PhaseLabel>(&label)) {
    auto it = b.find(p->param);
    if (it == b.end()) fail(ErrorKind::UnboundParameter, p->param);
    return std::polar(1.0, p->k * it->second + p->c);
  }
  const auto& fn = std::get<FuncLabel>(label);
  auto it = b.find(fn.param);
  if (it == b.end()) fail(ErrorKind::UnboundParameter, fn.param);
  return FuncRegistry::instance().get(fn.handle).f(it->second);
}

Complex label_derivative(const Label& label, const Binding& b) {
  if (std::holds_alternative<ConstLabel>(label)) return Complex(0.0);
  if (const auto* p = std::get_if<PhaseLabel>(&label)) {
    auto it = b.find(p->param);
    if (it == b.end()) fail(ErrorKind::UnboundParameter, p->param);
    return Complex(0.0, double(p->k)) * std::polar(1.0, p->k * it->second + p->c);
  }
  const auto& fn = std::get<FuncLabel>(label);
  auto it = b.find(fn.param);
  if (it == b.end()) fail(ErrorKind::UnboundParameter, fn.param);
  return FuncRegistry::instance().get(fn.handle).df(it->second);
}

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Complex vertex_entry(const VertexKind& kind, unsigned bits, unsigned legs, const Binding& b) {
  return std::visit(
      [&](const auto& k) -> Complex {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, GreenBox>) {
          // a floating box carries the bare scalar
          if (legs == 0) return label_value(k.label, b);
          if (bits == 0) return Complex(1.0);
          if (bits == (1u << legs) - 1u) return label_value(k.label, b);
          return Complex(0.0);
        } else if constexpr (std::is_same_v<T, PinkSpider>) {
          bool odd = std::popcount(bits) % 2 == 1;
          return odd == k.pi ? Complex(1.0) : Complex(0.0);
        } else if constexpr (std::is_same_v<T, Hadamard>) {
          return Complex(bits == 3u ? -kInvSqrt2 : kInvSqrt2);
        } else if constexpr (std::is_same_v<T, Triangle>) {
          // leg1 -> leg0 reads [[1,1],[0,1]]
          unsigned l0 = bits & 1u, l1 = (bits >> 1) & 1u;
          return Complex((l0 == 1 && l1 == 0) ? 0.0 : 1.0);
        } else if constexpr (std::is_same_v<T, TriangleInverse>) {
          unsigned l0 = bits & 1u, l1 = (bits >> 1) & 1u;
          if (l0 == 1 && l1 == 0) return Complex(0.0);
          if (l0 == 0 && l1 == 1) return Complex(-1.0);
          return Complex(1.0);
        } else {
          static_assert(std::is_same_v<T, WSpider>);
          unsigned head = bits & 1u;
          unsigned arms = bits >> 1;
          if (head == 0) return Complex(arms == 0 ? 1.0 : 0.0);
          return Complex(std::popcount(arms) == 1 ? 1.0 : 0.0);
        }
      },
      kind);
}

struct Node {
  VertexId id;             // smallest vertex id in the cluster
  std::vector<int> wires;  // open wires, ascending; bit p of the index is wires[p]
  std::vector<Complex> data;
};

Node build_vertex_node(VertexId v, const VertexKind& kind, const std::vector<int>& leg_wires,
                       const Binding& b, int max_rank) {
  unsigned legs = static_cast<unsigned>(leg_wires.size());
  if (static_cast<int>(legs) > max_rank)
    fail(ErrorKind::RankOverflow, "vertex " + std::to_string(v) + " exceeds the wire limit");
  // wires appearing twice are self-loops and get traced here
  std::vector<int> ext;
  for (int w : leg_wires)
    if (std::count(leg_wires.begin(), leg_wires.end(), w) == 1) ext.push_back(w);
  std::sort(ext.begin(), ext.end());
  Node node{v, ext, std::vector<Complex>(std::size_t(1) << ext.size(), Complex(0.0))};
  for (unsigned bits = 0; bits < (1u << legs); ++bits) {
    // legs on a shared wire must agree
    bool ok = true;
    for (unsigned i = 0; i < legs && ok; ++i)
      for (unsigned j = i + 1; j < legs && ok; ++j)
        if (leg_wires[i] == leg_wires[j] && ((bits >> i) & 1u) != ((bits >> j) & 1u)) ok = false;
    if (!ok) continue;
    Complex val = vertex_entry(kind, bits, legs, b);
    if (val == Complex(0.0)) continue;
    std::size_t idx = 0;
    for (std::size_t p = 0; p < ext.size(); ++p) {
      unsigned leg = 0;
      while (leg_wires[leg] != ext[p]) ++leg;
      idx |= std::size_t((bits >> leg) & 1u) << p;
    }
    node.data[idx] += val;
  }
  return node;
}

Node contract_pair(const Node& a, const Node& b, int max_rank) {
  std::vector<int> shared, result;
  std::set_intersection(a.wires.begin(), a.wires.end(), b.wires.begin(), b.wires.end(),
                        std::back_inserter(shared));
  std::set_union(a.wires.begin(), a.wires.end(), b.wires.begin(), b.wires.end(),
                 std::back_inserter(result));
  result.erase(std::remove_if(result.begin(), result.end(),
                              [&](int w) {
                                return std::binary_search(shared.begin(), shared.end(), w);
                              }),
               result.end());
  if (static_cast<int>(result.size() + shared.size()) > max_rank)
    fail(ErrorKind::RankOverflow, "contraction exceeds the wire limit (" +
                                      std::to_string(result.size() + shared.size()) + " wires)");

  auto positions = [](const std::vector<int>& wires, const std::vector<int>& result,
                      const std::vector<int>& shared) {
    // bit position of each node wire in (result ++ shared) space
    std::vector<int> pos(wires.size());
    for (std::size_t i = 0; i < wires.size(); ++i) {
      auto rit = std::lower_bound(result.begin(), result.end(), wires[i]);
      if (rit != result.end() && *rit == wires[i]) {
        pos[i] = static_cast<int>(rit - result.begin());
      } else {
        auto sit = std::lower_bound(shared.begin(), shared.end(), wires[i]);
        pos[i] = static_cast<int>(result.size() + (sit - shared.begin()));
      }
    }
    return pos;
  };
  std::vector<int> apos = positions(a.wires, result, shared);
  std::vector<int> bpos = positions(b.wires, result, shared);

  Node out{std::min(a.id, b.id), result,
           std::vector<Complex>(std::size_t(1) << result.size(), Complex(0.0))};
  std::size_t total_bits = result.size() + shared.size();
  for (std::size_t full = 0; full < (std::size_t(1) << total_bits); ++full) {
    std::size_t ai = 0, bi = 0;
    for (std::size_t i = 0; i < apos.size(); ++i) ai |= ((full >> apos[i]) & 1u) << i;
    for (std::size_t i = 0; i < bpos.size(); ++i) bi |= ((full >> bpos[i]) & 1u) << i;
    Complex va = a.data[ai];
    if (va == Complex(0.0)) continue;
    Complex vb = b.data[bi];
    if (vb == Complex(0.0)) continue;
    out.data[full & ((std::size_t(1) << result.size()) - 1)] += va * vb;
  }
  return out;
}

struct Engine {
  std::vector<Node> nodes;
  ContractionPlan plan;
  std::set<int> boundary_wires;

  int cut_rank(const std::vector<int>& wires) const {
    int c = 0;
    for (int w : wires)
      if (!boundary_wires.count(w)) ++c;
    return c;
  }

  void record(const Node& n) {
    plan.max_wires = std::max(plan.max_wires, static_cast<int>(n.wires.size()));
    plan.max_cut = std::max(plan.max_cut, cut_rank(n.wires));
  }

  void run(int max_rank, bool reverse_ties) {
    while (nodes.size() > 1) {
      std::size_t bi = 0, bj = 1;
      int best = -1;
      for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
          std::vector<int> shared;
          std::set_intersection(nodes[i].wires.begin(), nodes[i].wires.end(),
                                nodes[j].wires.begin(), nodes[j].wires.end(),
                                std::back_inserter(shared));
          int rank = static_cast<int>(nodes[i].wires.size() + nodes[j].wires.size() -
                                      2 * shared.size());
          bool better = best < 0 || rank < best;
          if (!better && rank == best) {
            auto key = std::minmax(nodes[i].id, nodes[j].id);
            auto cur = std::minmax(nodes[bi].id, nodes[bj].id);
            better = reverse_ties ? key > cur : key < cur;
          }
          if (better) {
            best = rank;
            bi = i;
            bj = j;
          }
        }
      plan.steps.push_back({std::min(nodes[bi].id, nodes[bj].id),
                            std::max(nodes[bi].id, nodes[bj].id)});
      Node merged = contract_pair(nodes[bi], nodes[bj], max_rank);
      record(merged);
      nodes.erase(nodes.begin() + bj);
      nodes[bi] = std::move(merged);
    }
  }
};

Engine make_engine(const Diagram& d, const Binding& b, int max_rank, bool data) {
  if (!d.finalized()) fail(ErrorKind::NotFinalized, "evaluate requires a finalized diagram");
  Engine eng;
  // wire w = index of edge w
  const auto& edges = d.edges();
  for (std::size_t w = 0; w < edges.size(); ++w) {
    if (edges[w].a.kind != Port::Kind::Vertex || edges[w].b.kind != Port::Kind::Vertex)
      eng.boundary_wires.insert(static_cast<int>(w));
  }
  for (const auto& [v, kind] : d.vertices()) {
    unsigned legs = leg_count(kind);
    std::vector<int> leg_wires(legs, -1);
    for (std::size_t w = 0; w < edges.size(); ++w) {
      if (edges[w].a.kind == Port::Kind::Vertex && edges[w].a.vertex == v)
        leg_wires[edges[w].a.index] = static_cast<int>(w);
      if (edges[w].b.kind == Port::Kind::Vertex && edges[w].b.vertex == v)
        leg_wires[edges[w].b.index] = static_cast<int>(w);
    }
    if (data) {
      eng.nodes.push_back(build_vertex_node(v, kind, leg_wires, b, max_rank));
    } else {
      std::vector<int> ext;
      for (int w : leg_wires)
        if (std::count(leg_wires.begin(), leg_wires.end(), w) == 1) ext.push_back(w);
      std::sort(ext.begin(), ext.end());
      eng.nodes.push_back(Node{v, ext, {}});
    }
  }
  return eng;
}

double sqrt2_power(std::int64_t s) {
  bool odd = (s % 2) != 0;
  std::int64_t half = (s - (odd ? (s > 0 ? 1 : -1) : 0)) / 2;
  double r = std::ldexp(1.0, static_cast<int>(half));
  if (odd) r *= (s > 0 ? std::sqrt(2.0) : std::sqrt(0.5));
  return r;
}

}  // namespace

Tensor evaluate(const Diagram& d, const Binding& b, const EvalOptions& opts) {
  Engine eng = make_engine(d, b, opts.max_rank, true);
  if (static_cast<int>(d.n_inputs() + d.n_outputs()) > opts.max_rank)
    fail(ErrorKind::RankOverflow, "boundary exceeds the wire limit");
  eng.run(opts.max_rank, opts.reverse_ties);

  const auto& edges = d.edges();
  auto wire_of = [&](Port p) -> int {
    for (std::size_t w = 0; w < edges.size(); ++w)
      if (edges[w].a == p || edges[w].b == p) return static_cast<int>(w);
    fail(ErrorKind::InvalidDiagram, "boundary slot is not wired");
  };
  std::vector<int> in_wire(d.n_inputs()), out_wire(d.n_outputs());
  for (unsigned i = 0; i < d.n_inputs(); ++i) in_wire[i] = wire_of(Port::in(i));
  for (unsigned j = 0; j < d.n_outputs(); ++j) out_wire[j] = wire_of(Port::out(j));

  const Node* node = eng.nodes.empty() ? nullptr : &eng.nodes.front();
  Complex base = node ? Complex(0.0) : Complex(1.0);
  Tensor r(d.n_outputs(), d.n_inputs());
  double scalar = sqrt2_power(d.scalar_log());

  std::map<int, int> node_pos;
  if (node)
    for (std::size_t p = 0; p < node->wires.size(); ++p) node_pos[node->wires[p]] = static_cast<int>(p);

  for (std::size_t ob = 0; ob < r.rows(); ++ob) {
    for (std::size_t ib = 0; ib < r.cols(); ++ib) {
      std::map<int, int> assign;
      bool ok = true;
      auto put = [&](int wire, int bit) {
        auto [it, inserted] = assign.emplace(wire, bit);
        if (!inserted && it->second != bit) ok = false;
      };
      for (unsigned j = 0; j < d.n_outputs() && ok; ++j)
        put(out_wire[j], static_cast<int>((ob >> (d.n_outputs() - 1 - j)) & 1u));
      for (unsigned i = 0; i < d.n_inputs() && ok; ++i)
        put(in_wire[i], static_cast<int>((ib >> (d.n_inputs() - 1 - i)) & 1u));
      if (!ok) continue;
      Complex val;
      if (node) {
        std::size_t idx = 0;
        for (const auto& [wire, bit] : assign) {
          auto it = node_pos.find(wire);
          if (it != node_pos.end()) idx |= std::size_t(bit) << it->second;
        }
        val = node->data[idx];
      } else {
        val = base;
      }
      r.at(ob, ib) = val * scalar;
    }
  }
  return r;
}

ContractionPlan contraction_order(const Diagram& d, bool reverse_ties) {
  // plan over wire sets only; data is not materialized
  Engine eng = make_engine(d, Binding{}, 1 << 20, false);
  // contract_pair is skipped: emulate the merge on wire sets
  auto& nodes = eng.nodes;
  while (nodes.size() > 1) {
    std::size_t bi = 0, bj = 1;
    int best = -1;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        std::vector<int> shared;
        std::set_intersection(nodes[i].wires.begin(), nodes[i].wires.end(),
                              nodes[j].wires.begin(), nodes[j].wires.end(),
                              std::back_inserter(shared));
        int rank =
            static_cast<int>(nodes[i].wires.size() + nodes[j].wires.size() - 2 * shared.size());
        bool better = best < 0 || rank < best;
        if (!better && rank == best) {
          auto key = std::minmax(nodes[i].id, nodes[j].id);
          auto cur = std::minmax(nodes[bi].id, nodes[bj].id);
          better = reverse_ties ? key > cur : key < cur;
        }
        if (better) {
          best = rank;
          bi = i;
          bj = j;
        }
      }
    eng.plan.steps.push_back(
        {std::min(nodes[bi].id, nodes[bj].id), std::max(nodes[bi].id, nodes[bj].id)});
    std::vector<int> merged_wires;
    std::set_symmetric_difference(nodes[bi].wires.begin(), nodes[bi].wires.end(),
                                   nodes[bj].wires.begin(), nodes[bj].wires.end(),
                                   std::back_inserter(merged_wires));
    Node merged{std::min(nodes[bi].id, nodes[bj].id), merged_wires, {}};
    eng.record(merged);
    nodes.erase(nodes.begin() + bj);
    nodes[bi] = std::move(merged);
  }
  return eng.plan;
}

}  // namespace zx
