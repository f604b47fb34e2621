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

#include "zxcalc/json_io.hpp"

#include <json.hpp>

namespace zx {

using nlohmann::json;

namespace {

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    fail(ErrorKind::ParseError, "complex numbers are [re, im] pairs, got " + j.dump());
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json label_to_json(const Label& label) {
  if (const auto* c = std::get_if<ConstLabel>(&label))
    return json{{"type", "const"}, {"value", complex_to_json(c->value)}};
  if (const auto* p = std::get_if<PhaseLabel>(&label))
    return json{{"type", "phase"}, {"param", p->param}, {"k", p->k}, {"c", p->c}};
  const auto& f = std::get<FuncLabel>(label);
  return json{{"type", "func"}, {"param", f.param}, {"handle", f.handle}};
}

Label label_from_json(const json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type == "const") return ConstLabel{complex_from_json(j.at("value"))};
  if (type == "phase")
    return PhaseLabel{j.at("param").get<std::string>(), j.at("k").get<int>(),
                      j.at("c").get<double>()};
  if (type == "func")
    return FuncLabel{j.at("param").get<std::string>(), j.at("handle").get<std::string>()};
  fail(ErrorKind::ParseError, "unknown label type '" + type + "'");
}

json port_to_json(const Port& p) {
  switch (p.kind) {
    case Port::Kind::Vertex: return json::array({p.vertex, p.index});
    case Port::Kind::In: return json::array({"in", p.index});
    case Port::Kind::Out: return json::array({"out", p.index});
  }
  fail(ErrorKind::ParseError, "bad port");
}

Port port_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) fail(ErrorKind::ParseError, "ports are pairs, got " + j.dump());
  if (j[0].is_string()) {
    std::string side = j[0].get<std::string>();
    unsigned slot = j[1].get<unsigned>();
    if (side == "in") return Port::in(slot);
    if (side == "out") return Port::out(slot);
    fail(ErrorKind::ParseError, "boundary side must be \"in\" or \"out\", got \"" + side + "\"");
  }
  return Port::leg(j[0].get<VertexId>(), j[1].get<unsigned>());
}

json kind_to_json(const VertexKind& kind) {
  return std::visit(
      [](const auto& k) -> json {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, GreenBox>)
          return json{{"kind", "green"},
                      {"params", {{"label", label_to_json(k.label)}, {"n", k.n}, {"m", k.m}}}};
        else if constexpr (std::is_same_v<T, PinkSpider>)
          return json{{"kind", "pink"},
                      {"params", {{"tau", k.pi ? "pi" : "0"}, {"n", k.n}, {"m", k.m}}}};
        else if constexpr (std::is_same_v<T, Hadamard>)
          return json{{"kind", "hadamard"}};
        else if constexpr (std::is_same_v<T, Triangle>)
          return json{{"kind", "triangle"}};
        else if constexpr (std::is_same_v<T, TriangleInverse>)
          return json{{"kind", "triangle_inv"}};
        else
          return json{{"kind", "w"}, {"params", {{"m", k.m}}}};
      },
      kind);
}

VertexKind kind_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "green") {
    const json& p = j.at("params");
    return GreenBox{label_from_json(p.at("label")), p.at("n").get<unsigned>(),
                    p.at("m").get<unsigned>()};
  }
  if (kind == "pink") {
    const json& p = j.at("params");
    std::string tau = p.at("tau").is_string() ? p.at("tau").get<std::string>()
                                              : (p.at("tau").get<double>() == 0.0 ? "0" : "pi");
    if (tau != "0" && tau != "pi")
      fail(ErrorKind::ParseError, "pink spider tau must be \"0\" or \"pi\"");
    return PinkSpider{tau == "pi", p.at("n").get<unsigned>(), p.at("m").get<unsigned>()};
  }
  if (kind == "hadamard") return Hadamard{};
  if (kind == "triangle") return Triangle{};
  if (kind == "triangle_inv") return TriangleInverse{};
  if (kind == "w") return WSpider{j.at("params").at("m").get<unsigned>()};
  fail(ErrorKind::ParseError, "unknown vertex kind '" + kind + "'");
}

}  // namespace

std::string diagram_to_json(const Diagram& d, int indent) {
  json verts = json::array();
  for (const auto& [id, kind] : d.vertices()) {
    json v = kind_to_json(kind);
    v["id"] = id;
    verts.push_back(std::move(v));
  }
  json edges = json::array();
  std::vector<json> inputs(d.n_inputs()), outputs(d.n_outputs());
  for (const Edge& e : d.edges()) {
    bool a_boundary = e.a.kind != Port::Kind::Vertex;
    bool b_boundary = e.b.kind != Port::Kind::Vertex;
    if (!a_boundary && !b_boundary) {
      edges.push_back(json::array({port_to_json(e.a), port_to_json(e.b)}));
      continue;
    }
    auto assign = [&](const Port& slot, const Port& peer) {
      if (slot.kind == Port::Kind::In)
        inputs[slot.index] = port_to_json(peer);
      else
        outputs[slot.index] = port_to_json(peer);
    };
    if (a_boundary) assign(e.a, e.b);
    if (b_boundary) assign(e.b, e.a);
  }
  json out{{"vertices", verts},
           {"edges", edges},
           {"inputs", json(inputs)},
           {"outputs", json(outputs)},
           {"scalar_log", d.scalar_log()}};
  return indent >= 0 ? out.dump(indent) : out.dump();
}

Diagram diagram_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
  try {
    unsigned n_in = static_cast<unsigned>(j.at("inputs").size());
    unsigned n_out = static_cast<unsigned>(j.at("outputs").size());
    Diagram d = Diagram::open(n_in, n_out);
    // ids must be preserved so that serialized references resolve; insert in
    // ascending id order and demand the ids be exactly 0..n-1 remapped
    std::map<VertexId, json> by_id;
    for (const json& v : j.at("vertices")) {
      VertexId id = v.at("id").get<VertexId>();
      if (by_id.count(id)) fail(ErrorKind::ParseError, "duplicate vertex id " + std::to_string(id));
      by_id[id] = v;
    }
    std::map<VertexId, VertexId> remap;
    for (const auto& [id, v] : by_id) remap[id] = d.add_generator(kind_from_json(v));
    auto fix = [&](Port p) {
      if (p.kind == Port::Kind::Vertex) {
        auto it = remap.find(p.vertex);
        if (it == remap.end())
          fail(ErrorKind::ParseError, "edge references unknown vertex " + std::to_string(p.vertex));
        p.vertex = it->second;
      }
      return p;
    };
    std::set<std::pair<Port, Port>> seen;
    auto add_edge = [&](Port a, Port b) {
      a = fix(a);
      b = fix(b);
      if (b < a) std::swap(a, b);
      if (seen.insert({a, b}).second) d.connect(a, b);
    };
    for (const json& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) fail(ErrorKind::ParseError, "edges are port pairs");
      add_edge(port_from_json(e[0]), port_from_json(e[1]));
    }
    for (unsigned i = 0; i < n_in; ++i) add_edge(Port::in(i), port_from_json(j.at("inputs")[i]));
    for (unsigned o = 0; o < n_out; ++o) add_edge(Port::out(o), port_from_json(j.at("outputs")[o]));
    if (j.count("scalar_log")) d.add_scalar_sqrt2(j.at("scalar_log").get<std::int64_t>());
    d.finalize();
    return d;
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, e.what());
  }
}

std::string tensor_to_json(const Tensor& t, int indent) {
  json data = json::array();
  for (const Complex& v : t.data) data.push_back(complex_to_json(v));
  json out{{"rows", t.rows()}, {"cols", t.cols()}, {"data", data}};
  return indent >= 0 ? out.dump(indent) : out.dump();
}

Binding parse_bindings(const std::string& text) {
  Binding b;
  if (text.empty()) return b;
  if (text.front() == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      fail(ErrorKind::ParseError, e.what());
    }
    for (auto it = j.begin(); it != j.end(); ++it) b[it.key()] = it.value().get<double>();
    return b;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      fail(ErrorKind::ParseError, "bindings look like name=value, got '" + item + "'");
    try {
      b[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "bad binding value in '" + item + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return b;
}

}  // namespace zx
