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

#include "zxcalc/zx.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "zxcalc/bp.hpp"
#include "zxcalc/diff.hpp"
#include "zxcalc/integrate.hpp"
#include "zxcalc/json_io.hpp"
#include "zxcalc/rng.hpp"
#include "zxcalc/rules.hpp"

using nlohmann::json;

struct zx_diagram {
  zx::Diagram d;
};

namespace {

thread_local std::string g_last_error;

zx_status map_kind(zx::ErrorKind k) {
  using zx::ErrorKind;
  switch (k) {
    case ErrorKind::ParseError: return ZX_ERR_PARSE;
    case ErrorKind::ArityMismatch: return ZX_ERR_ARITY;
    case ErrorKind::UnboundParameter:
    case ErrorKind::UnknownFunction: return ZX_ERR_UNBOUND;
    case ErrorKind::UnsupportedOccurrence:
    case ErrorKind::UnsupportedArity:
    case ErrorKind::VanishingFunction:
    case ErrorKind::NotDaggerable: return ZX_ERR_UNSUPPORTED;
    case ErrorKind::ShapeMismatch:
    case ErrorKind::MixedCoefficients: return ZX_ERR_SHAPE;
    case ErrorKind::RankOverflow: return ZX_ERR_OVERFLOW;
    default: return ZX_ERR_DOMAIN;
  }
}

template <typename Fn>
zx_status guarded(Fn&& fn) {
  try {
    fn();
    return ZX_OK;
  } catch (const zx::ZXError& e) {
    g_last_error = e.what();
    return map_kind(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ZX_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

zx::Binding random_binding(const zx::Diagram& d, zx::Rng& rng) {
  zx::Binding b;
  for (const std::string& p : d.parameters()) b[p] = rng.angle();
  return b;
}

std::string format_double(double v) { return json(v).dump(); }

}  // namespace

extern "C" {

const char* zx_version(void) { return "zxcalc 0.1.0"; }

const char* zx_last_error(void) { return g_last_error.c_str(); }

void zx_string_free(char* s) { std::free(s); }

void zx_diagram_free(zx_diagram* d) { delete d; }

zx_status zx_diagram_parse(const char* text, zx_diagram** out) {
  return guarded([&] {
    if (!text || !out) zx::fail(zx::ErrorKind::ParseError, "null argument");
    *out = new zx_diagram{zx::diagram_from_json(text)};
  });
}

zx_status zx_diagram_to_json(const zx_diagram* d, int indent, char** out) {
  return guarded([&] { *out = dup_string(zx::diagram_to_json(d->d, indent)); });
}

zx_status zx_diagram_info(const zx_diagram* d, char** out) {
  return guarded([&] {
    json info{{"inputs", d->d.n_inputs()},
              {"outputs", d->d.n_outputs()},
              {"vertices", d->d.vertex_count()},
              {"parameters", d->d.parameters()}};
    *out = dup_string(info.dump());
  });
}

zx_status zx_eval(const zx_diagram* d, const char* bindings, int max_rank, char** matrix_json) {
  return guarded([&] {
    zx::Binding b = zx::parse_bindings(bindings ? bindings : "");
    zx::EvalOptions opts;
    if (max_rank > 0) opts.max_rank = max_rank;
    zx::Tensor t = zx::evaluate(d->d, b, opts);
    *matrix_json = dup_string(zx::tensor_to_json(t));
  });
}

zx_status zx_differentiate(const zx_diagram* d, const char* param, zx_diagram** out) {
  return guarded([&] { *out = new zx_diagram{zx::diff::differentiate(d->d, param)}; });
}

zx_status zx_integrate_uniform(const zx_diagram* d, const char* param, zx_diagram** out) {
  return guarded([&] { *out = new zx_diagram{zx::integrate::integrate_uniform(d->d, param)}; });
}

zx_status zx_simplify(const zx_diagram* d, zx_diagram** out) {
  return guarded([&] { *out = new zx_diagram{zx::rules::simplify(d->d)}; });
}

zx_status zx_grad_check(const zx_diagram* d, const char* param, int samples, uint64_t seed,
                        double h, double tol, char** report_json, int* passed) {
  return guarded([&] {
    if (samples < 1) zx::fail(zx::ErrorKind::ParseError, "samples must be positive");
    zx::Diagram deriv = zx::diff::differentiate(d->d, param);
    double max_dev = 0.0;
    for (int i = 0; i < samples; ++i) {
      zx::Rng rng(zx::Rng::mix(seed, static_cast<std::uint64_t>(i)));
      zx::Binding b = random_binding(d->d, rng);
      if (!b.count(param)) b[param] = rng.angle();
      zx::Tensor got = zx::evaluate(deriv, b);
      zx::Tensor want = zx::diff::finite_difference(d->d, param, b, h);
      max_dev = std::max(max_dev, zx::max_abs_diff(got, want));
    }
    bool pass = max_dev <= tol;
    json report{{"param", param}, {"samples", samples}, {"h", h},
                {"tol", tol},     {"max_deviation", max_dev}, {"pass", pass}};
    *report_json = dup_string(report.dump());
    if (passed) *passed = pass ? 1 : 0;
  });
}

zx_status zx_int_check(const zx_diagram* d, const char* param, int nodes, int samples,
                       uint64_t seed, double tol, char** report_json, int* passed) {
  return guarded([&] {
    if (samples < 1) zx::fail(zx::ErrorKind::ParseError, "samples must be positive");
    zx::Diagram g = zx::integrate::integrate_uniform(d->d, param);
    double max_dev = 0.0;
    for (int i = 0; i < samples; ++i) {
      zx::Rng rng(zx::Rng::mix(seed, static_cast<std::uint64_t>(i)));
      zx::Binding b = random_binding(g, rng);
      zx::Tensor got = zx::evaluate(g, b);
      zx::Tensor want = zx::integrate::quadrature_oracle(d->d, param, b, nodes);
      max_dev = std::max(max_dev, zx::max_abs_diff(got, want));
    }
    bool pass = max_dev <= tol;
    json report{{"param", param}, {"samples", samples}, {"nodes", nodes},
                {"tol", tol},     {"max_deviation", max_dev}, {"pass", pass}};
    *report_json = dup_string(report.dump());
    if (passed) *passed = pass ? 1 : 0;
  });
}

zx_status zx_verify_rules(const char* only, int samples, uint64_t seed, int threads,
                          char** report_json, int* all_passed) {
  return guarded([&] {
    std::string filter = only ? only : "";
    json rows = json::array();
    bool all = true;
    if (filter.empty() || filter != "line") {
      auto reports = zx::rules::check_catalog(samples, seed, threads, filter);
      for (const auto& r : reports) {
        rows.push_back({{"name", r.name},
                        {"samples", r.samples},
                        {"max_deviation", r.max_deviation},
                        {"pass", r.pass}});
        all = all && r.pass;
      }
    }
    if (filter.empty() || filter == "line") {
      auto line = zx::bp::check_line_lemma(10);
      rows.push_back({{"name", "line"},
                      {"samples", (1 << 11) - 2},
                      {"max_deviation", 0.0},
                      {"max_value", line.max_value},
                      {"pass", line.pass}});
      all = all && line.pass;
    }
    json report{{"samples", samples}, {"seed", seed}, {"rules", rows}, {"all_pass", all}};
    *report_json = dup_string(report.dump());
    if (all_passed) *all_passed = all ? 1 : 0;
  });
}

zx_status zx_variance(const char* circuit, const char* hamiltonian, const char* param,
                      long mc_samples, uint64_t seed, int threads, int max_rank,
                      int with_timings, char** report_json) {
  return guarded([&] {
    zx::bp::Ansatz a = zx::bp::parse_circuit(circuit);
    zx::bp::PauliHamiltonian h = zx::bp::PauliHamiltonian::parse(hamiltonian, a.n);
    zx::bp::ExpectationDiagram e = zx::bp::expectation_diagram(a, h);
    std::vector<unsigned> targets;
    if (param && *param) {
      for (unsigned j = 0; j < e.params.size(); ++j)
        if (e.params[j] == param) targets.push_back(j);
      if (targets.empty())
        zx::fail(zx::ErrorKind::UnboundParameter, std::string("no parameter '") + param + "'");
    } else {
      for (unsigned j = 0; j < e.params.size(); ++j) targets.push_back(j);
    }
    json results = json::array();
    for (unsigned j : targets) {
      auto start = std::chrono::steady_clock::now();
      double var = zx::bp::variance_value(e, j, max_rank > 0 ? max_rank : 26);
      double mean = zx::bp::gradient_mean(e, j);
      auto stop = std::chrono::steady_clock::now();
      json row{{"param", e.params[j]},
               {"variance", var},
               {"mean", mean},
               {"method", "diagram"}};
      if (with_timings)
        row["runtime_seconds"] = std::chrono::duration<double>(stop - start).count();
      if (mc_samples > 0) {
        auto mc = zx::bp::monte_carlo_variance(a, h, j, mc_samples, seed, threads);
        json mcrow{{"variance", mc.variance},
                   {"mean", mc.mean},
                   {"std_error", mc.std_error},
                   {"samples", mc.samples},
                   {"method", "monte-carlo"}};
        if (with_timings) mcrow["runtime_seconds"] = mc.runtime_seconds;
        row["monte_carlo"] = mcrow;
      }
      results.push_back(row);
    }
    json report{{"qubits", a.n},
                {"hamiltonian", hamiltonian},
                {"seed", seed},
                {"results", results}};
    *report_json = dup_string(report.dump());
  });
}

zx_status zx_bp_scan(const char* ansatz, int n_min, int n_max, int max_rank, char** csv_out) {
  return guarded([&] {
    std::string name = ansatz ? ansatz : "sim9";
    if (name != "sim9")
      zx::fail(zx::ErrorKind::ParseError, "unknown ansatz '" + name + "' (available: sim9)");
    if (n_min < 2 || n_max < n_min)
      zx::fail(zx::ErrorKind::ParseError, "need 2 <= n_min <= n_max");
    std::string csv = "n,j,variance,bound\n";
    for (int n = n_min; n <= n_max; ++n) {
      auto rep = zx::bp::sim9_bound_check(static_cast<unsigned>(n),
                                          max_rank > 0 ? max_rank : 26);
      for (const auto& row : rep.rows) {
        csv += std::to_string(row.n) + "," + std::to_string(row.j) + "," +
               format_double(row.variance) + "," + format_double(row.bound) + "\n";
      }
    }
    *csv_out = dup_string(csv);
  });
}

}  // extern "C"
