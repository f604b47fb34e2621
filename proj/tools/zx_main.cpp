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

// Command-line front end. Talks to the core exclusively through the C API
// in zxcalc/zx.h.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "zxcalc/zx.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct DiagramHandle {
  zx_diagram* d = nullptr;
  ~DiagramHandle() { zx_diagram_free(d); }
};

struct CString {
  char* s = nullptr;
  ~CString() { zx_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

[[noreturn]] void die(const std::string& msg) {
  std::cerr << "zx: " << msg << "\n";
  std::exit(kExitUsage);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) die("cannot write '" + path + "'");
  out << text;
}

void check(zx_status st) {
  if (st == ZX_OK) return;
  std::cerr << "zx: " << zx_last_error() << "\n";
  std::exit(kExitUsage);
}

DiagramHandle load_diagram(const std::string& path) {
  DiagramHandle h;
  check(zx_diagram_parse(read_file(path).c_str(), &h.d));
  return h;
}

std::uint64_t seed_default() {
  if (const char* env = std::getenv("ZX_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      die("ZX_SEED must be an integer");
    }
  }
  return 42;
}

std::string format_rule_table(const std::string& report_json) {
  auto j = nlohmann::json::parse(report_json);
  std::ostringstream out;
  char linebuf[128];
  for (const auto& row : j.at("rules")) {
    double dev = row.contains("max_value") ? row.at("max_value").get<double>()
                                           : row.at("max_deviation").get<double>();
    std::snprintf(linebuf, sizeof linebuf, "%-26s %4d samples  %-9s %.3g\n",
                  row.at("name").get<std::string>().c_str(), row.at("samples").get<int>(),
                  row.at("pass").get<bool>() ? "PASS" : "FAIL", dev);
    out << linebuf;
  }
  out << (j.at("all_pass").get<bool>() ? "all rules PASS" : "FAILURES present") << "\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zxcalc: algebraic ZX diagrams with differentiation, integration, and "
               "barren-plateau analysis"};
  app.name("zx");
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string in_path, out_path, param, bindings, ham, only, ansatz = "sim9";
  std::string mode;
  int samples = 50, nodes = 1024, threads = 0, max_rank = 26;
  int n_min = 2, n_max = 6;
  long mc = 0;
  double h = 1e-5, tol = 1e-6;
  std::uint64_t seed = seed_default();
  bool as_json = false, timings = false;

  auto* c_eval = app.add_subcommand("eval", "Evaluate a diagram to its matrix");
  c_eval->add_option("diagram", in_path, "diagram JSON file")->required();
  c_eval->add_option("--bind", bindings, "parameter values, name=value[,name=value...]");
  c_eval->add_option("--out", out_path, "output file (default stdout)");
  c_eval->add_option("--max-rank", max_rank, "wire limit for contraction intermediates");

  auto* c_diff = app.add_subcommand("diff", "Differentiate with respect to a parameter");
  c_diff->add_option("diagram", in_path)->required();
  c_diff->add_option("--param", param, "parameter name")->required();
  c_diff->add_option("--out", out_path);

  auto* c_grad = app.add_subcommand("grad-check", "Derivative diagram vs finite differences");
  c_grad->add_option("diagram", in_path)->required();
  c_grad->add_option("--param", param)->required();
  c_grad->add_option("--samples", samples, "random bindings to test");
  c_grad->add_option("--seed", seed);
  c_grad->add_option("--step", h, "finite-difference step");
  c_grad->add_option("--tol", tol, "pass threshold");
  c_grad->add_flag("--json", as_json, "machine-readable report");

  auto* c_int = app.add_subcommand("integrate", "Uniform definite integral over a parameter");
  c_int->add_option("diagram", in_path)->required();
  c_int->add_option("--param", param)->required();
  c_int->add_option("--out", out_path);

  auto* c_intchk = app.add_subcommand("int-check", "Integration gadget vs quadrature");
  c_intchk->add_option("diagram", in_path)->required();
  c_intchk->add_option("--param", param)->required();
  c_intchk->add_option("--nodes", nodes, "quadrature nodes");
  c_intchk->add_option("--samples", samples, "random bindings of other parameters");
  c_intchk->add_option("--seed", seed);
  c_intchk->add_option("--tol", tol);
  c_intchk->add_flag("--json", as_json);

  auto* c_rules = app.add_subcommand("verify-rules", "Soundness of the rewrite-rule catalog");
  c_rules->add_option("--only", only, "check a single rule by name");
  c_rules->add_option("--samples", samples, "label samples per rule");
  c_rules->add_option("--seed", seed);
  c_rules->add_option("--threads", threads, "0 = hardware default");
  c_rules->add_flag("--json", as_json);

  auto* c_var = app.add_subcommand("variance", "Gradient variance of a circuit observable");
  c_var->add_option("circuit", in_path, "circuit text file")->required();
  c_var->add_option("--ham", ham, "Pauli Hamiltonian, e.g. ZZ or 0.5*ZI+0.5*IZ")->required();
  c_var->add_option("--param", param, "one parameter (default: all)");
  c_var->add_option("--mc", mc, "Monte Carlo cross-check with this many samples");
  c_var->add_option("--seed", seed);
  c_var->add_option("--threads", threads);
  c_var->add_option("--max-rank", max_rank);
  c_var->add_flag("--timings", timings, "include wall-clock fields");
  c_var->add_flag("--json", as_json);
  c_var->add_option("--out", out_path);

  bool allow_large = false;
  auto* c_scan = app.add_subcommand("bp-scan", "Variance vs qubit count for a known ansatz");
  c_scan->add_option("--ansatz", ansatz, "ansatz family (sim9)");
  c_scan->add_option("--n-min", n_min);
  c_scan->add_option("--n-max", n_max);
  c_scan->add_option("--max-rank", max_rank);
  c_scan->add_flag("--allow-large", allow_large, "lift the default n <= 8 cap");
  c_scan->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (c_eval->parsed()) {
    DiagramHandle d = load_diagram(in_path);
    CString matrix;
    check(zx_eval(d.d, bindings.c_str(), max_rank, &matrix.s));
    write_output(out_path, matrix.str());
    return kExitOk;
  }

  if (c_diff->parsed()) {
    DiagramHandle d = load_diagram(in_path);
    DiagramHandle out;
    check(zx_differentiate(d.d, param.c_str(), &out.d));
    CString text;
    check(zx_diagram_to_json(out.d, 2, &text.s));
    write_output(out_path, text.str());
    return kExitOk;
  }

  if (c_grad->parsed()) {
    DiagramHandle d = load_diagram(in_path);
    CString report;
    int passed = 0;
    check(zx_grad_check(d.d, param.c_str(), samples, seed, h, tol, &report.s, &passed));
    if (as_json) {
      write_output(out_path, report.str());
    } else {
      auto j = nlohmann::json::parse(report.str());
      std::printf("grad-check %s: %s (max deviation %.3g over %d samples, tol %.3g)\n",
                  param.c_str(), passed ? "PASS" : "FAIL",
                  j.at("max_deviation").get<double>(), samples, tol);
    }
    return passed ? kExitOk : kExitCheckFailed;
  }

  if (c_int->parsed()) {
    DiagramHandle d = load_diagram(in_path);
    DiagramHandle out;
    check(zx_integrate_uniform(d.d, param.c_str(), &out.d));
    CString text;
    check(zx_diagram_to_json(out.d, 2, &text.s));
    write_output(out_path, text.str());
    return kExitOk;
  }

  if (c_intchk->parsed()) {
    DiagramHandle d = load_diagram(in_path);
    CString report;
    int passed = 0;
    check(zx_int_check(d.d, param.c_str(), nodes, samples, seed, tol, &report.s, &passed));
    if (as_json) {
      write_output(out_path, report.str());
    } else {
      auto j = nlohmann::json::parse(report.str());
      std::printf("int-check %s: %s (max deviation %.3g, %d nodes, %d samples)\n",
                  param.c_str(), passed ? "PASS" : "FAIL",
                  j.at("max_deviation").get<double>(), nodes, samples);
    }
    return passed ? kExitOk : kExitCheckFailed;
  }

  if (c_rules->parsed()) {
    CString report;
    int all = 0;
    check(zx_verify_rules(only.empty() ? nullptr : only.c_str(), samples, seed, threads,
                          &report.s, &all));
    write_output(out_path, as_json ? report.str() : format_rule_table(report.str()));
    return all ? kExitOk : kExitCheckFailed;
  }

  if (c_var->parsed()) {
    std::string circuit = read_file(in_path);
    CString report;
    check(zx_variance(circuit.c_str(), ham.c_str(), param.empty() ? nullptr : param.c_str(),
                      mc, seed, threads, max_rank, timings ? 1 : 0, &report.s));
    if (as_json) {
      write_output(out_path, report.str());
    } else {
      auto j = nlohmann::json::parse(report.str());
      std::ostringstream out;
      out << "param,variance,mean";
      bool with_mc = mc > 0;
      if (with_mc) out << ",mc_variance,mc_std_error";
      out << "\n";
      for (const auto& row : j.at("results")) {
        out << row.at("param").get<std::string>() << ","
            << nlohmann::json(row.at("variance")).dump() << ","
            << nlohmann::json(row.at("mean")).dump();
        if (with_mc) {
          const auto& m = row.at("monte_carlo");
          out << "," << nlohmann::json(m.at("variance")).dump() << ","
              << nlohmann::json(m.at("std_error")).dump();
        }
        out << "\n";
      }
      write_output(out_path, out.str());
    }
    return kExitOk;
  }

  if (c_scan->parsed()) {
    if (n_max > 8 && !allow_large)
      die("contraction cost grows exponentially in n; pass --allow-large for n > 8");
    CString csv;
    check(zx_bp_scan(ansatz.c_str(), n_min, n_max, max_rank, &csv.s));
    write_output(out_path, csv.str());
    return kExitOk;
  }

  return kExitUsage;
}
