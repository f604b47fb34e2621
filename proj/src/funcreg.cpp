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

#include "zxcalc/funcreg.hpp"

#include <cmath>

namespace zx {

FuncRegistry& FuncRegistry::instance() {
  static FuncRegistry reg;
  return reg;
}

FuncRegistry::FuncRegistry() {
  const Complex i(0.0, 1.0);
  funcs_["theta"] = {[](double t) { return Complex(t, 0.0); },
                     [](double) { return Complex(1.0, 0.0); },
                     "theta",
                     false};
  funcs_["sin"] = {[](double t) { return Complex(std::sin(t), 0.0); },
                   [](double t) { return Complex(std::cos(t), 0.0); },
                   "sin",
                   false};
  funcs_["cos"] = {[](double t) { return Complex(std::cos(t), 0.0); },
                   [](double t) { return Complex(-std::sin(t), 0.0); },
                   "cos",
                   false};
  funcs_["exp_i"] = {[i](double t) { return std::exp(i * t); },
                     [i](double t) { return i * std::exp(i * t); },
                     "exp_mi",
                     true};
  funcs_["exp_mi"] = {[i](double t) { return std::exp(-i * t); },
                      [i](double t) { return -i * std::exp(-i * t); },
                      "exp_i",
                      true};
}

void FuncRegistry::register_func(const std::string& name, FuncDef def) {
  std::lock_guard<std::mutex> lock(mu_);
  funcs_[name] = std::move(def);
}

bool FuncRegistry::has(const std::string& name) const {
  std::lock_guard<std::mutex> lock(mu_);
  return funcs_.count(name) > 0;
}

FuncDef FuncRegistry::get(const std::string& name) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = funcs_.find(name);
  if (it == funcs_.end()) fail(ErrorKind::UnknownFunction, "no registered function '" + name + "'");
  return it->second;
}

}  // namespace zx
