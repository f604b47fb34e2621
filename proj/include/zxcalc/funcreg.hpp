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

#include <functional>
#include <map>
#include <mutex>
#include <string>

#include "zxcalc/common.hpp"

namespace zx {

// A registered differentiable function theta -> C with its derivative.
// conj_handle names the registered conjugate (empty: not daggerable).
// nonvanishing marks functions known to be nowhere zero, which the global
// differentiation construction requires for Func labels.
struct FuncDef {
  std::function<Complex(double)> f;
  std::function<Complex(double)> df;
  std::string conj_handle;
  bool nonvanishing = false;
};

class FuncRegistry {
 public:
  static FuncRegistry& instance();

  void register_func(const std::string& name, FuncDef def);
  bool has(const std::string& name) const;
  FuncDef get(const std::string& name) const; // throws UnknownFunction

 private:
  FuncRegistry();
  mutable std::mutex mu_;
  std::map<std::string, FuncDef> funcs_;
};

}  // namespace zx
