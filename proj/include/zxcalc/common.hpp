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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace zx {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

enum class ErrorKind {
  ArityMismatch,
  PortOccupied,
  UnknownVertex,
  InvalidDiagram,
  NotFinalized,
  UnboundParameter,
  UnknownFunction,
  NotDaggerable,
  UnsupportedOccurrence,
  VanishingFunction,
  ShapeMismatch,
  UnsupportedArity,
  MixedCoefficients,
  RankOverflow,
  ParseError,
};

const char* to_string(ErrorKind k);

class ZXError : public std::runtime_error {
 public:
  ZXError(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw ZXError(kind, msg);
}

}  // namespace zx
