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

#include "zxcalc/common.hpp"

namespace zx {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::PortOccupied: return "PortOccupied";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::InvalidDiagram: return "InvalidDiagram";
    case ErrorKind::NotFinalized: return "NotFinalized";
    case ErrorKind::UnboundParameter: return "UnboundParameter";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::NotDaggerable: return "NotDaggerable";
    case ErrorKind::UnsupportedOccurrence: return "UnsupportedOccurrence";
    case ErrorKind::VanishingFunction: return "VanishingFunction";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::UnsupportedArity: return "UnsupportedArity";
    case ErrorKind::MixedCoefficients: return "MixedCoefficients";
    case ErrorKind::RankOverflow: return "RankOverflow";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "UnknownError";
}

}  // namespace zx
