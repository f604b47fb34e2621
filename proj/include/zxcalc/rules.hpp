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

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "zxcalc/diagram.hpp"

namespace zx::rules {

// Free metavariables of a rule and how to sample them. Samples are passed
// to the builder as complex values; Angle and Tau ride in the real part.
struct LabelSpec {
  enum class Kind {
    ComplexAny,     // annulus 0.2 <= |a| <= 2 mixed with {0, 1, -1, i}
    ComplexNonzero, // annulus mixed with {1, -1, i}
    Angle,          // uniform in [-pi, pi)
    Tau,            // 0 or pi
  };
  Kind kind;
};

struct RuleInstance {
  std::string name;
  std::vector<LabelSpec> free_labels;
  std::function<std::pair<Diagram, Diagram>(const std::vector<Complex>&)> build;
  std::string note; // scalar conventions or reconstruction remarks
};

// Every rewriting rule of the calculus, the vertical flips of the rule
// table, the derived lemmas, and the appendix lemmas, as checkable
// diagram pairs.
const std::vector<RuleInstance>& catalog();

struct RuleReport {
  std::string name;
  int samples = 0;
  double max_deviation = 0.0;
  bool pass = false;
};

// Samples the free labels, evaluates both sides, reports the worst
// entrywise deviation. PASS iff <= 1e-10. Failures are report entries.
RuleReport check_rule(const RuleInstance& rule, int samples, std::uint64_t seed);

// Checks the whole catalog; `only` filters by exact name when nonempty.
std::vector<RuleReport> check_catalog(int samples, std::uint64_t seed, int threads = 0,
                                      const std::string& only = "");

inline constexpr double kRuleTolerance = 1e-10;

// Spider fusion (green label product / pink tau sum), Hadamard-pair
// cancellation, and identity spider removal, to a fixed point. Evaluation
// preserving; each applied step strictly reduces the vertex count.
Diagram simplify(const Diagram& d);

}  // namespace zx::rules
