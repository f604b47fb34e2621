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

// End-to-end CLI checks. The binary path arrives through ZX_CLI_PATH; the
// golden directory through ZX_GOLDEN_DIR.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli_path() {
  const char* p = std::getenv("ZX_CLI_PATH");
  return p ? p : "";
}

std::string golden_dir() {
  const char* p = std::getenv("ZX_GOLDEN_DIR");
  return p ? p : "";
}

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run(const std::string& cmd) {
  Run r;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int st = pclose(pipe);
  r.exit_code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli help output matches the golden files") {
  if (cli_path().empty() || golden_dir().empty()) return; // driven by ctest only
  for (const char* sub : {"", "eval", "diff", "grad-check", "integrate", "int-check",
                          "verify-rules", "variance", "bp-scan"}) {
    std::string name = *sub ? sub : "main";
    Run r = run(cli_path() + (*sub ? std::string(" ") + sub : "") + " --help");
    CHECK(r.exit_code == 0);
    std::string want = slurp(golden_dir() + "/help_" + name + ".txt");
    REQUIRE_MESSAGE(!want.empty(), "missing golden file for ", name);
    CHECK_MESSAGE(r.out == want, "help text drifted for '", name, "'");
  }
}

TEST_CASE("cli exit code contract") {
  if (cli_path().empty()) return;
  std::string dir = "cli_tmp";
  REQUIRE(std::system(("mkdir -p " + dir).c_str()) == 0);
  std::ofstream(dir + "/bad.json") << "{ not json";
  std::ofstream(dir + "/good.json")
      << R"({"vertices":[{"id":0,"kind":"green","params":{"label":{"type":"phase","param":"t","k":1,"c":0.0},"n":1,"m":1}}],"edges":[],"inputs":[[0,0]],"outputs":[[0,1]],"scalar_log":0})";

  CHECK(run(cli_path() + " eval " + dir + "/bad.json").exit_code == 2);
  CHECK(run(cli_path() + " nosuchcommand").exit_code == 2);
  CHECK(run(cli_path() + " eval " + dir + "/good.json --bind t=0.25").exit_code == 0);
  CHECK(run(cli_path() + " grad-check " + dir + "/good.json --param t --samples 3").exit_code == 0);
  CHECK(run(cli_path() + " verify-rules --only Hopf --samples 3").exit_code == 0);
  CHECK(run(cli_path() + " verify-rules --only NoSuchRule --samples 3").exit_code == 2);

  SUBCASE("ZX_SEED environment override keeps runs reproducible") {
    std::string cmd = "ZX_SEED=123 " + cli_path() + " grad-check " + dir +
                      "/good.json --param t --samples 4 --json";
    Run a = run(cmd), b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
  }
}
