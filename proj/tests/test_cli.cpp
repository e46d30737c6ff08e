#include <cstdio>
#include <sys/wait.h>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cdp/proof.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cdp;
using namespace cdp::testing;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string out_file = "/tmp/cdp_cli_test.out";
  std::string cmd =
      std::string(CDP_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
  int rc = std::system(cmd.c_str());
  std::ifstream in(out_file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(rc), ss.str()};
}

std::string data(const std::string& name) {
  return std::string(CDP_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("cli cd prints the conclusion and the common instance size") {
  auto r = run_cli("cd \"e(x,e(e(e(x,y),e(z,y)),z))\" "
                   "\"e(x,e(e(e(x,y),e(z,y)),z))\"");
  CHECK(r.exit_code == 0);
  CHECK(r.output == std::string(kClause105) + "\ncommon_instance_size: 11\n");
}

TEST_CASE("cli cd reports unification failure") {
  auto r = run_cli("cd \"e(e(x,e(x,y)),z)\" \"e(a,a)\"");
  CHECK(r.exit_code == 1);
  CHECK(r.output == "not unifiable\n");
}

TEST_CASE("cli enumerate prints formulas and a count line") {
  auto r = run_cli("enumerate 7 --two-property");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("count: 15\n") != std::string::npos);
  CHECK(r.output.find("e(e(e(x,y),x),y)\n") != std::string::npos);
  auto bad = run_cli("enumerate 4 --two-property");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("cli check verifies the bundled proof") {
  auto r = run_cli("check " + data("xcb25.proof"));
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "verified: length=25 level=19 max_weight=47 max_vars=12\n");
}

TEST_CASE("cli check rejects a corrupted proof with nonzero status") {
  std::string text;
  {
    std::ifstream in(data("xcb25.proof"));
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  auto pos = text.find("120 [cd,115,119]");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 16, "120 [cd,114,119]");
  std::ofstream out("/tmp/cdp_tampered.proof");
  out << text;
  out.close();
  auto r = run_cli("check /tmp/cdp_tampered.proof");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("error:") == 0);
  CHECK(r.output.find("120") != std::string::npos);
}

TEST_CASE("cli census reads corpus names and list files") {
  auto r = run_cli("census XCB 2 XCB");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("level 1: new=1 exceptions=0\n") != std::string::npos);
  CHECK(r.output.find("level 2: new=2 exceptions=0\n") != std::string::npos);

  std::ofstream seed("/tmp/cdp_seed.lst");
  seed << "% seed list\ne(x,e(e(e(x,y),e(z,y)),z))\n";
  seed.close();
  auto r2 = run_cli("census /tmp/cdp_seed.lst 2");
  CHECK(r2.exit_code == 0);
  CHECK(r2.output.find("level 2: new=2") != std::string::npos);
}

TEST_CASE("cli corpus list prints every entry") {
  auto r = run_cli("corpus list");
  CHECK(r.exit_code == 0);
  std::size_t lines = 0;
  for (char ch : r.output) lines += ch == '\n';
  CHECK(lines == 36);  // 14 axioms + 4 too weak + 3 basis + 15 targets
  CHECK(r.output.find("XCB shortest_axiom e(x,e(e(e(x,y),e(z,y)),z))\n") !=
        std::string::npos);
}

TEST_CASE("cli prove exit codes distinguish outcomes") {
  auto ok = run_cli("prove " + data("twobasis_reflexivity.prob") +
                    " --out-dir /tmp/cdp_cli_prove");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("proof reflexivity:") != std::string::npos);

  // saturation without reaching the target
  std::ofstream prob("/tmp/cdp_sat.prob");
  prob << "[sos]\ne(x,x)\n[targets]\ne(e(x,y),e(y,x))\n[params]\nmode = "
          "bfs\nmax_weight = 8\n";
  prob.close();
  auto sat = run_cli("prove /tmp/cdp_sat.prob --out-dir /tmp/cdp_cli_prove");
  CHECK(sat.exit_code == 1);
  CHECK(sat.output.find("stop: saturated") != std::string::npos);

  // a resource limit is a distinct exit
  auto lim = run_cli("prove " + data("reflexivity_bfs31.prob") +
                     " --limit-given 5 --out-dir /tmp/cdp_cli_prove");
  CHECK(lim.exit_code == 3);
  CHECK(lim.output.find("stop: given_limit") != std::string::npos);
}

TEST_CASE("cli shorten writes an abridged proof") {
  // a roundabout reflexivity proof, rendered to disk
  Formula trans = fml("e(e(x,y),e(e(y,z),e(x,z)))");
  Formula sym = fml("e(e(x,y),e(y,x))");
  Proof p;
  p.steps.push_back({1, std::nullopt, trans});
  p.steps.push_back({2, std::nullopt, sym});
  p.steps.push_back({3, std::make_pair(2u, 2u), fml("e(e(x,y),e(y,x))")});
  p.steps.push_back(
      {4, std::make_pair(3u, 1u), fml("e(e(e(x,y),e(z,y)),e(z,x))")});
  p.steps.push_back({5, std::make_pair(4u, 3u), fml("e(x,x)")});
  p.targets["reflexivity"] = 5;
  {
    std::ofstream out("/tmp/cdp_detour.proof");
    out << render(p);
  }
  std::ofstream prob("/tmp/cdp_detour.prob");
  prob << "[targets]\ne(x,x)\n[params]\nmode = ratio:2\nmax_weight = "
          "20\nmax_given = 400\n";
  prob.close();
  auto r = run_cli(
      "shorten /tmp/cdp_detour.proof /tmp/cdp_detour.prob --out-dir /tmp");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("shortened: length=2 (input 3)") != std::string::npos);
}
