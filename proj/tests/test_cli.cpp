#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

// End-to-end exercises of the installed binary.  The harness exports the
// executable path in CHF_CLI; every command runs under the shell with stderr
// folded into the captured output.

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const char* bin = std::getenv("CHF_CLI");
  REQUIRE_MESSAGE(bin != nullptr, "CHF_CLI must point at the binary");
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += std::string(bin) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("eval") {
  const auto r = run_cli("eval -a 1 -c 0.5 -x 1");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "5.0601569385574"));

  // The regular solution continues to x < 0.
  CHECK(run_cli("eval -a 1 -c 0.5 -x -1").exit_code == 0);

  // The second solution does not.
  const auto s = run_cli("eval -a 1 -c 0.5 -x -1 --second");
  CHECK(s.exit_code == 2);
  CHECK(contains(s.out, "DomainX"));

  const auto pole = run_cli("eval -a 1 -c 0 -x 1");
  CHECK(pole.exit_code == 2);
  CHECK(contains(pole.out, "PoleAtC"));

  const auto integer_c = run_cli("eval -a 1 -c 2 -x 1 --second");
  CHECK(integer_c.exit_code == 2);
  CHECK(contains(integer_c.out, "IntegerC"));

  // Mixed elements evaluate alpha M + beta u.
  const auto mix = run_cli("eval -a 1 -c 0.5 -x 1 --alpha 0 --beta 1");
  CHECK(mix.exit_code == 0);
  CHECK(contains(mix.out, "2.71828182845904"));

  const auto grid = run_cli("eval -a 1 -c 0.5 --x-range 1:2:5 --format json");
  CHECK(grid.exit_code == 0);
  const auto j = nlohmann::json::parse(grid.out);
  CHECK(j["schema"] == "grid_table");
  REQUIRE(j["rows"].size() == 5);
  CHECK(j["rows"][0]["x"] == 1.0);
}

TEST_CASE("series cap from the environment") {
  const auto r = run_cli("eval -a 1 -c 0.5 -x 9", "CHF_MAX_TERMS=3");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.out, "NoConvergence"));
}

TEST_CASE("check suites") {
  const auto r = run_cli("check intertwining --samples 6 --seed 3");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "identity,max_deviation,tolerance,samples,pass"));
  CHECK(contains(r.out, "Q,"));
  CHECK(contains(r.out, "W,"));

  CHECK(run_cli("check factorization --samples 5 --seed 1").exit_code == 0);
  CHECK(run_cli("check composition --samples 5 --seed 1").exit_code == 0);
  CHECK(run_cli("check kummer --samples 25 --seed 1").exit_code == 0);

  // Byte-deterministic for a fixed seed.
  const auto a = run_cli("check kummer --samples 12 --seed 9");
  const auto b = run_cli("check kummer --samples 12 --seed 9");
  CHECK(a.out == b.out);

  const auto j = nlohmann::json::parse(
      run_cli("check kummer --samples 4 --seed 11 --format json").out);
  CHECK(j["schema"] == "check_report");
  CHECK(j["meta"]["seed"] == 11);
}

TEST_CASE("classify") {
  const auto corner = run_cli("classify -1 0");
  CHECK(corner.exit_code == 0);
  CHECK(contains(corner.out, "CriticalPoint"));

  const auto lis = run_cli("classify -4 1");
  CHECK(lis.exit_code == 0);
  CHECK(contains(lis.out, "LIS_upper"));
  CHECK(contains(lis.out, "2"));

  const auto line = run_cli("classify -5/2 -1/2");
  CHECK(line.exit_code == 0);
  CHECK(contains(line.out, "InvLineMinusHalf_left"));

  CHECK(contains(run_cli("classify -3 1").out, "Generic"));

  // Decimals fail the exactness gate.
  CHECK(run_cli("classify 0.5 1").exit_code == 2);
  CHECK(run_cli("classify 1/4 0").exit_code == 2);
  CHECK(run_cli("classify 1").exit_code == 2);
}

TEST_CASE("orbit") {
  const auto full = run_cli("orbit A1 0 0 --steps 3");
  CHECK(full.exit_code == 0);
  CHECK(contains(full.out, "-3,3"));

  const auto j =
      nlohmann::json::parse(run_cli("orbit A1 0 0 --steps 3 --format json").out);
  CHECK(j["schema"] == "orbit_list");
  REQUIRE(j["rows"].size() == 4);
  CHECK(j["rows"][3]["ap"] == "-3");

  const auto stopped = run_cli("orbit A1 3 0 --steps 5 --format json");
  const auto js = nlohmann::json::parse(stopped.out);
  REQUIRE(js["rows"].size() == 2);
  CHECK(js["rows"][1]["on_annihilation_line"] == 1);

  CHECK(run_cli("orbit Z9 0 0 --steps 2").exit_code == 2);
  CHECK(run_cli("orbit A1 0.5 0 --steps 2").exit_code == 2);
}

TEST_CASE("wavefn") {
  const auto grid = run_cli("wavefn osc1d --state 2 --grid -3:3:7 --format json");
  CHECK(grid.exit_code == 0);
  const auto j = nlohmann::json::parse(grid.out);
  CHECK(j["schema"] == "grid_table");
  REQUIRE(j["rows"].size() == 7);
  CHECK(j["rows"][0]["y"] == -3.0);

  const auto spec = run_cli("wavefn coulomb --N 3 --ell 0 --spectrum --levels 3");
  CHECK(spec.exit_code == 0);
  CHECK(contains(spec.out, "k,energy"));
  CHECK(contains(spec.out, "0,-1"));
  CHECK(contains(spec.out, "1,-0.25"));

  // Shallow wells clamp the listing to what exists.
  const auto morse_spec =
      run_cli("wavefn morse --alpha 1 --lambda 2.5 --spectrum --levels 3 "
              "--format json");
  CHECK(nlohmann::json::parse(morse_spec.out)["rows"].size() == 1);

  const auto resid = run_cli("wavefn osc1d --state 0 --residual");
  CHECK(resid.exit_code == 0);
  CHECK(contains(resid.out, "residual"));

  const auto nodes = run_cli("wavefn morse --alpha 1 --lambda 2.5 --state 0 --nodes");
  CHECK(nodes.exit_code == 0);
  CHECK(contains(nodes.out, "nodes"));

  CHECK(run_cli("wavefn osc1d --state -1").exit_code == 2);
  CHECK(run_cli("wavefn morse --alpha 1 --lambda 2.5 --state 1").exit_code == 2);
  CHECK(run_cli("wavefn oscN --ell 1 --state 0").exit_code == 2);  // missing --N
}

TEST_CASE("crossmap") {
  const auto c = run_cli("crossmap coulomb --nO 5 --ellO 2");
  CHECK(c.exit_code == 0);
  CHECK(contains(c.out, "pass"));

  const auto m = run_cli("crossmap morse --nO 4 --ellO 1 --alpha 0.8");
  CHECK(m.exit_code == 0);

  // nu = ell >= 1 is required on the Morse side.
  CHECK(run_cli("crossmap morse --nO 4 --ellO 0 --alpha 0.8").exit_code == 2);
  // Coulomb images need odd n.
  CHECK(run_cli("crossmap coulomb --nO 4 --ellO 1").exit_code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("eval -a 1").exit_code == 2);
  CHECK(run_cli("check nonsense").exit_code == 2);
}
