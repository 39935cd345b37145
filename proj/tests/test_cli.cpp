#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "workbench/cli.hpp"

using namespace wb;
using cli::ScenarioConfig;

namespace {

ScenarioConfig base_cfg(unsigned long e, unsigned long p, unsigned n,
                        std::vector<std::string> checks) {
  ScenarioConfig c;
  c.e = e;
  c.p = p;
  c.n = n;
  c.checks = std::move(checks);
  return c;
}

const json& check_named(const json& report, const std::string& name) {
  for (auto& c : report.at("checks"))
    if (c.at("name") == name) return c;
  throw error("check not in report: " + name);
}

}  // namespace

TEST_CASE("scenario resolution: defaults, weights, field search", "[cli]") {
  auto S = cli::resolve(base_cfg(2, 2, 2, {"all"}));
  REQUIRE(S.checks == cli::all_checks());
  REQUIRE(S.spec.modulus == 3);
  REQUIRE(S.spec.q == "2");
  REQUIRE(S.level == 1);

  // lambda parsing and the d consistency rule
  auto cfg = base_cfg(2, 2, 2, {"params"});
  cfg.lambda = "0:1,1:2";
  auto S2 = cli::resolve(cfg);
  REQUIRE(S2.level == 3);
  REQUIRE(S2.lambda.at(0, 0) == 1);
  REQUIRE(S2.lambda.at(1, 0) == 2);
  cfg.d = 2;
  REQUIRE_THROWS_AS(cli::resolve(cfg), error);

  // invariant violations are configuration errors
  REQUIRE_THROWS_AS(cli::resolve(base_cfg(1, 2, 2, {"params"})), error);
  REQUIRE_THROWS_AS(cli::resolve(base_cfg(2, 2, 2, {"frobnicate"})), error);
  auto ar1 = base_cfg(2, 1, 2, {"params"});
  ar1.variant = GrpnVariant::Ar;
  REQUIRE_THROWS_AS(cli::resolve(ar1), error);
  auto inf3 = base_cfg(2, 3, 2, {"params"});
  inf3.e = std::nullopt;
  REQUIRE_THROWS_AS(cli::resolve(inf3), error);
  auto exp = base_cfg(2, 2, 2, {"params"});
  exp.expect = "maybe";
  REQUIRE_THROWS_AS(cli::resolve(exp), error);
  auto n1 = base_cfg(2, 2, 1, {"bk"});
  REQUIRE_THROWS_AS(cli::resolve(n1), error);
}

TEST_CASE("env cap overrides", "[cli]") {
  CompletionCaps caps;
  setenv("WORKBENCH_CAPS", "max_rules=17,max_basis=99", 1);
  cli::apply_env_caps(caps);
  REQUIRE(caps.max_rules == 17);
  REQUIRE(caps.max_basis == 99);
  REQUIRE(caps.max_word_len == 64);

  setenv("WORKBENCH_CAPS", "max_frobnicate=1", 1);
  REQUIRE_THROWS_AS(cli::apply_env_caps(caps), error);
  setenv("WORKBENCH_CAPS", "max_rules=tiny", 1);
  REQUIRE_THROWS_AS(cli::apply_env_caps(caps), error);
  unsetenv("WORKBENCH_CAPS");
}

TEST_CASE("run_scenario: full suite on (e,p) = (2,2)", "[cli]") {
  auto R = cli::run_scenario(cli::resolve(base_cfg(2, 2, 2, {"all"})));
  REQUIRE(R.exit_code == 0);
  REQUIRE(R.report.at("schema") == 1);
  for (auto& name : cli::all_checks()) {
    auto& c = check_named(R.report, name);
    if (name == "independence")
      REQUIRE(c.at("status") == "skip");  // only one parameter of order 2
    else
      REQUIRE(c.at("status") == "pass");
  }
  auto& dims = check_named(R.report, "dims").at("detail");
  REQUIRE(dims.at("hecke") == 8);
  REQUIRE(dims.at("klr") == 8);
  REQUIRE(dims.at("fixed") == 4);
  auto& summary = R.report.at("summary");
  REQUIRE(summary.at("pass") == 8);
  REQUIRE(summary.at("skip") == 1);
}

TEST_CASE("expected-failure semantics on the intertwining checks", "[cli]") {
  // BK family on (e,p) = (3,3): fails without expect, xfails with it
  auto cfg = base_cfg(3, 3, 2, {"shift"});
  cfg.family = QFamily::BK;
  auto R1 = cli::run_scenario(cli::resolve(cfg));
  REQUIRE(R1.exit_code == 1);
  REQUIRE(check_named(R1.report, "shift").at("status") == "fail");

  cfg.expect = "fail";
  auto R2 = cli::run_scenario(cli::resolve(cfg));
  REQUIRE(R2.exit_code == 0);
  REQUIRE(check_named(R2.report, "shift").at("status") == "xfail");

  // a pass where failure was declared is itself a failure
  cfg.family = QFamily::SW;
  auto R3 = cli::run_scenario(cli::resolve(cfg));
  REQUIRE(R3.exit_code == 1);
  REQUIRE(check_named(R3.report, "shift").at("status") == "xpass");
}

TEST_CASE("caps turn checks into skips, never failures", "[cli]") {
  auto cfg = base_cfg(2, 2, 2, {"dims"});
  cfg.caps.max_rules = 3;  // enough for Ariki-Koike here, not for KLR
  auto R = cli::run_scenario(cli::resolve(cfg));
  REQUIRE(R.exit_code == 0);
  auto& c = check_named(R.report, "dims");
  REQUIRE(c.at("status") == "skip");
  auto reason = c.at("detail").at("reason").get<std::string>();
  REQUIRE(reason.find("cap") != std::string::npos);
}

TEST_CASE("reports are deterministic modulo timings", "[cli]") {
  auto cfg = base_cfg(3, 3, 2, {"all"});
  cfg.jobs = 4;
  auto S = cli::resolve(cfg);
  auto R1 = cli::run_scenario(S);
  auto R2 = cli::run_scenario(S);
  R1.report.erase("timings");
  R2.report.erase("timings");
  REQUIRE(R1.report.dump() == R2.report.dump());
  REQUIRE(R1.exit_code == 0);

  // parallelism does not change check content
  cfg.jobs = 1;
  auto R3 = cli::run_scenario(cli::resolve(cfg));
  R3.report.erase("timings");
  REQUIRE(R1.report.at("checks").dump() == R3.report.at("checks").dump());
}

TEST_CASE("rationals host the infinite-e scenario", "[cli]") {
  auto cfg = base_cfg(2, 2, 2, {"params", "dims"});
  cfg.e = std::nullopt;
  auto S = cli::resolve(cfg);
  REQUIRE(S.spec.kind == "rationals");
  auto R = cli::run_scenario(S);
  REQUIRE(R.exit_code == 0);
  auto& p = check_named(R.report, "params").at("detail");
  REQUIRE(p.at("pprime") == 2);
  REQUIRE(p.at("eta") == 0);
  auto& d = check_named(R.report, "dims").at("detail");
  REQUIRE(d.at("hecke") == 8);
  REQUIRE(d.at("fixed") == 4);
}

TEST_CASE("independence check compares both admissible parameters", "[cli]") {
  auto R = cli::run_scenario(cli::resolve(base_cfg(3, 3, 2, {"independence"})));
  REQUIRE(R.exit_code == 0);
  auto& c = check_named(R.report, "independence");
  REQUIRE(c.at("status") == "pass");
  auto& d = c.at("detail");
  REQUIRE(d.at("equal") == true);
  REQUIRE(d.at("parameters").size() == 2);
  REQUIRE(d.at("parameters")[0].at("q") == 2);
  REQUIRE(d.at("parameters")[1].at("q") == 4);
}
