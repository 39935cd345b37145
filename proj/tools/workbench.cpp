// workbench: scenario-driven front end over the header-only engine.
//
//   workbench params --e 2 --p 6
//   workbench fields --e 3 --p 3
//   workbench gb --preset ariki-koike --e 2 --p 3 --n 2 --dump rules.txt
//   workbench dims --e 2 --p 2 --n 2
//   workbench verify shift --family bk --e 3 --p 3 --n 2 --expect fail
//   workbench run --e 2 --p 2 --d 1 --n 2 --checks all
//   workbench dump-matrices --e 2 --p 2 --n 2 --out-dir matrices/
//
// Scenario options can also come from a TOML file via --config; command-line
// flags win.  The env var WORKBENCH_CAPS ("max_rules=N,...") overrides
// completion caps globally.  Exit codes: 0 all requested checks passed
// (skips and expected failures included), 1 any check failed, 2 bad
// configuration.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "workbench/cli.hpp"

namespace {

using namespace wb;

struct Opts {
  cli::ScenarioConfig cfg;
  std::string e_str = "2";
  std::string family = "sw";
  std::string variant = "bmr";
  std::string checks = "all";
  std::uint64_t modulus = 0;  // explicit field trio (all three or none)
  std::string field_q, field_zeta;
  std::string out;        // report destination; empty = stdout
  std::string preset;     // gb
  std::string dump_rules; // gb
  std::string dump_pres;  // gb
  std::string out_dir;    // dump-matrices
  std::string which;      // verify
};

void add_scenario_options(CLI::App* cmd, Opts& o) {
  cmd->add_option("--e", o.e_str,
                  "quantum characteristic e (integer >= 2, or 'inf')")
      ->capture_default_str();
  cmd->add_option("--p", o.cfg.p, "order of the shift automorphism")
      ->capture_default_str();
  cmd->add_option("--d", o.cfg.d, "level of the dominant weight");
  cmd->add_option("--n", o.cfg.n, "number of strands")->capture_default_str();
  cmd->add_option("--lambda", o.cfg.lambda,
                  "dominant weight as 'i:mult,i:mult' (default 0:d)");
  cmd->add_option("--modulus", o.modulus,
                  "explicit prime modulus (with --q and --zeta)");
  cmd->add_option("--q", o.field_q, "explicit Hecke parameter literal");
  cmd->add_option("--zeta", o.field_zeta, "explicit p-th root literal");
  cmd->add_option("--min-prime", o.cfg.min_prime,
                  "lower bound for the field auto-search");
  cmd->add_option("--family", o.family, "Q-polynomial family")
      ->check(CLI::IsMember({"sw", "bk"}))
      ->capture_default_str();
  cmd->add_option("--variant", o.variant, "G(r,p,n) presentation variant")
      ->check(CLI::IsMember({"bmr", "ar"}))
      ->capture_default_str();
  cmd->add_option("--max-rules", o.cfg.caps.max_rules, "completion rule cap")
      ->capture_default_str();
  cmd->add_option("--max-word-len", o.cfg.caps.max_word_len,
                  "completion word-length cap")
      ->capture_default_str();
  cmd->add_option("--max-pairs", o.cfg.caps.max_pairs,
                  "completion S-pair cap")
      ->capture_default_str();
  cmd->add_option("--max-basis", o.cfg.caps.max_basis,
                  "basis enumeration cap")
      ->capture_default_str();
  cmd->add_option("--expect", o.cfg.expect,
                  "'fail' turns intertwining failures into expected ones")
      ->check(CLI::IsMember({"pass", "fail"}))
      ->capture_default_str();
  cmd->add_option("--jobs", o.cfg.jobs, "worker threads for independent checks")
      ->capture_default_str();
  cmd->add_option("--out", o.out, "write the JSON report here (default stdout)");
}

cli::ScenarioConfig finalize(Opts& o) {
  auto cfg = o.cfg;
  if (o.e_str == "inf" || o.e_str == "infinity") {
    cfg.e = std::nullopt;
  } else {
    try {
      cfg.e = std::stoul(o.e_str);
    } catch (const std::exception&) {
      throw error("config: --e must be an integer >= 2 or 'inf'");
    }
  }
  cfg.family = o.family == "bk" ? QFamily::BK : QFamily::SW;
  cfg.variant = o.variant == "ar" ? GrpnVariant::Ar : GrpnVariant::BMR;
  if (o.modulus || !o.field_q.empty() || !o.field_zeta.empty()) {
    check(o.modulus && !o.field_q.empty() && !o.field_zeta.empty(),
          "config: an explicit field needs --modulus, --q and --zeta");
    FieldSpec s;
    s.kind = "prime";
    s.modulus = o.modulus;
    s.q = o.field_q;
    s.zeta = o.field_zeta;
    s.e = cfg.e;
    s.p = cfg.p;
    cfg.field = s;
  }
  cfg.checks.clear();
  std::stringstream ss(o.checks);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) cfg.checks.push_back(tok);
  if (cfg.checks.empty()) cfg.checks.push_back("all");
  return cfg;
}

void emit(const json& report, const std::string& out) {
  if (out.empty()) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  check(f.good(), "cannot open '" + out + "' for writing");
  f << report.dump(2) << "\n";
}

int run_checks(Opts& o, std::vector<std::string> checks) {
  auto cfg = finalize(o);
  if (!checks.empty()) cfg.checks = std::move(checks);
  auto S = cli::resolve(std::move(cfg));
  auto R = cli::run_scenario(S);
  emit(R.report, o.out);
  return R.exit_code;
}

template <class F>
int with_engine(Opts& o, F&& body) {
  auto cfg = finalize(o);
  cfg.checks = {"params"};  // engine construction needs a nonempty set
  auto S = cli::resolve(std::move(cfg));
  if (S.spec.kind == "prime") {
    cli::Engine<Fp> eng(S, Fp{S.spec.modulus});
    return body(eng);
  }
  cli::Engine<QQ> eng(S, QQ{});
  return body(eng);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact workbench for cyclotomic Hecke and quiver Hecke algebras"};
  app.set_version_flag("--version", cli::kToolVersion);
  app.set_config("--config", "", "TOML scenario file (flags win)");
  app.require_subcommand(1);

  Opts o;

  auto* c_params = app.add_subcommand("params", "derived (p', eta, omega)");
  add_scenario_options(c_params, o);

  auto* c_fields = app.add_subcommand(
      "fields", "smallest prime field hosting the (e, p) pair");
  add_scenario_options(c_fields, o);

  auto* c_gb = app.add_subcommand(
      "gb", "complete one presentation; dump rules and dimension");
  add_scenario_options(c_gb, o);
  c_gb->add_option("--preset", o.preset,
                   "ariki-koike | klr | klr-fixed | grpn")
      ->required();
  c_gb->add_option("--dump", o.dump_rules, "write the rewrite rules here");
  c_gb->add_option("--dump-pres", o.dump_pres,
                   "write the presentation (.pres) here");

  auto* c_dims = app.add_subcommand("dims", "dimension table for the scenario");
  add_scenario_options(c_dims, o);

  auto* c_verify = app.add_subcommand("verify", "run one named check suite");
  add_scenario_options(c_verify, o);
  c_verify
      ->add_option("which", o.which,
                   "bk | shift | grpn | morita | appendix | independence | all")
      ->required()
      ->check(CLI::IsMember({"bk", "shift", "grpn", "morita", "appendix",
                             "independence", "all"}));

  auto* c_dump = app.add_subcommand("dump-matrices",
                                    "CSV regular-representation matrices");
  add_scenario_options(c_dump, o);
  c_dump->add_option("--out-dir", o.out_dir, "output directory (created if absent)")
      ->required();

  auto* c_run = app.add_subcommand("run", "run a scenario's check suite");
  add_scenario_options(c_run, o);
  c_run->add_option("--checks", o.checks,
                    "comma-separated subset of: params,dims,bk,shift,grpn,"
                    "morita,appendix,grading,independence (or 'all')")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(c_params)) return run_checks(o, {"params"});
    if (app.got_subcommand(c_dims)) return run_checks(o, {"dims"});
    if (app.got_subcommand(c_run)) return run_checks(o, {});
    if (app.got_subcommand(c_verify)) {
      if (o.which == "all") return run_checks(o, cli::all_checks());
      return run_checks(o, {o.which});
    }
    if (app.got_subcommand(c_fields)) {
      auto cfg = finalize(o);
      check(cfg.e.has_value(), "fields: e must be finite");
      emit(cli::fields_report(*cfg.e, cfg.p, cfg.min_prime), o.out);
      return 0;
    }
    if (app.got_subcommand(c_gb)) {
      return with_engine(o, [&](auto& eng) {
        emit(cli::gb_report(eng, o.preset, o.dump_rules, o.dump_pres), o.out);
        return 0;
      });
    }
    if (app.got_subcommand(c_dump)) {
      return with_engine(o, [&](auto& eng) {
        emit(cli::dump_matrices(eng, o.out_dir), o.out);
        return 0;
      });
    }
    throw error("no subcommand selected");
  } catch (const cap_error& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 1;
  } catch (const error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
