#pragma once
/*
  cli.hpp
  -------
  Scenario engine behind the `workbench` executable: a ScenarioConfig is
  resolved (field search, weight parsing, invariant checks), a requested
  subset of named checks runs on a small worker pool, and the results are
  assembled into a versioned, deterministic JSON report.

    checks: params, dims, bk, shift, grpn, morita, appendix, grading,
            independence

  Report contract:
    * "schema": 1; config echo; one entry per check with status
      pass | fail | skip | xfail | xpass and a structured detail object;
      summary counts; a "timings" object (the only nondeterministic field,
      excluded from byte comparisons).
    * a cap_error anywhere inside a check marks it "skip", never "fail".
    * expect = "fail" applies to the intertwining checks (bk, shift): a
      failure becomes "xfail" (counted as pass), a pass becomes "xpass"
      (counted as fail).
    * process exit code: 0 if nothing failed (skips and xfails allowed),
      1 if any check failed or xpassed, 2 for configuration errors.

  The engine is header-only and field-kit generic so tests can drive it
  in-process over both Fp and QQ.
*/

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "workbench/fixedpoint.hpp"

namespace wb::cli {

inline constexpr const char* kToolName = "workbench";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchema = 1;

inline const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> v{
      "params", "dims",     "bk",      "shift",       "grpn",
      "morita", "appendix", "grading", "independence"};
  return v;
}

// ------------------------------------------------------------ configuration

struct ScenarioConfig {
  std::optional<unsigned long> e = 2;  // nullopt = infinity
  unsigned long p = 1;
  std::optional<unsigned long> d;      // level; defaults to lambda's level or 1
  unsigned n = 2;
  std::string lambda;                  // I-domain, "i:mult,i:mult"; empty = d*Lambda_0
  std::optional<FieldSpec> field;      // explicit field; otherwise auto-search
  std::uint64_t min_prime = 2;         // auto-search lower bound
  QFamily family = QFamily::SW;
  GrpnVariant variant = GrpnVariant::BMR;
  CompletionCaps caps;
  std::vector<std::string> checks{"all"};
  std::string expect = "pass";         // "fail": intertwining checks must fail
  int jobs = 1;
};

// "i:mult,i:mult" over the residue alphabet I
inline Weight parse_lambda(const std::string& s) {
  Weight w;
  w.dom = WeightDomain::I;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto colon = tok.find(':');
    check(colon != std::string::npos && colon > 0 && colon + 1 < tok.size(),
          "config: lambda entry '" + tok + "' is not of the form i:mult");
    try {
      long i = std::stol(tok.substr(0, colon));
      unsigned long m = std::stoul(tok.substr(colon + 1));
      check(m >= 1, "config: lambda multiplicity must be >= 1");
      w.set(i, 0, w.at(i, 0) + m);
    } catch (const std::invalid_argument&) {
      throw error("config: lambda entry '" + tok + "' is not numeric");
    } catch (const std::out_of_range&) {
      throw error("config: lambda entry '" + tok + "' is out of range");
    }
  }
  check(w.level() >= 1, "config: lambda must have level >= 1");
  return w;
}

// WORKBENCH_CAPS = "max_rules=N,max_word_len=N,max_pairs=N,max_basis=N"
// (any subset); unknown keys are configuration errors
inline void apply_env_caps(CompletionCaps& caps) {
  const char* env = std::getenv("WORKBENCH_CAPS");
  if (!env || !*env) return;
  std::stringstream ss(env);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    auto eq = tok.find('=');
    check(eq != std::string::npos, "WORKBENCH_CAPS: entry '" + tok +
                                       "' is not of the form key=value");
    auto key = tok.substr(0, eq);
    std::size_t val = 0;
    try {
      val = std::stoull(tok.substr(eq + 1));
    } catch (const std::exception&) {
      throw error("WORKBENCH_CAPS: value in '" + tok + "' is not a number");
    }
    if (key == "max_rules")
      caps.max_rules = val;
    else if (key == "max_word_len")
      caps.max_word_len = val;
    else if (key == "max_pairs")
      caps.max_pairs = val;
    else if (key == "max_basis")
      caps.max_basis = val;
    else
      throw error("WORKBENCH_CAPS: unknown key '" + key + "'");
  }
}

// resolved scenario: validated config, concrete field, concrete weight
struct Scenario {
  ScenarioConfig cfg;
  FieldSpec spec;
  Weight lambda;            // I-domain
  unsigned long level = 1;  // lambda level; r = level * p
  std::vector<std::string> checks;
};

inline Scenario resolve(ScenarioConfig cfg) {
  Scenario S;
  check(cfg.p >= 1, "config: p must be >= 1");
  check(cfg.n >= 1, "config: n must be >= 1");
  check(cfg.jobs >= 1, "config: jobs must be >= 1");
  check(cfg.expect == "pass" || cfg.expect == "fail",
        "config: expect must be 'pass' or 'fail'");
  if (cfg.e) check(*cfg.e >= 2, "config: finite e must be >= 2");
  if (!cfg.e)
    check(cfg.p <= 2, "config: e = infinity requires p <= 2 "
                      "(the rationals host only p-th roots of unity, p <= 2)");
  check(cfg.variant == GrpnVariant::BMR || cfg.p >= 2,
        "config: variant Ar requires p >= 2");

  // checks: expand "all", validate names, order canonically
  std::set<std::string> want;
  for (auto& c : cfg.checks) {
    if (c == "all") {
      for (auto& a : all_checks()) want.insert(a);
      continue;
    }
    bool known = false;
    for (auto& a : all_checks()) known = known || a == c;
    check(known, "config: unknown check '" + c + "'");
    want.insert(c);
  }
  check(!want.empty(), "config: no checks requested");
  for (auto& a : all_checks())
    if (want.count(a)) S.checks.push_back(a);
  for (auto& c : {"bk", "shift", "grpn", "appendix"})
    if (want.count(c))
      check(cfg.n >= 2, std::string("config: check '") + c + "' needs n >= 2");

  // weight and level
  if (cfg.lambda.empty()) {
    S.level = cfg.d.value_or(1);
    check(S.level >= 1, "config: d must be >= 1");
    S.lambda.dom = WeightDomain::I;
    S.lambda.set(0, 0, S.level);
  } else {
    S.lambda = parse_lambda(cfg.lambda);
    S.level = S.lambda.level();
    if (cfg.d)
      check(*cfg.d == S.level, "config: lambda level " +
                                   std::to_string(S.level) +
                                   " contradicts d = " + std::to_string(*cfg.d));
  }

  // field: explicit spec, prime search, or the rationals for e = infinity
  if (cfg.field) {
    S.spec = *cfg.field;
    check(S.spec.e == cfg.e && S.spec.p == cfg.p,
          "config: explicit field spec disagrees with (e, p)");
  } else if (cfg.e) {
    S.spec = find_prime_field(*cfg.e, cfg.p, cfg.min_prime);
  } else {
    S.spec.kind = "rationals";
    S.spec.q = "2";
    S.spec.zeta = cfg.p == 1 ? "1" : "-1";
    S.spec.e = std::nullopt;
    S.spec.p = cfg.p;
  }
  validate_field_spec(S.spec);

  apply_env_caps(cfg.caps);
  S.cfg = std::move(cfg);
  return S;
}

// --------------------------------------------------------------- reporting

struct CheckOutcome {
  std::string name;
  std::string status;  // pass | fail | skip | xfail | xpass
  json detail;
  std::int64_t ms = 0;
};

struct RunResult {
  json report;
  int exit_code = 0;
};

inline json config_echo(const Scenario& S) {
  json j;
  j["e"] = S.cfg.e ? json(*S.cfg.e) : json("inf");
  j["p"] = S.cfg.p;
  j["n"] = S.cfg.n;
  j["level"] = S.level;
  j["lambda"] = S.lambda.to_json();
  j["field"] = S.spec.to_json();
  j["family"] = qfamily_name(S.cfg.family);
  j["variant"] = S.cfg.variant == GrpnVariant::BMR ? "bmr" : "ar";
  json caps;
  caps["max_rules"] = S.cfg.caps.max_rules;
  caps["max_word_len"] = S.cfg.caps.max_word_len;
  caps["max_pairs"] = S.cfg.caps.max_pairs;
  caps["max_basis"] = S.cfg.caps.max_basis;
  j["caps"] = caps;
  j["checks"] = S.checks;
  j["expect"] = S.cfg.expect;
  j["jobs"] = S.cfg.jobs;
  return j;
}

// FNV-1a, for short stable digests of long fingerprint strings
inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ------------------------------------------------------------------ engine

template <class K>
struct Engine {
  Scenario S;
  K field;
  AlgebraContext<K> C;

  Engine(Scenario s, K k)
      : S(std::move(s)), field(std::move(k)), C(make_context(field, S.spec)) {}

  Weight wk() const {
    return collapse_weight(C.par, expand_weight(C.par, S.lambda));
  }
  unsigned long r() const { return S.level * C.par.p; }
  unsigned long long expected_dim() const {
    unsigned long long d = 1;
    for (unsigned a = 0; a < S.cfg.n; ++a) d *= r();
    for (unsigned a = 2; a <= S.cfg.n; ++a) d *= a;
    return d;
  }
  HeckeModel<K> hecke() const {
    return build_hecke_model(C, S.lambda, S.cfg.n, S.cfg.caps);
  }

  // ---- individual checks; each returns (ok, detail)

  std::pair<bool, json> run_params() const {
    json d;
    d["e"] = C.par.e ? json(*C.par.e) : json("inf");
    d["p"] = C.par.p;
    d["pprime"] = C.par.pprime;
    d["eta"] = C.par.eta;
    d["omega"] = C.par.omega;
    d["r"] = r();
    d["level"] = S.level;
    d["field"] = S.spec.to_json();
    return {true, d};
  }

  std::pair<bool, json> run_dims() const {
    json d;
    auto H = hecke();
    auto expect = expected_dim();
    d["hecke"] = H.dim;
    d["expected"] = expect;
    auto MK = build_klr_model(C, klr_cyclotomic_presentation(C, wk(), S.cfg.n),
                              S.cfg.caps);
    d["klr"] = MK.dim;
    auto MF = build_klr_model(C, fixed_point_presentation(C, wk(), S.cfg.n),
                              S.cfg.caps);
    d["fixed"] = MF.dim;
    d["fixed_expected"] = expect / C.par.p;
    bool ok = H.dim == expect && MK.dim == expect &&
              MF.dim == expect / C.par.p;
    return {ok, d};
  }

  std::pair<bool, json> run_bk() const {
    auto H = hecke();
    auto klrP = klr_cyclotomic_presentation(C, wk(), S.cfg.n);
    auto G = g_images(H, klrP, S.cfg.family);
    CheckReport rep;
    rep.merge(verify_g_relations(H, klrP, G));
    rep.merge(verify_roundtrip(H, klrP, G));
    rep.merge(verify_bk_property(H, S.cfg.family));
    rep.merge(verify_intertwiner_phi(H));
    return {rep.all(), rep.to_json()};
  }

  std::pair<bool, json> run_shift() const {
    auto H = hecke();
    auto SM = build_shift_model(H);
    auto klrP = klr_cyclotomic_presentation(C, wk(), S.cfg.n);
    auto G = g_images(H, klrP, S.cfg.family);
    CheckReport rep;
    rep.merge(verify_shift(H, SM));
    rep.merge(verify_shift_intertwining(H, SM, klrP, G));
    return {rep.all(), rep.to_json()};
  }

  std::pair<bool, json> run_grpn() const {
    auto H = hecke();
    auto SM = build_shift_model(H);
    auto PM = build_phi_model(H);
    auto P = grpn_presentation(C, S.lambda, S.cfg.n, S.cfg.variant);
    CheckReport rep = verify_phi(H, SM, PM, P);
    auto G = build_pres_model(std::move(P), S.cfg.caps);
    rep.add("presentation_dimension", G.dim == H.dim / C.par.p,
            std::to_string(G.dim) + " vs dim/p = " +
                std::to_string(H.dim / C.par.p));
    return {rep.all(), rep.to_json()};
  }

  std::pair<bool, json> run_morita() const {
    auto W = wk();
    std::map<long, unsigned long long> per_component;
    for (auto& [key, mult] : W.mult) per_component[key.second] += mult;
    std::vector<unsigned long long> ell;
    for (auto& [j, m] : per_component) ell.push_back(m);
    auto M = morita_dimension_identity(r(), S.cfg.n, ell);
    auto H = hecke();
    CheckReport rep = verify_blocks(H);
    rep.add("dimension_identity", M.ok,
            std::to_string(M.lhs) + " = " + std::to_string(M.rhs));
    json d = rep.to_json();
    d["morita"] = M.to_json();
    return {rep.all(), d};
  }

  std::pair<bool, json> run_appendix() const {
    if (C.par.p == 1) {
      auto rep = appendix_p1(C, S.lambda, S.cfg.n, S.cfg.caps);
      return {rep.all(), rep.to_json()};
    }
    auto H = hecke();
    CheckReport rep;
    rep.merge(appendix_a2(H), "a2_");
    rep.merge(appendix_a3(H, S.lambda, S.cfg.caps), "a3_");
    return {rep.all(), rep.to_json()};
  }

  std::pair<bool, json> run_grading() const {
    auto R = graded_compare(C, wk(), S.cfg.n, expected_dim(), S.cfg.caps);
    json d = R.to_json();
    return {R.rows.all(), d};
  }

  std::pair<bool, json> run_independence() const {
    json d;
    if constexpr (!std::is_same_v<K, Fp>) {
      d["reason"] = "not applicable: needs a prime field with finite e";
      return {true, d};  // recorded as skip by the caller via the reason key
    } else {
      if (!S.spec.e || *S.spec.e < 3) {
        d["reason"] =
            "not applicable: e >= 3 required for a second parameter of order e";
        return {true, d};
      }
      // enumerate parameters q' of order e; for each, the smallest zeta' of
      // order p giving the same derived (p', eta, omega) and vertex set
      auto base_wk = wk();
      json tried = json::array();
      std::vector<std::pair<std::uint64_t, std::string>> prints;
      for (std::uint64_t x = 1; x < field.ell; ++x) {
        if (field.order(x).value != *S.spec.e) continue;
        for (std::uint64_t z = 1; z < field.ell; ++z) {
          if (field.order(z).value != S.spec.p) continue;
          FieldSpec sp = S.spec;
          sp.q = std::to_string(x);
          sp.zeta = std::to_string(z);
          try {
            auto C2 = make_context(field, sp);
            if (C2.par.pprime != C.par.pprime || C2.par.eta != C.par.eta ||
                C2.par.omega != C.par.omega)
              continue;
            auto wk2 = collapse_weight(C2.par,
                                       expand_weight(C2.par, S.lambda));
            if (wk2.mult != base_wk.mult) continue;
            prints.emplace_back(
                x, q_independence_fingerprint(C2, wk2, S.cfg.n, S.cfg.caps));
            json t;
            t["q"] = x;
            t["zeta"] = z;
            t["fingerprint_fnv1a"] = fnv1a_hex(prints.back().second);
            tried.push_back(t);
            break;  // first compatible zeta' for this q'
          } catch (const cap_error&) {
            throw;
          } catch (const error&) {
            continue;  // incompatible trio; keep searching
          }
        }
      }
      d["parameters"] = tried;
      if (prints.size() < 2) {
        d["reason"] = "not applicable: only one parameter of order e admits "
                      "this configuration";
        return {true, d};
      }
      bool ok = true;
      for (auto& pr : prints) ok = ok && pr.second == prints.front().second;
      d["equal"] = ok;
      d["fingerprint_length"] = prints.front().second.size();
      return {ok, d};
    }
  }

  std::pair<bool, json> dispatch(const std::string& name) const {
    if (name == "params") return run_params();
    if (name == "dims") return run_dims();
    if (name == "bk") return run_bk();
    if (name == "shift") return run_shift();
    if (name == "grpn") return run_grpn();
    if (name == "morita") return run_morita();
    if (name == "appendix") return run_appendix();
    if (name == "grading") return run_grading();
    if (name == "independence") return run_independence();
    throw error("unknown check '" + name + "'");
  }
};

// expect = "fail" applies to the checks that witness the intertwining claim
inline bool expect_applies(const std::string& check_name) {
  return check_name == "bk" || check_name == "shift";
}

template <class K>
RunResult run_scenario_with(const Scenario& S, K field) {
  Engine<K> eng(S, std::move(field));

  std::vector<CheckOutcome> outcomes(S.checks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= S.checks.size()) return;
      auto& out = outcomes[i];
      out.name = S.checks[i];
      stopwatch sw;
      try {
        auto [ok, detail] = eng.dispatch(out.name);
        out.detail = std::move(detail);
        if (out.detail.contains("reason"))
          out.status = "skip";
        else
          out.status = ok ? "pass" : "fail";
      } catch (const cap_error& e) {
        out.status = "skip";
        out.detail = json{{"reason", std::string("cap: ") + e.what()}};
      } catch (const error& e) {
        out.status = "fail";
        out.detail = json{{"error", e.what()}};
      }
      if (S.cfg.expect == "fail" && expect_applies(out.name)) {
        if (out.status == "fail") out.status = "xfail";
        else if (out.status == "pass") out.status = "xpass";
      }
      out.ms = sw.ms();
    }
  };

  int jobs = std::min<int>(S.cfg.jobs, static_cast<int>(S.checks.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  json checks = json::array();
  json timings;
  std::map<std::string, int> counts{
      {"pass", 0}, {"fail", 0}, {"skip", 0}, {"xfail", 0}, {"xpass", 0}};
  bool failed = false;
  for (auto& out : outcomes) {
    json jc;
    jc["name"] = out.name;
    jc["status"] = out.status;
    jc["detail"] = out.detail;
    checks.push_back(jc);
    timings[out.name] = out.ms;
    ++counts[out.status];
    failed = failed || out.status == "fail" || out.status == "xpass";
  }

  RunResult R;
  R.report["schema"] = kSchema;
  R.report["tool"] = json{{"name", kToolName}, {"version", kToolVersion}};
  R.report["seed"] = 0;
  R.report["config"] = config_echo(S);
  R.report["checks"] = checks;
  R.report["summary"] = counts;
  R.report["timings"] = timings;
  R.exit_code = failed ? 1 : 0;
  return R;
}

inline RunResult run_scenario(const Scenario& S) {
  if (S.spec.kind == "prime")
    return run_scenario_with(S, Fp{S.spec.modulus});
  return run_scenario_with(S, QQ{});
}

// ------------------------------------------------------- auxiliary commands

// `fields`: report the auto-search result for (e, p)
inline json fields_report(unsigned long e, unsigned long p,
                          std::uint64_t min_prime) {
  auto spec = find_prime_field(e, p, min_prime);
  json j;
  j["schema"] = kSchema;
  j["field"] = spec.to_json();
  return j;
}

// `gb`: build one presentation, complete it, optionally dump rules/.pres
template <class K>
json gb_report(const Engine<K>& eng, const std::string& preset,
               const std::string& dump_rules, const std::string& dump_pres) {
  const auto& C = eng.C;
  const auto& S = eng.S;
  Presentation<K> P(C.field);
  if (preset == "ariki-koike")
    P = ariki_koike_presentation(C, S.lambda, S.cfg.n);
  else if (preset == "klr")
    P = klr_cyclotomic_presentation(C, eng.wk(), S.cfg.n);
  else if (preset == "klr-fixed")
    P = fixed_point_presentation(C, eng.wk(), S.cfg.n);
  else if (preset == "grpn")
    P = grpn_presentation(C, S.lambda, S.cfg.n, S.cfg.variant);
  else
    throw error("gb: unknown preset '" + preset +
                "' (ariki-koike | klr | klr-fixed | grpn)");

  json j;
  j["schema"] = kSchema;
  j["preset"] = preset;
  j["kind"] = P.kind;
  j["ngens"] = P.ngens();
  j["nrels"] = P.relations.size();

  if (!dump_pres.empty()) {
    std::ofstream out(dump_pres);
    check(out.good(), "gb: cannot open '" + dump_pres + "'");
    out << P.to_pres();
  }

  auto rs = complete_presentation(P, S.cfg.caps);
  std::size_t active = 0;
  for (auto& r : rs.rules) active += r.active;
  j["rules"] = active;
  switch (rs.stats.status) {
    case CompletionStatus::completed: j["status"] = "completed"; break;
    case CompletionStatus::capped_rules: j["status"] = "capped_rules"; break;
    case CompletionStatus::capped_word_len:
      j["status"] = "capped_word_len";
      break;
    case CompletionStatus::capped_pairs: j["status"] = "capped_pairs"; break;
  }
  if (!dump_rules.empty()) {
    std::ofstream out(dump_rules);
    check(out.good(), "gb: cannot open '" + dump_rules + "'");
    out << rs.dump(P.labels);
  }
  if (rs.stats.status == CompletionStatus::completed) {
    auto nb = rs.enumerate_basis(S.cfg.caps);
    if (nb.complete) j["dimension"] = nb.words.size();
    else j["dimension_status"] = "basis enumeration capped";
  }
  return j;
}

// filename-safe residue sequence tag: "0-1_1-1" for e[0:1|1:1]
inline std::string seq_file_tag(const Seq& s) {
  std::string out;
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (a) out += "_";
    out += std::to_string(s[a].first) + "-" + std::to_string(s[a].second);
  }
  return out;
}

// `dump-matrices`: regular-representation matrices as CSV (row-major, exact
// residues), idempotents keyed by residue sequence; returns the index
template <class K>
json dump_matrices(const Engine<K>& eng, const std::string& dir) {
  const K& k = eng.C.field;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  check(!ec, "dump-matrices: cannot create '" + dir + "': " + ec.message());
  auto H = eng.hecke();
  auto write_csv = [&](const std::string& name, const Mat<K>& m) {
    std::string path = dir + "/" + name;
    std::ofstream out(path);
    check(out.good(), "dump-matrices: cannot open '" + path + "'");
    for (std::size_t i = 0; i < m.rows; ++i) {
      for (std::size_t j = 0; j < m.cols; ++j) {
        if (j) out << ",";
        out << k.str(m.at(i, j));
      }
      out << "\n";
    }
  };

  json files = json::object();
  write_csv("S.csv", H.Smat());
  files["S"] = "S.csv";
  for (unsigned a = 1; a < H.n; ++a) {
    auto name = "T" + std::to_string(a) + ".csv";
    write_csv(name, H.T(a));
    files["T" + std::to_string(a)] = name;
  }
  for (unsigned a = 1; a <= H.n; ++a) {
    auto name = "X" + std::to_string(a) + ".csv";
    write_csv(name, H.X[a]);
    files["X" + std::to_string(a)] = name;
  }
  json idem = json::object();
  for (auto& s : H.seqs) {
    auto name = "E_" + seq_file_tag(s) + ".csv";
    write_csv(name, *H.E(s));
    idem[detail::seq_label(s)] = name;
  }

  json j;
  j["schema"] = kSchema;
  j["dimension"] = H.dim;
  j["generators"] = files;
  j["idempotents"] = idem;
  std::string path = dir + "/index.json";
  std::ofstream out(path);
  check(out.good(), "dump-matrices: cannot open '" + path + "'");
  out << j.dump(2) << "\n";
  return j;
}

}  // namespace wb::cli
