#pragma once
/*
  presentations.hpp — the presented algebras as concrete Presentation values:

    * Ariki-Koike H_n(q, zeta) with the reduced cyclotomic relation
      prod_{(i,j) in K} (S - zeta^j q^i)^{Lambda_{i,j}} = 0;
    * the Hecke algebra of G(r,p,n), in the big-braid (BMR) form and the
      sum-formula (Ar) form (negative powers cleared by an invertible factor);
    * the cyclotomic quiver Hecke algebra R^Lambda (thirteen relation
      families plus y_1^{Lambda_{k_1}} e(k) = 0), graded;
    * its sigma-fixed-point presentation over orbit classes e(gamma).

  Generator numbering follows the completion-friendly precedence: idempotents
  first, then y's, then psi's (for the Hecke types, S/s before T/t), so the
  default degree-lex order on generator ids is already the intended one.

  Presentations serialize to JSON and to a line-based ".pres" text format;
  both round-trip.
*/

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "workbench/params.hpp"
#include "workbench/quiver.hpp"
#include "workbench/rewrite.hpp"

namespace wb {

// ------------------------------------------------------------------ context

// Everything a configuration determines: field elements, derived parameters,
// the quiver, and the vertex value table.
template <class K>
struct AlgebraContext {
  K field;
  FieldSpec spec;
  typename K::Elem q, zeta;
  CycloParams par;
  Quiver quiver;
  VertexValues<K> values;
};

template <class K>
AlgebraContext<K> make_context(const K& field, const FieldSpec& spec,
                               long window = 6) {
  validate_field_spec(spec);
  auto q = field.parse(spec.q);
  auto zeta = field.parse(spec.zeta);
  std::optional<long> e;
  if (spec.e) e = static_cast<long>(*spec.e);
  auto par = derive_params(field, q, zeta, e, spec.p);
  Quiver quiver{par, e ? 0 : window};
  VertexValues<K> values(field, quiver, q, zeta);
  return AlgebraContext<K>{field, spec, q, zeta, par, quiver,
                           std::move(values)};
}

// ------------------------------------------------------------- presentation

template <class K>
struct Presentation {
  explicit Presentation(K k) : field(std::move(k)) {}

  K field;
  FieldSpec spec;
  std::string kind;  // ariki_koike | klr_cyclotomic | klr_fixed | grpn_bmr | grpn_ar
  bool unital = true;
  std::vector<std::string> labels;
  std::vector<std::optional<long>> degree;  // fixed degrees; psi's are contextual
  std::vector<NCPoly<K>> relations;

  // layout metadata for grading / idempotent handling
  std::set<Gen> idempotents;
  std::map<Gen, Seq> idem_seq;            // idempotent -> residue sequence (orbit rep)
  std::map<Gen, std::size_t> psi_pos;     // psi generator -> position a (1-based)
  std::map<Gen, std::size_t> y_pos;       // y generator -> position a (1-based)
  std::optional<Quiver> quiver;
  bool fixed_orbits = false;              // idem_seq entries are orbit representatives
  json metadata = json::object();

  std::size_t ngens() const { return labels.size(); }

  Gen add_gen(const std::string& label, std::optional<long> deg = {}) {
    labels.push_back(label);
    degree.push_back(deg);
    return static_cast<Gen>(labels.size() - 1);
  }

  json to_json() const;
  std::string to_pres() const;
};

// free-algebra builder bound to a presentation's field
template <class K>
struct FreeAlg {
  const K& k;
  MonomialOrder ord;  // only used to keep polynomials normalized

  NCPoly<K> term(Word w, typename K::Elem c) const {
    return np_term(k, std::move(w), std::move(c));
  }
  NCPoly<K> word(Word w) const { return term(std::move(w), k.one()); }
  NCPoly<K> gen(Gen g) const { return word({g}); }
  NCPoly<K> one() const { return word({}); }
  NCPoly<K> add(const NCPoly<K>& a, const NCPoly<K>& b) const {
    return np_add(k, ord, a, b);
  }
  NCPoly<K> sub(const NCPoly<K>& a, const NCPoly<K>& b) const {
    return np_sub(k, ord, a, b);
  }
  NCPoly<K> mul(const NCPoly<K>& a, const NCPoly<K>& b) const {
    return np_mul(k, ord, a, b);
  }
  NCPoly<K> scale(typename K::Elem c, NCPoly<K> a) const {
    return np_scale(k, std::move(c), std::move(a));
  }
  NCPoly<K> pow(const NCPoly<K>& a, unsigned long m) const {
    auto r = one();
    for (unsigned long t = 0; t < m; ++t) r = mul(r, a);
    return r;
  }
  // product of the words of gens in the given sequence
  NCPoly<K> prod(const std::vector<Gen>& gs) const {
    Word w(gs.begin(), gs.end());
    return word(std::move(w));
  }
};

// expanded univariate polynomial prod (x - value)^mult as a relation in gen g
template <class K>
NCPoly<K> cyclotomic_relation(const K& k, Gen g,
                              const std::vector<std::pair<typename K::Elem,
                                                          unsigned long>>& roots) {
  Poly1<K> f = p1_const(k, k.one());
  for (auto& [v, m] : roots) f = p1_mul(k, f, p1_pow(k, p1_linear(k, v), m));
  std::vector<std::pair<Word, typename K::Elem>> terms;
  for (std::size_t d = 0; d < f.c.size(); ++d) {
    if (k.is_zero(f.c[d])) continue;
    terms.push_back({Word(d, g), f.c[d]});
  }
  return np_normalize(k, MonomialOrder{}, std::move(terms));
}

// --------------------------------------------------------------- Ariki-Koike

// Lambda may be an I-weight (level d; expanded j-independently to level r),
// an IxJ-weight (level r; collapsed to K), or a K-weight (level r).
template <class K>
Presentation<K> ariki_koike_presentation(const AlgebraContext<K>& C,
                                         Weight Lambda, unsigned n) {
  const K& k = C.field;
  check(n >= 1, "ariki_koike: n >= 1 required");
  if (Lambda.dom == WeightDomain::I)
    Lambda = collapse_weight(C.par, expand_weight(C.par, Lambda));
  else if (Lambda.dom == WeightDomain::IJ)
    Lambda = collapse_weight(C.par, Lambda);
  unsigned long r = Lambda.level();
  check(r >= 1, "ariki_koike: weight level must be >= 1");

  Presentation<K> P(k);
  P.spec = C.spec;
  P.kind = "ariki_koike";
  Gen S = P.add_gen("S");
  std::vector<Gen> T(n);  // T[a] = T_a, 1-based
  for (unsigned a = 1; a < n; ++a) T[a] = P.add_gen("T" + std::to_string(a));
  FreeAlg<K> F{k, MonomialOrder{}};

  // cyclotomic: prod over the weight's support of (S - zeta^j q^i)^Lambda_{i,j}
  std::vector<std::pair<typename K::Elem, unsigned long>> roots;
  for (auto& [key, m] : Lambda.mult) {
    check(C.quiver.valid(key), "ariki_koike: weight vertex outside K");
    roots.push_back({C.values.at(key), m});
  }
  P.relations.push_back(cyclotomic_relation(k, S, roots));

  auto q = C.q;
  for (unsigned a = 1; a < n; ++a) {
    // (T_a + 1)(T_a - q) = 0
    auto rel = F.sub(F.word({T[a], T[a]}),
                     F.add(F.scale(k.sub(q, k.one()), F.gen(T[a])),
                           F.scale(q, F.one())));
    P.relations.push_back(rel);
  }
  if (n >= 2)
    P.relations.push_back(
        F.sub(F.word({S, T[1], S, T[1]}), F.word({T[1], S, T[1], S})));
  for (unsigned a = 2; a < n; ++a)
    P.relations.push_back(F.sub(F.word({S, T[a]}), F.word({T[a], S})));
  for (unsigned a = 1; a < n; ++a)
    for (unsigned b = a + 2; b < n; ++b)
      P.relations.push_back(F.sub(F.word({T[a], T[b]}), F.word({T[b], T[a]})));
  for (unsigned a = 1; a + 1 < n; ++a)
    P.relations.push_back(F.sub(F.word({T[a], T[a + 1], T[a]}),
                                F.word({T[a + 1], T[a], T[a + 1]})));

  P.metadata["n"] = n;
  P.metadata["r"] = r;
  P.metadata["params"] = C.par.to_json();
  P.metadata["weight"] = Lambda.to_json();
  return P;
}

// ------------------------------------------------------------------ G(r,p,n)

enum class GrpnVariant { BMR, Ar };

// Lambda is an I-weight of level d = r/p; the cyclotomic relation is
// prod_{i} (s - q^{p i})^{Lambda_i}.
template <class K>
Presentation<K> grpn_presentation(const AlgebraContext<K>& C,
                                  const Weight& Lambda, unsigned n,
                                  GrpnVariant variant) {
  const K& k = C.field;
  check(Lambda.dom == WeightDomain::I, "grpn: expects an I-weight (level d)");
  check(n >= 2, "grpn: n >= 2 required");
  unsigned long p = C.par.p;
  check(variant == GrpnVariant::BMR || p >= 2,
        "grpn: the sum-formula variant requires p >= 2");

  Presentation<K> P(k);
  P.spec = C.spec;
  P.kind = variant == GrpnVariant::BMR ? "grpn_bmr" : "grpn_ar";
  Gen s = P.add_gen("s");
  Gen tp = P.add_gen("tp1");
  std::vector<Gen> t(n);
  for (unsigned a = 1; a < n; ++a) t[a] = P.add_gen("t" + std::to_string(a));
  FreeAlg<K> F{k, MonomialOrder{}};
  auto q = C.q;

  // cyclotomic in s: roots q^{p i}
  std::vector<std::pair<typename K::Elem, unsigned long>> roots;
  for (auto& [key, m] : Lambda.mult) {
    long i = C.par.normI(key.first);
    roots.push_back(
        {field_pow(k, q, static_cast<long long>(p) * i), m});
  }
  P.relations.push_back(cyclotomic_relation(k, s, roots));

  // quadratics for t'_1 and every t_a
  auto quad = [&](Gen g) {
    return F.sub(F.word({g, g}),
                 F.add(F.scale(k.sub(q, k.one()), F.gen(g)),
                       F.scale(q, F.one())));
  };
  P.relations.push_back(quad(tp));
  for (unsigned a = 1; a < n; ++a) P.relations.push_back(quad(t[a]));

  if (n >= 3)
    P.relations.push_back(
        F.sub(F.word({tp, t[2], tp}), F.word({t[2], tp, t[2]})));
  for (unsigned a = 1; a + 1 < n; ++a)
    P.relations.push_back(F.sub(F.word({t[a], t[a + 1], t[a]}),
                                F.word({t[a + 1], t[a], t[a + 1]})));
  if (n >= 3)
    P.relations.push_back(
        F.sub(F.word({tp, t[1], t[2], tp, t[1], t[2]}),
              F.word({t[2], tp, t[1], t[2], tp, t[1]})));
  for (unsigned a = 3; a < n; ++a)
    P.relations.push_back(F.sub(F.word({tp, t[a]}), F.word({t[a], tp})));
  for (unsigned a = 1; a < n; ++a)
    for (unsigned b = a + 2; b < n; ++b)
      P.relations.push_back(F.sub(F.word({t[a], t[b]}), F.word({t[b], t[a]})));
  for (unsigned a = 2; a < n; ++a)
    P.relations.push_back(F.sub(F.word({s, t[a]}), F.word({t[a], s})));
  P.relations.push_back(
      F.sub(F.word({s, tp, t[1]}), F.word({tp, t[1], s})));

  if (variant == GrpnVariant::BMR) {
    // alternating products with p+1 factors each
    auto lhs = Word{s};
    for (unsigned long f = 1; f <= p; ++f) lhs.push_back(f % 2 ? tp : t[1]);
    Word rhs{t[1], s};
    for (unsigned long f = 2; f <= p; ++f) rhs.push_back(f % 2 ? t[1] : tp);
    P.relations.push_back(F.sub(F.word(lhs), F.word(rhs)));
  } else {
    // s t'_1 t_1 = (q^{-1} t'_1 t_1)^{2-p} t_1 s t'_1
    //            + (q-1) sum_{m=1}^{p-2} (q^{-1} t'_1 t_1)^{1-m} s t'_1,
    // left-multiplied by (q^{-1} t'_1 t_1)^{p-2} to clear negative powers:
    auto u = F.scale(k.inv(q), F.word({tp, t[1]}));  // q^{-1} t'_1 t_1
    auto rel = F.sub(F.mul(F.pow(u, p - 2), F.word({s, tp, t[1]})),
                     F.word({t[1], s, tp}));
    for (unsigned long m = 1; m + 2 <= p; ++m)
      rel = F.sub(rel, F.scale(k.sub(q, k.one()),
                               F.mul(F.pow(u, p - 1 - m), F.word({s, tp}))));
    P.relations.push_back(rel);
    P.metadata["inverses_substituted"] = true;
    P.metadata["clearing_factor"] = "(q^-1 tp1 t1)^(p-2), left";
  }

  P.metadata["n"] = n;
  P.metadata["d"] = Lambda.level();
  P.metadata["params"] = C.par.to_json();
  P.metadata["weight"] = Lambda.to_json();
  return P;
}

// ----------------------------------------------------------------- KLR core

inline long psi_context_degree(Adjacency a) {
  switch (a) {
    case Adjacency::equal: return -2;
    case Adjacency::none: return 0;
    case Adjacency::fwd:
    case Adjacency::back: return 1;
    default: return 2;  // both
  }
}

namespace detail {

// Shared emitter for the cyclotomic KLR presentation and its fixed-point
// form: `reps` lists one residue sequence per idempotent generator, and
// `idx_of` maps any sequence in the family to its idempotent index (for the
// fixed form, the orbit class of the sequence).
template <class K, class IdxOf>
void emit_klr_relations(Presentation<K>& P, const Quiver& Q,
                        const std::vector<Seq>& reps, IdxOf&& idx_of,
                        const Weight& Lambda, unsigned n,
                        const std::vector<Gen>& E, const std::vector<Gen>& Y,
                        const std::vector<Gen>& PSI) {
  const K& k = P.field;
  FreeAlg<K> F{k, MonomialOrder{}};
  std::size_t m = reps.size();

  // sum e = 1
  {
    auto rel = F.scale(k.neg(k.one()), F.one());
    for (std::size_t h = 0; h < m; ++h) rel = F.add(rel, F.gen(E[h]));
    P.relations.push_back(rel);
  }
  // orthogonality
  for (std::size_t h = 0; h < m; ++h)
    for (std::size_t g = 0; g < m; ++g) {
      auto rel = F.word({E[h], E[g]});
      if (h == g) rel = F.sub(rel, F.gen(E[h]));
      P.relations.push_back(rel);
    }
  // y e = e y
  for (unsigned a = 1; a <= n; ++a)
    for (std::size_t h = 0; h < m; ++h)
      P.relations.push_back(
          F.sub(F.word({Y[a], E[h]}), F.word({E[h], Y[a]})));
  // psi_a e(k) = e(s_a k) psi_a
  for (unsigned a = 1; a < n; ++a)
    for (std::size_t h = 0; h < m; ++h) {
      Seq sk = reps[h];
      std::swap(sk[a - 1], sk[a]);
      P.relations.push_back(F.sub(F.word({PSI[a], E[h]}),
                                  F.word({E[idx_of(sk)], PSI[a]})));
    }
  // y y commute
  for (unsigned a = 1; a <= n; ++a)
    for (unsigned b = a + 1; b <= n; ++b)
      P.relations.push_back(F.sub(F.word({Y[a], Y[b]}), F.word({Y[b], Y[a]})));
  // psi_a y_b commute, b != a, a+1
  for (unsigned a = 1; a < n; ++a)
    for (unsigned b = 1; b <= n; ++b) {
      if (b == a || b == a + 1) continue;
      P.relations.push_back(
          F.sub(F.word({PSI[a], Y[b]}), F.word({Y[b], PSI[a]})));
    }
  // psi psi commute, |a-b| > 1
  for (unsigned a = 1; a < n; ++a)
    for (unsigned b = a + 2; b < n; ++b)
      P.relations.push_back(
          F.sub(F.word({PSI[a], PSI[b]}), F.word({PSI[b], PSI[a]})));
  // psi_a y_{a+1} e = (y_a psi_a + delta) e   and   y_{a+1} psi_a e = (psi_a y_a + delta) e
  for (unsigned a = 1; a < n; ++a)
    for (std::size_t h = 0; h < m; ++h) {
      bool eq = reps[h][a - 1] == reps[h][a];
      auto rel1 = F.sub(F.word({PSI[a], Y[a + 1], E[h]}),
                        F.word({Y[a], PSI[a], E[h]}));
      auto rel2 = F.sub(F.word({Y[a + 1], PSI[a], E[h]}),
                        F.word({PSI[a], Y[a], E[h]}));
      if (eq) {
        rel1 = F.sub(rel1, F.gen(E[h]));
        rel2 = F.sub(rel2, F.gen(E[h]));
      }
      P.relations.push_back(rel1);
      P.relations.push_back(rel2);
    }
  // psi_a^2 e by adjacency
  for (unsigned a = 1; a < n; ++a)
    for (std::size_t h = 0; h < m; ++h) {
      auto rel = F.word({PSI[a], PSI[a], E[h]});
      auto ya = F.word({Y[a], E[h]});
      auto yb = F.word({Y[a + 1], E[h]});
      switch (Q.adj(reps[h][a - 1], reps[h][a])) {
        case Adjacency::equal: break;
        case Adjacency::none: rel = F.sub(rel, F.gen(E[h])); break;
        case Adjacency::fwd: rel = F.sub(rel, F.sub(yb, ya)); break;
        case Adjacency::back: rel = F.sub(rel, F.sub(ya, yb)); break;
        case Adjacency::both:
          // (y_{a+1} - y_a)(y_a - y_{a+1}) e
          rel = F.sub(rel, F.mul(F.sub(F.gen(Y[a + 1]), F.gen(Y[a])),
                                 F.sub(ya, yb)));
          break;
      }
      P.relations.push_back(rel);
    }
  // braid with correction
  for (unsigned a = 1; a + 1 < n; ++a)
    for (std::size_t h = 0; h < m; ++h) {
      auto rel = F.sub(F.word({PSI[a + 1], PSI[a], PSI[a + 1], E[h]}),
                       F.word({PSI[a], PSI[a + 1], PSI[a], E[h]}));
      const Seq& s = reps[h];
      if (s[a + 1] == s[a - 1]) {
        switch (Q.adj(s[a - 1], s[a])) {
          case Adjacency::fwd: rel = F.add(rel, F.gen(E[h])); break;
          case Adjacency::back: rel = F.sub(rel, F.gen(E[h])); break;
          case Adjacency::both:
            // correction 2 y_{a+1} - y_a - y_{a+2}
            rel = F.sub(rel,
                        F.sub(F.scale(k.from_int(2), F.word({Y[a + 1], E[h]})),
                              F.add(F.word({Y[a], E[h]}),
                                    F.word({Y[a + 2], E[h]}))));
            break;
          default: break;
        }
      }
      P.relations.push_back(rel);
    }
  // cyclotomic y_1^{Lambda_{k_1}} e(k) = 0
  for (std::size_t h = 0; h < m; ++h) {
    auto [i, j] = reps[h][0];
    unsigned long mult = Lambda.at(i, j);
    Word w(mult, Y[1]);
    w.push_back(E[h]);
    P.relations.push_back(F.word(w));
  }
}

inline std::string seq_label(const Seq& s) {
  std::string out = "e[";
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (a) out += "|";
    out += std::to_string(s[a].first) + ":" + std::to_string(s[a].second);
  }
  return out + "]";
}

}  // namespace detail

// full cyclotomic KLR presentation on K^n, or on one block K^alpha
template <class K>
Presentation<K> klr_cyclotomic_presentation(
    const AlgebraContext<K>& C, const Weight& Lambda, unsigned n,
    const std::optional<std::map<VLabel, unsigned>>& block = {}) {
  check(Lambda.dom == WeightDomain::K, "klr: expects a K-weight");
  check(n >= 1, "klr: n >= 1 required");
  for (auto& [key, v] : Lambda.mult) {
    (void)v;
    check(C.quiver.valid(key), "klr: weight vertex outside K");
  }
  std::vector<Seq> seqs;
  for (auto& s : C.quiver.all_sequences(n))
    if (!block || content(s) == *block) seqs.push_back(s);
  check(!seqs.empty(), "klr: empty sequence family");

  Presentation<K> P(C.field);
  P.spec = C.spec;
  P.kind = "klr_cyclotomic";
  P.quiver = C.quiver;

  std::vector<Gen> E(seqs.size());
  std::map<Seq, std::size_t> index;
  for (std::size_t h = 0; h < seqs.size(); ++h) {
    E[h] = P.add_gen(detail::seq_label(seqs[h]), 0);
    P.idempotents.insert(E[h]);
    P.idem_seq[E[h]] = seqs[h];
    index[seqs[h]] = h;
  }
  std::vector<Gen> Y(n + 1), PSI(n);
  for (unsigned a = 1; a <= n; ++a) {
    Y[a] = P.add_gen("y" + std::to_string(a), 2);
    P.y_pos[Y[a]] = a;
  }
  for (unsigned a = 1; a < n; ++a) {
    PSI[a] = P.add_gen("psi" + std::to_string(a));
    P.psi_pos[PSI[a]] = a;
  }

  detail::emit_klr_relations(P, C.quiver, seqs,
                             [&](const Seq& s) { return index.at(s); },
                             Lambda, n, E, Y, PSI);
  P.metadata["n"] = n;
  P.metadata["params"] = C.par.to_json();
  P.metadata["weight"] = Lambda.to_json();
  if (block) {
    json b = json::array();
    for (auto& [v, c] : *block)
      b.push_back(json::array({v.first, v.second, c}));
    P.metadata["block"] = b;
  }
  return P;
}

// fixed-point presentation over sigma-orbit classes e(gamma)
template <class K>
Presentation<K> fixed_point_presentation(const AlgebraContext<K>& C,
                                         const Weight& Lambda, unsigned n) {
  check(Lambda.dom == WeightDomain::K, "klr_fixed: expects a K-weight");
  check(is_sigma_stable(C.par, Lambda),
        "klr_fixed: weight must be sigma-stable "
        "(Lambda(sigma v) = Lambda(v) for every vertex v)");
  auto seqs = C.quiver.all_sequences(n);
  auto oc = orbit_classes(C.quiver, seqs);

  Presentation<K> P(C.field);
  P.spec = C.spec;
  P.kind = "klr_fixed";
  P.quiver = C.quiver;
  P.fixed_orbits = true;

  std::vector<Gen> E(oc.reps.size());
  for (std::size_t h = 0; h < oc.reps.size(); ++h) {
    E[h] = P.add_gen("E" + detail::seq_label(oc.reps[h]).substr(1), 0);
    P.idempotents.insert(E[h]);
    P.idem_seq[E[h]] = oc.reps[h];
  }
  std::vector<Gen> Y(n + 1), PSI(n);
  for (unsigned a = 1; a <= n; ++a) {
    Y[a] = P.add_gen("y" + std::to_string(a), 2);
    P.y_pos[Y[a]] = a;
  }
  for (unsigned a = 1; a < n; ++a) {
    PSI[a] = P.add_gen("psi" + std::to_string(a));
    P.psi_pos[PSI[a]] = a;
  }

  detail::emit_klr_relations(P, C.quiver, oc.reps,
                             [&](const Seq& s) { return oc.class_of.at(s); },
                             Lambda, n, E, Y, PSI);
  P.metadata["n"] = n;
  P.metadata["params"] = C.par.to_json();
  P.metadata["weight"] = Lambda.to_json();
  P.metadata["orbit_count"] = oc.reps.size();
  return P;
}

// ------------------------------------------------------------- homogeneity

struct HomogeneityEntry {
  std::size_t relation;
  bool homogeneous;
  std::string detail;
};

struct HomogeneityReport {
  bool all = true;
  std::vector<HomogeneityEntry> entries;
  json to_json() const {
    json arr = json::array();
    for (auto& e : entries) {
      json je;
      je["relation"] = e.relation;
      je["homogeneous"] = e.homogeneous;
      if (!e.detail.empty()) je["detail"] = e.detail;
      arr.push_back(je);
    }
    json j;
    j["all_homogeneous"] = all;
    j["relations"] = arr;
    return j;
  }
};

namespace detail {

// degree of a word right-multiplied into the idempotent context `ctx`
// (a residue sequence); nullopt = the product visibly vanishes, so the word
// does not constrain homogeneity in this context.
template <class K>
std::optional<long> word_degree_in_context(const Presentation<K>& P,
                                           const Word& w, Seq ctx) {
  const Quiver& Q = *P.quiver;
  long deg = 0;
  for (std::size_t t = w.size(); t-- > 0;) {
    Gen g = w[t];
    if (P.idempotents.count(g)) {
      const Seq& s = P.idem_seq.at(g);
      if (P.fixed_orbits) {
        // same orbit class?
        bool hit = false;
        Seq rot = s;
        for (unsigned long mpow = 0; mpow < Q.P.p; ++mpow) {
          if (rot == ctx) {
            hit = true;
            break;
          }
          rot = Q.sigma_seq(rot);
        }
        if (!hit) return std::nullopt;
      } else if (s != ctx) {
        return std::nullopt;
      }
      continue;  // degree 0, context unchanged
    }
    auto yit = P.y_pos.find(g);
    if (yit != P.y_pos.end()) {
      deg += 2;
      continue;
    }
    auto pit = P.psi_pos.find(g);
    if (pit != P.psi_pos.end()) {
      std::size_t a = pit->second;  // 1-based
      deg += psi_context_degree(Q.adj(ctx[a - 1], ctx[a]));
      std::swap(ctx[a - 1], ctx[a]);
      continue;
    }
    if (!P.degree[g]) return std::nullopt;  // ungraded generator
    deg += *P.degree[g];
  }
  return deg;
}

}  // namespace detail

// Per-relation homogeneity.  With idempotent metadata present, each relation
// is closed with every idempotent context and the surviving words must agree
// in degree context by context; otherwise the fixed per-generator degrees
// must make every monomial of the relation equal in degree.
template <class K>
HomogeneityReport check_homogeneous(const Presentation<K>& P) {
  HomogeneityReport rep;
  for (std::size_t r = 0; r < P.relations.size(); ++r) {
    const auto& rel = P.relations[r];
    HomogeneityEntry e{r, true, ""};
    if (!P.idempotents.empty() && P.quiver) {
      for (auto& [ig, ctx] : P.idem_seq) {
        (void)ig;
        std::optional<long> seen;
        for (auto& [w, c] : rel.t) {
          (void)c;
          auto d = detail::word_degree_in_context(P, w, ctx);
          if (!d) continue;
          if (!seen) {
            seen = d;
          } else if (*seen != *d) {
            e.homogeneous = false;
            e.detail = "degrees " + std::to_string(*seen) + " vs " +
                       std::to_string(*d) + " in context " +
                       detail::seq_label(ctx);
            break;
          }
        }
        if (!e.homogeneous) break;
      }
    } else {
      std::optional<long> seen;
      for (auto& [w, c] : rel.t) {
        (void)c;
        long d = 0;
        bool graded = true;
        for (auto g : w) {
          if (!P.degree[g]) {
            graded = false;
            break;
          }
          d += *P.degree[g];
        }
        if (!graded) {
          e.homogeneous = false;
          e.detail = "ungraded generator in relation";
          break;
        }
        if (!seen) {
          seen = d;
        } else if (*seen != d) {
          e.homogeneous = false;
          e.detail = "degrees " + std::to_string(*seen) + " vs " +
                     std::to_string(d);
          break;
        }
      }
    }
    rep.all = rep.all && e.homogeneous;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

// ---------------------------------------------------------------- pipeline

template <class K>
RewriteSystem<K> complete_presentation(const Presentation<K>& P,
                                       CompletionCaps caps = {},
                                       MonomialOrder ord = {}) {
  RewriteSystem<K> rs(P.field, P.ngens(), std::move(ord));
  rs.idempotent_gens = P.idempotents;
  rs.complete(P.relations, caps);
  return rs;
}

// order-independent fingerprints of the relation multiset, for comparing
// presentations built from different parameter choices
template <class K>
std::multiset<std::string> relation_fingerprints(const Presentation<K>& P) {
  std::multiset<std::string> out;
  for (auto& rel : P.relations) out.insert(np_str(P.field, rel, P.labels));
  return out;
}

// ------------------------------------------------------------ serialization

template <class K>
json Presentation<K>::to_json() const {
  json j;
  j["schema"] = 1;
  j["kind"] = kind;
  j["field"] = spec.to_json();
  j["unital"] = unital;
  j["fixed_orbits"] = fixed_orbits;
  json gens = json::array();
  for (std::size_t g = 0; g < labels.size(); ++g) {
    json jg;
    jg["label"] = labels[g];
    jg["degree"] = degree[g] ? json(*degree[g]) : json();
    if (idempotents.count(static_cast<Gen>(g))) {
      json seq = json::array();
      for (auto& [i, jj] : idem_seq.at(static_cast<Gen>(g)))
        seq.push_back(json::array({i, jj}));
      jg["seq"] = seq;
    }
    auto pit = psi_pos.find(static_cast<Gen>(g));
    if (pit != psi_pos.end()) jg["psi"] = pit->second;
    auto yit = y_pos.find(static_cast<Gen>(g));
    if (yit != y_pos.end()) jg["y"] = yit->second;
    gens.push_back(jg);
  }
  j["generators"] = gens;
  json rels = json::array();
  for (auto& rel : relations) {
    json jr = json::array();
    for (auto& [w, c] : rel.t)
      jr.push_back(json::array({json(w), field.elem_json(c)}));
    rels.push_back(jr);
  }
  j["relations"] = rels;
  j["metadata"] = metadata;
  if (quiver) {
    j["quiver"] = quiver->P.to_json();
    j["quiver"]["window"] = quiver->window;
  }
  return j;
}

template <class K>
Presentation<K> presentation_from_json(const K& field, const json& j) {
  Presentation<K> P(field);
  P.spec = FieldSpec::from_json(j.at("field"));
  P.kind = j.at("kind").get<std::string>();
  P.unital = j.value("unital", true);
  P.fixed_orbits = j.value("fixed_orbits", false);
  for (auto& jg : j.at("generators")) {
    std::optional<long> deg;
    if (!jg.at("degree").is_null()) deg = jg.at("degree").get<long>();
    Gen g = P.add_gen(jg.at("label").get<std::string>(), deg);
    if (jg.contains("seq")) {
      Seq s;
      for (auto& v : jg.at("seq"))
        s.push_back({v.at(0).get<long>(), v.at(1).get<long>()});
      P.idempotents.insert(g);
      P.idem_seq[g] = s;
    }
    if (jg.contains("psi")) P.psi_pos[g] = jg.at("psi").get<std::size_t>();
    if (jg.contains("y")) P.y_pos[g] = jg.at("y").get<std::size_t>();
  }
  for (auto& jr : j.at("relations")) {
    std::vector<std::pair<Word, typename K::Elem>> terms;
    for (auto& jt : jr) {
      Word w;
      for (auto& g : jt.at(0)) w.push_back(g.get<Gen>());
      terms.push_back({w, field.parse(jt.at(1).is_string()
                                          ? jt.at(1).template get<std::string>()
                                          : jt.at(1).dump())});
    }
    P.relations.push_back(np_normalize(field, MonomialOrder{}, std::move(terms)));
  }
  P.metadata = j.value("metadata", json::object());
  if (j.contains("quiver")) {
    CycloParams par;
    const json& jq = j.at("quiver");
    if (jq.at("e").is_string())
      par.e = std::nullopt;
    else
      par.e = jq.at("e").get<long>();
    par.p = jq.at("p").get<unsigned long>();
    par.pprime = jq.at("pprime").get<unsigned long>();
    par.eta = jq.at("eta").get<long>();
    par.omega = jq.at("omega").get<unsigned long>();
    P.quiver = Quiver{par, jq.value("window", 0L)};
  }
  return P;
}

// line-based text format: field / kind / gen / rel lines
template <class K>
std::string Presentation<K>::to_pres() const {
  std::ostringstream out;
  out << "# " << kind << " presentation, " << labels.size()
      << " generators, " << relations.size() << " relations\n";
  out << "field " << spec.kind;
  if (spec.kind == "prime") out << " modulus=" << spec.modulus;
  out << " q=" << spec.q << " zeta=" << spec.zeta << " e="
      << (spec.e ? std::to_string(*spec.e) : std::string("inf"))
      << " p=" << spec.p << "\n";
  out << "kind " << kind << "\n";
  for (std::size_t g = 0; g < labels.size(); ++g) {
    out << "gen " << labels[g];
    if (degree[g]) out << " deg=" << *degree[g];
    if (idempotents.count(static_cast<Gen>(g))) {
      out << " idem seq=";
      const Seq& s = idem_seq.at(static_cast<Gen>(g));
      for (std::size_t a = 0; a < s.size(); ++a) {
        if (a) out << ",";
        out << s[a].first << ":" << s[a].second;
      }
    }
    auto pit = psi_pos.find(static_cast<Gen>(g));
    if (pit != psi_pos.end()) out << " psi=" << pit->second;
    auto yit = y_pos.find(static_cast<Gen>(g));
    if (yit != y_pos.end()) out << " y=" << yit->second;
    out << "\n";
  }
  for (auto& rel : relations) {
    out << "rel ";
    if (rel.is_zero()) {
      out << "(0)*1";
    } else {
      bool first = true;
      for (auto& [w, c] : rel.t) {
        if (!first) out << " + ";
        first = false;
        out << "(" << field.str(c) << ")*";
        if (w.empty())
          out << "1";
        else
          for (std::size_t t = 0; t < w.size(); ++t) {
            if (t) out << ".";
            out << labels[w[t]];
          }
      }
    }
    out << "\n";
  }
  return out.str();
}

template <class K>
Presentation<K> presentation_from_pres(const K& field, const std::string& text) {
  Presentation<K> P(field);
  std::map<std::string, Gen> byname;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "field") {
      std::string kindtok;
      ls >> kindtok;
      P.spec.kind = kindtok;
      std::string kv;
      while (ls >> kv) {
        auto eq = kv.find('=');
        check(eq != std::string::npos, "pres: malformed field attribute");
        auto key = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (key == "modulus")
          P.spec.modulus = std::stoull(val);
        else if (key == "q")
          P.spec.q = val;
        else if (key == "zeta")
          P.spec.zeta = val;
        else if (key == "e")
          P.spec.e = val == "inf"
                         ? std::optional<unsigned long>{}
                         : std::optional<unsigned long>{std::stoul(val)};
        else if (key == "p")
          P.spec.p = std::stoul(val);
        else
          check(false, "pres: unknown field attribute " + key);
      }
    } else if (tag == "kind") {
      ls >> P.kind;
    } else if (tag == "gen") {
      std::string label;
      ls >> label;
      std::optional<long> deg;
      bool idem = false;
      Seq seq;
      std::optional<std::size_t> psi, y;
      std::string kv;
      while (ls >> kv) {
        if (kv == "idem") {
          idem = true;
          continue;
        }
        auto eq = kv.find('=');
        check(eq != std::string::npos, "pres: malformed gen attribute");
        auto key = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (key == "deg")
          deg = std::stol(val);
        else if (key == "psi")
          psi = std::stoul(val);
        else if (key == "y")
          y = std::stoul(val);
        else if (key == "seq") {
          std::istringstream ss(val);
          std::string item;
          while (std::getline(ss, item, ',')) {
            auto colon = item.find(':');
            check(colon != std::string::npos, "pres: malformed seq entry");
            seq.push_back({std::stol(item.substr(0, colon)),
                           std::stol(item.substr(colon + 1))});
          }
        } else {
          check(false, "pres: unknown gen attribute " + key);
        }
      }
      Gen g = P.add_gen(label, deg);
      byname[label] = g;
      if (idem) {
        P.idempotents.insert(g);
        P.idem_seq[g] = seq;
      }
      if (psi) P.psi_pos[g] = *psi;
      if (y) P.y_pos[g] = *y;
    } else if (tag == "rel") {
      std::string rest;
      std::getline(ls, rest);
      std::vector<std::pair<Word, typename K::Elem>> terms;
      std::size_t pos = 0;
      while (pos < rest.size()) {
        auto open = rest.find('(', pos);
        if (open == std::string::npos) break;
        auto close = rest.find(")*", open);
        check(close != std::string::npos, "pres: malformed term");
        auto coeff = field.parse(rest.substr(open + 1, close - open - 1));
        auto wstart = close + 2;
        auto wend = rest.find(" + ", wstart);
        auto wtext = rest.substr(
            wstart, wend == std::string::npos ? std::string::npos
                                              : wend - wstart);
        Word w;
        if (wtext != "1") {
          std::istringstream ws(wtext);
          std::string lab;
          while (std::getline(ws, lab, '.')) {
            check(byname.count(lab), "pres: unknown generator " + lab);
            w.push_back(byname[lab]);
          }
        }
        if (!field.is_zero(coeff)) terms.push_back({w, coeff});
        pos = wend == std::string::npos ? rest.size() : wend + 3;
      }
      P.relations.push_back(
          np_normalize(field, MonomialOrder{}, std::move(terms)));
    } else {
      check(false, "pres: unknown line tag " + tag);
    }
  }
  return P;
}

}  // namespace wb
