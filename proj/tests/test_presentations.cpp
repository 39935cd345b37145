// Presentation emitters: cyclotomic polynomial expansion, relation schemas,
// serialization round-trips, homogeneity, and small completions against the
// r^n n! dimension count.

#include <catch2/catch_amalgamated.hpp>

#include "workbench/presentations.hpp"

using namespace wb;

namespace {

FieldSpec spec_e2p2() {  // F_3, q = zeta = -1
  FieldSpec s;
  s.kind = "prime";
  s.modulus = 3;
  s.q = "2";
  s.zeta = "2";
  s.e = 2;
  s.p = 2;
  return s;
}

FieldSpec spec_e2p3() {  // F_7, q = 6 (order 2), zeta = 2 (order 3)
  FieldSpec s;
  s.kind = "prime";
  s.modulus = 7;
  s.q = "6";
  s.zeta = "2";
  s.e = 2;
  s.p = 3;
  return s;
}

FieldSpec spec_e3p3() {  // F_7, q = 2 (order 3), zeta = 2 (order 3)
  FieldSpec s;
  s.kind = "prime";
  s.modulus = 7;
  s.q = "2";
  s.zeta = "2";
  s.e = 3;
  s.p = 3;
  return s;
}

Weight level_one_I() {
  Weight w;
  w.dom = WeightDomain::I;
  w.set(0, 0, 1);
  return w;
}

}  // namespace

TEST_CASE("Ariki-Koike cyclotomic relation expands correctly") {
  SECTION("e=2 p=2 over F_3: S^2 - 1") {
    Fp k(3);
    auto C = make_context(k, spec_e2p2());
    auto P = ariki_koike_presentation(C, level_one_I(), 2);
    // relation 0 is the cyclotomic one: S^2 - 1 (monic degree r = 2)
    const auto& cyc = P.relations[0];
    REQUIRE(cyc.t.size() == 2);
    REQUIRE(cyc.t[0].first == Word{0, 0});
    REQUIRE(cyc.t[0].second == k.one());
    REQUIRE(cyc.t[1].first == Word{});
    REQUIRE(cyc.t[1].second == k.from_int(-1));
  }
  SECTION("e=2 p=3 over F_7: S^3 - 1") {
    Fp k(7);
    auto C = make_context(k, spec_e2p3());
    auto P = ariki_koike_presentation(C, level_one_I(), 2);
    const auto& cyc = P.relations[0];
    REQUIRE(cyc.t.size() == 2);
    REQUIRE(cyc.t[0].first == Word{0, 0, 0});
    REQUIRE(cyc.t[1].second == k.from_int(-1));
  }
}

TEST_CASE("Ariki-Koike relation schema counts") {
  Fp k(3);
  auto C = make_context(k, spec_e2p2());
  // n=2: cyclotomic + quadratic + S T1 S T1 braid
  REQUIRE(ariki_koike_presentation(C, level_one_I(), 2).relations.size() == 3);
  // n=3: + T2 quadratic + S T2 commutation + T1 T2 T1 braid
  REQUIRE(ariki_koike_presentation(C, level_one_I(), 3).relations.size() == 6);
}

TEST_CASE("Ariki-Koike completions hit r^n n!") {
  SECTION("e=2 p=2 d=1 r=2 n=2: dim 8") {
    Fp k(3);
    auto C = make_context(k, spec_e2p2());
    auto P = ariki_koike_presentation(C, level_one_I(), 2);
    auto rs = complete_presentation(P);
    REQUIRE(rs.stats.status == CompletionStatus::completed);
    auto nb = rs.enumerate_basis();
    REQUIRE(nb.complete);
    REQUIRE(nb.words.size() == 8);
  }
  SECTION("e=2 p=3 d=1 r=3 n=2: dim 18") {
    Fp k(7);
    auto C = make_context(k, spec_e2p3());
    auto P = ariki_koike_presentation(C, level_one_I(), 2);
    auto rs = complete_presentation(P);
    REQUIRE(rs.stats.status == CompletionStatus::completed);
    REQUIRE(rs.enumerate_basis().words.size() == 18);
  }
}

TEST_CASE("G(r,p,n) presentations") {
  Fp k(7);
  auto C = make_context(k, spec_e2p3());  // p = 3

  SECTION("big braid has p+1 factors each side") {
    auto P = grpn_presentation(C, level_one_I(), 2, GrpnVariant::BMR);
    const auto& bb = P.relations.back();
    REQUIRE(bb.t.size() == 2);
    // s tp1 t1 tp1  and  t1 s tp1 t1  (p+1 = 4 letters)
    REQUIRE(bb.t[0].first.size() == 4);
    REQUIRE(bb.t[1].first.size() == 4);
  }
  SECTION("p=1 big braid is s tp1 = t1 s") {
    FieldSpec s1 = spec_e2p3();
    s1.p = 1;
    s1.zeta = "1";
    auto C1 = make_context(k, s1);
    auto P = grpn_presentation(C1, level_one_I(), 2, GrpnVariant::BMR);
    const auto& bb = P.relations.back();
    REQUIRE(bb.t.size() == 2);
    REQUIRE(bb.t[0].first.size() == 2);
  }
  SECTION("Ar variant with p=1 is refused") {
    FieldSpec s1 = spec_e2p3();
    s1.p = 1;
    s1.zeta = "1";
    auto C1 = make_context(k, s1);
    REQUIRE_THROWS_AS(
        grpn_presentation(C1, level_one_I(), 2, GrpnVariant::Ar), wb::error);
  }
  SECTION("p=2: BMR and Ar emit the same big-braid relation") {
    FieldSpec s2 = spec_e2p2();
    Fp k3(3);
    auto C2 = make_context(k3, s2);
    auto A = grpn_presentation(C2, level_one_I(), 2, GrpnVariant::BMR);
    auto B = grpn_presentation(C2, level_one_I(), 2, GrpnVariant::Ar);
    REQUIRE(np_sub(k3, MonomialOrder{}, A.relations.back(),
                   B.relations.back())
                .is_zero());
  }
  SECTION("Ar variant p=3 records the clearing factor") {
    auto P = grpn_presentation(C, level_one_I(), 2, GrpnVariant::Ar);
    REQUIRE(P.metadata.value("inverses_substituted", false));
    // (q^{-1} tp1 t1) s tp1 t1 - t1 s tp1 - (q-1) (q^{-1} tp1 t1) s tp1
    const auto& rel = P.relations.back();
    for (auto& [w, c] : rel.t) {
      (void)c;
      REQUIRE(w.size() >= 3);
      REQUIRE(w.size() <= 5);
    }
  }
}

TEST_CASE("KLR cyclotomic presentation: generators, degrees, homogeneity") {
  Fp k(3);
  auto C = make_context(k, spec_e2p2());  // p' = 1, |K| = 2
  Weight L;
  L.dom = WeightDomain::K;
  L.set(0, 1, 1);
  L.set(1, 1, 1);
  auto P = klr_cyclotomic_presentation(C, L, 2);

  // 4 idempotents + 2 y's + 1 psi
  REQUIRE(P.ngens() == 7);
  REQUIRE(P.idempotents.size() == 4);
  REQUIRE(P.degree[*P.idempotents.begin()] == 0);
  for (auto& [g, a] : P.y_pos) {
    (void)a;
    REQUIRE(P.degree[g] == 2);
  }

  // e=2 distinct same-component vertices are doubly linked: deg psi e(k) = 2
  REQUIRE(psi_context_degree(C.quiver.adj({0, 1}, {1, 1})) == 2);
  // equal-residue case: deg psi e(k) = -2
  REQUIRE(psi_context_degree(Adjacency::equal) == -2);

  auto rep = check_homogeneous(P);
  REQUIRE(rep.all);
}

TEST_CASE("KLR completion matches the Hecke dimension (e=2 p=2 r=2 n=2)") {
  Fp k(3);
  auto C = make_context(k, spec_e2p2());
  Weight L;
  L.dom = WeightDomain::K;
  L.set(0, 1, 1);
  L.set(1, 1, 1);
  auto P = klr_cyclotomic_presentation(C, L, 2);
  auto rs = complete_presentation(P);
  REQUIRE(rs.stats.status == CompletionStatus::completed);
  auto nb = rs.enumerate_basis();
  REQUIRE(nb.complete);
  REQUIRE(nb.words.size() == 8);
}

TEST_CASE("homogeneity negative control on an ungraded presentation") {
  Fp k(3);
  auto C = make_context(k, spec_e2p2());
  auto P = ariki_koike_presentation(C, level_one_I(), 2);
  SECTION("all degrees zero: trivially homogeneous") {
    for (auto& d : P.degree) d = 0;
    REQUIRE(check_homogeneous(P).all);
  }
  SECTION("deg T = 1 breaks the quadratic relation") {
    P.degree[0] = 0;  // S
    P.degree[1] = 1;  // T1
    auto rep = check_homogeneous(P);
    REQUIRE_FALSE(rep.all);
    REQUIRE_FALSE(rep.entries[1].homogeneous);  // (T+1)(T-q)
  }
}

TEST_CASE("fixed-point presentation over orbit classes") {
  SECTION("e=2 p=2, n=1: single orbit class") {
    Fp k(3);
    auto C = make_context(k, spec_e2p2());
    Weight L;
    L.dom = WeightDomain::K;
    L.set(0, 1, 1);
    L.set(1, 1, 1);
    REQUIRE(is_sigma_stable(C.par, L));
    auto P = fixed_point_presentation(C, L, 1);
    REQUIRE(P.idempotents.size() == 1);
    REQUIRE(P.metadata.at("orbit_count") == 1);
  }
  SECTION("e=2 p=3, n=2: 36/3 = 12 orbit classes") {
    Fp k(7);
    auto C = make_context(k, spec_e2p3());
    Weight L;
    L.dom = WeightDomain::K;
    for (long i = 0; i < 2; ++i)
      for (long j = 1; j <= 3; ++j) L.set(i, j, 1);  // sigma-stable, level 6
    auto P = fixed_point_presentation(C, L, 2);
    REQUIRE(P.idempotents.size() == 12);
    REQUIRE(check_homogeneous(P).all);
  }
  SECTION("non-sigma-stable weight is refused") {
    Fp k(7);
    auto C = make_context(k, spec_e2p3());
    Weight L;
    L.dom = WeightDomain::K;
    L.set(0, 1, 1);  // orbit of (0,1) not uniformly weighted
    REQUIRE_THROWS_AS(fixed_point_presentation(C, L, 1), wb::error);
  }
}

TEST_CASE("serialization round-trips") {
  Fp k(7);
  auto C = make_context(k, spec_e3p3());
  Weight L;
  L.dom = WeightDomain::K;
  for (long i = 0; i < 3; ++i) L.set(i, 1, 1);
  auto P = klr_cyclotomic_presentation(C, L, 2);

  SECTION("json") {
    auto j = P.to_json();
    auto Q = presentation_from_json(k, j);
    REQUIRE(Q.labels == P.labels);
    REQUIRE(Q.degree == P.degree);
    REQUIRE(Q.idempotents == P.idempotents);
    REQUIRE(Q.idem_seq == P.idem_seq);
    REQUIRE(Q.relations.size() == P.relations.size());
    REQUIRE(relation_fingerprints(Q) == relation_fingerprints(P));
    REQUIRE(Q.quiver.has_value());
    REQUIRE(Q.quiver->P.p == 3);
  }
  SECTION("pres text") {
    auto text = P.to_pres();
    auto Q = presentation_from_pres(k, text);
    REQUIRE(Q.labels == P.labels);
    REQUIRE(Q.idempotents == P.idempotents);
    REQUIRE(Q.idem_seq == P.idem_seq);
    REQUIRE(relation_fingerprints(Q) == relation_fingerprints(P));
    REQUIRE(Q.spec.modulus == 7);
    REQUIRE(Q.spec.p == 3);
  }
  SECTION("pres text round-trips an Ariki-Koike presentation") {
    auto A = ariki_koike_presentation(C, level_one_I(), 2);
    auto B = presentation_from_pres(k, A.to_pres());
    REQUIRE(relation_fingerprints(A) == relation_fingerprints(B));
  }
}
