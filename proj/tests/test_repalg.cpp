#include <catch2/catch_amalgamated.hpp>

#include "workbench/presentations.hpp"
#include "workbench/repalg.hpp"

using namespace wb;

namespace {

Fp f7() { return Fp{7}; }

template <class K>
Mat<K> from_ints(const K& k, std::size_t r, std::size_t c,
                 std::initializer_list<long> entries) {
  auto m = mat_zero(k, r, c);
  std::size_t i = 0;
  for (long v : entries) m.a[i++] = k.from_int(v);
  REQUIRE(i == r * c);
  return m;
}

FieldSpec spec_e2p2() {
  FieldSpec s;
  s.kind = "prime";
  s.modulus = 3;
  s.q = "2";
  s.zeta = "2";
  s.e = 2;
  s.p = 2;
  return s;
}

Weight level_one_I() {
  Weight w;
  w.dom = WeightDomain::I;
  w.set(0, 0, 1);
  return w;
}

}  // namespace

TEST_CASE("rref, rank, inverse and solve over F7", "[repalg]") {
  auto k = f7();
  auto A = from_ints(k, 3, 3, {1, 2, 3, 2, 4, 6, 1, 0, 1});
  REQUIRE(mat_rank(k, A) == 2);  // second row is twice the first

  auto B = from_ints(k, 2, 2, {1, 2, 3, 4});
  auto Binv = mat_inverse(k, B);
  REQUIRE(Binv);
  REQUIRE(mat_eq(k, mat_mul(k, B, *Binv), mat_identity(k, 2)));
  REQUIRE(mat_eq(k, mat_mul(k, *Binv, B), mat_identity(k, 2)));

  auto S = from_ints(k, 2, 2, {1, 2, 2, 4});  // singular
  REQUIRE(!mat_inverse(k, S));

  // consistent system: x + 2y = 5, 2x + 4y = 10
  auto sol = mat_solve(k, S, {k.from_int(5), k.from_int(10)});
  REQUIRE(sol);
  auto lhs0 = k.add((*sol)[0], k.mul(k.from_int(2), (*sol)[1]));
  REQUIRE(k.eq(lhs0, k.from_int(5)));
  // inconsistent system
  REQUIRE(!mat_solve(k, S, {k.from_int(5), k.from_int(11)}));
}

TEST_CASE("inverse over the rationals", "[repalg]") {
  QQ k;
  auto B = from_ints(k, 2, 2, {1, 2, 3, 4});
  auto Binv = mat_inverse(k, B);
  REQUIRE(Binv);
  REQUIRE(k.eq(Binv->at(0, 0), k.parse("-2")));
  REQUIRE(k.eq(Binv->at(0, 1), k.parse("1")));
  REQUIRE(k.eq(Binv->at(1, 0), k.parse("3/2")));
  REQUIRE(k.eq(Binv->at(1, 1), k.parse("-1/2")));
}

TEST_CASE("span builder tracks rank and membership", "[repalg]") {
  auto k = f7();
  SpanBuilder<Fp> span(k, 3);
  REQUIRE(span.add({k.from_int(1), k.from_int(2), k.from_int(3)}));
  REQUIRE(!span.add({k.from_int(2), k.from_int(4), k.from_int(6)}));
  REQUIRE(span.add({k.from_int(0), k.from_int(1), k.from_int(0)}));
  REQUIRE(span.rank() == 2);
  REQUIRE(span.contains({k.from_int(1), k.from_int(0), k.from_int(3)}));
  REQUIRE(!span.contains({k.from_int(0), k.from_int(0), k.from_int(1)}));
}

TEST_CASE("subalgebra dimension by closure", "[repalg]") {
  auto k = f7();
  auto e12 = from_ints(k, 2, 2, {0, 1, 0, 0});
  auto e21 = from_ints(k, 2, 2, {0, 0, 1, 0});
  REQUIRE(subalgebra_dimension(k, {e12, e21}) == 4);  // all of M_2

  auto d = from_ints(k, 2, 2, {1, 0, 0, 2});
  REQUIRE(subalgebra_dimension(k, {d}) == 2);  // split semisimple, diagonal

  std::vector<Mat<Fp>> basis;
  REQUIRE(subalgebra_dimension(k, {e12}, &basis) == 2);  // 1 and e12
  REQUIRE(basis.size() == 2);
}

TEST_CASE("minimal polynomials", "[repalg]") {
  auto k = f7();
  auto D = from_ints(k, 3, 3, {1, 0, 0, 0, 2, 0, 0, 0, 3});
  auto m = minimal_polynomial(k, D);
  // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6 = x^3 + x^2 + 4x + 1 over F7
  REQUIRE(m.degree() == 3);
  REQUIRE(k.eq(m.c[0], k.from_int(1)));
  REQUIRE(k.eq(m.c[1], k.from_int(4)));
  REQUIRE(k.eq(m.c[2], k.from_int(1)));
  REQUIRE(k.eq(m.c[3], k.from_int(1)));

  auto J = from_ints(k, 2, 2, {5, 1, 0, 5});  // Jordan block at 5
  auto mj = minimal_polynomial(k, J);
  REQUIRE(mj.degree() == 2);
  // (x-5)^2 = x^2 - 10x + 25 = x^2 + 4x + 4
  REQUIRE(k.eq(mj.c[0], k.from_int(4)));
  REQUIRE(k.eq(mj.c[1], k.from_int(4)));

  REQUIRE(minimal_polynomial(k, mat_identity(k, 4)).degree() == 1);
  REQUIRE(minimal_polynomial(k, mat_zero(k, 2, 2)).degree() == 1);

  // evaluating the minimal polynomial at the matrix gives zero
  REQUIRE(mat_is_zero(k, p1_eval_mat(k, m, D)));
  REQUIRE(mat_is_zero(k, p1_eval_mat(k, mj, J)));
}

TEST_CASE("spectral idempotents split a matrix by eigenvalue", "[repalg]") {
  auto k = f7();
  std::vector<Fp::Elem> candidates = {k.from_int(1), k.from_int(2),
                                      k.from_int(3)};

  auto D = from_ints(k, 3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 2});
  auto idems = spectral_idempotents(k, D, candidates);
  REQUIRE(idems.size() == 2);
  auto sum = mat_zero(k, 3, 3);
  for (auto& [v, e] : idems) {
    REQUIRE(mat_eq(k, mat_mul(k, e, e), e));
    sum = mat_add(k, sum, e);
  }
  REQUIRE(mat_eq(k, sum, mat_identity(k, 3)));
  REQUIRE(mat_eq(k, mat_mul(k, idems[0].second, idems[1].second),
                 mat_zero(k, 3, 3)));
  // eigenvalue 1 projector is diag(1,1,0)
  for (auto& [v, e] : idems)
    if (k.eq(v, k.from_int(1)))
      REQUIRE(mat_eq(k, e, from_ints(k, 3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 0})));

  // non-semisimple: single generalized eigenspace gives the identity
  auto J = from_ints(k, 2, 2, {2, 1, 0, 2});
  auto ji = spectral_idempotents(k, J, candidates);
  REQUIRE(ji.size() == 1);
  REQUIRE(mat_eq(k, ji[0].second, mat_identity(k, 2)));

  // eigenvalue outside the candidate list is refused
  auto bad = from_ints(k, 2, 2, {5, 0, 0, 5});
  REQUIRE_THROWS_AS(spectral_idempotents(k, bad, candidates), wb::error);
}

TEST_CASE("corner inverse and nilpotency", "[repalg]") {
  auto k = f7();
  auto E = from_ints(k, 3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 0});
  auto A = from_ints(k, 3, 3, {2, 0, 0, 0, 3, 0, 0, 0, 0});
  auto B = corner_inverse(k, A, E);
  REQUIRE(B);
  REQUIRE(mat_eq(k, *B, from_ints(k, 3, 3, {4, 0, 0, 0, 5, 0, 0, 0, 0})));

  // singular on the corner
  auto S = from_ints(k, 3, 3, {2, 0, 0, 0, 0, 0, 0, 0, 0});
  REQUIRE(!corner_inverse(k, S, E));

  // not a corner element
  auto full = mat_identity(k, 3);
  REQUIRE_THROWS_AS(corner_inverse(k, full, E), wb::error);

  auto N = from_ints(k, 3, 3, {0, 1, 0, 0, 0, 0, 0, 0, 0});
  REQUIRE(nilpotency_index(k, N) == 2);
  auto N3 = from_ints(k, 3, 3, {0, 1, 0, 0, 0, 1, 0, 0, 0});
  REQUIRE(nilpotency_index(k, N3) == 3);
  REQUIRE(!nilpotency_index(k, mat_identity(k, 2)));

  // Neumann series agrees with the corner inverse for E - N
  auto EmN = mat_sub(k, E, N);
  auto Binv = corner_inverse(k, EmN, E);
  REQUIRE(Binv);
  auto neumann = mat_add(k, E, N);  // E + N + N^2 + ... truncates at N^2 = 0
  REQUIRE(mat_eq(k, *Binv, neumann));
}

TEST_CASE("regular representation of an Ariki-Koike algebra", "[repalg]") {
  Fp F3{3};
  auto C = make_context(F3, spec_e2p2());
  auto P = ariki_koike_presentation(C, level_one_I(), 2);
  auto rs = complete_presentation(P);
  REQUIRE(rs.stats.status == CompletionStatus::completed);
  auto nb = rs.enumerate_basis();
  REQUIRE(nb.complete);
  REQUIRE(nb.words.size() == 8);

  RegularRep<Fp> rep(rs, nb);
  REQUIRE(rep.dim == 8);
  REQUIRE(rep.genmat.size() == 2);
  const auto& k = rep.field();

  // every defining relation vanishes in the representation
  for (auto& rel : P.relations) REQUIRE(mat_is_zero(k, rep.mat_of(rel)));

  // faithfulness: recover elements from their matrices
  FreeAlg<Fp> F{k, MonomialOrder{}};
  auto S = F.gen(0), T = F.gen(1);
  auto f = F.add(F.mul(S, T), F.scale(k.from_int(2), F.one()));
  auto M = rep.mat_of(f);
  auto rec = rep.element_of(M);
  REQUIRE(np_sub(k, rs.ord, rec, rs.reduce(f)).is_zero());

  // unit maps to the identity matrix
  REQUIRE(mat_eq(k, rep.mat_of(F.one()), mat_identity(k, 8)));

  // Jucys-Murphy elements: X1 = S, X2 = q^{-1} T S T commute
  auto X1 = rep.genmat[0];
  auto Tm = rep.genmat[1];
  auto X2 = mat_scale(k, k.inv(C.q), mat_mul(k, mat_mul(k, Tm, X1), Tm));
  REQUIRE(mat_eq(k, mat_mul(k, X1, X2), mat_mul(k, X2, X1)));

  // spectral idempotents of the commuting pair multiply to a resolution
  std::vector<Fp::Elem> candidates;
  for (auto& [v, val] : C.values.value) candidates.push_back(val);
  auto i1 = spectral_idempotents(k, X1, candidates);
  auto i2 = spectral_idempotents(k, X2, candidates);
  auto total = mat_zero(k, 8, 8);
  for (auto& [v1, e1] : i1)
    for (auto& [v2, e2] : i2) {
      auto ek = mat_mul(k, e1, e2);
      REQUIRE(mat_eq(k, ek, mat_mul(k, e2, e1)));
      REQUIRE(mat_eq(k, mat_mul(k, ek, ek), ek));
      total = mat_add(k, total, ek);
    }
  REQUIRE(mat_eq(k, total, mat_identity(k, 8)));

  // the whole algebra is generated by S and T: closure has full dimension
  REQUIRE(subalgebra_dimension(k, {X1, Tm}) == 8);
}
