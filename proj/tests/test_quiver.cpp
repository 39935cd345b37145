// Quiver construction, adjacency classification, sigma orbits on vertices and
// sequences.  Orbit structures below were frozen from the pre-implementation
// enumeration oracle.

#include <catch2/catch_amalgamated.hpp>

#include "workbench/quiver.hpp"

using namespace wb;

static std::pair<Quiver, FieldSpec> mk(unsigned long e, unsigned long p) {
  auto s = find_prime_field(e, p);
  Fp k(s.modulus);
  Quiver Q;
  Q.P = derive_params(k, k.parse(s.q), k.parse(s.zeta), static_cast<long>(e),
                      p);
  return {Q, s};
}

TEST_CASE("vertex set sizes: p' disjoint copies of Gamma_e") {
  for (auto [e, p] : std::vector<std::pair<unsigned long, unsigned long>>{
           {2, 2}, {2, 3}, {3, 3}, {2, 6}, {3, 2}}) {
    auto [Q, s] = mk(e, p);
    REQUIRE(Q.vertices().size() == e * Q.P.pprime);
  }
}

TEST_CASE("adjacency classification") {
  SECTION("e = 2: distinct vertices in one component are doubly linked") {
    auto [Q, s] = mk(2, 3);  // p' = 3 copies of Gamma_2
    REQUIRE(Q.adj({0, 1}, {0, 1}) == Adjacency::equal);
    REQUIRE(Q.adj({0, 1}, {1, 1}) == Adjacency::both);
    REQUIRE(Q.adj({1, 2}, {0, 2}) == Adjacency::both);
    REQUIRE(Q.adj({0, 1}, {1, 2}) == Adjacency::none);  // different copies
  }
  SECTION("e = 3: single arrows") {
    auto [Q, s] = mk(3, 2);
    REQUIRE(Q.adj({0, 1}, {1, 1}) == Adjacency::fwd);
    REQUIRE(Q.adj({1, 1}, {0, 1}) == Adjacency::back);
    REQUIRE(Q.adj({2, 1}, {0, 1}) == Adjacency::fwd);  // wraps around
    REQUIRE(Q.adj({0, 1}, {2, 1}) == Adjacency::back);
    REQUIRE(Q.adj({0, 1}, {0, 2}) == Adjacency::none);
  }
  SECTION("e = infinity: a line, no wrap") {
    QQ k;
    Quiver Q;
    Q.P = derive_params(k, k.from_int(2), k.from_int(-1), std::nullopt, 2);
    Q.window = 3;
    REQUIRE(Q.adj({0, 1}, {1, 1}) == Adjacency::fwd);
    REQUIRE(Q.adj({1, 1}, {0, 1}) == Adjacency::back);
    REQUIRE(Q.adj({-3, 1}, {3, 1}) == Adjacency::none);
    REQUIRE(Q.vertices().size() == 7 * 2);
  }
}

TEST_CASE("sigma on vertices: frozen cycle structures") {
  SECTION("(e,p) = (2,3): two 3-cycles, one per residue") {
    auto [Q, s] = mk(2, 3);
    auto orbs = Q.vertex_orbits();
    REQUIRE(orbs.size() == 2);
    REQUIRE(orbs[0] == std::vector<VLabel>{{0, 1}, {0, 2}, {0, 3}});
    REQUIRE(orbs[1] == std::vector<VLabel>{{1, 1}, {1, 2}, {1, 3}});
  }
  SECTION("(e,p) = (2,6): one 6-cycle through both residues") {
    auto [Q, s] = mk(2, 6);
    auto orbs = Q.vertex_orbits();
    REQUIRE(orbs.size() == 1);
    REQUIRE(orbs[0] ==
            std::vector<VLabel>{{0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 2}, {1, 3}});
  }
  SECTION("(e,p) = (inf,2): transpositions (i,1)(i,2)") {
    QQ k;
    Quiver Q;
    Q.P = derive_params(k, k.from_int(2), k.from_int(-1), std::nullopt, 2);
    Q.window = 2;
    auto orbs = Q.vertex_orbits();
    REQUIRE(orbs.size() == 5);
    for (auto& o : orbs) {
      REQUIRE(o.size() == 2);
      REQUIRE(o[0].first == o[1].first);
    }
  }
}

TEST_CASE("sigma has order exactly p with no early fixed points") {
  for (auto [e, p] : std::vector<std::pair<unsigned long, unsigned long>>{
           {2, 2}, {2, 3}, {3, 3}, {2, 6}, {2, 4}}) {
    auto [Q, s] = mk(e, p);
    for (auto v : Q.vertices()) {
      auto w = v;
      for (unsigned long m = 1; m < p; ++m) {
        w = Q.sigma(w);
        REQUIRE(w != v);
      }
      REQUIRE(Q.sigma(w) == v);
    }
  }
}

TEST_CASE("sigma multiplies values by zeta") {
  for (auto [e, p] : std::vector<std::pair<unsigned long, unsigned long>>{
           {2, 3}, {3, 3}, {2, 6}, {2, 2}}) {
    auto [Q, s] = mk(e, p);
    Fp k(s.modulus);
    auto q = k.parse(s.q), z = k.parse(s.zeta);
    VertexValues<Fp> vv(k, Q, q, z);
    for (auto v : Q.vertices())
      REQUIRE(k.eq(vv.at(Q.sigma(v)), k.mul(z, vv.at(v))));
  }
}

TEST_CASE("sequence orbit classes: frozen counts, all of size p") {
  struct Row {
    unsigned long e, p;
    unsigned n;
    std::size_t classes;
  };
  const Row rows[] = {{2, 2, 2, 2}, {2, 3, 2, 12}, {2, 2, 3, 4}, {3, 3, 2, 3}};
  for (auto& r : rows) {
    auto [Q, s] = mk(r.e, r.p);
    auto seqs = Q.all_sequences(r.n);
    REQUIRE(seqs.size() ==
            static_cast<std::size_t>(
                std::pow(static_cast<double>(r.e * Q.P.pprime), r.n) + 0.5));
    auto oc = orbit_classes(Q, seqs);
    INFO("e=" << r.e << " p=" << r.p << " n=" << r.n);
    REQUIRE(oc.reps.size() == r.classes);
    REQUIRE(oc.orbit_size == r.p);
    // representatives are lex-least and the map covers everything
    REQUIRE(oc.class_of.size() == seqs.size());
    for (auto& rep : oc.reps) {
      auto w = Q.sigma_seq(rep);
      while (w != rep) {
        REQUIRE(rep <= w);
        w = Q.sigma_seq(w);
      }
    }
  }
}

TEST_CASE("content map") {
  auto [Q, s] = mk(2, 2);
  Seq a = {{0, 1}, {1, 1}, {0, 1}};
  auto c = content(a);
  REQUIRE(c.at({0, 1}) == 2);
  REQUIRE(c.at({1, 1}) == 1);
}
