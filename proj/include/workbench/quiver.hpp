#pragma once
/*
  quiver.hpp — the cyclic quiver Gamma_e, its p'-fold disjoint union Gamma,
  the vertex shift sigma(v) = zeta*v, and orbit classes of residue sequences.

  Vertices are labels (i,j) with i in I (Z/eZ, or a symmetric integer window
  when e = infinity) and j in J' = {1..p'}; the label stands for the field
  element zeta^j q^i.  Edges go v -> qv, i.e. (i,j) -> (i+1,j); for e = 2 a
  pair of distinct vertices in one component is always doubly linked, and for
  e = infinity there are no cycles at all.
*/

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "workbench/params.hpp"

namespace wb {

using VLabel = std::pair<long, long>;
using Seq = std::vector<VLabel>;

// classification of an ordered vertex pair (u,w)
enum class Adjacency { equal, none, fwd, back, both };

inline const char* adjacency_name(Adjacency a) {
  switch (a) {
    case Adjacency::equal: return "equal";
    case Adjacency::none: return "none";
    case Adjacency::fwd: return "fwd";
    case Adjacency::back: return "back";
    default: return "both";
  }
}

struct Quiver {
  CycloParams P;
  long window = 0;  // e = inf only: i ranges over [-window, window]

  bool valid(VLabel v) const {
    auto [i, j] = v;
    if (j < 1 || j > static_cast<long>(P.pprime)) return false;
    if (P.e) return 0 <= i && i < *P.e;
    return -window <= i && i <= window;
  }

  std::vector<VLabel> vertices() const {
    std::vector<VLabel> vs;
    long lo = P.e ? 0 : -window;
    long hi = P.e ? *P.e - 1 : window;
    for (long i = lo; i <= hi; ++i)
      for (long j = 1; j <= static_cast<long>(P.pprime); ++j)
        vs.push_back({i, j});
    return vs;
  }

  Adjacency adj(VLabel u, VLabel w) const {
    if (u == w) return Adjacency::equal;
    if (u.second != w.second) return Adjacency::none;
    bool f, b;
    if (P.e) {
      f = P.normI(w.first - u.first) == 1;
      b = P.normI(u.first - w.first) == 1;
    } else {
      f = w.first == u.first + 1;
      b = u.first == w.first + 1;
    }
    if (f && b) return Adjacency::both;
    if (f) return Adjacency::fwd;
    if (b) return Adjacency::back;
    return Adjacency::none;
  }

  VLabel sigma(VLabel v) const { return sigma_vertex(P, v); }
  VLabel sigma_inv(VLabel v) const { return sigma_vertex_inv(P, v); }
  VLabel sigma_pow(VLabel v, long m) const {
    long p = static_cast<long>(P.p);
    m %= p;
    if (m < 0) m += p;
    for (long t = 0; t < m; ++t) v = sigma(v);
    return v;
  }

  Seq sigma_seq(Seq s, long m = 1) const {
    for (auto& v : s) v = sigma_pow(v, m);
    return s;
  }

  // sigma as a permutation in cycle notation, for reports
  std::vector<std::vector<VLabel>> vertex_orbits() const {
    std::vector<std::vector<VLabel>> orbits;
    std::set<VLabel> seen;
    for (auto v : vertices()) {
      if (seen.count(v)) continue;
      std::vector<VLabel> orb;
      auto w = v;
      do {
        orb.push_back(w);
        seen.insert(w);
        w = sigma(w);
      } while (w != v);
      orbits.push_back(orb);
    }
    return orbits;
  }

  // all of K^n in lex order (finite e, or windowed labels when e = inf)
  std::vector<Seq> all_sequences(unsigned n) const {
    auto K = vertices();
    std::vector<Seq> out;
    Seq cur(n, K.empty() ? VLabel{0, 1} : K.front());
    std::vector<std::size_t> idx(n, 0);
    if (K.empty() || n == 0) {
      if (n == 0) out.push_back({});
      return out;
    }
    for (;;) {
      for (unsigned a = 0; a < n; ++a) cur[a] = K[idx[a]];
      out.push_back(cur);
      unsigned a = n;
      while (a > 0) {
        --a;
        if (++idx[a] < K.size()) break;
        idx[a] = 0;
        if (a == 0) return out;
      }
    }
  }
};

// content of a residue sequence: vertex -> multiplicity (the "block" alpha)
inline std::map<VLabel, unsigned> content(const Seq& s) {
  std::map<VLabel, unsigned> c;
  for (auto& v : s) ++c[v];
  return c;
}

// sigma-orbit classes of a family of sequences; representatives are the lex
// least member of each orbit, listed in lex order.  Every orbit has size
// exactly p (sigma has no fixed vertices below power p), which is asserted.
struct OrbitClasses {
  std::vector<Seq> reps;
  std::map<Seq, std::size_t> class_of;  // every sequence -> index into reps
  unsigned long orbit_size = 1;
};

inline OrbitClasses orbit_classes(const Quiver& Q,
                                  const std::vector<Seq>& seqs) {
  OrbitClasses oc;
  oc.orbit_size = Q.P.p;
  std::set<Seq> pool(seqs.begin(), seqs.end());
  std::vector<Seq> sorted(pool.begin(), pool.end());
  for (auto& s : sorted) {
    if (oc.class_of.count(s)) continue;
    std::size_t id = oc.reps.size();
    oc.reps.push_back(s);
    auto w = s;
    unsigned long size = 0;
    do {
      check(pool.count(w),
            "orbit_classes: family not closed under sigma");
      oc.class_of[w] = id;
      w = Q.sigma_seq(w);
      ++size;
    } while (w != s);
    check(size == Q.P.p, "orbit_classes: orbit of size != p");
  }
  return oc;
}

// ----------------------------------------------------- concrete vertex values
//
// value(i,j) = zeta^j q^i; injective on the label set (that is what J' is
// for), verified on construction.

template <class K>
struct VertexValues {
  std::map<VLabel, typename K::Elem> value;
  std::map<std::string, VLabel> label_of;  // keyed by canonical element string

  VertexValues(const K& k, const Quiver& Q, typename K::Elem q,
               typename K::Elem zeta) {
    for (auto v : Q.vertices()) {
      auto [i, j] = v;
      auto x = k.mul(field_pow(k, zeta, j), field_pow(k, q, i));
      value[v] = x;
      auto s = k.str(x);
      check(!label_of.count(s), "VertexValues: value map not injective");
      label_of[s] = v;
    }
  }

  const typename K::Elem& at(VLabel v) const { return value.at(v); }
  std::optional<VLabel> find(const K& k, const typename K::Elem& x) const {
    auto it = label_of.find(k.str(x));
    if (it == label_of.end()) return std::nullopt;
    return it->second;
  }
};

}  // namespace wb
