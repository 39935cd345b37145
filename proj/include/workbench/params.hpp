#pragma once
/*
  params.hpp — parameter arithmetic for cyclotomic quotients.

  Given q of order e (2 <= e <= infinity) and zeta of order p in the same
  field, derives

    p' = min{ m >= 1 : zeta^m in <q> }   (= p/gcd(p,e), finite e; = p if e=inf)
    eta in I with zeta^{p'} = q^eta       (unique; eta = 0 iff p' = p)
    omega = p/p'                          (= e/gcd(e,eta) when eta != 0)

  and handles the three weight domains: multiplicities over I (the sigma-stable
  G(r,p,n) input, level d), over I x J (the expanded Ariki-Koike parameter
  list, level r = p*d), and over K = I x J' (distinct eigenvalues v_j q^i,
  also level r).  The collapse map re-groups an I x J weight along the value
  identification zeta^{j+p'a} q^i = zeta^j q^{i+eta a}.
*/

#include <map>
#include <optional>
#include <vector>

#include "workbench/scalars.hpp"

namespace wb {

struct CycloParams {
  std::optional<long> e;  // nullopt = infinite
  unsigned long p = 1;
  unsigned long pprime = 1;
  long eta = 0;
  unsigned long omega = 1;

  bool e_finite() const { return e.has_value(); }
  // residues mod e; identity when e = infinity
  long normI(long i) const {
    if (!e) return i;
    long m = i % *e;
    return m < 0 ? m + *e : m;
  }
  json to_json() const {
    json j;
    j["e"] = e ? json(*e) : json("inf");
    j["p"] = p;
    j["pprime"] = pprime;
    j["eta"] = eta;
    j["omega"] = omega;
    return j;
  }
};

inline unsigned long gcd_ul(unsigned long a, unsigned long b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// p' by its definition (least m with zeta^m a power of q), then eta by direct
// search; the gcd closed forms are asserted as cross-checks.
template <class K>
CycloParams derive_params(const K& k, typename K::Elem q,
                          typename K::Elem zeta, std::optional<long> e,
                          unsigned long p) {
  CycloParams P;
  P.e = e;
  P.p = p;
  if (e) {
    check(*e >= 2, "derive_params: finite e must be >= 2");
    std::vector<typename K::Elem> qpow(static_cast<std::size_t>(*e));
    qpow[0] = k.one();
    for (long i = 1; i < *e; ++i) qpow[i] = k.mul(qpow[i - 1], q);
    auto in_qgrp = [&](const typename K::Elem& x) -> std::optional<long> {
      for (long i = 0; i < *e; ++i)
        if (k.eq(qpow[i], x)) return i;
      return std::nullopt;
    };
    auto zm = zeta;  // zeta^m at the top of each iteration
    unsigned long m = 1;
    std::optional<long> hit;
    for (; m <= p; ++m, zm = k.mul(zm, zeta)) {
      hit = in_qgrp(zm);
      if (hit) break;
    }
    check(hit.has_value(), "derive_params: zeta^p not in <q> (orders inconsistent)");
    P.pprime = m;
    P.eta = *hit;
    check(P.pprime == p / gcd_ul(p, static_cast<unsigned long>(*e)),
          "derive_params: p' formula mismatch");
  } else {
    // infinite order q: the only root of unity inside <q> is 1
    P.pprime = p;
    P.eta = 0;
    check(k.eq(field_pow(k, zeta, static_cast<long long>(p)), k.one()),
          "derive_params: zeta^p != 1");
  }
  check(p % P.pprime == 0, "derive_params: p' does not divide p");
  P.omega = p / P.pprime;
  check((P.eta == 0) == (P.pprime == p), "derive_params: eta=0 iff p'=p");
  if (P.eta != 0 && e)
    check(P.omega == static_cast<unsigned long>(*e) /
                         gcd_ul(static_cast<unsigned long>(*e),
                                static_cast<unsigned long>(P.eta)),
          "derive_params: omega formula mismatch");
  return P;
}

// #{ a in Z/omega : eta*a = i in I }; each value in the image is hit once.
inline unsigned long fiber_count(const CycloParams& P, long i) {
  if (!P.e) return i == 0 ? 1 : 0;
  long e = *P.e;
  long g = P.eta == 0
               ? e
               : static_cast<long>(gcd_ul(static_cast<unsigned long>(P.eta),
                                          static_cast<unsigned long>(e)));
  return P.normI(i) % g == 0 ? 1 : 0;
}

// ------------------------------------------------------------------- weights

enum class WeightDomain { I, IJ, K };

// Sparse multiplicity function.  Keys are (i,j); I-domain entries use j = 0,
// IJ-domain j in 1..p, K-domain j in 1..p'.
struct Weight {
  WeightDomain dom = WeightDomain::K;
  std::map<std::pair<long, long>, unsigned long> mult;

  unsigned long at(long i, long j) const {
    auto it = mult.find({i, j});
    return it == mult.end() ? 0 : it->second;
  }
  void set(long i, long j, unsigned long v) {
    if (v)
      mult[{i, j}] = v;
    else
      mult.erase({i, j});
  }
  unsigned long level() const {
    unsigned long s = 0;
    for (auto& [k, v] : mult) s += v;
    return s;
  }
  json to_json() const {
    json arr = json::array();
    for (auto& [key, v] : mult) {
      if (dom == WeightDomain::I)
        arr.push_back(json::array({key.first, v}));
      else
        arr.push_back(json::array({key.first, key.second, v}));
    }
    json j;
    j["domain"] = dom == WeightDomain::I ? "I" : (dom == WeightDomain::IJ ? "IxJ" : "K");
    j["mult"] = arr;
    return j;
  }
  static Weight from_json(const json& j) {
    Weight w;
    auto d = j.at("domain").get<std::string>();
    w.dom = d == "I" ? WeightDomain::I
                     : (d == "IxJ" ? WeightDomain::IJ : WeightDomain::K);
    check(d == "I" || d == "IxJ" || d == "K", "Weight: bad domain");
    for (auto& t : j.at("mult")) {
      if (w.dom == WeightDomain::I)
        w.set(t.at(0).get<long>(), 0, t.at(1).get<unsigned long>());
      else
        w.set(t.at(0).get<long>(), t.at(1).get<long>(),
              t.at(2).get<unsigned long>());
    }
    return w;
  }
};

// I-weight (level d) -> j-independent IxJ weight (level p*d).
inline Weight expand_weight(const CycloParams& P, const Weight& c) {
  check(c.dom == WeightDomain::I, "expand_weight: expects an I-weight");
  Weight w;
  w.dom = WeightDomain::IJ;
  for (auto& [key, v] : c.mult)
    for (unsigned long j = 1; j <= P.p; ++j)
      w.set(P.normI(key.first), static_cast<long>(j), v);
  return w;
}

inline bool is_j_independent(const CycloParams& P, const Weight& w) {
  check(w.dom == WeightDomain::IJ, "is_j_independent: expects an IxJ weight");
  // collect the i-support, then compare every column against j = 1
  std::map<long, bool> support;
  for (auto& [key, v] : w.mult)
    if (v) support[key.first] = true;
  for (auto& [i, _] : support) {
    (void)_;
    auto v1 = w.at(i, 1);
    for (unsigned long j = 2; j <= P.p; ++j)
      if (w.at(i, static_cast<long>(j)) != v1) return false;
  }
  return true;
}

// Lambda_{i,j} = sum over (i',a) with i' + eta*a = i of varLambda_{i', j+p'a};
// j + p'a is folded into J = {1..p} cyclically.
inline Weight collapse_weight(const CycloParams& P, const Weight& vl) {
  check(vl.dom == WeightDomain::IJ, "collapse_weight: expects an IxJ weight");
  Weight out;
  out.dom = WeightDomain::K;
  for (auto& [key, v] : vl.mult) {
    if (!v) continue;
    auto [ip, jfull] = key;
    check(1 <= jfull && jfull <= static_cast<long>(P.p),
          "collapse_weight: j outside 1..p");
    // invert the bijection J' x Z/omega -> J, (j,a) |-> j + p'a
    long j = (jfull - 1) % static_cast<long>(P.pprime) + 1;
    long a = (jfull - j) / static_cast<long>(P.pprime);
    long i = P.normI(ip + P.eta * a);
    out.set(i, j, out.at(i, j) + v);
  }
  return out;
}

// sigma on K-labels: (i,j) -> (i,j+1) for j < p', (i,p') -> (i+eta, 1).
inline std::pair<long, long> sigma_vertex(const CycloParams& P,
                                          std::pair<long, long> v) {
  auto [i, j] = v;
  if (j < static_cast<long>(P.pprime)) return {i, j + 1};
  return {P.normI(i + P.eta), 1};
}

inline std::pair<long, long> sigma_vertex_inv(const CycloParams& P,
                                              std::pair<long, long> v) {
  auto [i, j] = v;
  if (j > 1) return {i, j - 1};
  return {P.normI(i - P.eta), static_cast<long>(P.pprime)};
}

inline bool is_sigma_stable(const CycloParams& P, const Weight& w) {
  check(w.dom == WeightDomain::K, "is_sigma_stable: expects a K-weight");
  for (auto& [key, v] : w.mult) {
    auto s = sigma_vertex(P, key);
    if (w.at(s.first, s.second) != v) return false;
  }
  // also the reverse direction (zero entries mapping onto nonzero ones)
  for (auto& [key, v] : w.mult) {
    auto s = sigma_vertex_inv(P, key);
    if (w.at(s.first, s.second) != v) return false;
  }
  return true;
}

}  // namespace wb
