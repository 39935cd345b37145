#pragma once
/*
  scalars.hpp — exact coefficient fields.

  Two backends behind one compile-time interface:

    Fp  — prime residue fields F_ell, 64-bit words with __int128 products.
          Default backend: every finite (e,p) pair is realised by choosing a
          prime ell = 1 (mod lcm(e,p)) together with elements q of order e
          and zeta of order p.
    QQ  — rationals with GMP arbitrary-precision integers, used when roots of
          unity of order > 2 are not required (zeta in {1,-1}, q of infinite
          order or q = -1).

  Field objects are tiny handles passed by const reference; elements are plain
  values.  All arithmetic is exact; no floating point anywhere.  The univariate
  polynomial kit at the bottom (divrem, xgcd, products of linear factors) backs
  minimal polynomials and spectral projector interpolation.
*/

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "workbench/util.hpp"

namespace wb {

using json = nlohmann::json;

// Multiplicative order; finite == false encodes infinite order (rationals).
struct order_t {
  bool finite = true;
  unsigned long value = 0;
};

// ---------------------------------------------------------------- prime field

struct Fp {
  using Elem = std::uint64_t;
  std::uint64_t ell;  // prime modulus, > 1

  explicit Fp(std::uint64_t modulus) : ell(modulus) {
    check(modulus >= 2, "Fp: modulus must be >= 2");
  }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % ell; }
  Elem from_int(long long v) const {
    long long r = v % static_cast<long long>(ell);
    if (r < 0) r += static_cast<long long>(ell);
    return static_cast<Elem>(r);
  }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= ell ? s - ell : s;
  }
  Elem neg(Elem a) const { return a == 0 ? 0 : ell - a; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % ell);
  }
  Elem pow(Elem a, unsigned long long n) const {
    Elem r = one(), base = a;
    while (n) {
      if (n & 1) r = mul(r, base);
      base = mul(base, base);
      n >>= 1;
    }
    return r;
  }
  Elem inv(Elem a) const {
    check(a != 0, "Fp: division by zero");
    return pow(a, ell - 2);  // ell prime
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  order_t order(Elem a) const {
    check(a != 0, "Fp: order of zero");
    unsigned long o = 1;
    Elem x = a;
    while (x != one()) {
      x = mul(x, a);
      ++o;
    }
    return {true, o};
  }

  std::string str(Elem a) const { return std::to_string(a); }
  Elem parse(const std::string& s) const {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    check(pos == s.size(), "Fp: bad element literal '" + s + "'");
    return from_int(v);
  }
  json elem_json(Elem a) const { return json(a); }
  Elem elem_from_json(const json& j) const {
    if (j.is_number_integer()) return from_int(j.get<long long>());
    if (j.is_string()) return parse(j.get<std::string>());
    throw error("Fp: bad element JSON");
  }
};

// ------------------------------------------------------------------ rationals

struct QQ {
  using Elem = mpq_class;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long long v) const {
    return Elem(static_cast<long>(v));  // fits: all literals here are small
  }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool eq(const Elem& a, const Elem& b) const { return cmp(a, b) == 0; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    check(sgn(a) != 0, "QQ: division by zero");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return a * inv(b); }
  Elem pow(Elem a, unsigned long long n) const {
    Elem r = one();
    while (n) {
      if (n & 1) r = r * a;
      a = a * a;
      n >>= 1;
    }
    return r;
  }

  order_t order(const Elem& a) const {
    check(sgn(a) != 0, "QQ: order of zero");
    if (cmp(a, 1) == 0) return {true, 1};
    if (cmp(a, -1) == 0) return {true, 2};
    return {false, 0};  // no other rational is a root of unity
  }

  std::string str(const Elem& a) const { return a.get_str(); }
  Elem parse(const std::string& s) const {
    mpq_class v;
    check(v.set_str(s, 10) == 0, "QQ: bad element literal '" + s + "'");
    v.canonicalize();
    return v;
  }
  json elem_json(const Elem& a) const { return json(str(a)); }
  Elem elem_from_json(const json& j) const {
    if (j.is_number_integer()) return from_int(j.get<long long>());
    if (j.is_string()) return parse(j.get<std::string>());
    throw error("QQ: bad element JSON");
  }
};

// Signed power, negative exponents through the inverse.
template <class K>
typename K::Elem field_pow(const K& k, typename K::Elem a, long long n) {
  if (n >= 0) return k.pow(a, static_cast<unsigned long long>(n));
  return k.pow(k.inv(a), static_cast<unsigned long long>(-n));
}

// ------------------------------------------------------------- prime search

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------- field spec
//
// External interface: JSON field descriptions, e.g.
//   {"kind":"prime","modulus":7,"q":6,"zeta":2,"e":2,"p":3}
//   {"kind":"rationals","q":"2","zeta":"-1","e":"inf","p":2}
// e is a positive integer or "inf"; p >= 1 is always finite.

struct FieldSpec {
  std::string kind;                  // "prime" | "rationals"
  std::uint64_t modulus = 0;         // prime kind only
  std::string q, zeta;               // canonical element literals
  std::optional<unsigned long> e;    // nullopt = infinite order
  unsigned long p = 1;

  json to_json() const {
    json j;
    j["kind"] = kind;
    if (kind == "prime") {
      j["modulus"] = modulus;
      j["q"] = std::stoull(q);
      j["zeta"] = std::stoull(zeta);
    } else {
      j["q"] = q;
      j["zeta"] = zeta;
    }
    if (e)
      j["e"] = *e;
    else
      j["e"] = "inf";
    j["p"] = p;
    return j;
  }

  static FieldSpec from_json(const json& j) {
    FieldSpec s;
    s.kind = j.at("kind").get<std::string>();
    check(s.kind == "prime" || s.kind == "rationals",
          "FieldSpec: kind must be 'prime' or 'rationals'");
    auto elem_str = [&](const json& v) -> std::string {
      return v.is_string() ? v.get<std::string>()
                           : std::to_string(v.get<long long>());
    };
    s.q = elem_str(j.at("q"));
    s.zeta = elem_str(j.at("zeta"));
    if (s.kind == "prime") s.modulus = j.at("modulus").get<std::uint64_t>();
    const json& ej = j.at("e");
    if (ej.is_string()) {
      check(ej.get<std::string>() == "inf", "FieldSpec: e must be int or 'inf'");
      s.e = std::nullopt;
    } else {
      s.e = ej.get<unsigned long>();
    }
    s.p = j.at("p").get<unsigned long>();
    return s;
  }
};

// Checks that q and zeta really have orders e and p in the named field
// and that the backend can host them; throws wb::error otherwise.
inline void validate_field_spec(const FieldSpec& s) {
  check(s.p >= 1, "FieldSpec: p must be >= 1");
  if (s.kind == "prime") {
    check(is_prime(s.modulus), "FieldSpec: modulus is not prime");
    check(s.e.has_value(), "FieldSpec: e must be finite over a prime field");
    Fp k(s.modulus);
    auto q = k.parse(s.q), z = k.parse(s.zeta);
    check(k.order(q).value == *s.e, "FieldSpec: q does not have order e");
    check(k.order(z).value == s.p, "FieldSpec: zeta does not have order p");
    check(s.p % s.modulus != 0, "FieldSpec: characteristic divides p");
  } else {
    QQ k;
    auto q = k.parse(s.q), z = k.parse(s.zeta);
    auto oq = k.order(q), oz = k.order(z);
    check(oz.finite && oz.value == s.p,
          "FieldSpec: zeta must be a rational root of unity of order p");
    check(s.p <= 2, "FieldSpec: rationals host only p <= 2");
    if (s.e.has_value())
      check(oq.finite && oq.value == *s.e, "FieldSpec: q does not have order e");
    else
      check(!oq.finite, "FieldSpec: q has finite order but e = inf");
  }
}

// Smallest prime ell >= min_prime with ell = 1 (mod lcm(e,p)), plus the
// smallest residues of exact orders e and p.
inline FieldSpec find_prime_field(unsigned long e, unsigned long p,
                                  std::uint64_t min_prime = 2) {
  check(e >= 1 && p >= 1, "find_prime_field: e,p must be >= 1");
  auto gcd = [](unsigned long a, unsigned long b) {
    while (b) {
      a %= b;
      std::swap(a, b);
    }
    return a;
  };
  unsigned long m = e / gcd(e, p) * p;
  std::uint64_t ell = std::max<std::uint64_t>(min_prime, 2);
  for (;; ++ell) {
    if (!is_prime(ell) || (ell - 1) % m != 0) continue;
    Fp k(ell);
    std::uint64_t q = 0, z = 0;
    for (std::uint64_t x = 1; x < ell && (!q || !z); ++x) {
      auto o = k.order(x).value;
      if (!q && o == e) q = x;
      if (!z && o == p) z = x;
    }
    check(q && z, "find_prime_field: internal search failure");
    FieldSpec s;
    s.kind = "prime";
    s.modulus = ell;
    s.q = std::to_string(q);
    s.zeta = std::to_string(z);
    s.e = e;
    s.p = p;
    return s;
  }
}

// ------------------------------------------------- univariate polynomial kit
//
// Coefficients low-to-high, normalized: no trailing zeros; zero poly = {}.

template <class K>
struct Poly1 {
  std::vector<typename K::Elem> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
};

template <class K>
void p1_normalize(const K& k, Poly1<K>& f) {
  while (!f.c.empty() && k.is_zero(f.c.back())) f.c.pop_back();
}

template <class K>
Poly1<K> p1_const(const K& k, typename K::Elem a) {
  Poly1<K> f;
  if (!k.is_zero(a)) f.c = {a};
  return f;
}

// t - v
template <class K>
Poly1<K> p1_linear(const K& k, typename K::Elem v) {
  Poly1<K> f;
  f.c = {k.neg(v), k.one()};
  return f;
}

template <class K>
Poly1<K> p1_add(const K& k, const Poly1<K>& a, const Poly1<K>& b) {
  Poly1<K> r;
  r.c.resize(std::max(a.c.size(), b.c.size()), k.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = k.add(r.c[i], b.c[i]);
  p1_normalize(k, r);
  return r;
}

template <class K>
Poly1<K> p1_scale(const K& k, typename K::Elem s, const Poly1<K>& a) {
  Poly1<K> r = a;
  for (auto& x : r.c) x = k.mul(s, x);
  p1_normalize(k, r);
  return r;
}

template <class K>
Poly1<K> p1_sub(const K& k, const Poly1<K>& a, const Poly1<K>& b) {
  return p1_add(k, a, p1_scale(k, k.neg(k.one()), b));
}

template <class K>
Poly1<K> p1_mul(const K& k, const Poly1<K>& a, const Poly1<K>& b) {
  Poly1<K> r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, k.zero());
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = k.add(r.c[i + j], k.mul(a.c[i], b.c[j]));
  p1_normalize(k, r);
  return r;
}

template <class K>
std::pair<Poly1<K>, Poly1<K>> p1_divrem(const K& k, Poly1<K> a,
                                        const Poly1<K>& b) {
  check(!b.is_zero(), "p1_divrem: division by zero polynomial");
  Poly1<K> q;
  if (a.degree() >= b.degree())
    q.c.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, k.zero());
  auto lead_inv = k.inv(b.c.back());
  while (!a.is_zero() && a.degree() >= b.degree()) {
    std::size_t shift = static_cast<std::size_t>(a.degree() - b.degree());
    auto coef = k.mul(a.c.back(), lead_inv);
    q.c[shift] = coef;
    for (std::size_t i = 0; i < b.c.size(); ++i)
      a.c[shift + i] = k.sub(a.c[shift + i], k.mul(coef, b.c[i]));
    p1_normalize(k, a);
  }
  p1_normalize(k, q);
  return {q, a};
}

template <class K>
Poly1<K> p1_mod(const K& k, const Poly1<K>& a, const Poly1<K>& b) {
  return p1_divrem(k, a, b).second;
}

// Returns (g, u, v) with u*a + v*b = g, g monic gcd.
template <class K>
std::tuple<Poly1<K>, Poly1<K>, Poly1<K>> p1_xgcd(const K& k, Poly1<K> a,
                                                 Poly1<K> b) {
  Poly1<K> u0 = p1_const(k, k.one()), v0, u1, v1 = p1_const(k, k.one());
  while (!b.is_zero()) {
    auto [q, r] = p1_divrem(k, a, b);
    a = b;
    b = r;
    auto u2 = p1_sub(k, u0, p1_mul(k, q, u1));
    auto v2 = p1_sub(k, v0, p1_mul(k, q, v1));
    u0 = u1;
    v0 = v1;
    u1 = u2;
    v1 = v2;
  }
  if (!a.is_zero()) {
    auto s = k.inv(a.c.back());
    a = p1_scale(k, s, a);
    u0 = p1_scale(k, s, u0);
    v0 = p1_scale(k, s, v0);
  }
  return {a, u0, v0};
}

template <class K>
typename K::Elem p1_eval(const K& k, const Poly1<K>& f, typename K::Elem x) {
  auto r = k.zero();
  for (auto it = f.c.rbegin(); it != f.c.rend(); ++it)
    r = k.add(k.mul(r, x), *it);
  return r;
}

template <class K>
Poly1<K> p1_pow(const K& k, Poly1<K> a, unsigned long n) {
  Poly1<K> r = p1_const(k, k.one());
  while (n) {
    if (n & 1) r = p1_mul(k, r, a);
    a = p1_mul(k, a, a);
    n >>= 1;
  }
  return r;
}

}  // namespace wb
