#pragma once
/*
  repalg.hpp — exact dense linear algebra over a field kit and the regular
  representation of a completed finitely presented algebra.

  The regular representation sends an element f to the matrix of left
  multiplication by f on the normal-word basis; it is faithful for unital
  algebras, and an element is recovered from its matrix as the column over
  the empty word.  On top of that sit the spectral (primary) idempotents of
  a matrix with known candidate eigenvalues, minimal polynomials, corner
  inverses (inverse inside a corner eEe via the global trick A + 1 - E), and
  span/closure builders used for subalgebra dimension counts.
*/

#include <optional>
#include <vector>

#include "workbench/rewrite.hpp"
#include "workbench/scalars.hpp"

namespace wb {

// ---------------------------------------------------------------- matrices

template <class K>
struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<typename K::Elem> a;  // row-major

  typename K::Elem& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const typename K::Elem& at(std::size_t r, std::size_t c) const {
    return a[r * cols + c];
  }
};

template <class K>
Mat<K> mat_zero(const K& k, std::size_t r, std::size_t c) {
  Mat<K> m;
  m.rows = r;
  m.cols = c;
  m.a.assign(r * c, k.zero());
  return m;
}

template <class K>
Mat<K> mat_identity(const K& k, std::size_t n) {
  auto m = mat_zero(k, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = k.one();
  return m;
}

template <class K>
Mat<K> mat_add(const K& k, const Mat<K>& x, const Mat<K>& y) {
  check(x.rows == y.rows && x.cols == y.cols, "mat_add: shape mismatch");
  Mat<K> r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = k.add(r.a[i], y.a[i]);
  return r;
}

template <class K>
Mat<K> mat_sub(const K& k, const Mat<K>& x, const Mat<K>& y) {
  check(x.rows == y.rows && x.cols == y.cols, "mat_sub: shape mismatch");
  Mat<K> r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = k.sub(r.a[i], y.a[i]);
  return r;
}

template <class K>
Mat<K> mat_scale(const K& k, const typename K::Elem& c, Mat<K> x) {
  for (auto& v : x.a) v = k.mul(c, v);
  return x;
}

template <class K>
Mat<K> mat_mul(const K& k, const Mat<K>& x, const Mat<K>& y) {
  check(x.cols == y.rows, "mat_mul: shape mismatch");
  auto r = mat_zero(k, x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t t = 0; t < x.cols; ++t) {
      const auto& xit = x.at(i, t);
      if (k.is_zero(xit)) continue;
      for (std::size_t j = 0; j < y.cols; ++j) {
        const auto& ytj = y.at(t, j);
        if (k.is_zero(ytj)) continue;
        r.at(i, j) = k.add(r.at(i, j), k.mul(xit, ytj));
      }
    }
  return r;
}

template <class K>
bool mat_is_zero(const K& k, const Mat<K>& x) {
  for (auto& v : x.a)
    if (!k.is_zero(v)) return false;
  return true;
}

template <class K>
bool mat_eq(const K& k, const Mat<K>& x, const Mat<K>& y) {
  if (x.rows != y.rows || x.cols != y.cols) return false;
  for (std::size_t i = 0; i < x.a.size(); ++i)
    if (!k.eq(x.a[i], y.a[i])) return false;
  return true;
}

template <class K>
Mat<K> mat_pow(const K& k, Mat<K> x, unsigned long m) {
  check(x.rows == x.cols, "mat_pow: square matrix required");
  auto r = mat_identity(k, x.rows);
  while (m) {
    if (m & 1) r = mat_mul(k, r, x);
    x = mat_mul(k, x, x);
    m >>= 1;
  }
  return r;
}

template <class K>
json mat_to_json(const K& k, const Mat<K>& x) {
  json rows = json::array();
  for (std::size_t i = 0; i < x.rows; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < x.cols; ++j) row.push_back(k.elem_json(x.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

// -------------------------------------------------------------------- Gauss

// reduced row echelon form in place; returns pivot column per pivot row
template <class K>
std::vector<std::size_t> rref(const K& k, Mat<K>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t sel = row;
    while (sel < m.rows && k.is_zero(m.at(sel, col))) ++sel;
    if (sel == m.rows) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols; ++j)
        std::swap(m.at(sel, j), m.at(row, j));
    auto inv = k.inv(m.at(row, col));
    for (std::size_t j = col; j < m.cols; ++j)
      m.at(row, j) = k.mul(inv, m.at(row, j));
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || k.is_zero(m.at(i, col))) continue;
      auto f = m.at(i, col);
      for (std::size_t j = col; j < m.cols; ++j)
        m.at(i, j) = k.sub(m.at(i, j), k.mul(f, m.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
std::size_t mat_rank(const K& k, Mat<K> m) {
  return rref(k, m).size();
}

template <class K>
std::optional<Mat<K>> mat_inverse(const K& k, const Mat<K>& x) {
  check(x.rows == x.cols, "mat_inverse: square matrix required");
  std::size_t n = x.rows;
  auto aug = mat_zero(k, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = x.at(i, j);
    aug.at(i, n + i) = k.one();
  }
  auto piv = rref(k, aug);
  if (piv.size() != n || piv.back() != n - 1) return std::nullopt;
  auto r = mat_zero(k, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.at(i, j) = aug.at(i, n + j);
  return r;
}

// one solution of A x = b, if consistent
template <class K>
std::optional<std::vector<typename K::Elem>> mat_solve(
    const K& k, const Mat<K>& A, const std::vector<typename K::Elem>& b) {
  check(A.rows == b.size(), "mat_solve: shape mismatch");
  auto aug = mat_zero(k, A.rows, A.cols + 1);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols) = b[i];
  }
  auto piv = rref(k, aug);
  if (!piv.empty() && piv.back() == A.cols) return std::nullopt;  // 0 = 1 row
  std::vector<typename K::Elem> x(A.cols, k.zero());
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(r, A.cols);
  return x;
}

// ------------------------------------------------------------ span builder

// incremental echelon basis of a subspace of K^width, with optional tracking
// of how each inserted vector was expressed (used for minimal polynomials)
template <class K>
struct SpanBuilder {
  const K& k;
  std::size_t width;
  std::vector<std::vector<typename K::Elem>> rows;  // echelon, pivot 1
  std::vector<std::size_t> pivots;                  // pivot col per row

  SpanBuilder(const K& kk, std::size_t w) : k(kk), width(w) {}

  std::size_t rank() const { return rows.size(); }

  // reduce v against the stored rows; applies the same operations to aux
  // (any length) when given
  void reduce(std::vector<typename K::Elem>& v,
              std::vector<std::vector<typename K::Elem>>* aux_rows = nullptr,
              std::vector<typename K::Elem>* aux = nullptr) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto& c = v[pivots[r]];
      if (k.is_zero(c)) continue;
      auto f = c;
      for (std::size_t j = 0; j < width; ++j)
        v[j] = k.sub(v[j], k.mul(f, rows[r][j]));
      if (aux && aux_rows)
        for (std::size_t j = 0; j < (*aux).size(); ++j)
          (*aux)[j] = k.sub((*aux)[j], k.mul(f, (*aux_rows)[r][j]));
    }
  }

  bool is_zero(const std::vector<typename K::Elem>& v) const {
    for (auto& c : v)
      if (!k.is_zero(c)) return false;
    return true;
  }

  bool contains(std::vector<typename K::Elem> v) const {
    reduce(v);
    return is_zero(v);
  }

  // insert if independent; returns true when the rank grew
  bool add(std::vector<typename K::Elem> v) {
    check(v.size() == width, "SpanBuilder: width mismatch");
    reduce(v);
    std::size_t p = 0;
    while (p < width && k.is_zero(v[p])) ++p;
    if (p == width) return false;
    auto inv = k.inv(v[p]);
    for (auto& c : v) c = k.mul(inv, c);
    // back-substitute into existing rows to keep the basis reduced
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto f = rows[r][p];
      if (k.is_zero(f)) continue;
      for (std::size_t j = 0; j < width; ++j)
        rows[r][j] = k.sub(rows[r][j], k.mul(f, v[j]));
    }
    // insert keeping pivots sorted
    std::size_t pos = 0;
    while (pos < pivots.size() && pivots[pos] < p) ++pos;
    rows.insert(rows.begin() + pos, std::move(v));
    pivots.insert(pivots.begin() + pos, p);
    return true;
  }
};

template <class K>
std::vector<typename K::Elem> mat_flatten(const Mat<K>& m) {
  return m.a;
}

// dimension of the unital subalgebra generated by `gens` inside the matrix
// algebra; optionally exposes the accumulated basis (as flattened vectors)
template <class K>
std::size_t subalgebra_dimension(const K& k, const std::vector<Mat<K>>& gens,
                                 std::vector<Mat<K>>* basis_out = nullptr) {
  check(!gens.empty(), "subalgebra_dimension: no generators");
  std::size_t n = gens[0].rows;
  SpanBuilder<K> span(k, n * n);
  std::vector<Mat<K>> basis;
  auto push = [&](const Mat<K>& m) {
    if (span.add(mat_flatten(m))) {
      basis.push_back(m);
      return true;
    }
    return false;
  };
  push(mat_identity(k, n));
  for (auto& g : gens) push(g);
  for (std::size_t i = 0; i < basis.size(); ++i)  // basis grows during loop
    for (auto& g : gens) {
      push(mat_mul(k, g, basis[i]));
      push(mat_mul(k, basis[i], g));
    }
  if (basis_out) *basis_out = basis;
  return span.rank();
}

// ------------------------------------------------------- minimal polynomial

// monic minimal polynomial of a square matrix
template <class K>
Poly1<K> minimal_polynomial(const K& k, const Mat<K>& A) {
  check(A.rows == A.cols, "minimal_polynomial: square matrix required");
  std::size_t n = A.rows;
  SpanBuilder<K> span(k, n * n);
  // aux rows track how each stored row decomposes over the powers of A;
  // all tracking vectors share length n + 1 so row operations line up
  std::vector<std::vector<typename K::Elem>> aux_rows;
  auto power = mat_identity(k, n);
  for (std::size_t deg = 0; deg <= n; ++deg) {
    auto v = mat_flatten(power);
    std::vector<typename K::Elem> aux(n + 1, k.zero());
    aux[deg] = k.one();
    span.reduce(v, &aux_rows, &aux);
    if (span.is_zero(v)) {
      // sum_{i<=deg} aux[i] A^i = 0 with aux[deg] = 1: existing tracking
      // rows only involve powers below deg, so the top coefficient survives
      aux.resize(deg + 1);
      Poly1<K> m;
      m.c = aux;
      p1_normalize(k, m);
      return m;
    }
    // insert normalized and keep aux aligned with rows
    std::size_t p = 0;
    while (p < span.width && k.is_zero(v[p])) ++p;
    auto inv = k.inv(v[p]);
    for (auto& c : v) c = k.mul(inv, c);
    for (auto& c : aux) c = k.mul(inv, c);
    for (std::size_t r = 0; r < span.rows.size(); ++r) {
      auto f = span.rows[r][p];
      if (k.is_zero(f)) continue;
      for (std::size_t j = 0; j < span.width; ++j)
        span.rows[r][j] = k.sub(span.rows[r][j], k.mul(f, v[j]));
      for (std::size_t j = 0; j < aux.size(); ++j)
        aux_rows[r][j] = k.sub(aux_rows[r][j], k.mul(f, aux[j]));
    }
    std::size_t pos = 0;
    while (pos < span.pivots.size() && span.pivots[pos] < p) ++pos;
    span.rows.insert(span.rows.begin() + pos, std::move(v));
    span.pivots.insert(span.pivots.begin() + pos, p);
    aux_rows.insert(aux_rows.begin() + pos, std::move(aux));
    power = mat_mul(k, power, A);
  }
  check(false, "minimal_polynomial: no dependency up to dimension (bug)");
  return {};
}

// evaluate a univariate polynomial at a matrix
template <class K>
Mat<K> p1_eval_mat(const K& k, const Poly1<K>& f, const Mat<K>& A) {
  auto r = mat_zero(k, A.rows, A.cols);
  for (std::size_t d = f.c.size(); d-- > 0;) {
    r = mat_mul(k, r, A);
    for (std::size_t i = 0; i < A.rows; ++i)
      r.at(i, i) = k.add(r.at(i, i), f.c[d]);
  }
  return r;
}

// ----------------------------------------------------- spectral idempotents

// primary (generalized-eigenspace) idempotents of A for its minimal
// polynomial prod (x - v_i)^{m_i}; the roots must all lie in `candidates`.
// Returns pairs (eigenvalue, idempotent matrix); idempotents are pairwise
// orthogonal and sum to the identity.
template <class K>
std::vector<std::pair<typename K::Elem, Mat<K>>> spectral_idempotents(
    const K& k, const Mat<K>& A,
    const std::vector<typename K::Elem>& candidates) {
  auto m = minimal_polynomial(k, A);
  // factor m over the candidate roots
  std::vector<std::pair<typename K::Elem, unsigned long>> roots;
  auto rem = m;
  for (auto& v : candidates) {
    unsigned long mult = 0;
    for (;;) {
      auto [quot, rest] = p1_divrem(k, rem, p1_linear(k, v));
      if (!rest.is_zero()) break;
      rem = quot;
      ++mult;
    }
    if (mult) roots.push_back({v, mult});
  }
  check(rem.degree() == 0,
        "spectral_idempotents: minimal polynomial has a root outside the "
        "candidate eigenvalue set");
  std::vector<std::pair<typename K::Elem, Mat<K>>> out;
  for (auto& [v, mult] : roots) {
    // m = g * (x - v)^mult with g(v) != 0; xgcd(g, (x-v)^mult) = 1
    auto primary = p1_pow(k, p1_linear(k, v), mult);
    auto [quot, rest] = p1_divrem(k, m, primary);
    check(rest.is_zero(), "spectral_idempotents: factorization failure");
    auto [g, u, w] = p1_xgcd(k, quot, primary);
    check(g.degree() == 0, "spectral_idempotents: factors not coprime");
    // u*quot + w*primary = 1; idempotent = (u*quot)(A)
    auto e = p1_eval_mat(k, p1_mul(k, u, quot), A);
    (void)w;
    out.push_back({v, std::move(e)});
  }
  return out;
}

// ------------------------------------------------------------ corner tools

// inverse of A inside the corner E M E (A must satisfy A = E A E): the
// element B = E B E with A B = B A = E, obtained from the global inverse of
// A + 1 - E, which exists iff A is invertible on im(E).
template <class K>
std::optional<Mat<K>> corner_inverse(const K& k, const Mat<K>& A,
                                     const Mat<K>& E) {
  check(mat_eq(k, A, mat_mul(k, mat_mul(k, E, A), E)),
        "corner_inverse: element does not lie in the corner");
  auto M = mat_add(k, A, mat_sub(k, mat_identity(k, A.rows), E));
  auto inv = mat_inverse(k, M);
  if (!inv) return std::nullopt;
  auto B = mat_mul(k, mat_mul(k, E, *inv), E);
  check(mat_eq(k, mat_mul(k, A, B), E) && mat_eq(k, mat_mul(k, B, A), E),
        "corner_inverse: verification failed");
  return B;
}

// least m >= 1 with A^m = 0, or nullopt if A is not nilpotent
template <class K>
std::optional<unsigned long> nilpotency_index(const K& k, const Mat<K>& A) {
  auto power = A;
  for (unsigned long m = 1; m <= A.rows; ++m) {
    if (mat_is_zero(k, power)) return m;
    power = mat_mul(k, power, A);
  }
  return std::nullopt;
}

// ---------------------------------------------------- regular representation

// left-multiplication matrices on the normal-word basis of a completed
// rewrite system
template <class K>
struct RegularRep {
  const RewriteSystem<K>* rs;
  NormalBasis nb;
  std::size_t dim = 0;
  std::vector<Mat<K>> genmat;  // one per generator

  RegularRep(const RewriteSystem<K>& sys, NormalBasis basis)
      : rs(&sys), nb(std::move(basis)) {
    check_cap(nb.complete, "RegularRep: normal basis incomplete (enumeration cap)");
    dim = nb.words.size();
    const K& k = rs->field;
    genmat.reserve(rs->ngens);
    for (Gen g = 0; g < rs->ngens; ++g) {
      auto m = mat_zero(k, dim, dim);
      for (std::size_t j = 0; j < dim; ++j) {
        Word w;
        w.push_back(g);
        w.insert(w.end(), nb.words[j].begin(), nb.words[j].end());
        set_column(m, j, coords(rs->normal_form_word(w)));
      }
      genmat.push_back(std::move(m));
    }
  }

  const K& field() const { return rs->field; }

  std::vector<typename K::Elem> coords(const NCPoly<K>& reduced) const {
    const K& k = rs->field;
    std::vector<typename K::Elem> v(dim, k.zero());
    for (auto& [w, c] : reduced.t) {
      auto it = nb.index.find(w);
      check(it != nb.index.end(), "RegularRep: term outside the normal basis");
      v[it->second] = c;
    }
    return v;
  }

  static void set_column(Mat<K>& m, std::size_t j,
                         const std::vector<typename K::Elem>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, j) = v[i];
  }

  // matrix of left multiplication by an arbitrary element
  Mat<K> mat_of(const NCPoly<K>& f) const {
    const K& k = rs->field;
    auto m = mat_zero(k, dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
      auto fw = rs->reduce(np_sandwich(Word{}, f, nb.words[j]));
      set_column(m, j, coords(fw));
    }
    return m;
  }

  Mat<K> mat_of_word(const Word& w) const {
    return mat_of(np_term(rs->field, w, rs->field.one()));
  }

  // recover the element from its matrix: the column over the empty word
  NCPoly<K> element_of(const Mat<K>& m) const {
    const K& k = rs->field;
    auto it = nb.index.find(Word{});
    check(it != nb.index.end(), "element_of: unit word missing");
    std::vector<std::pair<Word, typename K::Elem>> terms;
    for (std::size_t i = 0; i < dim; ++i) {
      auto c = m.at(i, it->second);
      if (!k.is_zero(c)) terms.push_back({nb.words[i], c});
    }
    return np_normalize(k, rs->ord, std::move(terms));
  }
};

}  // namespace wb
