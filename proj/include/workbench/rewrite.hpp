#pragma once
/*
  rewrite.hpp — noncommutative Groebner bases in the free associative algebra
  (Knuth-Bendix / Mora completion for two-sided ideals).

  Words are sequences of generator ids; the monomial order is degree-first,
  then left-to-right by a precedence rank (deglex), which is compatible with
  two-sided multiplication.  Rules are monic; the right-hand side is strictly
  below the left-hand word.  Completion processes proper overlap obstructions
  shortest-superposition-first, interreduces aggressively (rules whose left
  side becomes reducible are deactivated and their content re-enqueued), and
  skips obstructions between two idempotent-orthogonality rules, whose
  S-polynomials always cancel — that one skip is what keeps idempotent-heavy
  presentations (dozens of e(k) generators) from drowning the pair queue.

  Completion of a general presentation need not terminate; caps (rule count,
  word length, pair budget) turn divergence into a reported diagnostic rather
  than a hang.  When the queue drains the system is confluent and the set of
  irreducible words is a basis of the presented algebra; enumerate_basis walks
  those words by length.
*/

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "workbench/scalars.hpp"

namespace wb {

using Gen = std::uint16_t;
using Word = std::vector<Gen>;

inline Word operator+(Word a, const Word& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct MonomialOrder {
  // rank[g]: higher rank = bigger letter; defaults to the generator id.
  std::vector<unsigned> rank;

  unsigned rk(Gen g) const {
    return g < rank.size() ? rank[g] : static_cast<unsigned>(g);
  }
  // -1, 0, +1 for a < b, a == b, a > b
  int cmp(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == b[i]) continue;
      return rk(a[i]) < rk(b[i]) ? -1 : 1;
    }
    return 0;
  }
  bool less(const Word& a, const Word& b) const { return cmp(a, b) < 0; }
};

// ------------------------------------------------------------- polynomials

template <class K>
struct NCPoly {
  // invariant: sorted descending by the ambient order, no zero coefficients
  std::vector<std::pair<Word, typename K::Elem>> t;
  bool is_zero() const { return t.empty(); }
  const Word& lead_word() const { return t.front().first; }
  const typename K::Elem& lead_coeff() const { return t.front().second; }
};

template <class K>
NCPoly<K> np_normalize(const K& k, const MonomialOrder& ord,
                       std::vector<std::pair<Word, typename K::Elem>> terms) {
  std::sort(terms.begin(), terms.end(),
            [&](const auto& a, const auto& b) { return ord.less(b.first, a.first); });
  NCPoly<K> out;
  for (auto& [w, c] : terms) {
    if (!out.t.empty() && out.t.back().first == w)
      out.t.back().second = k.add(out.t.back().second, c);
    else
      out.t.push_back({w, c});
    if (k.is_zero(out.t.back().second)) out.t.pop_back();
  }
  return out;
}

template <class K>
NCPoly<K> np_term(const K& k, Word w, typename K::Elem c) {
  NCPoly<K> f;
  if (!k.is_zero(c)) f.t.push_back({std::move(w), std::move(c)});
  return f;
}

// merge of two sorted term lists
template <class K>
NCPoly<K> np_add(const K& k, const MonomialOrder& ord, const NCPoly<K>& a,
                 const NCPoly<K>& b) {
  NCPoly<K> out;
  out.t.reserve(a.t.size() + b.t.size());
  std::size_t i = 0, j = 0;
  while (i < a.t.size() && j < b.t.size()) {
    int c = ord.cmp(a.t[i].first, b.t[j].first);
    if (c > 0)
      out.t.push_back(a.t[i++]);
    else if (c < 0)
      out.t.push_back(b.t[j++]);
    else {
      auto s = k.add(a.t[i].second, b.t[j].second);
      if (!k.is_zero(s)) out.t.push_back({a.t[i].first, s});
      ++i, ++j;
    }
  }
  for (; i < a.t.size(); ++i) out.t.push_back(a.t[i]);
  for (; j < b.t.size(); ++j) out.t.push_back(b.t[j]);
  return out;
}

template <class K>
NCPoly<K> np_scale(const K& k, const typename K::Elem& c, NCPoly<K> a) {
  if (k.is_zero(c)) return {};
  for (auto& [w, x] : a.t) x = k.mul(c, x);
  return a;
}

template <class K>
NCPoly<K> np_sub(const K& k, const MonomialOrder& ord, const NCPoly<K>& a,
                 const NCPoly<K>& b) {
  return np_add(k, ord, a, np_scale(k, k.neg(k.one()), b));
}

// u * f * v; the order is multiplication-compatible so sortedness survives
template <class K>
NCPoly<K> np_sandwich(const Word& u, NCPoly<K> f, const Word& v) {
  for (auto& [w, c] : f.t) {
    Word nw;
    nw.reserve(u.size() + w.size() + v.size());
    nw.insert(nw.end(), u.begin(), u.end());
    nw.insert(nw.end(), w.begin(), w.end());
    nw.insert(nw.end(), v.begin(), v.end());
    w = std::move(nw);
  }
  return f;
}

template <class K>
NCPoly<K> np_mul(const K& k, const MonomialOrder& ord, const NCPoly<K>& a,
                 const NCPoly<K>& b) {
  std::vector<std::pair<Word, typename K::Elem>> acc;
  acc.reserve(a.t.size() * b.t.size());
  for (auto& [wa, ca] : a.t)
    for (auto& [wb, cb] : b.t) acc.push_back({wa + wb, k.mul(ca, cb)});
  return np_normalize(k, ord, std::move(acc));
}

template <class K>
std::string np_str(const K& k, const NCPoly<K>& f,
                   const std::vector<std::string>& labels) {
  if (f.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto& [w, c] : f.t) {
    if (!first) s += " + ";
    first = false;
    s += k.str(c);
    s += "*";
    if (w.empty())
      s += "1";
    else
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ".";
        s += labels.at(w[i]);
      }
  }
  return s;
}

// ------------------------------------------------------------------ rules

template <class K>
struct Rule {
  Word lhs;
  NCPoly<K> rhs;  // strictly below lhs
  bool active = true;
  bool idem_orth = false;  // e(a)e(b) -> delta e(a): S-pairs among these cancel
};

struct CompletionCaps {
  std::size_t max_rules = 20000;
  std::size_t max_word_len = 64;
  std::size_t max_pairs = 2000000;
  std::size_t max_basis = 1000000;
};

enum class CompletionStatus {
  completed,
  capped_rules,
  capped_word_len,
  capped_pairs
};

inline const char* completion_status_name(CompletionStatus s) {
  switch (s) {
    case CompletionStatus::completed: return "completed";
    case CompletionStatus::capped_rules: return "capped_rules";
    case CompletionStatus::capped_word_len: return "capped_word_len";
    default: return "capped_pairs";
  }
}

struct CompletionStats {
  CompletionStatus status = CompletionStatus::completed;
  std::size_t pairs_processed = 0;
  std::size_t rules_added = 0;
  std::size_t active_rules = 0;
};

struct NormalBasis {
  std::vector<Word> words;   // by length, then lex within a length
  std::map<Word, std::size_t> index;
  bool complete = true;      // false if a cap interrupted the walk
};

// Laurent polynomial in t with integer coefficients, for graded dimensions.
struct Laurent {
  std::map<long, long long> c;
  long long at_one() const {
    long long s = 0;
    for (auto& [d, v] : c) s += v;
    return s;
  }
  bool leq_coefficientwise(const Laurent& other) const {
    for (auto& [d, v] : c) {
      auto it = other.c.find(d);
      long long ov = it == other.c.end() ? 0 : it->second;
      if (v > ov) return false;
    }
    return true;
  }
  json to_json() const {
    json arr = json::array();
    for (auto& [d, v] : c)
      if (v) arr.push_back(json::array({d, v}));
    return arr;
  }
  std::string str() const {
    if (c.empty()) return "0";
    std::string s;
    for (auto& [d, v] : c) {
      if (!v) continue;
      if (!s.empty()) s += " + ";
      if (d == 0)
        s += std::to_string(v);
      else if (v == 1)
        s += "t^" + std::to_string(d);
      else
        s += std::to_string(v) + "*t^" + std::to_string(d);
    }
    return s.empty() ? "0" : s;
  }
};

// --------------------------------------------------------- rewrite system

template <class K>
struct RewriteSystem {
  K field;
  MonomialOrder ord;
  std::size_t ngens = 0;
  std::vector<Rule<K>> rules;
  std::vector<std::vector<std::uint32_t>> by_first;  // active rule ids by lhs[0]
  std::set<Gen> idempotent_gens;  // metadata for the pair-skipping heuristic
  CompletionStats stats;

  RewriteSystem(K k, std::size_t n, MonomialOrder o = {})
      : field(std::move(k)), ord(std::move(o)), ngens(n), by_first(n) {}

  // ---- reduction --------------------------------------------------------

  // first rule whose lhs occurs in w at or after position `from`;
  // returns (rule id, position) or rule id == npos
  std::pair<std::size_t, std::size_t> find_redex(const Word& w,
                                                 std::size_t from = 0) const {
    for (std::size_t pos = from; pos < w.size(); ++pos) {
      for (auto rid : by_first[w[pos]]) {
        const auto& L = rules[rid].lhs;
        if (L.size() > w.size() - pos) continue;
        if (std::equal(L.begin(), L.end(), w.begin() + pos))
          return {rid, pos};
      }
    }
    return {npos(), 0};
  }
  static std::size_t npos() { return static_cast<std::size_t>(-1); }

  bool word_irreducible(const Word& w) const {
    return find_redex(w).first == npos();
  }

  // full normal form: no term of the result is reducible
  NCPoly<K> reduce(NCPoly<K> f) const {
    const K& k = field;
    std::size_t scan = 0;  // terms before `scan` are known irreducible
    while (scan < f.t.size()) {
      auto& [w, c] = f.t[scan];
      auto [rid, pos] = find_redex(w);
      if (rid == npos()) {
        ++scan;
        continue;
      }
      const auto& R = rules[rid];
      Word u(w.begin(), w.begin() + pos);
      Word v(w.begin() + pos + R.lhs.size(), w.end());
      auto replacement = np_scale(k, c, np_sandwich(u, R.rhs, v));
      auto keep = f;
      keep.t.erase(keep.t.begin() + scan);
      f = np_add(k, ord, keep, replacement);
      // terms before scan stay irreducible: replacement is strictly below w,
      // but may interleave; rescan from the top is simplest and still cheap
      scan = 0;
    }
    return f;
  }

  NCPoly<K> normal_form_word(const Word& w) const {
    return reduce(np_term(field, w, field.one()));
  }

  // ---- construction ------------------------------------------------------

  // true if the word contains some active lhs as a subword
  bool contains_active_lhs(const Word& w) const {
    return !word_irreducible(w);
  }

private:
  struct Obs {
    std::size_t len;       // superposition word length (priority)
    std::uint32_t i, j;    // rule ids: suffix of lhs_i meets prefix of lhs_j
    std::uint16_t olen;    // overlap length
    bool operator<(const Obs& o) const {
      if (len != o.len) return len < o.len;
      if (i != o.i) return i < o.i;
      if (j != o.j) return j < o.j;
      return olen < o.olen;
    }
  };
  std::set<Obs> queue_;
  std::vector<NCPoly<K>> pending_;  // deactivated content awaiting re-entry

  void index_rule(std::uint32_t rid) {
    by_first[rules[rid].lhs[0]].push_back(rid);
  }
  void unindex_rule(std::uint32_t rid) {
    auto& v = by_first[rules[rid].lhs[0]];
    v.erase(std::remove(v.begin(), v.end(), rid), v.end());
  }

  void enqueue_overlaps(std::uint32_t a, std::uint32_t b) {
    const Word& u = rules[a].lhs;
    const Word& v = rules[b].lhs;
    if (rules[a].idem_orth && rules[b].idem_orth) return;  // always confluent
    std::size_t m = std::min(u.size(), v.size());
    for (std::size_t olen = 1; olen < m; ++olen) {
      if (!std::equal(u.end() - olen, u.end(), v.begin())) continue;
      queue_.insert(Obs{u.size() + v.size() - olen,
                        a, b, static_cast<std::uint16_t>(olen)});
    }
  }

  // add the reduced nonzero polynomial as a monic rule; deactivate rules the
  // new lhs strictly simplifies and requeue their content
  bool add_rule(NCPoly<K> f, CompletionCaps caps) {
    const K& k = field;
    auto lead_inv = k.inv(f.lead_coeff());
    f = np_scale(k, lead_inv, std::move(f));
    Rule<K> r;
    r.lhs = f.lead_word();
    check(!r.lhs.empty(),
          "completion: the ideal contains a nonzero constant (zero algebra); "
          "refusing to complete a presentation of the zero ring");
    NCPoly<K> rest = f;
    rest.t.erase(rest.t.begin());
    r.rhs = np_scale(k, k.neg(k.one()), rest);
    r.idem_orth = classify_idem_orth(r);
    if (r.lhs.size() > caps.max_word_len) {
      stats.status = CompletionStatus::capped_word_len;
      return false;
    }
    auto rid = static_cast<std::uint32_t>(rules.size());
    rules.push_back(std::move(r));
    ++stats.rules_added;
    index_rule(rid);
    // interreduce: deactivate actives whose lhs contains the new lhs
    for (std::uint32_t old = 0; old < rid; ++old) {
      if (!rules[old].active) continue;
      const Word& L = rules[old].lhs;
      const Word& N = rules[rid].lhs;
      bool contains = false;
      if (N.size() <= L.size())
        for (std::size_t pos = 0; pos + N.size() <= L.size(); ++pos)
          if (std::equal(N.begin(), N.end(), L.begin() + pos)) {
            contains = true;
            break;
          }
      if (!contains) continue;
      rules[old].active = false;
      unindex_rule(old);
      pending_.push_back(np_add(
          k, ord, np_term(k, rules[old].lhs, k.one()),
          np_scale(k, k.neg(k.one()), rules[old].rhs)));
    }
    // rewrite the rhs of remaining actives with the enlarged system
    for (std::uint32_t old = 0; old <= rid; ++old)
      if (rules[old].active) rules[old].rhs = reduce(rules[old].rhs);
    for (std::uint32_t other = 0; other <= rid; ++other) {
      if (!rules[other].active) continue;
      enqueue_overlaps(rid, other);
      if (other != rid) enqueue_overlaps(other, rid);
    }
    return true;
  }

  bool classify_idem_orth(const Rule<K>& r) const {
    if (r.lhs.size() != 2) return false;
    if (!idempotent_gens.count(r.lhs[0]) || !idempotent_gens.count(r.lhs[1]))
      return false;
    if (r.rhs.is_zero()) return true;
    return r.rhs.t.size() == 1 && r.rhs.t[0].first.size() == 1 &&
           idempotent_gens.count(r.rhs.t[0].first[0]) &&
           field.eq(r.rhs.t[0].second, field.one());
  }

public:
  // ---- completion --------------------------------------------------------

  CompletionStats complete(const std::vector<NCPoly<K>>& input,
                           CompletionCaps caps = {}) {
    const K& k = field;
    stats = {};
    for (auto& f : input) pending_.push_back(f);
    auto drain_pending = [&]() -> bool {
      while (!pending_.empty()) {
        auto f = reduce(std::move(pending_.back()));
        pending_.pop_back();
        if (f.is_zero()) continue;
        if (rules.size() >= caps.max_rules) {
          stats.status = CompletionStatus::capped_rules;
          return false;
        }
        if (!add_rule(std::move(f), caps)) return false;
      }
      return true;
    };
    if (!drain_pending()) return finish();
    while (!queue_.empty()) {
      if (stats.pairs_processed >= caps.max_pairs) {
        stats.status = CompletionStatus::capped_pairs;
        return finish();
      }
      Obs o = *queue_.begin();
      queue_.erase(queue_.begin());
      ++stats.pairs_processed;
      if (!rules[o.i].active || !rules[o.j].active) continue;
      const auto& Ru = rules[o.i];
      const auto& Rv = rules[o.j];
      // superposition  u[0..] v[olen..]  =  (u-prefix) . overlap . (v-tail)
      Word vtail(Rv.lhs.begin() + o.olen, Rv.lhs.end());
      Word uhead(Ru.lhs.begin(), Ru.lhs.end() - o.olen);
      // rhs_u * vtail  -  uhead * rhs_v
      auto s = np_sub(k, ord, np_sandwich(Word{}, Ru.rhs, vtail),
                      np_sandwich(uhead, Rv.rhs, Word{}));
      s = reduce(std::move(s));
      if (s.is_zero()) continue;
      if (rules.size() >= caps.max_rules) {
        stats.status = CompletionStatus::capped_rules;
        return finish();
      }
      if (!add_rule(std::move(s), caps)) return finish();
      if (!drain_pending()) return finish();
    }
    verify_idempotent_skip();
    return finish();
  }

  // The pair queue skipped obstructions between two orthogonality rules on
  // the claim that their S-polynomials always resolve.  Those S-polynomials
  // reduce through the normal forms of the two-letter idempotent products,
  // so checking nf(e_a e_c) == delta_{ac} nf(e_a) for all pairs certifies
  // every skipped diamond against the final system.
  void verify_idempotent_skip() const {
    for (Gen a : idempotent_gens)
      for (Gen c : idempotent_gens) {
        auto prod = normal_form_word({a, c});
        auto want = a == c ? normal_form_word({a}) : NCPoly<K>{};
        check(np_sub(field, ord, prod, want).is_zero(),
              "completion: idempotent-orthogonality skip violated; "
              "the completed system is not confluent");
      }
  }

private:
  CompletionStats finish() {
    stats.active_rules = 0;
    for (auto& r : rules)
      if (r.active) ++stats.active_rules;
    return stats;
  }

public:
  // ---- normal words ------------------------------------------------------

  // all irreducible words, by length then lex; requires a completed system
  NormalBasis enumerate_basis(const CompletionCaps& caps = {}) const {
    NormalBasis nb;
    std::vector<Word> level{Word{}};
    if (!word_irreducible(Word{})) return nb;  // zero algebra
    while (!level.empty()) {
      for (auto& w : level) {
        nb.index[w] = nb.words.size();
        nb.words.push_back(w);
        if (nb.words.size() > caps.max_basis) {
          nb.complete = false;
          return nb;
        }
      }
      std::vector<Word> next;
      for (auto& w : level) {
        if (w.size() + 1 > caps.max_word_len) {
          nb.complete = false;
          return nb;
        }
        for (Gen g = 0; g < ngens; ++g) {
          Word wg = w;
          wg.push_back(g);
          // w is irreducible, so only suffixes ending at the new letter matter
          bool ok = true;
          for (auto rid : suffix_candidates(g)) {
            const auto& L = rules[rid].lhs;
            if (L.size() > wg.size()) continue;
            if (std::equal(L.begin(), L.end(), wg.end() - L.size())) {
              ok = false;
              break;
            }
          }
          if (ok) next.push_back(std::move(wg));
        }
      }
      level = std::move(next);
    }
    return nb;
  }

  // graded dimension for uniform per-generator degrees
  Laurent graded_dimension(const NormalBasis& nb,
                           const std::vector<long>& gen_degree) const {
    Laurent L;
    for (auto& w : nb.words) {
      long d = 0;
      for (auto g : w) d += gen_degree.at(g);
      ++L.c[d];
    }
    return L;
  }

  std::string dump(const std::vector<std::string>& labels) const {
    std::string out;
    std::vector<std::uint32_t> ids;
    for (std::uint32_t i = 0; i < rules.size(); ++i)
      if (rules[i].active) ids.push_back(i);
    std::sort(ids.begin(), ids.end(), [&](auto a, auto b) {
      return ord.less(rules[a].lhs, rules[b].lhs);
    });
    for (auto i : ids) {
      std::string lw;
      for (std::size_t t = 0; t < rules[i].lhs.size(); ++t) {
        if (t) lw += ".";
        lw += labels.at(rules[i].lhs[t]);
      }
      out += lw + " -> " + np_str(field, rules[i].rhs, labels) + "\n";
    }
    return out;
  }

private:
  // active rules keyed by last letter (for the basis walk)
  std::vector<std::uint32_t> suffix_candidates(Gen g) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < rules.size(); ++i)
      if (rules[i].active && rules[i].lhs.back() == g) out.push_back(i);
    return out;
  }
};

}  // namespace wb
