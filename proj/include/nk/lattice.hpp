#pragma once

// Biclosed sets of strings and the lattice structure they induce on the
// non-kissing complex.  A set of strings is closed when it contains every
// concatenation of two of its members around a connecting arrow, and
// biclosed when its complement is closed as well.  Biclosed sets ordered
// by inclusion form a congruence-uniform lattice; contracting the fibers
// of the facet map eta below turns its Hasse diagram into the oriented
// flip graph, and the join-irreducible facets are indexed by the
// distinguishable strings.

#include "nk/nonkissing.hpp"

#include <bit>
#include <cstdint>
#include <map>

namespace nk {

// Sets of strings are bitmasks over a fixed table of all strings of the
// base quiver.  Sixty-four strings cover every quiver this layer is asked
// about; larger string sets would make the biclosed lattice astronomically
// big anyway, so the cap doubles as a resource guard.
using StringMask = std::uint64_t;

struct StringTable {
  Quiver q;                    // base quiver, without blossoms
  std::vector<Word> strings;   // canonical representatives, sorted
  std::map<Word, int> index;
  // products[i][j]: everything of the form strings[i], a connecting arrow
  // forwards, then strings[j], over both orientations of either factor.
  std::vector<std::vector<StringMask>> products;
  std::vector<StringMask> closure_of_one;
  std::vector<StringMask> bottoms;  // bottom substrings, the string included
  std::vector<StringMask> tops;     // top substrings, the string included

  int size() const { return static_cast<int>(strings.size()); }
  StringMask all() const {
    return size() == 64 ? ~StringMask{0} : (StringMask{1} << size()) - 1;
  }
  int id(const Word& w) const {
    auto it = index.find(canonical(q, w));
    return it == index.end() ? -1 : it->second;
  }
  bool member(StringMask s, const Word& w) const {
    int i = id(w);
    assert(i >= 0);
    return s >> i & 1;
  }
};

inline StringMask closure(const StringTable& t, StringMask s) {
  bool grew = true;
  while (grew) {
    grew = false;
    StringMask next = s;
    for (int i = 0; i < t.size(); ++i)
      if (s >> i & 1)
        for (int j = 0; j < t.size(); ++j)
          if (s >> j & 1) next |= t.products[i][j];
    if (next != s) {
      s = next;
      grew = true;
    }
  }
  return s;
}

inline StringTable string_table(const Quiver& q) {
  StringTable t;
  t.q = q;
  t.strings = enumerate_strings(q, 64);
  for (int i = 0; i < t.size(); ++i) t.index[t.strings[i]] = i;
  t.products.assign(t.size(), std::vector<StringMask>(t.size(), 0));
  for (int i = 0; i < t.size(); ++i)
    for (int j = 0; j < t.size(); ++j)
      for (const Word& u : {t.strings[i], inverse(q, t.strings[i])})
        for (const Word& v : {t.strings[j], inverse(q, t.strings[j])})
          for (int a = 0; a < q.num_arrows(); ++a) {
            if (word_to(q, u) != q.arrows[a].src) continue;
            if (word_from(q, v) != q.arrows[a].tgt) continue;
            Word w = u;
            w.ls.push_back(Letter{a, false});
            w.ls.insert(w.ls.end(), v.ls.begin(), v.ls.end());
            if (!is_valid_word(q, w)) continue;
            int k = t.id(w);
            assert(k >= 0);
            t.products[i][j] |= StringMask{1} << k;
          }
  for (int i = 0; i < t.size(); ++i) {
    t.closure_of_one.push_back(closure(t, StringMask{1} << i));
    StringMask bm = 0, tm = 0;
    for (const Word& f : bottom_factors(q, t.strings[i]))
      bm |= StringMask{1} << t.id(f);
    for (const Word& f : top_factors(q, t.strings[i]))
      tm |= StringMask{1} << t.id(f);
    t.bottoms.push_back(bm);
    t.tops.push_back(tm);
  }
  return t;
}

inline bool is_closed(const StringTable& t, StringMask s) {
  for (int i = 0; i < t.size(); ++i)
    if (s >> i & 1)
      for (int j = 0; j < t.size(); ++j)
        if (s >> j & 1)
          if (t.products[i][j] & ~s) return false;
  return true;
}

inline bool is_biclosed(const StringTable& t, StringMask s) {
  return is_closed(t, s) && is_closed(t, t.all() & ~s);
}

inline StringMask biclosed_join(const StringTable& t, StringMask a,
                                StringMask b) {
  return closure(t, a | b);
}

inline StringMask biclosed_meet(const StringTable& t, StringMask a,
                                StringMask b) {
  return t.all() & ~closure(t, (t.all() & ~a) | (t.all() & ~b));
}

inline bool mask_less(StringMask a, StringMask b) {
  int pa = std::popcount(a), pb = std::popcount(b);
  return pa != pb ? pa < pb : a < b;
}

// Every cover in the containment order of biclosed sets adds the closure of
// a single string, so growing from the empty set along such candidates
// visits the whole lattice.
inline std::vector<StringMask> enumerate_biclosed(
    const StringTable& t, std::size_t max_biclosed = 1000000) {
  std::set<StringMask> seen{0};
  std::vector<StringMask> queue{0};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    StringMask s = queue[h];
    for (int i = 0; i < t.size(); ++i) {
      if (s >> i & 1) continue;
      StringMask next = s | t.closure_of_one[i];
      if (next == s || !is_biclosed(t, next)) continue;
      if (seen.insert(next).second) {
        if (seen.size() > max_biclosed)
          throw limit_error("biclosed enumeration exceeded the configured cap");
        queue.push_back(next);
      }
    }
  }
  std::vector<StringMask> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), mask_less);
  return out;
}

// Exhaustive scan over all subsets, as an independent check of the growth
// above.  Only sensible for small string sets.
inline std::vector<StringMask> biclosed_by_scan(const StringTable& t) {
  if (t.size() > 20)
    throw limit_error("subset scan needs at most 20 strings");
  std::vector<StringMask> out;
  for (StringMask s = 0; s <= t.all(); ++s)
    if (is_biclosed(t, s)) out.push_back(s);
  std::sort(out.begin(), out.end(), mask_less);
  return out;
}

// ---------------------------------------------------------------------------
// The down and up projections.  A string goes down-with a set when all its
// bottom substrings lie in it, and up-with when some top substring does.
// Both projections fix exactly one member per fiber, so sharing either
// image is one and the same equivalence.

inline StringMask project_down(const StringTable& t, StringMask s) {
  StringMask out = 0;
  for (int i = 0; i < t.size(); ++i)
    if (!(t.bottoms[i] & ~s)) out |= StringMask{1} << i;
  return out;
}

inline StringMask project_up(const StringTable& t, StringMask s) {
  StringMask out = 0;
  for (int i = 0; i < t.size(); ++i)
    if (t.tops[i] & s) out |= StringMask{1} << i;
  return out;
}

// ---------------------------------------------------------------------------
// From biclosed sets to facets.  The walk grown from an arrow keeps moving
// forward until the string accumulated since the seed arrow falls into the
// set, at which point it turns back, and symmetrically behind the seed with
// the roles of the two signs exchanged.  Gentleness leaves exactly one
// continuation of either sign at every real vertex, so the growth is
// deterministic; it stops at the first blossom.

inline Word eta_walk(const Blossoming& b, const StringTable& t, StringMask s,
                     int arrow) {
  const Quiver& q = b.q;
  Word w;
  w.base = q.arrows[arrow].src;
  w.ls = {Letter{arrow, false}};
  while (b.real_vertex(word_to(q, w))) {
    int x = word_to(q, w);
    bool rev = t.member(s, subword(q, w, 1, w.length()));
    int picked = 0;
    Word next = w;
    for (int d : rev ? q.into[x] : q.out_of[x])
      if (can_append_letter(q, w, Letter{d, rev})) {
        next.ls.push_back(Letter{d, rev});
        ++picked;
      }
    assert(picked == 1);
    w = next;
  }
  int pre = 0;
  while (b.real_vertex(word_from(q, w))) {
    int y = word_from(q, w);
    bool fwd = t.member(s, subword(q, w, 0, pre));
    int picked = 0;
    Word next = w;
    for (int d : fwd ? q.into[y] : q.out_of[y])
      if (can_prepend_letter(q, Letter{d, !fwd}, w)) {
        next.ls.insert(next.ls.begin(), Letter{d, !fwd});
        next.base = letter_from(q, Letter{d, !fwd});
        ++picked;
      }
    assert(picked == 1);
    w = next;
    ++pre;
  }
  return w;
}

inline Facet eta(const Blossoming& b, const StringTable& t, StringMask s) {
  std::set<Word> walks;
  for (int a = 0; a < b.q.num_arrows(); ++a)
    walks.insert(canonical(b.q, eta_walk(b, t, s, a)));
  Facet f(walks.begin(), walks.end());
  std::sort(f.begin(), f.end(), word_less);
  return f;
}

// From facets back to biclosed sets: the closure of everything lying at the
// bottom of some walk of the facet.
inline StringMask zeta(const Blossoming& b, const StringTable& t,
                       const Facet& f) {
  StringMask s = 0;
  for (const Word& w : f)
    for (const Word& x : bottom_factors(b.q, w, true)) {
      int i = t.id(x);
      assert(i >= 0);
      s |= StringMask{1} << i;
    }
  return closure(t, s);
}

// ---------------------------------------------------------------------------
// Join-irreducible facets.  Each distinguishable string names one of them
// through the closure of its bottom substrings; dually, the complement of the
// closure of its top substrings (biclosed, since reversing every arrow swaps
// the two substring families) names a meet-irreducible facet.

inline Facet join_irreducible_facet(const Blossoming& b, const StringTable& t,
                                    const Word& s) {
  int i = t.id(s);
  assert(i >= 0);
  return eta(b, t, closure(t, t.bottoms[i]));
}

inline Facet meet_irreducible_facet(const Blossoming& b, const StringTable& t,
                                    const Word& s) {
  int i = t.id(s);
  assert(i >= 0);
  StringMask m = t.all() & ~closure(t, t.tops[i]);
  assert(is_biclosed(t, m));
  return eta(b, t, m);
}

inline std::vector<Word> distinguishable_strings(const StringTable& t) {
  std::vector<Word> out;
  for (const Word& s : t.strings)
    if (is_distinguishable(t.q, s)) out.push_back(s);
  return out;
}

// The walk whose distinguished string in the join-irreducible facet is the
// given distinguishable string, grown directly from the incoming arrow that
// closes off its start.
inline Word omega_bottom(const Blossoming& b, const StringTable& t,
                         const Word& s) {
  int i = t.id(s);
  assert(i >= 0);
  const Word& c = t.strings[i];
  StringMask set = closure(t, t.bottoms[i]);
  for (int a : b.q.into[word_from(b.q, c)])
    if (can_prepend_letter(b.q, Letter{a, false}, c))
      return canonical(b.q, eta_walk(b, t, set, a));
  assert(false);
  return {};
}

inline bool word_contains(const Quiver& q, const Word& w, const Word& f) {
  for (Span s : all_spans(w, false))
    if (canonical(q, subword(q, w, s.i, s.j)) == f) return true;
  return false;
}

// The string the walk distinguishes once placed in its join-irreducible
// facet: the substring-minimal bottom substring generating the same closure
// as all of them together.
inline Word sigma_bottom(const Blossoming& b, const StringTable& t,
                         const Word& w) {
  StringMask target = zeta(b, t, {w});
  std::vector<int> candidates;
  for (const Word& x : bottom_factors(b.q, w, true)) {
    int i = t.id(x);
    if (closure(t, t.bottoms[i]) == target) candidates.push_back(i);
  }
  assert(!candidates.empty());
  for (int i : candidates) {
    bool least = true;
    for (int j : candidates)
      if (!word_contains(t.q, t.strings[j], t.strings[i])) least = false;
    if (least) return t.strings[i];
  }
  assert(false);
  return {};
}

// The dual pair: a bending walk outside the deep facet is named by the
// containment-least interior top substring generating the same closure, and
// conversely the walk grows from the complemented closure of the string's
// top substrings, seeded across its left top flank.

inline Word omega_top(const Blossoming& b, const StringTable& t,
                      const Word& s) {
  int i = t.id(s);
  assert(i >= 0);
  const Word& c = t.strings[i];
  StringMask set = t.all() & ~closure(t, t.tops[i]);
  for (int a : b.q.out_of[word_from(b.q, c)])
    if (can_prepend_letter(b.q, Letter{a, true}, c))
      return canonical(b.q, eta_walk(b, t, set, a));
  assert(false);
  return {};
}

inline Word sigma_top(const Blossoming& b, const StringTable& t,
                      const Word& w) {
  StringMask tops = 0;
  for (const Word& x : top_factors(b.q, w, true)) {
    int i = t.id(x);
    assert(i >= 0);
    tops |= StringMask{1} << i;
  }
  StringMask target = closure(t, tops);
  std::vector<int> candidates;
  for (int i = 0; i < t.size(); ++i)
    if ((tops >> i & 1) && closure(t, t.tops[i]) == target)
      candidates.push_back(i);
  assert(!candidates.empty());
  for (int i : candidates) {
    bool least = true;
    for (int j : candidates)
      if (!word_contains(t.q, t.strings[j], t.strings[i])) least = false;
    if (least) return t.strings[i];
  }
  assert(false);
  return {};
}

inline bool non_friendly(const Quiver& q, const Word& a, const Word& b) {
  auto disjoint = [](const std::set<Word>& x, const std::set<Word>& y) {
    for (const Word& w : x)
      if (y.count(w)) return false;
    return true;
  };
  return disjoint(top_factors(q, a), bottom_factors(q, b)) &&
         disjoint(bottom_factors(q, a), top_factors(q, b));
}

// ---------------------------------------------------------------------------
// The reachability order of increasing flips, with meets and joins computed
// from the two reachability bitsets.

struct FacetLattice {
  std::vector<Facet> facets;
  std::vector<std::vector<int>> increasing;      // covers, from the flip graph
  std::vector<std::vector<std::uint64_t>> above;  // weakly above, bit per facet
  std::vector<std::vector<std::uint64_t>> below;

  int size() const { return static_cast<int>(facets.size()); }
  bool leq(int i, int j) const { return above[i][j >> 6] >> (j & 63) & 1; }
};

inline FacetLattice facet_lattice(const Blossoming& b,
                                  std::size_t max_facets = 100000) {
  FlipGraph g = flip_graph(b, max_facets);
  FacetLattice l;
  l.facets = std::move(g.facets);
  l.increasing = std::move(g.increasing);
  int n = l.size(), words = (n + 63) / 64;
  std::vector<int> indegree(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j : l.increasing[i]) ++indegree[j];
  std::vector<int> order;
  for (int i = 0; i < n; ++i)
    if (indegree[i] == 0) order.push_back(i);
  for (std::size_t h = 0; h < order.size(); ++h)
    for (int j : l.increasing[order[h]])
      if (--indegree[j] == 0) order.push_back(j);
  assert(static_cast<int>(order.size()) == n);
  l.above.assign(n, std::vector<std::uint64_t>(words, 0));
  l.below.assign(n, std::vector<std::uint64_t>(words, 0));
  for (int h = n - 1; h >= 0; --h) {
    int i = order[h];
    l.above[i][i >> 6] |= std::uint64_t{1} << (i & 63);
    for (int j : l.increasing[i])
      for (int k = 0; k < words; ++k) l.above[i][k] |= l.above[j][k];
  }
  for (int i : order) {
    l.below[i][i >> 6] |= std::uint64_t{1} << (i & 63);
    for (int j : l.increasing[i])
      for (int k = 0; k < words; ++k) l.below[j][k] |= l.below[i][k];
  }
  return l;
}

namespace detail {
inline int unique_extreme(const FacetLattice& l,
                          const std::vector<std::vector<std::uint64_t>>& rows,
                          int i, int j) {
  int words = static_cast<int>(rows[i].size());
  std::vector<std::uint64_t> common(words);
  for (int k = 0; k < words; ++k) common[k] = rows[i][k] & rows[j][k];
  int found = -1;
  for (int c = 0; c < l.size(); ++c) {
    if (!(common[c >> 6] >> (c & 63) & 1)) continue;
    bool extreme = true;
    for (int k = 0; k < words; ++k)
      if (common[k] & ~rows[c][k]) extreme = false;
    if (!extreme) continue;
    if (found >= 0) return -1;
    found = c;
  }
  return found;
}
}  // namespace detail

inline int facet_join(const FacetLattice& l, int i, int j) {
  return detail::unique_extreme(l, l.above, i, j);
}

inline int facet_meet(const FacetLattice& l, int i, int j) {
  return detail::unique_extreme(l, l.below, i, j);
}

}  // namespace nk
