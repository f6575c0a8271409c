#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "nk/strings.hpp"

namespace nk {

// Walks are the maximal strings of the blossoming quiver.  They run from one
// blossom leaf to another, all their interior letters are real, and at every
// real vertex they admit exactly two continuations, so the walk set is a
// binary tree fringe growing out of each leaf.

inline bool is_straight(const Word& w) {
  for (Letter l : w.ls)
    if (l.rev != w.ls[0].rev) return false;
  return true;
}

inline std::vector<Word> straight_walks(const Blossoming& b) {
  std::vector<Word> out;
  for (int a = b.real_arrows; a < b.q.num_arrows(); ++a) {
    if (!b.real_vertex(b.q.arrows[a].tgt)) continue;
    Word w;
    w.base = b.q.arrows[a].src;
    for (int c = a; c != -1; c = b.match_out[c]) w.ls.push_back(Letter{c, false});
    out.push_back(canonical(b.q, w));
  }
  std::sort(out.begin(), out.end(), word_less);
  return out;
}

// The peak walk at v climbs down from v along its two maximal outgoing
// passes; the deep walk rises into v along the two incoming ones.

inline Word peak_walk(const Blossoming& b, int v) {
  assert(b.real_vertex(v));
  auto pass = [&](int c) {
    std::vector<Letter> ls;
    for (; c != -1; c = b.match_out[c]) ls.push_back(Letter{c, false});
    return ls;
  };
  auto p1 = pass(b.q.out_of[v][0]);
  auto p2 = pass(b.q.out_of[v][1]);
  Word w;
  w.base = b.q.arrows[p1.back().arrow].tgt;
  for (auto it = p1.rbegin(); it != p1.rend(); ++it)
    w.ls.push_back(Letter{it->arrow, true});
  w.ls.insert(w.ls.end(), p2.begin(), p2.end());
  assert(is_valid_word(b.q, w));
  return canonical(b.q, w);
}

inline Word deep_walk(const Blossoming& b, int v) {
  assert(b.real_vertex(v));
  auto pass = [&](int c) {
    std::vector<Letter> ls;
    for (; c != -1; c = b.match_in[c]) ls.push_back(Letter{c, false});
    std::reverse(ls.begin(), ls.end());
    return ls;
  };
  auto p1 = pass(b.q.into[v][0]);
  auto p2 = pass(b.q.into[v][1]);
  Word w;
  w.base = b.q.arrows[p1.front().arrow].src;
  w.ls = p1;
  for (auto it = p2.rbegin(); it != p2.rend(); ++it)
    w.ls.push_back(Letter{it->arrow, true});
  assert(is_valid_word(b.q, w));
  return canonical(b.q, w);
}

inline std::vector<Word> enumerate_walks(const Blossoming& b) {
  const Quiver& q = b.q;
  std::set<Word> found;
  std::vector<Word> stack;
  for (int v = b.real_vertices; v < q.num_vertices(); ++v) {
    Word w;
    w.base = v;
    if (!q.out_of[v].empty())
      w.ls = {Letter{q.out_of[v][0], false}};
    else
      w.ls = {Letter{q.into[v][0], true}};
    stack.push_back(std::move(w));
  }
  while (!stack.empty()) {
    Word w = std::move(stack.back());
    stack.pop_back();
    int x = word_to(q, w);
    if (!b.real_vertex(x)) {
      found.insert(canonical(q, w));
      continue;
    }
    for (int c : q.out_of[x]) {
      Letter l{c, false};
      if (!can_append_letter(q, w, l)) continue;
      Word e = w;
      e.ls.push_back(l);
      stack.push_back(std::move(e));
    }
    for (int c : q.into[x]) {
      Letter l{c, true};
      if (!can_append_letter(q, w, l)) continue;
      Word e = w;
      e.ls.push_back(l);
      stack.push_back(std::move(e));
    }
  }
  return std::vector<Word>(found.begin(), found.end());
}

// ---------------------------------------------------------------------------
// Kissing.  A walk kisses another along a common factor sitting on top of the
// first and at the bottom of the second; only interior factors qualify, so
// straight walks never kiss.  Because the flanking letters on the two sides
// carry opposite signs, every such aligned occurrence is automatically
// bilaterally maximal, which makes counting them straightforward.

inline bool kisses(const Quiver& q, const Word& w, const Word& o) {
  std::set<Word> tops = top_factors(q, w, /*interior=*/true);
  if (tops.empty()) return false;
  for (const Word& f : bottom_factors(q, o, /*interior=*/true))
    if (tops.count(f)) return true;
  return false;
}

inline bool self_kissing(const Quiver& q, const Word& w) {
  return kisses(q, w, w);
}

inline bool compatible_walks(const Quiver& q, const Word& w, const Word& o) {
  return !kisses(q, w, o) && !kisses(q, o, w);
}

// Number of kisses of w on o: directed alignments of interior top spans of w
// with interior bottom spans of o.  A nonempty factor matches exactly one
// orientation of o, while a trivial factor is orientation blind and is only
// counted against the first.
inline long long kiss_count(const Quiver& q, const Word& w, const Word& o) {
  long long n = 0;
  auto tops = top_spans(w, /*interior=*/true);
  bool first = true;
  for (const Word& v : {o, inverse(q, o)}) {
    for (Span t : bottom_spans(v, /*interior=*/true)) {
      if (t.i == t.j && !first) continue;
      Word f = subword(q, v, t.i, t.j);
      for (Span s : tops)
        if (subword(q, w, s.i, s.j) == f) ++n;
    }
    first = false;
  }
  return n;
}

inline long long kissing_number(const Quiver& q, const std::vector<Word>& pool,
                                const Word& w) {
  long long n = 0;
  for (const Word& o : pool) {
    if (o == w) continue;
    n += kiss_count(q, w, o) + kiss_count(q, o, w);
  }
  return n;
}

// ---------------------------------------------------------------------------
// The bijection between almost positive strings and bending walks: complete a
// string by a cohook on each side in the blossoming quiver, or read off the
// core of a bending walk by stripping the maximal straight run plus one more
// letter at both ends.  The negative simple at v corresponds to the deep
// walk at v, whose two strips overlap.

inline Word walk_completion(const Blossoming& b, const Word& s) {
  Word w = cohook_start_add(b.q, s);
  return cohook_end_add(b.q, w);
}

inline Word string_to_walk(const Blossoming& b, const AlmostPositive& s) {
  if (s.negative) return deep_walk(b, s.v);
  return canonical(b.q, walk_completion(b, s.w));
}

inline AlmostPositive walk_to_string(const Blossoming& b, const Word& w) {
  assert(!is_straight(w));
  int n = w.length();
  int a = 0;
  while (a < n && !w.ls[a].rev) ++a;
  int z = n;
  while (z > 0 && w.ls[z - 1].rev) --z;
  if (a + 1 > z - 1) return negative_vertex(vertex_at(b.q, w, a));
  return positive_string(b.q, subword(b.q, w, a + 1, z - 1));
}

// ---------------------------------------------------------------------------
// Countercurrent order.  Two walks marked at occurrences of the same arrow
// are oriented so the mark reads forward, then compared along their maximal
// common substring around the mark.  Gentleness forces the escaping letters
// at a split to carry opposite signs, and walks can only terminate at leaves,
// so both sides either split cleanly or reach their tips together.  The
// greater walk is the one escaping against the direction of the mark.

struct MarkedWalk {
  Word w;
  int t = 0;
};

inline MarkedWalk mark_forward(const Quiver& q, const Word& w, int t) {
  if (!w.ls[t].rev) return MarkedWalk{w, t};
  MarkedWalk m{inverse(q, w), w.length() - 1 - t};
  return m;
}

inline bool countercurrent_less(const MarkedWalk& m, const MarkedWalk& n) {
  assert(m.w.ls[m.t] == n.w.ls[n.t] && !m.w.ls[m.t].rev);
  std::optional<bool> right, left;
  for (int k = 1;; ++k) {
    int im = m.t + k, in = n.t + k;
    bool em = im >= m.w.length(), en = in >= n.w.length();
    if (em || en) {
      assert(em && en);
      break;
    }
    if (m.w.ls[im] == n.w.ls[in]) continue;
    assert(m.w.ls[im].rev != n.w.ls[in].rev);
    right = n.w.ls[in].rev;
    break;
  }
  for (int k = 1;; ++k) {
    int im = m.t - k, in = n.t - k;
    bool em = im < 0, en = in < 0;
    if (em || en) {
      assert(em && en);
      break;
    }
    if (m.w.ls[im] == n.w.ls[in]) continue;
    assert(m.w.ls[im].rev != n.w.ls[in].rev);
    left = n.w.ls[in].rev;
    break;
  }
  assert(right || left);
  assert(!right || !left || *right == *left);
  return right ? *right : *left;
}

// Distinguished walk of a face at an arrow: the countercurrent maximum over
// all marked occurrences.  Faces holding all straight walks always have one.
inline MarkedWalk distinguished_walk(const Blossoming& b,
                                     const std::vector<Word>& pool, int arrow) {
  std::optional<MarkedWalk> best;
  for (const Word& w : pool)
    for (int t = 0; t < w.length(); ++t) {
      if (w.ls[t].arrow != arrow) continue;
      MarkedWalk m = mark_forward(b.q, w, t);
      if (!best || countercurrent_less(*best, m)) best = std::move(m);
    }
  assert(best);
  return *best;
}

using Facet = std::vector<Word>;

// Letter indices of w (in its canonical orientation) carrying a mark at
// which w is the distinguished walk of the facet, paired with the arrow.
inline std::vector<std::pair<int, int>> distinguished_marks(const Blossoming& b,
                                                            const Facet& f,
                                                            const Word& w) {
  std::set<int> arrows;
  for (Letter l : w.ls) arrows.insert(l.arrow);
  std::vector<std::pair<int, int>> out;
  for (int a : arrows) {
    MarkedWalk m = distinguished_walk(b, f, a);
    if (m.w == w)
      out.push_back({m.t, a});
    else if (inverse(b.q, m.w) == w)
      out.push_back({m.w.length() - 1 - m.t, a});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// The distinguished string of a bending walk in a facet: the substring
// between its two marks.  It lies on top of the walk when the left mark is
// reversed (the flip at it is then increasing) and at the bottom otherwise.
struct SplitString {
  Word s;
  bool on_top = false;
  Span span;
};

inline SplitString distinguished_string(const Blossoming& b, const Facet& f,
                                        const Word& w) {
  auto marks = distinguished_marks(b, f, w);
  assert(marks.size() == 2);
  int p = marks[0].first, r = marks[1].first;
  assert(w.ls[p].rev != w.ls[r].rev);
  SplitString out;
  out.on_top = w.ls[p].rev;
  out.span = Span{p + 1, r};
  out.s = canonical(b.q, subword(b.q, w, p + 1, r));
  return out;
}

inline std::set<Word> ascent_strings(const Blossoming& b, const Facet& f) {
  std::set<Word> out;
  for (const Word& w : f)
    if (!is_straight(w)) {
      SplitString d = distinguished_string(b, f, w);
      if (d.on_top) out.insert(d.s);
    }
  return out;
}

inline std::set<Word> descent_strings(const Blossoming& b, const Facet& f) {
  std::set<Word> out;
  for (const Word& w : f)
    if (!is_straight(w)) {
      SplitString d = distinguished_string(b, f, w);
      if (!d.on_top) out.insert(d.s);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Flip.  The two marks of a bending walk bound its distinguished string; the
// partner arrows closing a forbidden composition at its endpoints select, in
// the rest of the facet, the two walks to splice the replacement from.

namespace detail {

struct FlipData {
  int p, r;  // mark positions on the flipped walk
  bool top;
  MarkedWalk mu, nu;  // distinguished walks across the two partner arrows
};

inline FlipData flip_data(const Blossoming& b, const Facet& f, const Word& w) {
  const Quiver& q = b.q;
  auto marks = distinguished_marks(b, f, w);
  assert(marks.size() == 2);
  int p = marks[0].first, r = marks[1].first;
  assert(p < r && w.ls[p].rev != w.ls[r].rev);
  bool top = w.ls[p].rev;
  int alpha = w.ls[p].arrow, beta = w.ls[r].arrow;
  int v = vertex_at(q, w, p + 1), u = vertex_at(q, w, r);
  auto other = [](const std::vector<int>& pool, int skip) {
    assert(pool.size() == 2);
    return pool[0] == skip ? pool[1] : pool[0];
  };
  int alpha2 = top ? other(q.into[v], b.match_in[alpha])
                   : other(q.out_of[v], b.match_out[alpha]);
  int beta2 = top ? other(q.into[u], b.match_in[beta])
                  : other(q.out_of[u], b.match_out[beta]);
  std::vector<Word> pool;
  for (const Word& x : f)
    if (!(x == w)) pool.push_back(x);
  return FlipData{p, r, top, distinguished_walk(b, pool, alpha2),
                  distinguished_walk(b, pool, beta2)};
}

}  // namespace detail

// The two walks of the facet that the replacement is spliced from; they carry
// the linear dependence among the corner count vectors across the flip.
inline std::pair<Word, Word> flip_companions(const Blossoming& b,
                                             const Facet& f, const Word& w) {
  detail::FlipData d = detail::flip_data(b, f, w);
  return {canonical(b.q, d.mu.w), canonical(b.q, d.nu.w)};
}

inline Word flip_replacement(const Blossoming& b, const Facet& f,
                             const Word& w) {
  const Quiver& q = b.q;
  detail::FlipData d = detail::flip_data(b, f, w);
  int p = d.p, r = d.r;
  bool top = d.top;
  MarkedWalk& mu = d.mu;
  MarkedWalk& nu = d.nu;
  // The new walk enters the distinguished string at v crossing alpha2 and
  // leaves it at u crossing beta2, both against the old flank directions.
  int v = vertex_at(q, w, p + 1), u = vertex_at(q, w, r);
  Word mw = mu.w;
  int mt = mu.t;
  if (!top) {
    mw = inverse(q, mw);
    mt = mw.length() - 1 - mt;
  }
  assert(vertex_at(q, mw, mt + 1) == v);
  Word nw = nu.w;
  int nt = nu.t;
  if (top) {
    nw = inverse(q, nw);
    nt = nw.length() - 1 - nt;
  }
  assert(vertex_at(q, nw, nt) == u);
  Word out;
  out.base = mw.base;
  out.ls.assign(mw.ls.begin(), mw.ls.begin() + mt + 1);
  for (int i = p + 1; i < r; ++i) out.ls.push_back(w.ls[i]);
  out.ls.insert(out.ls.end(), nw.ls.begin() + nt, nw.ls.end());
  assert(is_valid_word(q, out));
  Word c = canonical(q, out);
  assert(!(c == w));
  return c;
}

inline Facet flip(const Blossoming& b, const Facet& f, const Word& w) {
  Word r = flip_replacement(b, f, w);
  Facet g;
  for (const Word& x : f)
    if (!(x == w)) g.push_back(x);
  assert(std::find(g.begin(), g.end(), r) == g.end());
  g.push_back(r);
  std::sort(g.begin(), g.end(), word_less);
  return g;
}

// ---------------------------------------------------------------------------
// Facets.  The peak facet collects all straight and peak walks; every other
// facet is reachable from it by flips.

inline Facet peak_facet(const Blossoming& b) {
  Facet f = straight_walks(b);
  for (int v = 0; v < b.real_vertices; ++v) f.push_back(peak_walk(b, v));
  std::sort(f.begin(), f.end(), word_less);
  return f;
}

inline Facet deep_facet(const Blossoming& b) {
  Facet f = straight_walks(b);
  for (int v = 0; v < b.real_vertices; ++v) f.push_back(deep_walk(b, v));
  std::sort(f.begin(), f.end(), word_less);
  return f;
}

inline std::vector<Facet> enumerate_facets(const Blossoming& b,
                                           std::size_t max_facets = 100000) {
  Facet start = peak_facet(b);
  std::set<Facet> seen{start};
  std::vector<Facet> queue{start};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    Facet f = queue[h];
    for (const Word& w : f) {
      if (is_straight(w)) continue;
      Facet g = flip(b, f, w);
      if (seen.insert(g).second) {
        if (seen.size() > max_facets)
          throw limit_error("facet enumeration exceeded the configured cap");
        queue.push_back(g);
      }
    }
  }
  return std::vector<Facet>(seen.begin(), seen.end());
}

struct FlipGraph {
  std::vector<Facet> facets;
  // increasing[i] lists, for each bending walk of facets[i] whose
  // distinguished string lies on top, the facet reached by that flip.
  std::vector<std::vector<int>> increasing;
};

inline FlipGraph flip_graph(const Blossoming& b,
                            std::size_t max_facets = 100000) {
  FlipGraph g;
  g.facets = enumerate_facets(b, max_facets);
  std::map<Facet, int> id;
  for (int i = 0; i < static_cast<int>(g.facets.size()); ++i) id[g.facets[i]] = i;
  g.increasing.resize(g.facets.size());
  for (int i = 0; i < static_cast<int>(g.facets.size()); ++i)
    for (const Word& w : g.facets[i]) {
      if (is_straight(w)) continue;
      if (!distinguished_string(b, g.facets[i], w).on_top) continue;
      auto it = id.find(flip(b, g.facets[i], w));
      assert(it != id.end());
      g.increasing[i].push_back(it->second);
    }
  for (auto& e : g.increasing) std::sort(e.begin(), e.end());
  return g;
}

// ---------------------------------------------------------------------------
// Independent facet enumeration through maximal cliques of the non-kissing
// relation on bending walks, used to cross-check the flip traversal.

namespace detail {

inline void bron_kerbosch(const std::vector<std::vector<bool>>& adj,
                          std::vector<int>& r, std::vector<int> p,
                          std::vector<int> x,
                          std::vector<std::vector<int>>& out) {
  if (p.empty() && x.empty()) {
    out.push_back(r);
    return;
  }
  int pivot = p.empty() ? x[0] : p[0];
  std::vector<int> cand;
  for (int v : p)
    if (!adj[pivot][v]) cand.push_back(v);
  for (int v : cand) {
    std::vector<int> p2, x2;
    for (int y : p)
      if (adj[v][y]) p2.push_back(y);
    for (int y : x)
      if (adj[v][y]) x2.push_back(y);
    r.push_back(v);
    bron_kerbosch(adj, r, std::move(p2), std::move(x2), out);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

}  // namespace detail

inline std::vector<Facet> facets_by_cliques(const Blossoming& b) {
  std::vector<Word> bend;
  for (const Word& w : enumerate_walks(b))
    if (!is_straight(w) && !self_kissing(b.q, w)) bend.push_back(w);
  int n = static_cast<int>(bend.size());
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      adj[i][j] = adj[j][i] = compatible_walks(b.q, bend[i], bend[j]);
  std::vector<std::vector<int>> cliques;
  std::vector<int> r, p, x;
  for (int i = 0; i < n; ++i) p.push_back(i);
  detail::bron_kerbosch(adj, r, std::move(p), std::move(x), cliques);
  std::vector<Word> straights = straight_walks(b);
  std::vector<Facet> out;
  for (const auto& c : cliques) {
    Facet f = straights;
    for (int i : c) f.push_back(bend[i]);
    std::sort(f.begin(), f.end(), word_less);
    out.push_back(std::move(f));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace nk
