#pragma once

#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nk/lattice.hpp"
#include "nk/nonkissing.hpp"
#include "nk/quiver.hpp"
#include "nk/strings.hpp"

namespace nk {

// Exact integer vectors indexed by the real vertices.  Coordinates stay tiny
// for any quiver this library can enumerate, but every product is formed in
// 128 bits and checked before narrowing so silent wraparound is impossible.
using IntVector = std::vector<long long>;

namespace detail {

inline long long narrow(__int128 x) {
  assert(x <= INT64_MAX && x >= INT64_MIN);
  return static_cast<long long>(x);
}

}  // namespace detail

inline long long dot(const IntVector& a, const IntVector& b) {
  assert(a.size() == b.size());
  __int128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += static_cast<__int128>(a[i]) * b[i];
  return detail::narrow(s);
}

inline IntVector& add_scaled(IntVector& a, long long k, const IntVector& b) {
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = detail::narrow(static_cast<__int128>(a[i]) +
                          static_cast<__int128>(k) * b[i]);
  return a;
}

inline IntVector negated(IntVector a) {
  for (long long& x : a) x = -x;
  return a;
}

inline IntVector unit_vector(int n, int v) {
  IntVector e(n, 0);
  e[v] = 1;
  return e;
}

// ---------------------------------------------------------------------------
// Multiplicity and g-vectors.  A string records how often it passes through
// each vertex; a walk records its corners, peaks positively and deeps
// negatively.  Straight walks have no corners and land on the origin.

inline IntVector multiplicity_vector(const Blossoming& b, const Word& s) {
  IntVector m(b.real_vertices, 0);
  for (int i = 0; i <= s.length(); ++i) {
    int v = vertex_at(b.q, s, i);
    assert(b.real_vertex(v));
    m[v] += 1;
  }
  return m;
}

inline IntVector g_vector_walk(const Blossoming& b, const Word& w) {
  IntVector g(b.real_vertices, 0);
  for (int i = 1; i < w.length(); ++i) {
    if (w.ls[i - 1].rev == w.ls[i].rev) continue;
    int v = vertex_at(b.q, w, i);
    assert(b.real_vertex(v));
    g[v] += w.ls[i - 1].rev ? 1 : -1;
  }
  return g;
}

// The c-vector of a bending walk in a facet: the multiplicity vector of its
// distinguished string, signed by the side the string lies on.
inline IntVector c_vector(const Blossoming& b, const Facet& f, const Word& w) {
  SplitString d = distinguished_string(b, f, w);
  IntVector m = multiplicity_vector(b, d.s);
  return d.on_top ? m : negated(m);
}

// Bending walks of the complex, the common index set for kissing numbers,
// facet inequalities and fan rays.
inline std::vector<Word> bending_complex_walks(const Blossoming& b) {
  std::vector<Word> out;
  for (const Word& w : enumerate_walks(b))
    if (!is_straight(w) && !self_kissing(b.q, w)) out.push_back(w);
  return out;
}

// ---------------------------------------------------------------------------
// Facet frames.  For one facet, the bending walks in table order with their
// g- and c-vector columns and the vertex point weighted by kissing numbers.

struct FacetFrame {
  Facet facet;
  std::vector<Word> bendings;
  std::vector<IntVector> g;  // column per bending walk
  std::vector<IntVector> c;
  IntVector x;               // sum of KN(w) * c(w, F)
};

inline FacetFrame facet_frame(const Blossoming& b, const std::vector<Word>& pool,
                              const Facet& f) {
  FacetFrame out;
  out.facet = f;
  out.x.assign(b.real_vertices, 0);
  for (const Word& w : f) {
    if (is_straight(w)) continue;
    out.bendings.push_back(w);
    out.g.push_back(g_vector_walk(b, w));
    out.c.push_back(c_vector(b, f, w));
    add_scaled(out.x, kissing_number(b.q, pool, w), out.c.back());
  }
  assert(static_cast<int>(out.bendings.size()) == b.real_vertices);
  return out;
}

// Exact determinant of a square column matrix by Bareiss elimination; every
// intermediate division is known to be exact.
inline long long det_columns(const std::vector<IntVector>& cols) {
  int n = static_cast<int>(cols.size());
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = cols[j][i];
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) { p = i; break; }
      if (p < 0) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return detail::narrow(sign * m[n - 1][n - 1]);
}

// ---------------------------------------------------------------------------
// Fan verification.  Everything is integral: simpliciality through exact
// determinants, wall crossings through the linear dependence carried by the
// flip companions, and disjointness of open cones through separating
// hyperplanes read off the dual basis.

struct FanReport {
  bool peak_identity = false;      // the peak facet spans the standard basis
  bool unimodular = false;         // every g-matrix has determinant +-1
  bool dual_bases = false;         // <g_i, c_j> = delta_ij within each facet
  bool sign_coherent = false;      // c columns and g rows uniformly signed
  bool flip_dependence = false;    // g + g' = g(mu) + g(nu) across each flip
  bool unique_positive = false;    // only the peak cone holds the all-ones ray
  bool disjoint_interiors = false; // separating wall for every facet pair

  bool ok() const {
    return peak_identity && unimodular && dual_bases && sign_coherent &&
           flip_dependence && unique_positive && disjoint_interiors;
  }
};

inline FanReport check_fan(const Blossoming& b, const FlipGraph& fg) {
  int n = b.real_vertices;
  std::vector<Word> pool = bending_complex_walks(b);
  std::vector<FacetFrame> frames;
  frames.reserve(fg.facets.size());
  for (const Facet& f : fg.facets) frames.push_back(facet_frame(b, pool, f));

  FanReport r;
  r.peak_identity = true;
  {
    Facet pf = peak_facet(b);
    std::set<IntVector> cols;
    for (std::size_t i = 0; i < frames.size(); ++i)
      if (fg.facets[i] == pf)
        cols = std::set<IntVector>(frames[i].g.begin(), frames[i].g.end());
    std::set<IntVector> basis;
    for (int v = 0; v < n; ++v) basis.insert(unit_vector(n, v));
    r.peak_identity = cols == basis;
  }

  r.unimodular = true;
  r.dual_bases = true;
  r.sign_coherent = true;
  for (const FacetFrame& fr : frames) {
    long long d = det_columns(fr.g);
    if (d != 1 && d != -1) r.unimodular = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (dot(fr.g[i], fr.c[j]) != (i == j ? 1 : 0)) r.dual_bases = false;
    for (const IntVector& c : fr.c) {
      bool pos = false, neg = false;
      for (long long x : c) (x > 0 ? pos : neg) |= x != 0;
      if (pos && neg) r.sign_coherent = false;
    }
    for (int v = 0; v < n; ++v) {
      bool pos = false, neg = false;
      for (const IntVector& g : fr.g) (g[v] > 0 ? pos : neg) |= g[v] != 0;
      if (pos && neg) r.sign_coherent = false;
    }
  }

  r.flip_dependence = true;
  for (std::size_t i = 0; i < frames.size(); ++i)
    for (const Word& w : fg.facets[i]) {
      if (is_straight(w)) continue;
      Word w2 = flip_replacement(b, fg.facets[i], w);
      auto [mu, nu] = flip_companions(b, fg.facets[i], w);
      IntVector lhs = g_vector_walk(b, w);
      add_scaled(lhs, 1, g_vector_walk(b, w2));
      IntVector rhs = g_vector_walk(b, mu);
      add_scaled(rhs, 1, g_vector_walk(b, nu));
      if (lhs != rhs) r.flip_dependence = false;
    }

  // A ray is inside the closed cone of a frame exactly when its dual-basis
  // coordinates, the products with the c columns, are all nonnegative.
  auto coordinates_nonneg = [&](const FacetFrame& fr, const IntVector& y,
                                bool strict) {
    for (const IntVector& c : fr.c) {
      long long t = dot(c, y);
      if (t < 0 || (strict && t == 0)) return false;
    }
    return true;
  };

  {
    IntVector ones(n, 1);
    int open = 0, closed = 0;
    for (const FacetFrame& fr : frames) {
      if (coordinates_nonneg(fr, ones, true)) ++open;
      if (coordinates_nonneg(fr, ones, false)) ++closed;
    }
    r.unique_positive = open == 1 && closed == 1;
  }

  r.disjoint_interiors = true;
  for (std::size_t i = 0; i < frames.size(); ++i)
    for (std::size_t j = i + 1; j < frames.size(); ++j) {
      // Look for one wall of either cone with the whole other cone on its
      // nonpositive side; open cones then cannot meet.
      auto separated_by_wall_of = [&](const FacetFrame& a, const FacetFrame& o) {
        for (const IntVector& c : a.c) {
          bool all = true;
          for (const IntVector& g : o.g)
            if (dot(c, g) > 0) { all = false; break; }
          if (all) return true;
        }
        return false;
      };
      if (!separated_by_wall_of(frames[i], frames[j]) &&
          !separated_by_wall_of(frames[j], frames[i]))
        r.disjoint_interiors = false;
    }

  return r;
}

// ---------------------------------------------------------------------------
// The associahedron: one vertex per facet of the complex and one halfspace
// per bending walk, with the kissing number as offset.

struct Halfspace {
  IntVector normal;
  long long rhs = 0;
};

struct PolytopeDescription {
  int dim = 0;
  std::map<Facet, IntVector> vertices;
  std::map<Word, Halfspace> halfspaces;
};

inline PolytopeDescription associahedron(const Blossoming& b,
                                         std::size_t max_facets = 100000) {
  PolytopeDescription out;
  out.dim = b.real_vertices;
  std::vector<Word> pool = bending_complex_walks(b);
  for (const Word& w : pool)
    out.halfspaces[w] =
        Halfspace{g_vector_walk(b, w), kissing_number(b.q, pool, w)};
  for (const Facet& f : enumerate_facets(b, max_facets))
    out.vertices[f] = facet_frame(b, pool, f).x;
  return out;
}

// ---------------------------------------------------------------------------
// The zonotope generated by the multiplicity vectors of the distinguishable
// strings.  Vertices are never enumerated; the support function is evaluated
// exactly on demand.

struct Zonotope {
  std::vector<Word> generators;
  std::vector<IntVector> m;
};

inline Zonotope zonotope(const Blossoming& b, const StringTable& t) {
  Zonotope z;
  z.generators = distinguishable_strings(t);
  for (const Word& s : z.generators)
    z.m.push_back(multiplicity_vector(b, s));
  return z;
}

inline long long zonotope_support(const Zonotope& z, const IntVector& y) {
  __int128 s = 0;
  for (const IntVector& m : z.m) s += std::abs(dot(m, y));
  return detail::narrow(s);
}

inline bool mutually_kissing(const Quiver& q, const Word& w, const Word& o) {
  return kiss_count(q, w, o) > 0 && kiss_count(q, o, w) > 0;
}

// Pairs are not required to be distinct: a self-kissing walk mutually kisses
// itself, and already rules the comparison below out.
inline bool has_mutually_kissing_pair(const Blossoming& b) {
  std::vector<Word> walks = enumerate_walks(b);
  for (std::size_t i = 0; i < walks.size(); ++i)
    for (std::size_t j = i; j < walks.size(); ++j)
      if (mutually_kissing(b.q, walks[i], walks[j])) return true;
  return false;
}

// When no two walks mutually kiss, every facet inequality of the
// associahedron supports the zonotope; the check reports the bending walks
// whose inequality cuts through it, which can only happen outside that case.
struct ZonotopeCheck {
  bool applicable = false;
  bool tight = false;          // support equals kissing number on every ray
  std::vector<Word> cutting;   // walks with support below the kissing number
  std::vector<Word> loose;     // walks with support above the kissing number
};

inline ZonotopeCheck zonotope_facet_check(const Blossoming& b,
                                          const StringTable& t) {
  ZonotopeCheck out;
  out.applicable = !has_mutually_kissing_pair(b);
  out.tight = true;
  Zonotope z = zonotope(b, t);
  std::vector<Word> pool = bending_complex_walks(b);
  for (const Word& w : pool) {
    long long h = zonotope_support(z, g_vector_walk(b, w));
    long long kn = kissing_number(b.q, pool, w);
    if (h != kn) out.tight = false;
    if (h > kn) out.loose.push_back(w);
    if (h < kn) out.cutting.push_back(w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Blinding a set of vertices.  Walks of the complex with no corner on the
// blinded set restrict to walks of the blinded quiver; the restriction
// preserves kissing and projects g-vectors onto the kept coordinates.

namespace detail {

inline bool walk_has_corner_in(const Blossoming& b, const Word& w,
                               const std::set<int>& fold) {
  for (int i = 1; i < w.length(); ++i)
    if (w.ls[i - 1].rev != w.ls[i].rev && fold.count(vertex_at(b.q, w, i)))
      return true;
  return false;
}

// Rewrite a string of the base quiver over the blinded quiver: flanks inside
// the blinded set are shed, and each directed run is re-spelled through the
// composite arrows, found by the names they concatenate.
inline AlmostPositive project_string(const Quiver& base, const Quiver& folded,
                                     const std::set<int>& fold,
                                     const AlmostPositive& s) {
  if (s.negative) {
    assert(!fold.count(s.v));
    return negative_vertex(folded.vertex_id(base.vertex_names[s.v]));
  }
  const Word& w = s.w;
  int f = 0, l = w.length();
  while (f <= w.length() && fold.count(vertex_at(base, w, f))) ++f;
  while (l >= 0 && fold.count(vertex_at(base, w, l))) --l;
  assert(f <= l);
  Word out;
  out.base = folded.vertex_id(base.vertex_names[vertex_at(base, w, f)]);
  int i = f;
  while (i < l) {
    int j = i;
    while (j < l && w.ls[j].rev == w.ls[i].rev) ++j;
    assert(!fold.count(vertex_at(base, w, j)));
    bool rev = w.ls[i].rev;
    // Forward spelling of the run, split at the vertices that survive.
    std::vector<int> path;
    if (rev)
      for (int k = j - 1; k >= i; --k) path.push_back(w.ls[k].arrow);
    else
      for (int k = i; k < j; ++k) path.push_back(w.ls[k].arrow);
    std::vector<Letter> run;
    std::string name;
    for (int a : path) {
      name += base.arrows[a].name;
      if (!fold.count(base.arrows[a].tgt)) {
        int id = folded.arrow_id(name);
        assert(id >= 0);
        run.push_back(Letter{id, rev});
        name.clear();
      }
    }
    assert(name.empty());
    if (rev)
      for (auto it = run.rbegin(); it != run.rend(); ++it)
        out.ls.push_back(*it);
    else
      for (Letter x : run) out.ls.push_back(x);
    i = j;
  }
  assert(is_valid_word(folded, out));
  return positive_string(folded, out);
}

}  // namespace detail

struct ProjectionCheck {
  bool bijective = false;      // restriction matches the blinded complex
  bool compatible = false;     // kissing is reflected both ways
  bool supported = false;      // g-vectors vanish on the blinded set
  bool projected = false;      // kept coordinates match the blinded g-vectors
  int kept_walks = 0;

  bool ok() const { return bijective && compatible && supported && projected; }
};

inline ProjectionCheck project_check(const Quiver& base,
                                     const std::vector<int>& fold_list) {
  std::set<int> fold(fold_list.begin(), fold_list.end());
  Quiver folded = blind(base, fold_list);
  Blossoming bb = blossoming(base);
  Blossoming fb = blossoming(folded);

  std::vector<Word> kept;
  for (const Word& w : bending_complex_walks(bb))
    if (!detail::walk_has_corner_in(bb, w, fold)) kept.push_back(w);

  std::vector<Word> image;
  for (const Word& w : kept) {
    AlmostPositive s =
        detail::project_string(base, folded, fold, walk_to_string(bb, w));
    image.push_back(string_to_walk(fb, s));
  }

  ProjectionCheck out;
  out.kept_walks = static_cast<int>(kept.size());
  std::vector<Word> target = bending_complex_walks(fb);
  out.bijective = std::set<Word>(image.begin(), image.end()) ==
                      std::set<Word>(target.begin(), target.end()) &&
                  std::set<Word>(image.begin(), image.end()).size() ==
                      image.size();

  out.compatible = true;
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = i + 1; j < kept.size(); ++j)
      if (compatible_walks(bb.q, kept[i], kept[j]) !=
          compatible_walks(fb.q, image[i], image[j]))
        out.compatible = false;

  out.supported = true;
  out.projected = true;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    IntVector g = g_vector_walk(bb, kept[i]);
    for (int v : fold)
      if (g[v] != 0) out.supported = false;
    IntVector pg(folded.num_vertices(), 0);
    for (int j = 0; j < folded.num_vertices(); ++j)
      pg[j] = g[base.vertex_id(folded.vertex_names[j])];
    if (pg != g_vector_walk(fb, image[i])) out.projected = false;
  }
  return out;
}

}  // namespace nk
