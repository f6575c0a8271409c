#pragma once

// Strings of a gentle bound quiver: reduced signed words avoiding the
// relations in both directions.  This header provides enumeration, factor
// occurrences split into top and bottom ones, the hook and cohook moves,
// the translate built from them, hom counting, and the compatibility
// relations derived from it.
//
// A word is stored in one of its two directions; the undirected string is
// the canonical (minimal) direction.  Occurrence spans [i, j] refer to the
// vertex positions 0..n of the host word, so the factor occupies letters
// i..j-1.  A span is on top when the host leaves it at both ends along
// outgoing arrows (a missing flank counts as leaving), and at the bottom
// when it enters at both ends.

#include "nk/quiver.hpp"

#include <map>
#include <optional>
#include <set>

namespace nk {

struct limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Word {
  int base = -1;               // start vertex; meaningful also when empty
  std::vector<Letter> ls;

  int length() const { return static_cast<int>(ls.size()); }
  bool empty() const { return ls.empty(); }
  friend auto operator<=>(const Word&, const Word&) = default;
};

inline Word trivial_word(int v) { return Word{v, {}}; }

inline int word_from(const Quiver&, const Word& w) { return w.base; }

inline int word_to(const Quiver& q, const Word& w) {
  return w.empty() ? w.base : letter_to(q, w.ls.back());
}

inline int vertex_at(const Quiver& q, const Word& w, int i) {
  assert(0 <= i && i <= w.length());
  return i == 0 ? w.base : letter_to(q, w.ls[i - 1]);
}

inline bool is_valid_word(const Quiver& q, const Word& w) {
  if (w.base < 0 || w.base >= q.num_vertices()) return false;
  for (int i = 0; i < w.length(); ++i) {
    if (letter_from(q, w.ls[i]) != vertex_at(q, w, i)) return false;
    if (i > 0 && !valid_adjacent(q, w.ls[i - 1], w.ls[i])) return false;
  }
  return true;
}

inline Word inverse(const Quiver& q, const Word& w) {
  Word r;
  r.base = word_to(q, w);
  for (int i = w.length() - 1; i >= 0; --i)
    r.ls.push_back(Letter{w.ls[i].arrow, !w.ls[i].rev});
  return r;
}

// Total order used for canonical representatives and sorted tables:
// length, then start vertex, then the letters.
inline bool word_less(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a < b;
}

inline Word canonical(const Quiver& q, const Word& w) {
  Word r = inverse(q, w);
  return word_less(r, w) ? r : w;
}

inline Word subword(const Quiver& q, const Word& w, int i, int j) {
  assert(0 <= i && i <= j && j <= w.length());
  Word r;
  r.base = vertex_at(q, w, i);
  r.ls.assign(w.ls.begin() + i, w.ls.begin() + j);
  return r;
}

inline std::string format_word(const Quiver& q, const Word& w) {
  std::string out = q.vertex_names[w.base];
  for (int i = 0; i < w.length(); ++i) {
    out += ' ';
    out += q.arrows[w.ls[i].arrow].name;
    if (w.ls[i].rev) out += "^-1";
    out += ' ';
    out += q.vertex_names[vertex_at(q, w, i + 1)];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration.  Explores directed words by extension on the right and keeps
// canonical representatives; throws once more than max_strings undirected
// strings have been found, which also guards against infinite string sets.

inline std::vector<Word> enumerate_strings(const Quiver& q,
                                           int max_strings = 10000) {
  std::set<Word> seen_directed;
  std::set<Word> result;
  std::vector<Word> queue;
  auto visit = [&](const Word& w) {
    if (seen_directed.insert(w).second) {
      queue.push_back(w);
      result.insert(canonical(q, w));
      if (static_cast<int>(result.size()) > max_strings)
        throw limit_error("more than " + std::to_string(max_strings) +
                          " strings");
    }
  };
  for (int v = 0; v < q.num_vertices(); ++v) visit(trivial_word(v));
  while (!queue.empty()) {
    Word w = queue.back();
    queue.pop_back();
    int end = word_to(q, w);
    for (int a = 0; a < q.num_arrows(); ++a)
      for (bool rev : {false, true}) {
        Letter l{a, rev};
        if (letter_from(q, l) != end) continue;
        if (!w.empty() && !valid_adjacent(q, w.ls.back(), l)) continue;
        Word next = w;
        next.ls.push_back(l);
        visit(next);
      }
  }
  std::vector<Word> out(result.begin(), result.end());
  std::sort(out.begin(), out.end(), word_less);
  return out;
}

// ---------------------------------------------------------------------------
// Occurrence spans.

struct Span {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const Span&, const Span&) = default;
};

// A span is on top when the word enters it backwards (or not at all) and
// leaves it forwards (or not at all); interior spans never use the escape
// clauses, which is the right notion for factors of walks.
inline bool span_on_top(const Word& w, Span s) {
  bool left = s.i == 0 || w.ls[s.i - 1].rev;
  bool right = s.j == w.length() || !w.ls[s.j].rev;
  return left && right;
}

inline bool span_at_bottom(const Word& w, Span s) {
  bool left = s.i == 0 || !w.ls[s.i - 1].rev;
  bool right = s.j == w.length() || w.ls[s.j].rev;
  return left && right;
}

inline std::vector<Span> all_spans(const Word& w, bool interior) {
  std::vector<Span> out;
  int lo = interior ? 1 : 0;
  int hi = w.length() - (interior ? 1 : 0);
  for (int i = lo; i <= hi; ++i)
    for (int j = i; j <= hi; ++j) out.push_back(Span{i, j});
  return out;
}

inline std::vector<Span> top_spans(const Word& w, bool interior = false) {
  std::vector<Span> out;
  for (Span s : all_spans(w, interior))
    if (span_on_top(w, s)) out.push_back(s);
  return out;
}

inline std::vector<Span> bottom_spans(const Word& w, bool interior = false) {
  std::vector<Span> out;
  for (Span s : all_spans(w, interior))
    if (span_at_bottom(w, s)) out.push_back(s);
  return out;
}

inline std::set<Word> top_factors(const Quiver& q, const Word& w,
                                  bool interior = false) {
  std::set<Word> out;
  for (Span s : top_spans(w, interior))
    out.insert(canonical(q, subword(q, w, s.i, s.j)));
  return out;
}

inline std::set<Word> bottom_factors(const Quiver& q, const Word& w,
                                     bool interior = false) {
  std::set<Word> out;
  for (Span s : bottom_spans(w, interior))
    out.insert(canonical(q, subword(q, w, s.i, s.j)));
  return out;
}

// ---------------------------------------------------------------------------
// Extendability.  Whether a letter of the requested direction can be glued
// to an end of the word.  For the empty word the four predicates consult the
// degree of the base vertex: the two conceptual ends of a lazy word occupy
// the incident arrows one after the other in id order, so the "start" end is
// blocked only when no arrow exists at all and the "end" end once fewer than
// two exist.

inline bool can_prepend_letter(const Quiver& q, Letter l, const Word& w) {
  if (letter_to(q, l) != word_from(q, w)) return false;
  return w.empty() || valid_adjacent(q, l, w.ls.front());
}

inline bool can_append_letter(const Quiver& q, const Word& w, Letter l) {
  if (letter_from(q, l) != word_to(q, w)) return false;
  return w.empty() || valid_adjacent(q, w.ls.back(), l);
}

inline bool starts_on_peak(const Quiver& q, const Word& w) {
  if (w.empty()) return q.into[w.base].empty();
  for (int a : q.into[word_from(q, w)])
    if (can_prepend_letter(q, Letter{a, false}, w)) return false;
  return true;
}

inline bool ends_on_peak(const Quiver& q, const Word& w) {
  if (w.empty()) return q.into[w.base].size() < 2;
  for (int a : q.into[word_to(q, w)])
    if (can_append_letter(q, w, Letter{a, true})) return false;
  return true;
}

inline bool starts_in_deep(const Quiver& q, const Word& w) {
  if (w.empty()) return q.out_of[w.base].empty();
  for (int a : q.out_of[word_from(q, w)])
    if (can_prepend_letter(q, Letter{a, true}, w)) return false;
  return true;
}

inline bool ends_in_deep(const Quiver& q, const Word& w) {
  if (w.empty()) return q.out_of[w.base].size() < 2;
  for (int a : q.out_of[word_to(q, w)])
    if (can_append_letter(q, w, Letter{a, false})) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Hooks and cohooks.  A hook prepends the unique incoming arrow and then
// climbs maximally against the arrows; a cohook prepends the unique arrow
// pointing out and climbs maximally along them.  The removal counterparts
// strip a maximal uniform prefix (or suffix) together with one letter of the
// opposite sign and return nothing when the whole word would vanish.

namespace detail {

inline std::optional<Letter> unique_prepend(const Quiver& q, const Word& w,
                                            const std::vector<int>& pool,
                                            bool rev, int lazy_slot) {
  if (w.empty()) {
    if (lazy_slot >= static_cast<int>(pool.size())) return std::nullopt;
    return Letter{pool[lazy_slot], rev};
  }
  std::optional<Letter> found;
  for (int a : pool) {
    Letter l{a, rev};
    if (can_prepend_letter(q, l, w)) {
      assert(!found);
      found = l;
    }
  }
  return found;
}

inline std::optional<Letter> unique_append(const Quiver& q, const Word& w,
                                           const std::vector<int>& pool,
                                           bool rev, int lazy_slot) {
  if (w.empty()) {
    if (lazy_slot >= static_cast<int>(pool.size())) return std::nullopt;
    return Letter{pool[lazy_slot], rev};
  }
  std::optional<Letter> found;
  for (int a : pool) {
    Letter l{a, rev};
    if (can_append_letter(q, w, l)) {
      assert(!found);
      found = l;
    }
  }
  return found;
}

}  // namespace detail

inline Word hook_start_add(const Quiver& q, const Word& w) {
  auto first = detail::unique_prepend(q, w, q.into[word_from(q, w)],
                                      /*rev=*/false, /*lazy_slot=*/0);
  assert(first);
  Word r = w;
  r.ls.insert(r.ls.begin(), *first);
  r.base = letter_from(q, *first);
  for (;;) {
    auto climb = detail::unique_prepend(q, r, q.out_of[word_from(q, r)],
                                        /*rev=*/true, /*lazy_slot=*/99);
    if (!climb) break;
    r.ls.insert(r.ls.begin(), *climb);
    r.base = letter_from(q, *climb);
  }
  return r;
}

inline Word hook_end_add(const Quiver& q, const Word& w) {
  auto first = detail::unique_append(q, w, q.into[word_to(q, w)],
                                     /*rev=*/true, /*lazy_slot=*/1);
  assert(first);
  Word r = w;
  if (r.empty()) r.base = w.base;
  r.ls.push_back(*first);
  for (;;) {
    auto descend = detail::unique_append(q, r, q.out_of[word_to(q, r)],
                                         /*rev=*/false, /*lazy_slot=*/99);
    if (!descend) break;
    r.ls.push_back(*descend);
  }
  return r;
}

inline Word cohook_start_add(const Quiver& q, const Word& w) {
  auto first = detail::unique_prepend(q, w, q.out_of[word_from(q, w)],
                                      /*rev=*/true, /*lazy_slot=*/0);
  assert(first);
  Word r = w;
  r.ls.insert(r.ls.begin(), *first);
  r.base = letter_from(q, *first);
  for (;;) {
    auto climb = detail::unique_prepend(q, r, q.into[word_from(q, r)],
                                        /*rev=*/false, /*lazy_slot=*/99);
    if (!climb) break;
    r.ls.insert(r.ls.begin(), *climb);
    r.base = letter_from(q, *climb);
  }
  return r;
}

inline Word cohook_end_add(const Quiver& q, const Word& w) {
  auto first = detail::unique_append(q, w, q.out_of[word_to(q, w)],
                                     /*rev=*/false, /*lazy_slot=*/1);
  assert(first);
  Word r = w;
  r.ls.push_back(*first);
  for (;;) {
    auto descend = detail::unique_append(q, r, q.into[word_to(q, r)],
                                         /*rev=*/true, /*lazy_slot=*/99);
    if (!descend) break;
    r.ls.push_back(*descend);
  }
  return r;
}

inline std::optional<Word> hook_start_remove(const Quiver& q, const Word& w) {
  int k = 0;
  while (k < w.length() && w.ls[k].rev) ++k;
  if (k == w.length()) return std::nullopt;
  return subword(q, w, k + 1, w.length());
}

inline std::optional<Word> hook_end_remove(const Quiver& q, const Word& w) {
  int k = w.length() - 1;
  while (k >= 0 && !w.ls[k].rev) --k;
  if (k < 0) return std::nullopt;
  return subword(q, w, 0, k);
}

inline std::optional<Word> cohook_start_remove(const Quiver& q,
                                               const Word& w) {
  int k = 0;
  while (k < w.length() && !w.ls[k].rev) ++k;
  if (k == w.length()) return std::nullopt;
  return subword(q, w, k + 1, w.length());
}

inline std::optional<Word> cohook_end_remove(const Quiver& q, const Word& w) {
  int k = w.length() - 1;
  while (k >= 0 && w.ls[k].rev) --k;
  if (k < 0) return std::nullopt;
  return subword(q, w, 0, k);
}

// ---------------------------------------------------------------------------
// The translate and its inverse.  Adds happen before removals.

inline std::optional<Word> ar_translate(const Quiver& q, const Word& w) {
  bool sd = starts_in_deep(q, w), ed = ends_in_deep(q, w);
  if (!sd && !ed) return cohook_end_add(q, cohook_start_add(q, w));
  if (sd && !ed) return hook_start_remove(q, cohook_end_add(q, w));
  if (!sd && ed) return hook_end_remove(q, cohook_start_add(q, w));
  auto half = hook_start_remove(q, w);
  return half ? hook_end_remove(q, *half) : std::nullopt;
}

inline std::optional<Word> ar_inverse(const Quiver& q, const Word& w) {
  bool sp = starts_on_peak(q, w), ep = ends_on_peak(q, w);
  if (!sp && !ep) return hook_end_add(q, hook_start_add(q, w));
  if (sp && !ep) return cohook_start_remove(q, hook_end_add(q, w));
  if (!sp && ep) return cohook_end_remove(q, hook_start_add(q, w));
  auto half = cohook_start_remove(q, w);
  return half ? cohook_end_remove(q, *half) : std::nullopt;
}

// ---------------------------------------------------------------------------
// Hom counting: one basis element per pair of a top occurrence in the source
// and a bottom occurrence of the same undirected factor in the target.

inline std::map<Word, int> top_factor_counts(const Quiver& q, const Word& w) {
  std::map<Word, int> out;
  for (Span s : top_spans(w)) out[canonical(q, subword(q, w, s.i, s.j))]++;
  return out;
}

inline std::map<Word, int> bottom_factor_counts(const Quiver& q,
                                                const Word& w) {
  std::map<Word, int> out;
  for (Span s : bottom_spans(w)) out[canonical(q, subword(q, w, s.i, s.j))]++;
  return out;
}

inline int hom_dim(const Quiver& q, const Word& from, const Word& to) {
  auto tops = top_factor_counts(q, from);
  auto bottoms = bottom_factor_counts(q, to);
  int total = 0;
  for (const auto& [factor, count] : tops) {
    auto it = bottoms.find(factor);
    if (it != bottoms.end()) total += count * it->second;
  }
  return total;
}

inline bool is_brick(const Quiver& q, const Word& w) {
  return hom_dim(q, w, w) == 1;
}

// A string is distinguishable when it is the only factor lying both on top
// and at the bottom of itself.
inline bool is_distinguishable(const Quiver& q, const Word& w) {
  std::set<Word> tops = top_factors(q, w);
  std::set<Word> bottoms = bottom_factors(q, w);
  std::set<Word> both;
  std::set_intersection(tops.begin(), tops.end(), bottoms.begin(),
                        bottoms.end(), std::inserter(both, both.begin()));
  return both == std::set<Word>{canonical(q, w)};
}

// ---------------------------------------------------------------------------
// The two elementary ways one string pulls a map out of another.

inline bool attracts(const Quiver& q, const Word& rho, const Word& other) {
  // The cohook grown against the arrow a at the start of the other string
  // climbs along a directed path into u = tgt(a).  A nonzero map out of rho
  // needs some prefix of that climb to occur in rho, ending at u, as a factor
  // lying on top.  Matching the climb backwards from a position at u always
  // closes off on a valid top flank (the climb arrow is the unique one
  // avoiding the ideal), except when the match dies immediately on the
  // inducing arrow itself.
  for (const Word& o : {other, inverse(q, other)}) {
    for (int a : q.out_of[word_from(q, o)]) {
      if (!can_prepend_letter(q, Letter{a, true}, o)) continue;
      int u = q.arrows[a].tgt;
      for (const Word& w : {rho, inverse(q, rho)}) {
        for (int p = 0; p <= w.length(); ++p) {
          if (vertex_at(q, w, p) != u) continue;
          if (p < w.length() && w.ls[p].rev) continue;
          if (p > 0 && w.ls[p - 1] == Letter{a, false}) continue;
          return true;
        }
      }
    }
  }
  return false;
}

inline bool reaches_for(const Quiver& q, const Word& rho, const Word& other) {
  auto tops = top_spans(rho);
  for (const Word& o : {other, inverse(q, other)}) {
    for (Span b : bottom_spans(o)) {
      Word factor = subword(q, o, b.i, b.j);
      for (Span t : tops) {
        if (subword(q, rho, t.i, t.j) != factor) continue;
        bool ok = true;
        if (b.i == 0) {
          if (t.i == 0) {
            ok = false;
          } else {
            Letter arm{rho.ls[t.i - 1].arrow, true};
            ok = can_prepend_letter(q, arm, o);
          }
        }
        if (ok && b.j == o.length()) {
          if (t.j == rho.length()) {
            ok = false;
          } else {
            Letter arm{rho.ls[t.j].arrow, false};
            ok = can_append_letter(q, o, arm);
          }
        }
        if (ok) return true;
      }
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Almost positive strings: the strings plus one formal negative element per
// vertex.

struct AlmostPositive {
  bool negative = false;
  int v = -1;   // set for negatives
  Word w;       // set for strings
  friend auto operator<=>(const AlmostPositive&, const AlmostPositive&) =
      default;
};

inline AlmostPositive negative_vertex(int v) {
  return AlmostPositive{true, v, Word{}};
}

inline AlmostPositive positive_string(const Quiver& q, const Word& w) {
  return AlmostPositive{false, -1, canonical(q, w)};
}

inline std::string format_almost_positive(const Quiver& q,
                                          const AlmostPositive& a) {
  return a.negative ? "-" + q.vertex_names[a.v] : format_word(q, a.w);
}

inline std::vector<AlmostPositive> almost_positive_strings(
    const Quiver& q, int max_strings = 10000) {
  std::vector<AlmostPositive> out;
  for (int v = 0; v < q.num_vertices(); ++v) out.push_back(negative_vertex(v));
  for (const Word& w : enumerate_strings(q, max_strings))
    out.push_back(positive_string(q, w));
  return out;
}

inline bool tau_compatible(const Quiver& q, const AlmostPositive& a,
                           const AlmostPositive& b) {
  if (a.negative && b.negative) return true;
  if (a.negative != b.negative) {
    const Word& w = a.negative ? b.w : a.w;
    int v = a.negative ? a.v : b.v;
    for (int i = 0; i <= w.length(); ++i)
      if (vertex_at(q, w, i) == v) return false;
    return true;
  }
  if (attracts(q, a.w, b.w) || reaches_for(q, a.w, b.w)) return false;
  if (a.w == b.w) return true;  // self-compatibility needs one direction only
  return !attracts(q, b.w, a.w) && !reaches_for(q, b.w, a.w);
}

// ---------------------------------------------------------------------------
// Vector of the translate fan: counts the isolated tops minus the interior
// isolated bottoms, with a correction along the cohook arrows at ends that
// still point out of a deep.

inline std::vector<long long> g_vector_string(const Quiver& q,
                                              const AlmostPositive& a) {
  std::vector<long long> g(q.num_vertices(), 0);
  if (a.negative) {
    g[a.v] = -1;
    return g;
  }
  const Word& w = a.w;
  for (int p = 0; p <= w.length(); ++p) {
    Span s{p, p};
    if (span_on_top(w, s)) g[vertex_at(q, w, p)] += 1;
    if (p > 0 && p < w.length() && span_at_bottom(w, s))
      g[vertex_at(q, w, p)] -= 1;
  }
  if (!starts_in_deep(q, w)) {
    auto l = detail::unique_prepend(q, w, q.out_of[word_from(q, w)],
                                    /*rev=*/true, /*lazy_slot=*/0);
    assert(l);
    g[q.arrows[l->arrow].tgt] -= 1;
  }
  if (!ends_in_deep(q, w)) {
    auto l = detail::unique_append(q, w, q.out_of[word_to(q, w)],
                                   /*rev=*/false, /*lazy_slot=*/1);
    assert(l);
    g[q.arrows[l->arrow].tgt] -= 1;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Concatenations through an arrow, the building block of the closure
// operator on sets of strings.

inline std::set<Word> compose(const Quiver& q, const Word& sigma,
                              const Word& tau) {
  std::set<Word> out;
  for (const Word& s : {sigma, inverse(q, sigma)})
    for (const Word& t : {tau, inverse(q, tau)})
      for (int a = 0; a < q.num_arrows(); ++a) {
        Letter l{a, false};
        if (!can_append_letter(q, s, l)) continue;
        if (letter_to(q, l) != word_from(q, t)) continue;
        if (!t.empty() && !valid_adjacent(q, l, t.ls.front())) continue;
        Word joined = s;
        joined.ls.push_back(l);
        joined.ls.insert(joined.ls.end(), t.ls.begin(), t.ls.end());
        assert(is_valid_word(q, joined));
        out.insert(canonical(q, joined));
      }
  return out;
}

}  // namespace nk
