#pragma once

// Bound quivers with length-two relations and the constructions feeding the
// non-kissing machinery: gentleness validation, blossoming, arrow reversal,
// vertex blinding, and the string-finiteness test.
//
// Conventions used throughout the library:
//   * composition is written left to right, so the pair (a, b) is composable
//     when t(a) = s(b), and the relation (a, b) kills the path "a then b";
//   * vertices and arrows carry dense ids in construction order, names are
//     kept for parsing and printing;
//   * a signed letter (arrow, rev) traverses its arrow backwards when rev is
//     set; two adjacent letters form a factor of a string iff
//       (+,+)  the composition is not a relation,
//       (-,-)  the reversed composition is not a relation,
//       mixed  the underlying arrows are distinct.

#include <algorithm>
#include <cassert>
#include <compare>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nk {

struct parse_error : std::runtime_error {
  int line;
  parse_error(int line_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
};

struct Arrow {
  std::string name;
  int src = -1;
  int tgt = -1;
};

struct Quiver {
  std::vector<std::string> vertex_names;
  std::vector<Arrow> arrows;
  std::set<std::pair<int, int>> relations;

  // Incidence lists in arrow-id order, maintained by add_arrow.
  std::vector<std::vector<int>> out_of;
  std::vector<std::vector<int>> into;

  int num_vertices() const { return static_cast<int>(vertex_names.size()); }
  int num_arrows() const { return static_cast<int>(arrows.size()); }

  int add_vertex(std::string name) {
    vertex_names.push_back(std::move(name));
    out_of.emplace_back();
    into.emplace_back();
    return num_vertices() - 1;
  }

  int add_arrow(std::string name, int src, int tgt) {
    assert(0 <= src && src < num_vertices());
    assert(0 <= tgt && tgt < num_vertices());
    arrows.push_back(Arrow{std::move(name), src, tgt});
    int id = num_arrows() - 1;
    out_of[src].push_back(id);
    into[tgt].push_back(id);
    return id;
  }

  bool composable(int a, int b) const { return arrows[a].tgt == arrows[b].src; }
  bool in_relations(int a, int b) const { return relations.count({a, b}) > 0; }

  int vertex_id(const std::string& name) const {
    for (int v = 0; v < num_vertices(); ++v)
      if (vertex_names[v] == name) return v;
    return -1;
  }

  int arrow_id(const std::string& name) const {
    for (int a = 0; a < num_arrows(); ++a)
      if (arrows[a].name == name) return a;
    return -1;
  }
};

// A signed letter of a string or walk.  Orders as (arrow, forward first).
struct Letter {
  int arrow = -1;
  bool rev = false;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

inline int letter_from(const Quiver& q, Letter l) {
  return l.rev ? q.arrows[l.arrow].tgt : q.arrows[l.arrow].src;
}

inline int letter_to(const Quiver& q, Letter l) {
  return l.rev ? q.arrows[l.arrow].src : q.arrows[l.arrow].tgt;
}

// Whether the two-letter word "a then b" may appear inside a string.
inline bool valid_adjacent(const Quiver& q, Letter a, Letter b) {
  if (letter_to(q, a) != letter_from(q, b)) return false;
  if (!a.rev && !b.rev) return !q.in_relations(a.arrow, b.arrow);
  if (a.rev && b.rev) return !q.in_relations(b.arrow, a.arrow);
  return a.arrow != b.arrow;
}

// ---------------------------------------------------------------------------
// Parsing and printing.  The text format is line based:
//
//   vertices <name>...
//   arrow <name> <src> <tgt>
//   relation <first> <second>
//
// with '#' starting a comment.  The vertices line comes first; relations may
// only mention arrows already declared and must be composable.

inline std::string format_quiver(const Quiver& q) {
  std::ostringstream out;
  out << "vertices";
  for (const auto& v : q.vertex_names) out << ' ' << v;
  out << '\n';
  for (const auto& a : q.arrows)
    out << "arrow " << a.name << ' ' << q.vertex_names[a.src] << ' '
        << q.vertex_names[a.tgt] << '\n';
  for (const auto& [a, b] : q.relations)
    out << "relation " << q.arrows[a].name << ' ' << q.arrows[b].name << '\n';
  return out.str();
}

inline Quiver parse_quiver(const std::string& text) {
  Quiver q;
  bool have_vertices = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream line(raw);
    std::string head;
    if (!(line >> head)) continue;
    if (head == "vertices") {
      if (have_vertices) throw parse_error(lineno, "repeated vertices line");
      std::string name;
      while (line >> name) {
        if (q.vertex_id(name) >= 0)
          throw parse_error(lineno, "duplicate vertex '" + name + "'");
        q.add_vertex(name);
      }
      if (q.num_vertices() == 0)
        throw parse_error(lineno, "empty vertices line");
      have_vertices = true;
    } else if (head == "arrow") {
      if (!have_vertices)
        throw parse_error(lineno, "arrow before vertices line");
      std::string name, src, tgt;
      if (!(line >> name >> src >> tgt))
        throw parse_error(lineno, "arrow needs a name, source and target");
      if (q.arrow_id(name) >= 0)
        throw parse_error(lineno, "duplicate arrow '" + name + "'");
      int s = q.vertex_id(src), t = q.vertex_id(tgt);
      if (s < 0) throw parse_error(lineno, "unknown vertex '" + src + "'");
      if (t < 0) throw parse_error(lineno, "unknown vertex '" + tgt + "'");
      q.add_arrow(name, s, t);
    } else if (head == "relation") {
      std::string first, second;
      if (!(line >> first >> second))
        throw parse_error(lineno, "relation needs two arrow names");
      int a = q.arrow_id(first), b = q.arrow_id(second);
      if (a < 0) throw parse_error(lineno, "unknown arrow '" + first + "'");
      if (b < 0) throw parse_error(lineno, "unknown arrow '" + second + "'");
      if (!q.composable(a, b))
        throw parse_error(lineno, "relation '" + first + " " + second +
                                      "' is not a composable path");
      if (q.in_relations(a, b))
        throw parse_error(lineno, "repeated relation");
      q.relations.insert({a, b});
    } else {
      throw parse_error(lineno, "unknown directive '" + head + "'");
    }
    std::string trailing;
    if (line >> trailing)
      throw parse_error(lineno, "trailing token '" + trailing + "'");
  }
  if (!have_vertices) throw parse_error(lineno, "missing vertices line");
  return q;
}

// ---------------------------------------------------------------------------
// Gentleness.  Returns a list of human-readable violations; empty means the
// bound quiver is gentle.

inline std::vector<std::string> validate_gentle(const Quiver& q) {
  std::vector<std::string> bad;
  for (int v = 0; v < q.num_vertices(); ++v) {
    if (q.into[v].size() > 2)
      bad.push_back("vertex " + q.vertex_names[v] + " has in-degree " +
                    std::to_string(q.into[v].size()));
    if (q.out_of[v].size() > 2)
      bad.push_back("vertex " + q.vertex_names[v] + " has out-degree " +
                    std::to_string(q.out_of[v].size()));
  }
  for (const auto& [a, b] : q.relations)
    if (!q.composable(a, b))
      bad.push_back("relation " + q.arrows[a].name + " " + q.arrows[b].name +
                    " is not composable");
  // Each arrow admits at most one composition partner of each kind on each
  // side: one continuation avoiding the relations and one inside them.
  for (int b = 0; b < q.num_arrows(); ++b) {
    int merge_in = 0, kill_in = 0, merge_out = 0, kill_out = 0;
    for (int a = 0; a < q.num_arrows(); ++a) {
      if (q.composable(a, b)) (q.in_relations(a, b) ? kill_in : merge_in)++;
      if (q.composable(b, a)) (q.in_relations(b, a) ? kill_out : merge_out)++;
    }
    const std::string& name = q.arrows[b].name;
    if (merge_in > 1)
      bad.push_back("arrow " + name + " has several straight continuations in");
    if (kill_in > 1)
      bad.push_back("arrow " + name + " sits in several relations on the left");
    if (merge_out > 1)
      bad.push_back("arrow " + name + " has several straight continuations out");
    if (kill_out > 1)
      bad.push_back("arrow " + name + " sits in several relations on the right");
  }
  return bad;
}

inline bool is_gentle(const Quiver& q) { return validate_gentle(q).empty(); }

// ---------------------------------------------------------------------------
// Finiteness: the strings of a gentle quiver form a finite set exactly when
// the letter-transition digraph (one node per signed letter) is acyclic.

inline bool is_nk_finite(const Quiver& q) {
  int n = 2 * q.num_arrows();
  auto node = [](Letter l) { return 2 * l.arrow + (l.rev ? 1 : 0); };
  auto letter = [](int id) { return Letter{id / 2, id % 2 == 1}; };
  std::vector<int> color(n, 0);
  std::vector<int> stack;
  for (int start = 0; start < n; ++start) {
    if (color[start]) continue;
    stack.push_back(start);
    while (!stack.empty()) {
      int u = stack.back();
      if (color[u] == 0) {
        color[u] = 1;
        for (int v = 0; v < n; ++v)
          if (valid_adjacent(q, letter(u), letter(v))) {
            if (color[v] == 1) return false;
            if (color[v] == 0) stack.push_back(v);
          }
      } else {
        if (color[u] == 1) color[u] = 2;
        stack.pop_back();
      }
    }
  }
  (void)node;
  return true;
}

inline bool is_connected(const Quiver& q) {
  if (q.num_vertices() == 0) return true;
  std::vector<char> seen(q.num_vertices(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int a : q.out_of[v])
      if (!seen[q.arrows[a].tgt]) seen[q.arrows[a].tgt] = 1, stack.push_back(q.arrows[a].tgt);
    for (int a : q.into[v])
      if (!seen[q.arrows[a].src]) seen[q.arrows[a].src] = 1, stack.push_back(q.arrows[a].src);
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

// ---------------------------------------------------------------------------
// Blossoming.  Fresh leaf vertices are hung on every original vertex until it
// is 2-in 2-out; the four slots around each original vertex are then paired
// into two straight passes, and every composition not absorbed into a pass
// becomes a relation.  Restricting to the original arrows recovers exactly
// the original relations.
//
// Added arrows are named "<vertex>!in1", "<vertex>!out2", ...; the leaf at
// the far end of such an arrow takes the arrow's name with a '*' appended.

struct Blossoming {
  Quiver q;
  int real_vertices = 0;
  int real_arrows = 0;
  // The arrow continuing a straight pass after / before the given one; -1
  // when the pass has already reached a leaf.
  std::vector<int> match_out;
  std::vector<int> match_in;

  bool real_vertex(int v) const { return v < real_vertices; }
  bool real_arrow(int a) const { return a < real_arrows; }
};

inline Blossoming blossoming(const Quiver& base) {
  assert(validate_gentle(base).empty());
  Blossoming b;
  b.q = base;
  b.real_vertices = base.num_vertices();
  b.real_arrows = base.num_arrows();
  for (int v = 0; v < b.real_vertices; ++v) {
    const std::string& vn = base.vertex_names[v];
    int need_in = 2 - static_cast<int>(base.into[v].size());
    for (int k = 1; k <= need_in; ++k) {
      std::string an = vn + "!in" + std::to_string(k);
      int leaf = b.q.add_vertex(an + "*");
      b.q.add_arrow(an, leaf, v);
    }
    int need_out = 2 - static_cast<int>(base.out_of[v].size());
    for (int k = 1; k <= need_out; ++k) {
      std::string an = vn + "!out" + std::to_string(k);
      int leaf = b.q.add_vertex(an + "*");
      b.q.add_arrow(an, v, leaf);
    }
  }
  b.match_out.assign(b.q.num_arrows(), -1);
  b.match_in.assign(b.q.num_arrows(), -1);
  for (int v = 0; v < b.real_vertices; ++v) {
    const auto& ins = b.q.into[v];
    const auto& outs = b.q.out_of[v];
    assert(ins.size() == 2 && outs.size() == 2);
    // Original compositions missing from the relations are forced into a
    // pass; the remaining slots pair up greedily by arrow id.
    for (int a : ins)
      for (int c : outs)
        if (b.real_arrow(a) && b.real_arrow(c) && !base.in_relations(a, c)) {
          assert(b.match_out[a] == -1 && b.match_in[c] == -1);
          b.match_out[a] = c;
          b.match_in[c] = a;
        }
    for (int a : ins) {
      if (b.match_out[a] != -1) continue;
      for (int c : outs) {
        if (b.match_in[c] != -1) continue;
        if (b.real_arrow(a) && b.real_arrow(c) && base.in_relations(a, c))
          continue;
        b.match_out[a] = c;
        b.match_in[c] = a;
        break;
      }
      assert(b.match_out[a] != -1);
    }
    for (int a : ins)
      for (int c : outs)
        if (b.match_out[a] != c) b.q.relations.insert({a, c});
  }
#ifndef NDEBUG
  for (const auto& [a, c] : b.q.relations)
    assert(!(b.real_arrow(a) && b.real_arrow(c)) || base.in_relations(a, c));
  for (const auto& [a, c] : base.relations)
    assert(b.q.in_relations(a, c)), (void)a, (void)c;
#endif
  return b;
}

// ---------------------------------------------------------------------------

inline Quiver reversed(const Quiver& base) {
  Quiver r;
  r.vertex_names = base.vertex_names;
  r.out_of.resize(base.num_vertices());
  r.into.resize(base.num_vertices());
  for (const auto& a : base.arrows) {
    r.arrows.push_back(Arrow{a.name, a.tgt, a.src});
    int id = r.num_arrows() - 1;
    r.out_of[a.tgt].push_back(id);
    r.into[a.src].push_back(id);
  }
  for (const auto& [a, b] : base.relations) r.relations.insert({b, a});
  return r;
}

// ---------------------------------------------------------------------------
// Blinding.  Folds away the given vertices one at a time: arrows through a
// folded vertex are glued into longer arrows (names concatenate), passes that
// would start or end at a folded vertex are dropped, and a composition of
// glued arrows is a relation exactly when the junction pair was one.

inline Quiver blind(const Quiver& base, std::vector<int> fold) {
  std::sort(fold.begin(), fold.end());
  for (size_t i = 0; i + 1 < fold.size(); ++i)
    assert(fold[i] != fold[i + 1]);
  std::vector<std::string> fold_names;
  for (int v : fold) fold_names.push_back(base.vertex_names.at(v));

  Quiver cur = base;
  // span[x] = (first, last) original arrows of the glued path x.
  std::vector<std::pair<int, int>> span;
  for (int a = 0; a < base.num_arrows(); ++a) span.push_back({a, a});
  cur.relations.clear();

  for (const auto& vn : fold_names) {
    int v = cur.vertex_id(vn);
    assert(v >= 0);
    Quiver next;
    std::vector<std::pair<int, int>> next_span;
    std::vector<int> vmap(cur.num_vertices(), -1);
    for (int u = 0; u < cur.num_vertices(); ++u)
      if (u != v) vmap[u] = next.add_vertex(cur.vertex_names[u]);
    auto add = [&](const std::string& name, int s, int t,
                   std::pair<int, int> sp) {
      if (next.arrow_id(name) >= 0)
        throw std::runtime_error("blind: arrow name clash at '" + name + "'");
      next.add_arrow(name, s, t);
      next_span.push_back(sp);
    };
    for (int x = 0; x < cur.num_arrows(); ++x) {
      const Arrow& a = cur.arrows[x];
      if (a.src == v || a.tgt == v) continue;
      add(a.name, vmap[a.src], vmap[a.tgt], span[x]);
    }
    for (int x : cur.into[v]) {
      if (cur.arrows[x].src == v) continue;
      for (int y : cur.out_of[v]) {
        if (cur.arrows[y].tgt == v) continue;
        if (base.in_relations(span[x].second, span[y].first)) continue;
        add(cur.arrows[x].name + cur.arrows[y].name, vmap[cur.arrows[x].src],
            vmap[cur.arrows[y].tgt], {span[x].first, span[y].second});
      }
    }
    cur = std::move(next);
    span = std::move(next_span);
  }

  for (int x = 0; x < cur.num_arrows(); ++x)
    for (int y = 0; y < cur.num_arrows(); ++y)
      if (cur.composable(x, y) && base.in_relations(span[x].second, span[y].first))
        cur.relations.insert({x, y});
  return cur;
}

}  // namespace nk
