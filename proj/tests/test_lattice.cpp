#include <catch2/catch_amalgamated.hpp>

#include <nk/lattice.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "corpus.hpp"

using namespace nk;

namespace {

Blossoming named(const std::string& name) {
  return blossoming(load_quiver(name + ".quiver"));
}

std::set<std::string> mask_names(const StringTable& t, StringMask s) {
  std::set<std::string> out;
  for (int i = 0; i < t.size(); ++i)
    if (s >> i & 1) out.insert(format_word(t.q, t.strings[i]));
  return out;
}

// Hasse covers of a family of masks ordered by containment.
std::vector<std::pair<int, int>> containment_covers(
    const std::vector<StringMask>& sets) {
  std::vector<std::pair<int, int>> out;
  int n = static_cast<int>(sets.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || (sets[i] & ~sets[j])) continue;
      bool cover = true;
      for (int k = 0; k < n && cover; ++k)
        if (k != i && k != j && !(sets[i] & ~sets[k]) && !(sets[k] & ~sets[j]))
          cover = false;
      if (cover) out.push_back({i, j});
    }
  std::sort(out.begin(), out.end());
  return out;
}

void all_cliques(const std::vector<std::vector<bool>>& adj,
                 std::vector<int>& face, int from,
                 std::vector<std::vector<int>>& out) {
  out.push_back(face);
  for (int v = from; v < static_cast<int>(adj.size()); ++v) {
    bool fits = true;
    for (int u : face) fits = fits && adj[u][v];
    if (!fits) continue;
    face.push_back(v);
    all_cliques(adj, face, v + 1, out);
    face.pop_back();
  }
}

}  // namespace

TEST_CASE("string products and singleton closures") {
  for (const auto& [name, q] : corpus()) {
    CAPTURE(name);
    StringTable t = string_table(q);
    CHECK(t.strings == enumerate_strings(q));
    for (int i = 0; i < t.size(); ++i) {
      CHECK(!(t.bottoms[i] & ~t.all()));
      CHECK((t.bottoms[i] >> i & 1));
      CHECK((t.tops[i] >> i & 1));
      CHECK((t.closure_of_one[i] >> i & 1));
      for (int j = 0; j < t.size(); ++j) CHECK(!(t.products[i][j] & ~t.all()));
    }
  }

  StringTable p2 = string_table(load_quiver("p2.quiver"));
  REQUIRE(p2.size() == 3);
  CHECK(format_word(p2.q, p2.strings[0]) == "1");
  CHECK(format_word(p2.q, p2.strings[1]) == "2");
  CHECK(format_word(p2.q, p2.strings[2]) == "1 a 2");
  CHECK(p2.products[0][1] == 0b100);
  CHECK(p2.products[1][0] == 0);
  CHECK(p2.products[0][0] == 0);
  CHECK(p2.products[2][2] == 0);
  CHECK(p2.bottoms[2] == 0b110);
  CHECK(p2.tops[2] == 0b101);

  // The vertex string of the one-loop quiver spawns the loop when composed
  // with itself, and nothing composes further.
  StringTable l1 = string_table(load_quiver("l1.quiver"));
  REQUIRE(l1.size() == 2);
  CHECK(l1.strings[0].empty());
  CHECK(l1.products[0][0] == 0b10);
  CHECK(l1.products[0][1] == 0);
  CHECK(l1.products[1][1] == 0);
  CHECK(l1.closure_of_one[0] == 0b11);
  CHECK(l1.closure_of_one[1] == 0b10);
}

TEST_CASE("biclosed growth agrees with the exhaustive scan") {
  const std::map<std::string, int> expected = {
      {"p2", 6}, {"p3", 24}, {"r3", 18}, {"l1", 2}};
  for (const auto& [name, total] : expected) {
    CAPTURE(name);
    StringTable t = string_table(load_quiver(name + ".quiver"));
    auto sets = enumerate_biclosed(t);
    CHECK(static_cast<int>(sets.size()) == total);
    CHECK(sets == biclosed_by_scan(t));
  }
  for (const auto& [name, q] : two_vertex_family()) {
    CAPTURE(name);
    StringTable t = string_table(q);
    if (t.size() > 14) continue;
    auto sets = enumerate_biclosed(t);
    CHECK(sets == biclosed_by_scan(t));
    // Complementation is an order-reversing symmetry of the lattice.
    std::set<StringMask> pool(sets.begin(), sets.end());
    for (StringMask s : sets) CHECK(pool.count(t.all() & ~s) == 1);
    CHECK(pool.count(0) == 1);
    CHECK(pool.count(t.all()) == 1);
  }
}

TEST_CASE("the smallest biclosed lattices are a hexagon and a chain") {
  StringTable t = string_table(load_quiver("p2.quiver"));
  auto sets = enumerate_biclosed(t);
  REQUIRE(sets.size() == 6);
  std::set<std::set<std::string>> found;
  for (StringMask s : sets) found.insert(mask_names(t, s));
  std::set<std::set<std::string>> expected = {
      {},          {"1"},          {"2"},
      {"1 a 2", "1"}, {"1 a 2", "2"}, {"1", "2", "1 a 2"}};
  CHECK(found == expected);
  // Covers trace the hexagon of the weak order on three letters: two
  // maximal chains of length three sharing only the ends.
  auto covers = containment_covers(sets);
  REQUIRE(covers.size() == 6);
  std::vector<int> up(6, 0), down(6, 0);
  for (auto [i, j] : covers) {
    ++up[i];
    ++down[j];
    CHECK(std::popcount(sets[j]) == std::popcount(sets[i]) + 1);
  }
  const int up_by_rank[] = {2, 1, 1, 0}, down_by_rank[] = {0, 1, 1, 2};
  for (int i = 0; i < 6; ++i) {
    int rank = std::popcount(sets[i]);
    CHECK(up[i] == up_by_rank[rank]);
    CHECK(down[i] == down_by_rank[rank]);
  }

  StringTable l = string_table(load_quiver("l1.quiver"));
  auto pair = enumerate_biclosed(l);
  REQUIRE(pair.size() == 2);
  CHECK(pair[0] == 0);
  CHECK(mask_names(l, pair[1]) == std::set<std::string>{"v", "v l v"});
}

TEST_CASE("projections bound each congruence class as an interval") {
  for (const auto& [name, q] : corpus()) {
    CAPTURE(name);
    StringTable t = string_table(q);
    if (t.size() > 14) continue;
    auto sets = enumerate_biclosed(t);
    std::map<StringMask, std::vector<StringMask>> classes;
    for (StringMask s : sets) {
      StringMask lo = project_down(t, s), hi = project_up(t, s);
      CHECK(!(lo & ~s));
      CHECK(!(s & ~hi));
      CHECK(is_biclosed(t, lo));
      CHECK(is_biclosed(t, hi));
      CHECK(project_down(t, hi) == lo);
      CHECK(project_up(t, lo) == hi);
      classes[lo].push_back(s);
    }
    for (const auto& [lo, members] : classes) {
      StringMask hi = project_up(t, lo);
      // The class is exactly the biclosed part of the interval [lo, hi].
      for (StringMask s : sets) {
        bool inside = !(lo & ~s) && !(s & ~hi);
        bool listed =
            std::find(members.begin(), members.end(), s) != members.end();
        CHECK(inside == listed);
      }
      // Sharing the down-projection and sharing the up-projection agree.
      for (StringMask s : members) CHECK(project_up(t, s) == hi);
    }
  }
}

TEST_CASE("the facet map and its section") {
  for (const auto& [name, q] : corpus()) {
    CAPTURE(name);
    Blossoming b = blossoming(q);
    StringTable t = string_table(q);
    CHECK(eta(b, t, 0) == peak_facet(b));
    CHECK(eta(b, t, t.all()) == deep_facet(b));
    CHECK(zeta(b, t, peak_facet(b)) == 0);
    CHECK(zeta(b, t, deep_facet(b)) == t.all());
    auto facets = enumerate_facets(b);
    std::set<StringMask> images;
    for (const Facet& f : facets) {
      StringMask s = zeta(b, t, f);
      images.insert(s);
      CHECK(is_biclosed(t, s));
      CHECK(project_down(t, s) == s);
      REQUIRE(eta(b, t, s) == f);
      // The walk grown from each arrow is the distinguished walk there.
      for (int a = 0; a < b.q.num_arrows(); ++a) {
        Word grown = canonical(b.q, eta_walk(b, t, s, a));
        CHECK(grown == canonical(b.q, distinguished_walk(b, f, a).w));
      }
    }
    CHECK(images.size() == facets.size());
  }
}

TEST_CASE("fibers of the facet map are the congruence classes") {
  for (const auto& [name, q] : corpus()) {
    CAPTURE(name);
    StringTable t = string_table(q);
    if (t.size() > 14) continue;
    Blossoming b = blossoming(q);
    auto sets = enumerate_biclosed(t);
    std::map<Facet, std::set<StringMask>> fibers;
    for (StringMask s : sets) {
      Facet f = eta(b, t, s);
      CHECK(zeta(b, t, f) == project_down(t, s));
      fibers[f].insert(s);
    }
    CHECK(fibers.size() == enumerate_facets(b).size());
    for (const auto& [f, members] : fibers) {
      StringMask lo = zeta(b, t, f);
      StringMask hi = project_up(t, lo);
      CHECK(members.count(lo) == 1);
      CHECK(members.count(hi) == 1);
      for (StringMask s : members) CHECK(project_down(t, s) == lo);
    }
  }
}

TEST_CASE("an increasing flip adds exactly its supporting string") {
  for (const auto& [name, q] : corpus()) {
    CAPTURE(name);
    Blossoming b = blossoming(q);
    StringTable t = string_table(q);
    auto facets = enumerate_facets(b);
    std::map<Facet, int> fid;
    for (int i = 0; i < static_cast<int>(facets.size()); ++i)
      fid[facets[i]] = i;
    std::vector<StringMask> reps;
    for (const Facet& f : facets) reps.push_back(zeta(b, t, f));
    std::set<std::pair<int, int>> edges;
    std::map<int, std::set<int>> incoming_supports;
    for (int i = 0; i < static_cast<int>(facets.size()); ++i) {
      for (const Word& w : facets[i]) {
        if (is_straight(w)) continue;
        SplitString d = distinguished_string(b, facets[i], w);
        if (!d.on_top) continue;
        Word fresh = flip_replacement(b, facets[i], w);
        Facet g = flip(b, facets[i], w);
        int j = fid.at(g);
        edges.insert({i, j});
        int sigma = t.id(d.s);
        REQUIRE(sigma >= 0);
        incoming_supports[j].insert(sigma);
        // The replacement walk distinguishes the same string from below.
        SplitString dual = distinguished_string(b, g, fresh);
        CHECK(dual.s == d.s);
        CHECK(!dual.on_top);
        // The image set grows by joining in the closure of the supporting
        // string's bottom substrings.  (The step is not a single string: on
        // the path quiver the cover out of {eps_1} adds both eps_2 and a.)
        CHECK((reps[i] >> sigma & 1) == 0);
        CHECK((reps[j] >> sigma & 1) == 1);
        CHECK(reps[j] == biclosed_join(t, reps[i], closure(t, t.bottoms[sigma])));
      }
    }
    // Deleting the closure of a string from the image set stays biclosed
    // exactly when the string supports an incoming increasing flip.  The
    // closure matters: on the loop quiver, removing the trivial string alone
    // from {eps_v, l} leaves {l}, which is not biclosed, yet that flip exists.
    for (int j = 0; j < static_cast<int>(facets.size()); ++j) {
      std::set<int> droppable;
      for (int s = 0; s < t.size(); ++s)
        if ((t.closure_of_one[s] & ~reps[j]) == 0 &&
            is_biclosed(t, reps[j] & ~t.closure_of_one[s]))
          droppable.insert(s);
      CHECK(droppable == incoming_supports[j]);
    }
    // Containment covers among the image sets are the increasing flips.
    auto covers = containment_covers(reps);
    CHECK(std::set<std::pair<int, int>>(covers.begin(), covers.end()) == edges);
  }
}

TEST_CASE("facet joins and meets descend from biclosed ones") {
  for (const char* name : {"p2", "p3", "r3", "l1"}) {
    CAPTURE(name);
    Blossoming b = named(name);
    StringTable t = string_table(load_quiver(std::string(name) + ".quiver"));
    FacetLattice l = facet_lattice(b);
    int n = l.size();
    std::vector<StringMask> reps;
    for (const Facet& f : l.facets) reps.push_back(zeta(b, t, f));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int up = facet_join(l, i, j);
        int dn = facet_meet(l, i, j);
        REQUIRE(up >= 0);
        REQUIRE(dn >= 0);
        CHECK(reps[up] == biclosed_join(t, reps[i], reps[j]));
        CHECK(reps[dn] == biclosed_meet(t, reps[i], reps[j]));
      }
  }
}

TEST_CASE("the flip order is a semidistributive lattice") {
  for (const char* name : {"p2", "p3", "r3", "l1"}) {
    CAPTURE(name);
    FacetLattice l = facet_lattice(named(name));
    int n = l.size();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          if (facet_join(l, x, y) == facet_join(l, x, z)) {
            int m = facet_meet(l, y, z);
            CHECK(facet_join(l, x, m) == facet_join(l, x, y));
          }
          if (facet_meet(l, x, y) == facet_meet(l, x, z)) {
            int m = facet_join(l, y, z);
            CHECK(facet_meet(l, x, m) == facet_meet(l, x, y));
          }
        }
  }
}

TEST_CASE("distinguishable strings index the irreducible facets") {
  for (const auto& [name, q] : corpus()) {
    CAPTURE(name);
    Blossoming b = blossoming(q);
    StringTable t = string_table(q);
    for (const Word& s : t.strings)
      CHECK(is_distinguishable(q, s) == is_brick(q, s));
    auto dist = distinguishable_strings(t);
    Facet fpeak = peak_facet(b), fdeep = deep_facet(b);

    std::set<Word> targets;  // bending complex walks outside the peak facet
    for (const Word& w : enumerate_walks(b)) {
      if (is_straight(w) || self_kissing(b.q, w)) continue;
      if (std::find(fpeak.begin(), fpeak.end(), w) == fpeak.end())
        targets.insert(w);
    }
    REQUIRE(dist.size() == targets.size());

    std::set<Word> walks;
    std::set<Facet> meet_side;
    for (const Word& s : dist) {
      Facet f = join_irreducible_facet(b, t, s);
      auto descents = descent_strings(b, f);
      REQUIRE(descents == std::set<Word>{s});
      Word w = omega_bottom(b, t, s);
      CHECK(targets.count(w) == 1);
      CHECK(std::find(f.begin(), f.end(), w) != f.end());
      CHECK(distinguished_string(b, f, w).s == s);
      CHECK(sigma_bottom(b, t, w) == s);
      walks.insert(w);

      Facet m = meet_irreducible_facet(b, t, s);
      auto ascents = ascent_strings(b, m);
      CHECK(ascents == std::set<Word>{s});
      meet_side.insert(m);
    }
    CHECK(walks == targets);
    CHECK(meet_side.size() == dist.size());
    for (const Word& w : targets) CHECK(omega_bottom(b, t, sigma_bottom(b, t, w)) == w);
  }
}

TEST_CASE("descents give the canonical join representation") {
  for (const char* name : {"p2", "p3", "r3", "l1", "x6"}) {
    CAPTURE(name);
    Blossoming b = named(name);
    StringTable t = string_table(load_quiver(std::string(name) + ".quiver"));
    FacetLattice l = facet_lattice(b);
    std::map<Facet, int> fid;
    for (int i = 0; i < l.size(); ++i) fid[l.facets[i]] = i;
    int bottom = fid.at(peak_facet(b)), top = fid.at(deep_facet(b));
    for (int i = 0; i < l.size(); ++i) {
      int join = bottom, meet = top;
      for (const Word& s : descent_strings(b, l.facets[i]))
        join = facet_join(l, join, fid.at(join_irreducible_facet(b, t, s)));
      for (const Word& s : ascent_strings(b, l.facets[i]))
        meet = facet_meet(l, meet, fid.at(meet_irreducible_facet(b, t, s)));
      CHECK(join == i);
      CHECK(meet == i);
    }
    // Along an increasing flip the new facet is the join of the old one
    // with the irreducible of the supporting string, and their meet is the
    // unique facet below that irreducible.
    for (int i = 0; i < l.size(); ++i)
      for (const Word& w : l.facets[i]) {
        if (is_straight(w)) continue;
        SplitString d = distinguished_string(b, l.facets[i], w);
        if (!d.on_top) continue;
        int j = fid.at(flip(b, l.facets[i], w));
        int irr = fid.at(join_irreducible_facet(b, t, d.s));
        CHECK(facet_join(l, i, irr) == j);
        int star = -1;
        for (int k = 0; k < l.size(); ++k)
          if (std::find(l.increasing[k].begin(), l.increasing[k].end(), irr) !=
              l.increasing[k].end()) {
            CHECK(star == -1);
            star = k;
          }
        CHECK(facet_meet(l, i, irr) == star);
      }
  }
}

TEST_CASE("descent sets are exactly the non-friendly faces") {
  const std::map<std::string, int> face_counts = {{"p2", 5}};
  for (const char* name : {"p2", "p3", "r3", "l1", "x6"}) {
    CAPTURE(name);
    Blossoming b = named(name);
    StringTable t = string_table(load_quiver(std::string(name) + ".quiver"));
    auto dist = distinguishable_strings(t);
    int n = static_cast<int>(dist.size());
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        adj[i][j] = i != j && non_friendly(t.q, dist[i], dist[j]);
    std::vector<std::vector<int>> faces;
    std::vector<int> face;
    all_cliques(adj, face, 0, faces);
    std::set<std::set<Word>> friendly_free;
    for (const auto& ids : faces) {
      std::set<Word> words;
      for (int i : ids) words.insert(dist[i]);
      friendly_free.insert(words);
    }
    std::set<std::set<Word>> descents;
    auto facets = enumerate_facets(b);
    for (const Facet& f : facets) descents.insert(descent_strings(b, f));
    CHECK(descents.size() == facets.size());
    CHECK(friendly_free == descents);
    auto it = face_counts.find(name);
    if (it != face_counts.end())
      CHECK(static_cast<int>(friendly_free.size()) == it->second);
  }
}
