#include <catch2/catch_amalgamated.hpp>

#include <nk/quiver.hpp>

#include <set>
#include <tuple>

#include "corpus.hpp"

using nk::Quiver;

TEST_CASE("parsing the bundled quivers") {
  Quiver p2 = load_quiver("p2.quiver");
  CHECK(p2.num_vertices() == 2);
  CHECK(p2.num_arrows() == 1);
  CHECK(p2.relations.empty());
  CHECK(p2.arrows[0].name == "a");
  CHECK(p2.arrows[0].src == p2.vertex_id("1"));
  CHECK(p2.arrows[0].tgt == p2.vertex_id("2"));

  Quiver x6 = load_quiver("x6.quiver");
  CHECK(x6.num_vertices() == 6);
  CHECK(x6.num_arrows() == 6);
  CHECK(x6.relations.size() == 3);
  CHECK(x6.in_relations(x6.arrow_id("a"), x6.arrow_id("b")));
  CHECK(x6.in_relations(x6.arrow_id("f"), x6.arrow_id("d")));
  CHECK(x6.in_relations(x6.arrow_id("e"), x6.arrow_id("f")));
  CHECK_FALSE(x6.in_relations(x6.arrow_id("b"), x6.arrow_id("a")));

  Quiver l1 = load_quiver("l1.quiver");
  CHECK(l1.num_vertices() == 1);
  CHECK(l1.in_relations(0, 0));
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_AS(nk::parse_quiver("arrow a 1 2\n"), nk::parse_error);
  CHECK_THROWS_AS(nk::parse_quiver("vertices 1 1\n"), nk::parse_error);
  CHECK_THROWS_AS(nk::parse_quiver("vertices 1 2\nfoo\n"), nk::parse_error);
  CHECK_THROWS_AS(nk::parse_quiver("vertices 1 2\narrow a 1 3\n"),
                  nk::parse_error);
  CHECK_THROWS_AS(
      nk::parse_quiver("vertices 1 2 3\narrow a 1 2\narrow b 2 3\n"
                       "relation b a\n"),
      nk::parse_error);
  CHECK_THROWS_AS(nk::parse_quiver("vertices 1 2\narrow a 1 2\narrow a 1 2\n"),
                  nk::parse_error);
  CHECK_THROWS_AS(nk::parse_quiver(""), nk::parse_error);
  try {
    nk::parse_quiver("vertices 1 2\n# fine\narrow a 1 2 junk\n");
    FAIL("expected a parse error");
  } catch (const nk::parse_error& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("formatting round-trips") {
  for (const auto& [name, q] : corpus()) {
    INFO(name);
    Quiver again = nk::parse_quiver(nk::format_quiver(q));
    CHECK(nk::format_quiver(again) == nk::format_quiver(q));
  }
}

TEST_CASE("gentleness validation") {
  for (const auto& [name, q] : corpus()) {
    INFO(name);
    CHECK(nk::validate_gentle(q).empty());
  }

  SECTION("degree violations") {
    Quiver q;
    q.add_vertex("1");
    q.add_vertex("2");
    q.add_arrow("a", 0, 1);
    q.add_arrow("b", 0, 1);
    q.add_arrow("c", 0, 1);
    auto bad = nk::validate_gentle(q);
    REQUIRE_FALSE(bad.empty());
  }

  SECTION("two straight continuations") {
    Quiver q = nk::parse_quiver(
        "vertices 1 2 3 4\narrow a 1 2\narrow b 2 3\narrow c 2 4\n");
    auto bad = nk::validate_gentle(q);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].find("straight continuations out") != std::string::npos);
    // Declaring one of the compositions zero restores gentleness.
    q.relations.insert({q.arrow_id("a"), q.arrow_id("b")});
    CHECK(nk::validate_gentle(q).empty());
  }

  SECTION("two relations on one side") {
    Quiver q = nk::parse_quiver(
        "vertices 1 2 3 4\narrow a 1 2\narrow b 2 3\narrow c 2 4\n"
        "relation a b\nrelation a c\n");
    auto bad = nk::validate_gentle(q);
    REQUIRE_FALSE(bad.empty());
  }
}

TEST_CASE("string finiteness") {
  CHECK(nk::is_nk_finite(load_quiver("p2.quiver")));
  CHECK(nk::is_nk_finite(load_quiver("p3.quiver")));
  CHECK(nk::is_nk_finite(load_quiver("r3.quiver")));
  CHECK(nk::is_nk_finite(load_quiver("l1.quiver")));
  CHECK(nk::is_nk_finite(load_quiver("x6.quiver")));
  CHECK_FALSE(nk::is_nk_finite(load_quiver("kronecker.quiver")));

  // A 2-cycle with no relations alternates forever.
  Quiver cyc = nk::parse_quiver("vertices 1 2\narrow a 1 2\narrow c 2 1\n");
  CHECK_FALSE(nk::is_nk_finite(cyc));
  // An unbound loop is gentle but infinite.
  Quiver loop = nk::parse_quiver("vertices v\narrow l v v\n");
  CHECK(nk::is_gentle(loop));
  CHECK_FALSE(nk::is_nk_finite(loop));
}

TEST_CASE("blossoming sizes and degrees") {
  for (const auto& [name, q] : corpus()) {
    INFO(name);
    nk::Blossoming b = nk::blossoming(q);
    CHECK(b.q.num_vertices() == 5 * q.num_vertices() - 2 * q.num_arrows());
    CHECK(b.q.num_arrows() == 4 * q.num_vertices() - q.num_arrows());
    for (int v = 0; v < b.real_vertices; ++v) {
      CHECK(b.q.into[v].size() == 2);
      CHECK(b.q.out_of[v].size() == 2);
    }
    for (int v = b.real_vertices; v < b.q.num_vertices(); ++v)
      CHECK(b.q.into[v].size() + b.q.out_of[v].size() == 1);
    CHECK(nk::validate_gentle(b.q).empty());
    // The matching is a relation-free perfect pairing at original vertices.
    for (int a = 0; a < b.q.num_arrows(); ++a) {
      int v = b.q.arrows[a].tgt;
      if (!b.real_vertex(v)) {
        CHECK(b.match_out[a] == -1);
        continue;
      }
      int c = b.match_out[a];
      REQUIRE(c != -1);
      CHECK(b.q.arrows[c].src == v);
      CHECK_FALSE(b.q.in_relations(a, c));
      CHECK(b.match_in[c] == a);
    }
    // Restricting the relations to original arrows recovers the input.
    for (const auto& [x, y] : b.q.relations)
      if (b.real_arrow(x) && b.real_arrow(y)) CHECK(q.in_relations(x, y));
    for (const auto& [x, y] : q.relations) CHECK(b.q.in_relations(x, y));
  }

  Quiver kron = load_quiver("kronecker.quiver");
  nk::Blossoming bk = nk::blossoming(kron);
  CHECK(bk.q.num_vertices() == 6);
  CHECK(bk.q.num_arrows() == 6);
}

TEST_CASE("blossoming pins the expected passes") {
  SECTION("p2") {
    nk::Blossoming b = nk::blossoming(load_quiver("p2.quiver"));
    auto arrow = [&](const char* n) { return b.q.arrow_id(n); };
    CHECK(b.match_out[arrow("1!in1")] == arrow("a"));
    CHECK(b.match_out[arrow("1!in2")] == arrow("1!out1"));
    CHECK(b.match_out[arrow("a")] == arrow("2!out1"));
    CHECK(b.match_out[arrow("2!in1")] == arrow("2!out2"));
    CHECK(b.q.vertex_id("1!in1*") >= 0);
    CHECK(b.q.vertex_id("2!out2*") >= 0);
  }
  SECTION("x6") {
    nk::Blossoming b = nk::blossoming(load_quiver("x6.quiver"));
    auto arrow = [&](const char* n) { return b.q.arrow_id(n); };
    CHECK(b.match_out[arrow("a")] == arrow("d"));
    CHECK(b.match_out[arrow("f")] == arrow("b"));
    CHECK(b.match_out[arrow("b")] == arrow("a"));
    CHECK(b.match_out[arrow("c")] == arrow("f"));
    CHECK(b.match_out[arrow("e")] == arrow("2!out1"));
    CHECK(b.match_out[arrow("5!in1")] == arrow("c"));
    CHECK(b.match_out[arrow("5!in2")] == arrow("5!out1"));
    CHECK_FALSE(b.q.in_relations(arrow("5!in1"), arrow("c")));
    CHECK(b.q.in_relations(arrow("5!in2"), arrow("c")));
  }
  SECTION("l1") {
    nk::Blossoming b = nk::blossoming(load_quiver("l1.quiver"));
    auto arrow = [&](const char* n) { return b.q.arrow_id(n); };
    CHECK(b.match_out[arrow("l")] == arrow("v!out1"));
    CHECK(b.match_out[arrow("v!in1")] == arrow("l"));
  }
}

namespace {

// Structure of a quiver as name tuples, for comparisons across id shifts.
using Shape = std::pair<std::set<std::tuple<std::string, std::string, std::string>>,
                        std::set<std::pair<std::string, std::string>>>;

Shape shape(const Quiver& q) {
  Shape s;
  for (const auto& a : q.arrows)
    s.first.insert({a.name, q.vertex_names[a.src], q.vertex_names[a.tgt]});
  for (const auto& [a, b] : q.relations)
    s.second.insert({q.arrows[a].name, q.arrows[b].name});
  return s;
}

std::string swap_slots(std::string n) {
  if (auto p = n.find("!in"); p != std::string::npos)
    n.replace(p, 3, "!out");
  else if (auto p2 = n.find("!out"); p2 != std::string::npos)
    n.replace(p2, 4, "!in");
  return n;
}

}  // namespace

TEST_CASE("reversal is an involution and commutes with blossoming") {
  for (const auto& [name, q] : corpus()) {
    INFO(name);
    CHECK(shape(nk::reversed(nk::reversed(q))) == shape(q));
    CHECK(nk::validate_gentle(nk::reversed(q)).empty());
    CHECK(nk::is_nk_finite(nk::reversed(q)));

    // Blossoming the reversed quiver is the reversed blossoming, with the
    // in/out slot names exchanged.
    Quiver lhs = nk::blossoming(nk::reversed(q)).q;
    Quiver rhs = nk::reversed(nk::blossoming(q).q);
    for (auto& a : rhs.arrows) a.name = swap_slots(a.name);
    for (auto& v : rhs.vertex_names) v = swap_slots(v);
    CHECK(shape(lhs) == shape(rhs));
  }
}

TEST_CASE("blinding") {
  Quiver p3 = load_quiver("p3.quiver");
  Quiver r3 = load_quiver("r3.quiver");
  Quiver x6 = load_quiver("x6.quiver");

  SECTION("gluing a pass") {
    Quiver g = nk::blind(p3, {p3.vertex_id("2")});
    REQUIRE(g.num_vertices() == 2);
    REQUIRE(g.num_arrows() == 1);
    CHECK(g.arrows[0].name == "ab");
    CHECK(g.vertex_names[g.arrows[0].src] == "1");
    CHECK(g.vertex_names[g.arrows[0].tgt] == "3");
    CHECK(g.relations.empty());
  }

  SECTION("a relation blocks the glue") {
    Quiver g = nk::blind(r3, {r3.vertex_id("2")});
    CHECK(g.num_vertices() == 2);
    CHECK(g.num_arrows() == 0);
  }

  SECTION("folding both ends leaves an empty quiver") {
    Quiver g = nk::blind(p3, {p3.vertex_id("1"), p3.vertex_id("3")});
    CHECK(g.num_vertices() == 1);
    CHECK(g.num_arrows() == 0);
  }

  SECTION("gluing around a two-cycle makes a bound loop") {
    Quiver g = nk::blind(x6, {x6.vertex_id("3")});
    int ba = g.arrow_id("ba");
    REQUIRE(ba >= 0);
    CHECK(g.arrows[ba].src == g.arrows[ba].tgt);
    CHECK(g.in_relations(ba, ba));
    CHECK(nk::validate_gentle(g).empty());
  }

  SECTION("folding one vertex at a time agrees") {
    std::vector<int> both = {x6.vertex_id("2"), x6.vertex_id("3")};
    Quiver at_once = nk::blind(x6, both);
    Quiver first = nk::blind(x6, {both[0]});
    Quiver then = nk::blind(first, {first.vertex_id("3")});
    CHECK(shape(at_once) == shape(then));
  }

  SECTION("blinding preserves gentleness on the corpus") {
    for (const auto& [name, q] : corpus()) {
      INFO(name);
      for (int v = 0; v < q.num_vertices(); ++v) {
        Quiver g = nk::blind(q, {v});
        CHECK(nk::validate_gentle(g).empty());
      }
    }
  }
}

TEST_CASE("connectivity") {
  for (const auto& [name, q] : corpus()) {
    INFO(name);
    CHECK(nk::is_connected(q));
  }
  Quiver two = nk::parse_quiver("vertices 1 2\n");
  CHECK_FALSE(nk::is_connected(two));
}

TEST_CASE("the two-vertex family is nonempty and sane") {
  auto family = two_vertex_family();
  REQUIRE(family.size() >= 10);
  REQUIRE(family.size() <= 500);
  for (const auto& [name, q] : family) {
    INFO(name);
    CHECK(nk::is_gentle(q));
    CHECK(nk::is_connected(q));
    CHECK(nk::is_nk_finite(q));
    CHECK(q.num_vertices() == 2);
  }
}
