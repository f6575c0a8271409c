#include <nk/geometry.hpp>
#include <nk/lattice.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace nk {
namespace {

using nlohmann::json;

// Exit status contract: 0 on success, 1 when a mathematical precondition or
// verification fails (non-gentle or infinite input to a command that needs
// better, a cap that was exceeded, a cross-check that does not hold), and 2
// for usage errors (unknown commands, unreadable or malformed files).
struct usage_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct check_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string file;
  bool want_json = false;
  bool want_text = false;
  bool want_dot = false;
  bool count_only = false;
  int max_strings = 10000;
  std::size_t max_facets = 100000;
  std::size_t max_biclosed = 1000000;
  int jobs = 1;  // accepted for interface stability; modules run sequentially
  std::vector<std::string> fold;
  std::string support;
};

Quiver read_quiver(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_failure("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_quiver(text.str());
}

Quiver read_gentle(const Options& o) {
  Quiver q = read_quiver(o.file);
  auto problems = validate_gentle(q);
  if (!problems.empty())
    throw check_failure("input is not a gentle bound quiver: " +
                        problems.front());
  return q;
}

Quiver read_finite(const Options& o) {
  Quiver q = read_gentle(o);
  if (!is_nk_finite(q))
    throw check_failure(
        "input has infinitely many strings; this command needs finite type");
  return q;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

std::vector<std::string> facet_tokens(const Quiver& q, const Facet& f) {
  std::vector<std::string> out;
  for (const Word& w : f) out.push_back(format_word(q, w));
  return out;
}

IntVector parse_direction(const std::string& text, int dim) {
  IntVector y;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      y.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw usage_failure("bad coordinate '" + item + "' in direction");
    }
  }
  if (static_cast<int>(y.size()) != dim)
    throw usage_failure("direction needs " + std::to_string(dim) +
                        " coordinates");
  return y;
}

// Covers of the containment order on a family of distinct masks.
std::set<std::pair<int, int>> mask_covers(const std::vector<StringMask>& reps) {
  int n = static_cast<int>(reps.size());
  auto strictly_below = [&](int i, int j) {
    return i != j && (reps[i] & ~reps[j]) == 0;
  };
  std::set<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!strictly_below(i, j)) continue;
      bool cover = true;
      for (int k = 0; k < n && cover; ++k)
        if (strictly_below(i, k) && strictly_below(k, j)) cover = false;
      if (cover) out.insert({i, j});
    }
  return out;
}

std::set<std::pair<int, int>> increasing_edges(const FlipGraph& fg) {
  std::set<std::pair<int, int>> out;
  for (int i = 0; i < static_cast<int>(fg.facets.size()); ++i)
    for (int j : fg.increasing[i]) out.insert({i, j});
  return out;
}

int cmd_validate(const Options& o) {
  Quiver q = read_quiver(o.file);
  auto problems = validate_gentle(q);
  bool gentle = problems.empty();
  if (o.want_text) {
    for (const auto& p : problems) std::cout << p << '\n';
    if (gentle)
      std::cout << "gentle, " << (is_nk_finite(q) ? "finite" : "infinite")
                << " type\n";
  } else {
    json j;
    j["gentle"] = gentle;
    j["problems"] = problems;
    j["finite"] = gentle ? json(is_nk_finite(q)) : json();
    emit(j);
  }
  return gentle ? 0 : 1;
}

int cmd_info(const Options& o) {
  Quiver q = read_gentle(o);
  bool finite = is_nk_finite(q);
  std::optional<std::size_t> count;
  if (finite) count = enumerate_strings(q, o.max_strings).size();
  if (o.want_json) {
    json j;
    j["vertices"] = q.num_vertices();
    j["arrows"] = q.num_arrows();
    j["relations"] = q.relations.size();
    j["finite"] = finite;
    j["strings"] = count ? json(*count) : json();
    emit(j);
  } else {
    std::cout << "vertices=" << q.num_vertices() << " arrows=" << q.num_arrows()
              << " relations=" << q.relations.size()
              << " finite=" << (finite ? "true" : "false") << " strings=";
    if (count)
      std::cout << *count << '\n';
    else
      std::cout << "infinite\n";
  }
  return 0;
}

int cmd_strings(const Options& o) {
  Quiver q = read_finite(o);
  auto strings = enumerate_strings(q, o.max_strings);
  if (o.want_text) {
    for (const Word& s : strings) std::cout << format_word(q, s) << '\n';
  } else {
    json j;
    j["count"] = strings.size();
    json arr = json::array();
    for (const Word& s : strings) arr.push_back(format_word(q, s));
    j["strings"] = arr;
    emit(j);
  }
  return 0;
}

int cmd_walks(const Options& o) {
  Quiver q = read_finite(o);
  Blossoming b = blossoming(q);
  auto walks = enumerate_walks(b);
  if (o.want_text) {
    for (const Word& w : walks) {
      std::cout << format_word(b.q, w);
      if (is_straight(w)) std::cout << "  (straight)";
      if (self_kissing(b.q, w)) std::cout << "  (self-kissing)";
      std::cout << '\n';
    }
  } else {
    json j;
    j["count"] = walks.size();
    json arr = json::array();
    for (const Word& w : walks) {
      json e;
      e["word"] = format_word(b.q, w);
      e["straight"] = is_straight(w);
      e["self_kissing"] = self_kissing(b.q, w);
      arr.push_back(e);
    }
    j["walks"] = arr;
    emit(j);
  }
  return 0;
}

int cmd_complex(const Options& o) {
  Quiver q = read_finite(o);
  Blossoming b = blossoming(q);
  auto facets = enumerate_facets(b, o.max_facets);
  if (o.count_only) {
    std::cout << "facets=" << facets.size() << '\n';
    return 0;
  }
  if (o.want_text) {
    for (const Facet& f : facets) {
      bool first = true;
      for (const std::string& tok : facet_tokens(b.q, f)) {
        if (!first) std::cout << " | ";
        std::cout << tok;
        first = false;
      }
      std::cout << '\n';
    }
  } else {
    json j;
    j["count"] = facets.size();
    json arr = json::array();
    for (const Facet& f : facets) arr.push_back(facet_tokens(b.q, f));
    j["facets"] = arr;
    emit(j);
  }
  return 0;
}

int cmd_flip_graph(const Options& o) {
  Quiver q = read_finite(o);
  Blossoming b = blossoming(q);
  FlipGraph fg = flip_graph(b, o.max_facets);
  auto edges = increasing_edges(fg);
  if (o.want_dot) {
    std::cout << "digraph flip_graph {\n  rankdir=BT;\n";
    for (const auto& [i, j] : edges)
      std::cout << "  " << i << " -> " << j << ";\n";
    std::cout << "}\n";
  } else if (o.want_text) {
    for (const auto& [i, j] : edges) std::cout << i << " -> " << j << '\n';
  } else {
    json j;
    json fs = json::array();
    for (const Facet& f : fg.facets) fs.push_back(facet_tokens(b.q, f));
    j["facets"] = fs;
    json es = json::array();
    for (const auto& [a, c] : edges) es.push_back(json::array({a, c}));
    j["edges"] = es;
    emit(j);
  }
  return 0;
}

int cmd_tau(const Options& o) {
  Quiver q = read_finite(o);
  Blossoming b = blossoming(q);
  auto aps = almost_positive_strings(q, o.max_strings);
  std::vector<Word> walks;
  for (const auto& s : aps) walks.push_back(string_to_walk(b, s));
  int n = static_cast<int>(aps.size());
  std::vector<std::vector<int>> mat(n, std::vector<int>(n, 0));
  bool matches = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool tc = tau_compatible(q, aps[i], aps[j]);
      mat[i][j] = tc ? 1 : 0;
      if (tc != compatible_walks(b.q, walks[i], walks[j])) matches = false;
    }
  if (o.want_text) {
    for (int i = 0; i < n; ++i)
      std::cout << format_almost_positive(q, aps[i]) << '\n';
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) std::cout << mat[i][j];
      std::cout << '\n';
    }
    std::cout << "matches_kissing=" << (matches ? "true" : "false") << '\n';
  } else {
    json j;
    json labels = json::array();
    for (const auto& s : aps) labels.push_back(format_almost_positive(q, s));
    j["labels"] = labels;
    j["compatible"] = mat;
    j["matches_kissing"] = matches;
    emit(j);
  }
  return matches ? 0 : 1;
}

int cmd_lattice(const Options& o) {
  Quiver q = read_finite(o);
  Blossoming b = blossoming(q);
  StringTable t = string_table(q);
  FlipGraph fg = flip_graph(b, o.max_facets);
  int m = static_cast<int>(fg.facets.size());

  std::vector<StringMask> reps;
  std::set<StringMask> repset;
  bool section = true;
  for (const Facet& f : fg.facets) {
    StringMask s = zeta(b, t, f);
    reps.push_back(s);
    repset.insert(s);
    if (eta(b, t, s) != f) section = false;
  }
  section = section && static_cast<int>(repset.size()) == m;

  bool quotient = mask_covers(reps) == increasing_edges(fg);

  auto sets = enumerate_biclosed(t, o.max_biclosed);
  std::map<StringMask, int> rep_id;
  for (int i = 0; i < m; ++i) rep_id[reps[i]] = i;
  bool intervals = true;
  std::set<StringMask> downs;
  for (StringMask s : sets) {
    StringMask lo = project_down(t, s), hi = project_up(t, s);
    downs.insert(lo);
    if (!rep_id.count(lo) || (lo & ~s) || (s & ~hi) || project_up(t, lo) != hi)
      intervals = false;
  }
  intervals = intervals && static_cast<int>(downs.size()) == m;

  // Matching the map itself against the class partition costs an eta per
  // biclosed set, so it only runs on small tables, as does everything cubic.
  std::optional<bool> fibers;
  if (t.size() <= 14) {
    fibers = true;
    for (StringMask s : sets) {
      auto it = rep_id.find(project_down(t, s));
      if (it == rep_id.end() || eta(b, t, s) != fg.facets[it->second])
        fibers = false;
    }
  }

  bool ok = section && quotient && intervals && fibers.value_or(true);
  if (o.want_text) {
    std::cout << "strings=" << t.size() << '\n'
              << "biclosed=" << sets.size() << '\n'
              << "facets=" << m << '\n'
              << "section_identity=" << (section ? "true" : "false") << '\n'
              << "classes_are_intervals=" << (intervals ? "true" : "false")
              << '\n'
              << "quotient_matches_flips=" << (quotient ? "true" : "false")
              << '\n';
    if (fibers)
      std::cout << "fibers_match=" << (*fibers ? "true" : "false") << '\n';
  } else {
    json j;
    j["strings"] = t.size();
    j["biclosed"] = sets.size();
    j["facets"] = m;
    j["section_identity"] = section;
    j["classes_are_intervals"] = intervals;
    j["quotient_matches_flips"] = quotient;
    j["fibers_match"] = fibers ? json(*fibers) : json();
    emit(j);
  }
  return ok ? 0 : 1;
}

int cmd_fan(const Options& o) {
  Quiver q = read_finite(o);
  Blossoming b = blossoming(q);
  FlipGraph fg = flip_graph(b, o.max_facets);
  FanReport r = check_fan(b, fg);

  std::map<IntVector, int> ray_id;
  for (const Word& w : bending_complex_walks(b))
    ray_id.emplace(g_vector_walk(b, w), 0);
  int next = 0;
  for (auto& [ray, id] : ray_id) id = next++;
  std::vector<std::vector<int>> cones;
  for (const Facet& f : fg.facets) {
    std::vector<int> cone;
    for (const Word& w : f)
      if (!is_straight(w)) cone.push_back(ray_id.at(g_vector_walk(b, w)));
    std::sort(cone.begin(), cone.end());
    cones.push_back(std::move(cone));
  }

  const std::vector<std::pair<const char*, bool>> flags = {
      {"peak_identity", r.peak_identity},
      {"unimodular", r.unimodular},
      {"dual_bases", r.dual_bases},
      {"sign_coherent", r.sign_coherent},
      {"flip_dependence", r.flip_dependence},
      {"unique_positive", r.unique_positive},
      {"disjoint_interiors", r.disjoint_interiors}};
  if (o.want_text) {
    std::cout << "rays=" << ray_id.size() << '\n'
              << "cones=" << cones.size() << '\n';
    for (const auto& [name, value] : flags)
      std::cout << name << '=' << (value ? "true" : "false") << '\n';
    std::cout << "ok=" << (r.ok() ? "true" : "false") << '\n';
  } else {
    json j;
    json rays = json::array();
    rays.get_ref<json::array_t&>().resize(ray_id.size());
    for (const auto& [ray, id] : ray_id) rays[id] = ray;
    j["rays"] = rays;
    j["cones"] = cones;
    json checks;
    for (const auto& [name, value] : flags) checks[name] = value;
    checks["ok"] = r.ok();
    j["checks"] = checks;
    emit(j);
  }
  return r.ok() ? 0 : 1;
}

int cmd_polytope(const Options& o) {
  Quiver q = read_finite(o);
  Blossoming b = blossoming(q);
  PolytopeDescription poly = associahedron(b, o.max_facets);
  bool tight = true;
  for (const auto& [f, x] : poly.vertices)
    for (const auto& [w, h] : poly.halfspaces) {
      long long lhs = dot(h.normal, x);
      bool member = std::binary_search(f.begin(), f.end(), w, word_less);
      if (member ? lhs != h.rhs : lhs >= h.rhs) tight = false;
    }
  if (o.want_text) {
    std::cout << "dim=" << poly.dim << '\n';
    for (const auto& [f, x] : poly.vertices) {
      std::cout << "vertex";
      for (long long v : x) std::cout << ' ' << v;
      std::cout << '\n';
    }
    for (const auto& [w, h] : poly.halfspaces) {
      std::cout << "inequality";
      for (long long v : h.normal) std::cout << ' ' << v;
      std::cout << " <= " << h.rhs << "  # " << format_word(b.q, w) << '\n';
    }
  } else {
    json j;
    j["dim"] = poly.dim;
    json vs = json::array();
    for (const auto& [f, x] : poly.vertices) vs.push_back(x);
    j["vertices"] = vs;
    json ineqs = json::array();
    for (const auto& [w, h] : poly.halfspaces) {
      json e;
      e["normal"] = h.normal;
      e["rhs"] = h.rhs;
      e["walk"] = format_word(b.q, w);
      ineqs.push_back(e);
    }
    j["inequalities"] = ineqs;
    emit(j);
  }
  if (!tight)
    std::cerr << "error: an inequality fails to be tight exactly on the "
                 "facets containing its walk\n";
  return tight ? 0 : 1;
}

int cmd_zonotope(const Options& o) {
  Quiver q = read_finite(o);
  Blossoming b = blossoming(q);
  StringTable t = string_table(q);
  Zonotope z = zonotope(b, t);
  if (!o.support.empty()) {
    IntVector y = parse_direction(o.support, q.num_vertices());
    long long h = zonotope_support(z, y);
    if (o.want_text) {
      std::cout << "support=" << h << '\n';
    } else {
      json j;
      j["direction"] = y;
      j["support"] = h;
      emit(j);
    }
    return 0;
  }
  ZonotopeCheck zc = zonotope_facet_check(b, t);
  if (o.want_text) {
    for (std::size_t i = 0; i < z.generators.size(); ++i) {
      std::cout << "generator";
      for (long long v : z.m[i]) std::cout << ' ' << v;
      std::cout << "  # " << format_word(q, z.generators[i]) << '\n';
    }
    std::cout << "applicable=" << (zc.applicable ? "true" : "false") << '\n'
              << "tight=" << (zc.tight ? "true" : "false") << '\n';
  } else {
    json j;
    json gens = json::array();
    for (std::size_t i = 0; i < z.generators.size(); ++i) {
      json e;
      e["string"] = format_word(q, z.generators[i]);
      e["multiplicity"] = z.m[i];
      gens.push_back(e);
    }
    j["generators"] = gens;
    j["applicable"] = zc.applicable;
    j["tight"] = zc.tight;
    json cut = json::array(), loose = json::array();
    for (const Word& w : zc.cutting) cut.push_back(format_word(b.q, w));
    for (const Word& w : zc.loose) loose.push_back(format_word(b.q, w));
    j["cutting"] = cut;
    j["loose"] = loose;
    emit(j);
  }
  return zc.applicable && !zc.tight ? 1 : 0;
}

int cmd_blind(const Options& o) {
  Quiver q = read_gentle(o);
  std::vector<int> ids;
  for (const std::string& name : o.fold) {
    int v = q.vertex_id(name);
    if (v < 0) throw usage_failure("unknown vertex '" + name + "'");
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (static_cast<int>(ids.size()) == q.num_vertices())
    throw usage_failure("cannot blind every vertex");
  std::cout << format_quiver(blind(q, ids));
  return 0;
}

int cmd_check_all(const Options& o) {
  Quiver q = read_quiver(o.file);
  bool all_ok = true;
  auto report = [&](const std::string& label, bool pass) {
    std::cout << (pass ? "ok " : "FAIL ") << label << '\n';
    all_ok = all_ok && pass;
  };
  auto skip = [](const std::string& label, const std::string& why) {
    std::cout << "skip " << label << " (" << why << ")\n";
  };

  report("gentle", validate_gentle(q).empty());
  if (!all_ok) return 1;
  report("finite type", is_nk_finite(q));
  if (!all_ok) return 1;

  Blossoming b = blossoming(q);
  int n = q.num_vertices(), m = q.num_arrows();
  report("blossom counts",
         b.q.num_vertices() == 5 * n - 2 * m && b.q.num_arrows() == 4 * n - m);

  auto walks = enumerate_walks(b);
  auto aps = almost_positive_strings(q, o.max_strings);
  std::vector<Word> completions;
  for (const auto& s : aps) completions.push_back(string_to_walk(b, s));
  {
    std::set<Word> bendings, image;
    bool good = true;
    for (const Word& w : walks)
      if (!is_straight(w)) bendings.insert(w);
    for (std::size_t i = 0; i < aps.size(); ++i) {
      good = good && image.insert(completions[i]).second;
      good = good && walk_to_string(b, completions[i]) == aps[i];
    }
    for (int v = 0; v < n; ++v)
      good = good && string_to_walk(b, negative_vertex(v)) == deep_walk(b, v);
    report("strings correspond to bending walks", good && image == bendings);
  }

  auto facets = enumerate_facets(b, o.max_facets);
  report("flip traversal matches clique enumeration",
         facets == facets_by_cliques(b));

  std::map<Facet, int> fid;
  for (int i = 0; i < static_cast<int>(facets.size()); ++i) fid[facets[i]] = i;
  {
    bool good = true;
    std::map<Facet, int> ridge_count;
    std::size_t straights = straight_walks(b).size();
    for (const Facet& f : facets) {
      int bend = 0;
      for (const Word& w : f) {
        if (is_straight(w)) continue;
        ++bend;
        Facet ridge;
        for (const Word& u : f)
          if (u != w) ridge.push_back(u);
        ++ridge_count[ridge];
        Facet g = flip(b, f, w);
        good = good && fid.count(g) > 0;
        good = good && flip(b, g, flip_replacement(b, f, w)) == f;
      }
      good = good && bend == n && f.size() == straights + bend;
    }
    for (const auto& [ridge, count] : ridge_count) good = good && count == 2;
    report("facets are pure and flips involutive", good);
  }

  {
    bool good = true;
    for (const Facet& f : facets) {
      int total = 0;
      for (const Word& w : f) {
        auto marks = distinguished_marks(b, f, w);
        total += static_cast<int>(marks.size());
        if (is_straight(w)) {
          good = good && marks.size() == 1;
        } else {
          good = good && marks.size() == 2 &&
                 w.ls[marks[0].first].rev != w.ls[marks[1].first].rev;
        }
      }
      good = good && total == b.q.num_arrows();
    }
    report("each facet marked once per arrow", good);
  }

  {
    bool good = true;
    for (std::size_t i = 0; i < aps.size(); ++i)
      for (std::size_t j = 0; j < aps.size(); ++j)
        good = good && tau_compatible(q, aps[i], aps[j]) ==
                           compatible_walks(b.q, completions[i], completions[j]);
    report("tau compatibility matches non-kissing", good);
  }

  {
    bool good = true;
    for (std::size_t i = 0; i < aps.size(); ++i)
      good = good &&
             g_vector_string(q, aps[i]) == g_vector_walk(b, completions[i]);
    report("string and walk g-vectors agree", good);
  }

  FlipGraph fg = flip_graph(b, o.max_facets);
  report("fan checks", check_fan(b, fg).ok());

  {
    auto pool = bending_complex_walks(b);
    std::vector<FacetFrame> frames;
    for (const Facet& f : fg.facets) frames.push_back(facet_frame(b, pool, f));
    std::map<Word, long long> kn;
    for (const Word& w : pool) kn[w] = kissing_number(b.q, pool, w);
    bool good = true;
    for (const FacetFrame& fr : frames)
      for (const Word& w : pool) {
        long long lhs = dot(g_vector_walk(b, w), fr.x);
        bool member = std::binary_search(fr.facet.begin(), fr.facet.end(), w,
                                         word_less);
        good = good && (member ? lhs == kn[w] : lhs < kn[w]);
      }
    for (int i = 0; i < static_cast<int>(fg.facets.size()); ++i)
      for (std::size_t k = 0; k < frames[i].bendings.size(); ++k) {
        const Word& w = frames[i].bendings[k];
        if (!distinguished_string(b, fg.facets[i], w).on_top) continue;
        int j = fid.at(flip(b, fg.facets[i], w));
        const IntVector& c = frames[i].c[k];
        IntVector dx(n);
        long long drop = 0;
        for (int v = 0; v < n; ++v) {
          dx[v] = frames[j].x[v] - frames[i].x[v];
          drop += dx[v];
        }
        long long step = 0;
        for (int v = 0; v < n; ++v)
          if (c[v] != 0) {
            step = dx[v] / c[v];
            break;
          }
        good = good && step <= -2 && drop < 0;
        for (int v = 0; v < n; ++v) good = good && dx[v] == step * c[v];
      }
    report("vertices support the walk inequalities tightly", good);
  }

  std::optional<StringTable> table;
  try {
    table = string_table(q);
  } catch (const limit_error&) {
  }
  if (!table) {
    skip("biclosed classes collapse onto facets", "more than 64 strings");
    skip("zonotope support meets kissing numbers", "more than 64 strings");
  } else {
    const StringTable& t = *table;
    bool good = true;
    std::vector<StringMask> reps;
    std::set<StringMask> repset;
    for (const Facet& f : fg.facets) {
      StringMask s = zeta(b, t, f);
      reps.push_back(s);
      repset.insert(s);
      good = good && eta(b, t, s) == f;
    }
    good = good && repset.size() == fg.facets.size();
    good = good && mask_covers(reps) == increasing_edges(fg);
    if (t.size() <= 14) {
      std::map<StringMask, int> rep_id;
      for (int i = 0; i < static_cast<int>(reps.size()); ++i)
        rep_id[reps[i]] = i;
      for (StringMask s : enumerate_biclosed(t, o.max_biclosed)) {
        StringMask lo = project_down(t, s), hi = project_up(t, s);
        auto it = rep_id.find(lo);
        good = good && it != rep_id.end() && !(lo & ~s) && !(s & ~hi) &&
               project_up(t, lo) == hi;
        good = good && it != rep_id.end() &&
               eta(b, t, s) == fg.facets[it->second];
      }
    }
    report("biclosed classes collapse onto facets", good);

    ZonotopeCheck zc = zonotope_facet_check(b, t);
    report("zonotope support meets kissing numbers",
           !zc.applicable || zc.tight);
  }

  {
    bool good = true;
    for (const Word& c : enumerate_strings(q, o.max_strings))
      for (const Word& s : {c, inverse(q, c)}) {
        Word w = walk_completion(b, s);
        std::optional<Word> next;
        if (!starts_in_deep(q, s))
          next = cohook_start_add(q, s);
        else
          next = hook_start_remove(q, s);
        if (!next) continue;
        auto stripped = hook_start_remove(b.q, w);
        good = good && bool(stripped);
        if (!stripped) continue;
        Word lhs = walk_completion(b, *next);
        Word rhs = cohook_start_add(b.q, *stripped);
        good = good && canonical(b.q, lhs) == canonical(b.q, rhs);
        if (!next->empty()) good = good && lhs == rhs;
      }
    report("elementary moves commute with completion", good);
  }

  if (n < 2) {
    skip("blinding single vertices", "needs at least two vertices");
  } else {
    bool good = true;
    for (int v = 0; v < n; ++v) good = good && project_check(q, {v}).ok();
    report("blinding single vertices", good);
  }

  return all_ok ? 0 : 1;
}

}  // namespace

int run_cli(int argc, char** argv) {
  Options o;
  CLI::App app{
      "strings, walks and the non-kissing complex of a gentle bound quiver"};
  app.require_subcommand(1);

  struct Command {
    CLI::App* sub;
    int (*fn)(const Options&);
  };
  std::vector<Command> commands;

  auto add = [&](const char* name, const char* help,
                 int (*fn)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", o.file, "quiver description file")->required();
    commands.push_back({sub, fn});
    return sub;
  };
  auto caps = [&](CLI::App* sub) {
    sub->add_option("--max-strings", o.max_strings,
                    "bail out beyond this many strings")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-facets", o.max_facets,
                    "bail out beyond this many facets")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-biclosed", o.max_biclosed,
                    "bail out beyond this many biclosed sets")
        ->check(CLI::PositiveNumber);
    sub->add_option("--jobs", o.jobs, "worker threads inside library modules")
        ->check(CLI::PositiveNumber);
    return sub;
  };
  auto text = [&](CLI::App* sub) {
    sub->add_flag("--text", o.want_text, "plain text instead of JSON");
    return sub;
  };

  text(add("validate", "report whether the file is a gentle bound quiver",
           cmd_validate));
  caps(add("info", "one line of counts for a gentle bound quiver", cmd_info))
      ->add_flag("--json", o.want_json, "JSON instead of the count line");
  text(caps(add("strings", "list all strings", cmd_strings)));
  text(caps(add("walks", "list all walks of the blossoming", cmd_walks)));
  CLI::App* complex_cmd = text(caps(
      add("complex", "facets of the non-kissing complex", cmd_complex)));
  complex_cmd->add_flag("--count", o.count_only, "print only the facet count");
  CLI::App* flips = text(caps(add(
      "flip-graph", "facets and increasing flips between them", cmd_flip_graph)));
  flips->add_flag("--dot", o.want_dot, "graphviz digraph");
  text(caps(add("tau", "compatibility of almost positive strings", cmd_tau)));
  text(caps(add("lattice", "biclosed sets and the flip quotient", cmd_lattice)));
  text(caps(add("fan", "rays and cones of the g-vector fan", cmd_fan)));
  text(caps(add("polytope", "vertex and inequality descriptions", cmd_polytope)));
  CLI::App* zono = text(caps(
      add("zonotope", "multiplicity generators and support", cmd_zonotope)));
  zono->add_option("--support", o.support,
                   "comma separated direction; print its support value");
  add("blind", "contract a vertex subset and print the quiver", cmd_blind)
      ->add_option("--fold", o.fold, "comma separated vertex names")
      ->required()
      ->delimiter(',');
  caps(add("check-all", "run every cross-module verification", cmd_check_all));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (const Command& c : commands)
      if (c.sub->parsed()) return c.fn(o);
    return 2;
  } catch (const usage_failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const parse_error& e) {
    std::cerr << "error: " << o.file << ": " << e.what() << '\n';
    return 2;
  } catch (const check_failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const limit_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace nk
