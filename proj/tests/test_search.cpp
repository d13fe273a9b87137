#include <doctest.h>

#include "tforge/search.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

using namespace tforge;
using nlohmann::json;

namespace {

const QRoot3 kSqrt3 = QRoot3::sqrt3();

TileShape iso_tile() { return tile_from_sides(1, 1, kSqrt3); }
TileShape tile357() { return tile_from_sides(3, 5, 7); }

Point pt(const QRoot3& x, const QRoot3& y) { return {x, y}; }
Point mid(const Point& p, const Point& q) { return {(p.x + q.x) * QRoot3(Rational(1, 2)), (p.y + q.y) * QRoot3(Rational(1, 2))}; }

// Equilateral side sqrt3 split at its centroid.
Certificate three_tiling() {
  const TileShape t = iso_tile();
  const TriangleSpec tri = make_equilateral(t, kSqrt3);
  const Point& A = tri.vertices[0];
  const Point& B = tri.vertices[1];
  const Point& C = tri.vertices[2];
  const Point O = pt(kSqrt3 * QRoot3(Rational(1, 2)), QRoot3(Rational(1, 2)));
  return {t, tri, true, {{{B, C, O}, false}, {{C, A, O}, false}, {{A, B, O}, false}}};
}

// Midpoint subdivision of (6,10,14).  That target is laid out with the
// opposite handedness to the tile, so all four copies are mirrored.
Certificate four_tiling() {
  const TileShape t = tile357();
  const TriangleSpec tri = make_triangle(t, 6, 10, 14);
  const Point& A = tri.vertices[0];
  const Point& B = tri.vertices[1];
  const Point& C = tri.vertices[2];
  const Point ab = mid(A, B), bc = mid(B, C), ca = mid(C, A);
  return {t, tri, true, {{{A, ab, ca}, true}, {{ab, B, bc}, true}, {{ca, bc, C}, true}, {{ab, bc, ca}, true}}};
}

Point vertex_of(const Region& r, std::size_t i) { return r.boundary[i]; }

// Number of complete tilings reachable by corner filling.
long count_tilings(std::vector<Region> pending, const TilingContext& ctx, long& nodes) {
  if (pending.empty()) return 1;
  const Region r = pending.back();
  pending.pop_back();
  long total = 0;
  for (const auto& e : expand_corner(r, choose_corner(r), ctx)) {
    ++nodes;
    auto next = pending;
    for (auto it = e.components.rbegin(); it != e.components.rend(); ++it) next.push_back(*it);
    total += count_tilings(next, ctx, nodes);
  }
  return total;
}

long count_all(const TileShape& t, const TriangleSpec& tri, bool allow_mirror, bool prune) {
  long nodes = 0;
  if (allow_mirror) return count_tilings({region_from_target(tri)}, TilingContext(t, tri.X, Chirality::Any, prune), nodes);
  long total = count_tilings({region_from_target(tri)}, TilingContext(t, tri.X, Chirality::Direct, prune), nodes);
  if (!t.is_isosceles())
    total += count_tilings({region_from_target(tri)}, TilingContext(t, tri.X, Chirality::Mirrored, prune), nodes);
  return total;
}

std::array<Vec2, 3> unit_dirs(const Placement& p, const std::vector<long>& lengths) {
  std::array<Vec2, 3> d;
  for (std::size_t k = 0; k < 3; ++k) {
    const Vec2 v = p.v[(k + 1) % 3] - p.v[k];
    for (long L : lengths)
      if (norm2(v) == QRoot3(L * L)) d[k] = QRoot3(Rational(1, L)) * v;
  }
  return d;
}

// Side lengths of the placement at the vertex equal to `at`.
std::pair<QRoot3, QRoot3> sides_at(const Placement& p, const Point& at) {
  for (std::size_t k = 0; k < 3; ++k)
    if (p.v[k] == at) return {norm2(p.v[(k + 1) % 3] - at), norm2(p.v[(k + 2) % 3] - at)};
  FAIL("vertex not on placement");
  return {};
}

std::vector<std::string> violation_strings(const CheckReport& rep) {
  std::vector<std::string> out;
  for (const auto& v : rep.violations) out.push_back(v.to_string());
  return out;
}

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

bool has_kind(const CheckReport& rep, const std::string& kind) {
  return std::any_of(rep.violations.begin(), rep.violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

SearchConfig quiet() {
  SearchConfig c;
  c.workers = 1;
  return c;
}

}  // namespace

TEST_CASE("region from polygon keeps exact directions") {
  const Region r = region_from_polygon({pt(0, 0), pt(4, 0), pt(2, QRoot3(2) * kSqrt3)});
  REQUIRE(r.size() == 3);
  CHECK(r.twice_area() == QRoot3(8) * kSqrt3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(norm2(r.dirs[i]) == QRoot3(1));
    CHECK(r.angle_dir(i) == Vec2{QRoot3(Rational(1, 2)), kSqrt3 * QRoot3(Rational(1, 2))});
  }
  CHECK_THROWS_AS(region_from_polygon({pt(0, 0), pt(1, 0)}), std::invalid_argument);
}

TEST_CASE("candidate placements") {
  const TileShape t = tile357();

  SUBCASE("corner angle equal to alpha admits both edge assignments") {
    const Region r = region_from_target(make_triangle(t, 6, 10, 14));
    const std::size_t corner = choose_corner(r);
    const auto with = candidate_placements(r, corner, t, true);
    const auto without = candidate_placements(r, corner, t, false);
    REQUIRE(with.size() == 2);
    CHECK(with[0].mirrored != with[1].mirrored);
    REQUIRE(without.size() == 1);
    CHECK_FALSE(without[0].mirrored);
    for (const auto& p : with) {
      // The alpha vertex sits between the b and c edges.
      const auto [s1, s2] = sides_at(p, vertex_of(r, corner));
      CHECK(std::minmax(s1, s2) == std::minmax(QRoot3(25), QRoot3(49)));
    }
  }

  SUBCASE("sixty degree corner fills with alpha first or beta first") {
    const Region r = region_from_target(make_equilateral(t, 15));
    const std::size_t corner = choose_corner(r);
    bool alpha_first = false, beta_first = false;
    for (const auto& p : candidate_placements(r, corner, t, true)) {
      const auto [s1, s2] = sides_at(p, vertex_of(r, corner));
      const auto mm = std::minmax(s1, s2);
      if (mm == std::minmax(QRoot3(25), QRoot3(49))) alpha_first = true;
      if (mm == std::minmax(QRoot3(9), QRoot3(49))) beta_first = true;
      CHECK(mm != std::minmax(QRoot3(9), QRoot3(25)));  // gamma does not fit
    }
    CHECK(alpha_first);
    CHECK(beta_first);
  }

  SUBCASE("edge of length 4 leaves an unrepresentable remainder") {
    const Region r = region_from_polygon({pt(0, 0), pt(4, 0), pt(2, QRoot3(2) * kSqrt3)});
    CHECK(candidate_placements(r, choose_corner(r), t, true).empty());
  }
}

TEST_CASE("tiling context representability") {
  const TileShape t = tile357();
  const TilingContext ctx(t, 20, Chirality::Any);
  for (long L = 1; L <= 20; ++L) {
    bool brute = false;
    for (long i = 0; 3 * i <= L; ++i)
      for (long j = 0; 3 * i + 5 * j <= L; ++j)
        if ((L - 3 * i - 5 * j) % 7 == 0) brute = true;
    CHECK_MESSAGE(ctx.length_representable(L) == brute, "L = " << L);
  }
  CHECK(ctx.tile_count(QRoot3(0, Rational(15, 2))) == 1L);
  CHECK(ctx.tile_count(QRoot3(0, 30)) == 4L);
  CHECK_FALSE(ctx.tile_count(QRoot3(0, 1)).has_value());
}

TEST_CASE("subtract triangle") {
  const Certificate four = four_tiling();
  const auto& v = four.target.vertices;
  const Point ab = mid(v[0], v[1]), bc = mid(v[1], v[2]), ca = mid(v[2], v[0]);

  SUBCASE("corner triangle leaves a trapezoid") {
    const Region whole = region_from_target(four.target);
    const auto comps = subtract_triangle(whole, four.placements[0], unit_dirs(four.placements[0], {3, 5, 7}));
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].size() == 4);
    CHECK(comps[0].twice_area() == QRoot3(3) * QRoot3(2) * four.tile.area);
  }

  SUBCASE("middle triangle pinches the trapezoid into two pieces") {
    const Region trap = region_from_polygon({v[1], v[2], ca, ab});
    const auto comps = subtract_triangle(trap, four.placements[3], unit_dirs(four.placements[3], {3, 5, 7}));
    REQUIRE(comps.size() == 2);
    for (const auto& c : comps) {
      CHECK(c.size() == 3);
      CHECK(c.twice_area() == QRoot3(2) * four.tile.area);
      CHECK(std::find(c.boundary.begin(), c.boundary.end(), bc) != c.boundary.end());
    }
  }
}

TEST_CASE("checker accepts constructed tilings") {
  for (const Certificate& c : {three_tiling(), four_tiling()}) {
    const auto rep = check_certificate(c);
    CHECK_MESSAGE(rep.valid(), (rep.valid() ? "" : rep.violations[0].to_string()));
    CHECK(rep.warnings.empty());
    CHECK(extract_edge_relations(c).empty());
  }
}

TEST_CASE("checker rejects tampered certificates") {
  SUBCASE("translated tile") {
    Certificate c = three_tiling();
    for (auto& p : c.placements[0].v) p = p + Vec2{QRoot3(Rational(1, 100)), QRoot3(0)};
    const auto rep = check_certificate(c);
    CHECK(has_kind(rep, "Overlap"));
    CHECK(has_kind(rep, "OutsideTarget"));
    CHECK(has(violation_strings(rep), "OutsideTarget(0)"));
  }
  SUBCASE("overlapping copy") {
    Certificate c = three_tiling();
    c.placements[2] = c.placements[0];
    CHECK(has(violation_strings(check_certificate(c)), "Overlap(0,2)"));
  }
  SUBCASE("wrong tile") {
    Certificate c = four_tiling();
    c.placements[0].v[2] = c.placements[0].v[2] + Vec2{QRoot3(Rational(1, 2)), QRoot3(0)};
    CHECK(has(violation_strings(check_certificate(c)), "Noncongruent(0)"));
    const TileShape fake{3, 5, 6, 0, 0, tile357().area};
    Certificate d = four_tiling();
    d.tile = fake;
    const auto rep = check_certificate(d);
    CHECK(has_kind(rep, "Noncongruent"));
  }
  SUBCASE("mirror flag and chirality") {
    Certificate c = four_tiling();
    c.placements[1].mirrored = false;
    CHECK(has(violation_strings(check_certificate(c)), "MirrorFlag(1)"));
    Certificate d = four_tiling();
    d.allow_mirror = false;
    CHECK(check_certificate(d).valid());
  }
  SUBCASE("missing tile") {
    Certificate c = three_tiling();
    c.placements.pop_back();
    CHECK(has(violation_strings(check_certificate(c)), "AreaMismatch"));
    c.placements.clear();
    CHECK(has(violation_strings(check_certificate(c)), "EmptyCertificate"));
  }
  SUBCASE("clockwise vertices") {
    Certificate c = three_tiling();
    std::swap(c.placements[1].v[0], c.placements[1].v[1]);
    CHECK(has(violation_strings(check_certificate(c)), "Orientation(1)"));
  }
}

TEST_CASE("edge relation from two strips") {
  // Five b edges above the line y = 2 face three a edges and two c edges below.
  const TileShape t = tile357();
  Certificate c{t, make_equilateral(t, 15), true, {}};
  auto above = [&](const QRoot3& x0, long len) {
    c.placements.push_back({{pt(x0, 2), pt(x0 + QRoot3(len), 2), pt(x0, 3)}, false});
  };
  auto below = [&](const QRoot3& x0, long len) {
    c.placements.push_back({{pt(x0, 2), pt(x0, 1), pt(x0 + QRoot3(len), 2)}, false});
  };
  for (long k = 0; k < 5; ++k) above(QRoot3(100 + 5 * k), 5);
  QRoot3 x = 100;
  for (long len : {3L, 3L, 3L, 7L, 7L}) {
    below(x, len);
    x += QRoot3(len);
  }
  const auto rels = extract_edge_relations(c);
  CHECK(std::find(rels.begin(), rels.end(), EdgeRelation{EdgeRelation::Kind::BSide, 5, 3, 2}) != rels.end());
}

TEST_CASE("search positive controls") {
  struct Control {
    TileShape tile;
    TriangleSpec target;
    std::size_t n;
  };
  const TileShape iso = iso_tile();
  const TileShape t = tile357();
  for (const auto& ctl : {Control{iso, make_equilateral(iso, kSqrt3), 3}, Control{t, make_triangle(t, 6, 10, 14), 4},
                          Control{iso, make_equilateral(iso, QRoot3(2) * kSqrt3), 12},
                          Control{t, make_triangle(t, 9, 15, 21), 9}}) {
    const auto res = search(ctl.tile, ctl.target, quiet());
    REQUIRE(res.outcome == SearchOutcome::Found);
    REQUIRE(res.certificate);
    CHECK(res.certificate->N() == ctl.n);
    CHECK(check_certificate(*res.certificate).valid());
    CHECK_FALSE(res.conditional);
  }
}

TEST_CASE("search without mirror images keeps one handedness") {
  const TileShape t = tile357();
  SearchConfig cfg = quiet();
  cfg.allow_mirror = false;
  const auto res = search(t, make_triangle(t, 6, 10, 14), cfg);
  REQUIRE(res.outcome == SearchOutcome::Found);
  const auto& pl = res.certificate->placements;
  CHECK(std::all_of(pl.begin(), pl.end(), [&](const Placement& p) { return p.mirrored == pl[0].mirrored; }));
  CHECK(check_certificate(*res.certificate).valid());
}

TEST_CASE("search rejects non-integer tile counts") {
  const TileShape t = tile357();
  CHECK_THROWS_AS(search(t, make_equilateral(t, 14), quiet()), std::invalid_argument);
  SearchConfig bad = quiet();
  bad.workers = 0;
  CHECK_THROWS_AS(search(t, make_equilateral(t, 15), bad), std::invalid_argument);
}

TEST_CASE("pruning does not change tiling counts") {
  struct Case {
    TileShape tile;
    TriangleSpec target;
    bool mirror;
    long expected;
  };
  const TileShape iso = iso_tile();
  const TileShape t = tile357();
  const std::vector<Case> cases{
      {iso, make_equilateral(iso, kSqrt3), true, 1},
      {iso, make_equilateral(iso, 3), true, 0},
      {iso, make_equilateral(iso, QRoot3(2) * kSqrt3), true, 2},
      {iso, make_triangle(iso, 2, 2, QRoot3(2) * kSqrt3), true, 1},
      {iso, make_triangle(iso, kSqrt3, kSqrt3, 3), true, 0},
      {t, make_triangle(t, 6, 10, 14), true, 1},
      {t, make_triangle(t, 6, 10, 14), false, 1},
      {t, make_triangle(t, 9, 15, 21), true, 1},
  };
  for (const auto& c : cases) {
    const long pruned = count_all(c.tile, c.target, c.mirror, true);
    const long plain = count_all(c.tile, c.target, c.mirror, false);
    CHECK(pruned == plain);
    CHECK(pruned == c.expected);
    SearchConfig cfg = quiet();
    cfg.allow_mirror = c.mirror;
    const auto res = search(c.tile, c.target, cfg);
    CHECK((res.outcome == SearchOutcome::Found) == (c.expected > 0));
  }
}

TEST_CASE("equilateral 15 by (3,5,7) is exhausted without paper lemmas" * doctest::timeout(120)) {
  const TileShape t = tile357();
  const TriangleSpec tri = make_equilateral(t, 15);
  CHECK(count_all(t, tri, true, false) == 0);
  const auto res = search(t, tri, quiet());
  CHECK(res.outcome == SearchOutcome::ExhaustedNone);
  CHECK_FALSE(res.conditional);
}

TEST_CASE("paper pruning labels exhaustion as conditional") {
  const TileShape t = tile357();
  SearchConfig cfg = quiet();
  cfg.paper_pruning = true;
  const auto res = search(t, make_equilateral(t, 15), cfg);
  REQUIRE(res.outcome == SearchOutcome::ExhaustedNone);
  CHECK(res.conditional);
  CHECK(std::find(res.notes.begin(), res.notes.end(), "conditional on paper lemmas") != res.notes.end());
}

TEST_CASE("search is deterministic across worker counts") {
  const TileShape t = tile357();
  const TileShape iso = iso_tile();
  for (const auto& [tile, tri] : {std::pair{t, make_equilateral(t, 15)},
                                  std::pair{iso, make_equilateral(iso, QRoot3(2) * kSqrt3)}}) {
    std::optional<SearchResult> first;
    for (int w : {1, 2, 3}) {
      SearchConfig cfg = quiet();
      cfg.workers = w;
      const auto res = search(tile, tri, cfg);
      if (!first) {
        first = res;
        continue;
      }
      CHECK(res.outcome == first->outcome);
      CHECK(res.stats.nodes == first->stats.nodes);
      CHECK(res.stats.tasks == first->stats.tasks);
      if (res.certificate) CHECK(res.certificate->placements == first->certificate->placements);
    }
  }
}

TEST_CASE("budget, checkpoint and resume") {
  const TileShape t = tile357();
  const TriangleSpec tri = make_equilateral(t, 15);
  const auto full = search(t, tri, quiet());
  REQUIRE(full.outcome == SearchOutcome::ExhaustedNone);

  for (std::uint64_t budget : {1ULL, 40ULL, 150ULL}) {
    SearchConfig cfg = quiet();
    cfg.node_budget = budget;
    auto res = search(t, tri, cfg);
    REQUIRE(res.outcome == SearchOutcome::BudgetExceeded);
    REQUIRE(res.checkpoint);
    CHECK(res.stats.nodes <= std::max<std::uint64_t>(budget, cfg.partition_depth));
    // A few rounds at the small budget, each of which must make progress.
    for (int round = 0; round < 5 && res.outcome == SearchOutcome::BudgetExceeded; ++round) {
      const auto before = res.stats.nodes_total;
      cfg.resume = json::parse(res.checkpoint->dump());
      CHECK(cfg.resume->at("schema") == "v1");
      res = search(t, tri, cfg);
      CHECK(res.stats.nodes_total > before);
    }
    cfg.node_budget = 60;
    int rounds = 0;
    while (res.outcome == SearchOutcome::BudgetExceeded && rounds++ < 100) {
      // Round trip through text, as a checkpoint file would.
      cfg.resume = json::parse(res.checkpoint->dump());
      res = search(t, tri, cfg);
    }
    CHECK(res.outcome == SearchOutcome::ExhaustedNone);
    // Memo tables restart empty on resume, so the total can only grow.
    CHECK(res.stats.nodes_total >= full.stats.nodes);
  }
}

TEST_CASE("checkpoint of another configuration is rejected") {
  const TileShape t = tile357();
  const TriangleSpec tri = make_equilateral(t, 15);
  SearchConfig cfg = quiet();
  cfg.node_budget = 10;
  const auto res = search(t, tri, cfg);
  REQUIRE(res.checkpoint);
  SearchConfig other = quiet();
  other.resume = *res.checkpoint;
  other.allow_mirror = false;
  CHECK_THROWS_AS(search(t, tri, other), std::invalid_argument);
  other = quiet();
  other.resume = json{{"schema", "v0"}};
  CHECK_THROWS_AS(search(t, tri, other), std::invalid_argument);
}

TEST_CASE("checkpoint file is written") {
  const TileShape t = tile357();
  const auto path = std::filesystem::temp_directory_path() / "tforge_test_checkpoint.json";
  std::filesystem::remove(path);
  SearchConfig cfg = quiet();
  cfg.node_budget = 50;
  cfg.checkpoint_path = path;
  const auto res = search(t, make_equilateral(t, 15), cfg);
  REQUIRE(res.outcome == SearchOutcome::BudgetExceeded);
  std::ifstream in(path);
  REQUIRE(in);
  CHECK(json::parse(in) == *res.checkpoint);
  std::filesystem::remove(path);
}

TEST_CASE("resume across the handedness phases") {
  const TileShape t = tile357();
  const TriangleSpec tri = make_triangle(t, 6, 10, 14);
  SearchConfig cfg = quiet();
  cfg.allow_mirror = false;
  const auto full = search(t, tri, cfg);
  REQUIRE(full.outcome == SearchOutcome::Found);
  for (std::uint64_t budget = 1; budget < full.stats.nodes; ++budget) {
    SearchConfig c = cfg;
    c.node_budget = budget;
    auto res = search(t, tri, c);
    int rounds = 0;
    while (res.outcome == SearchOutcome::BudgetExceeded && rounds++ < 100) {
      c.resume = *res.checkpoint;
      res = search(t, tri, c);
    }
    REQUIRE(res.outcome == SearchOutcome::Found);
    CHECK(res.certificate->placements == full.certificate->placements);
    CHECK(res.stats.nodes_total >= full.stats.nodes);
  }
}

TEST_CASE("area is conserved at every node") {
  const TileShape t = tile357();
  const TileShape iso = iso_tile();
  SearchConfig cfg = quiet();
  cfg.verify_invariants = true;
  CHECK_NOTHROW(search(iso, make_equilateral(iso, QRoot3(2) * kSqrt3), cfg));
  CHECK_NOTHROW(search(t, make_equilateral(t, 15), cfg));
}

TEST_CASE("certificate json round trip") {
  for (const Certificate& c : {three_tiling(), four_tiling()}) {
    const json j = c;
    CHECK(j.at("schema") == "v1");
    CHECK(j.at("N") == c.N());
    const Certificate back = certificate_from_json(json::parse(j.dump()));
    CHECK(back.placements == c.placements);
    CHECK(back.allow_mirror == c.allow_mirror);
    CHECK(back.tile == c.tile);
    CHECK(json(back) == j);
  }
  json broken = three_tiling();
  broken.erase("placements");
  CHECK_THROWS(certificate_from_json(broken));
}

TEST_CASE("svg rendering") {
  const Certificate three = three_tiling();
  const std::string svg = render_svg(three);
  CHECK(svg == render_svg(three));
  auto polygons = [](const std::string& s) {
    std::size_t n = 0;
    for (std::size_t pos = s.find("<polygon"); pos != std::string::npos; pos = s.find("<polygon", pos + 1)) ++n;
    return n;
  };
  CHECK(polygons(svg) == 3);
  const TileShape iso = iso_tile();
  const auto res = search(iso, make_equilateral(iso, QRoot3(2) * kSqrt3), quiet());
  REQUIRE(res.certificate);
  CHECK(polygons(render_svg(*res.certificate)) == 12);
  const std::string four = render_svg(four_tiling());
  CHECK(four.find("#fdae6b") != std::string::npos);
  CHECK(four.find("#9ecae1") == std::string::npos);
  Certificate empty = three;
  empty.placements.clear();
  CHECK_THROWS_WITH_AS(render_svg(empty), "empty certificate", std::runtime_error);
}
