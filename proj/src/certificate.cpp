#include "tforge/search.hpp"

#include "tforge/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tforge {

using nlohmann::json;

std::string Violation::to_string() const {
  std::string s = kind;
  if (!indices.empty()) {
    s += "(";
    for (std::size_t i = 0; i < indices.size(); ++i) s += (i ? "," : "") + std::to_string(indices[i]);
    s += ")";
  }
  return s;
}

namespace {

std::array<QRoot3, 3> squared_sides(const Placement& p) {
  return {norm2(p.v[1] - p.v[0]), norm2(p.v[2] - p.v[1]), norm2(p.v[0] - p.v[2])};
}

bool is_rotation(const std::array<QRoot3, 3>& e, const std::array<QRoot3, 3>& ref) {
  for (std::size_t r = 0; r < 3; ++r)
    if (e[0] == ref[r] && e[1] == ref[(r + 1) % 3] && e[2] == ref[(r + 2) % 3]) return true;
  return false;
}

// Some edge line of p leaves all of q on its closed outer side.
bool separated_by_edge_of(const Placement& p, const Placement& q) {
  for (std::size_t k = 0; k < 3; ++k) {
    const Point& a = p.v[k];
    const Point& b = p.v[(k + 1) % 3];
    if (std::all_of(q.v.begin(), q.v.end(), [&](const Point& x) { return orient(a, b, x) <= 0; })) return true;
  }
  return false;
}

bool interiors_disjoint(const Placement& p, const Placement& q) {
  return separated_by_edge_of(p, q) || separated_by_edge_of(q, p);
}

}  // namespace

CheckReport check_certificate(const Certificate& cert) {
  CheckReport rep;
  const auto& pl = cert.placements;
  if (pl.empty()) {
    rep.violations.push_back({"EmptyCertificate", {}});
    return rep;
  }
  const TileShape& t = cert.tile;
  const std::array<QRoot3, 3> direct{t.c * t.c, t.a * t.a, t.b * t.b};
  const std::array<QRoot3, 3> mirror{t.c * t.c, t.b * t.b, t.a * t.a};
  std::vector<bool> proper(pl.size(), false);
  std::optional<std::size_t> some_direct_only, some_mirror_only;
  for (std::size_t i = 0; i < pl.size(); ++i) {
    if (twice_signed_area({pl[i].v.begin(), pl[i].v.end()}).sign() <= 0) {
      rep.violations.push_back({"Orientation", {i}});
      continue;
    }
    proper[i] = true;
    const auto e = squared_sides(pl[i]);
    const bool as_direct = is_rotation(e, direct);
    const bool as_mirror = is_rotation(e, mirror);
    if (!as_direct && !as_mirror) {
      rep.violations.push_back({"Noncongruent", {i}});
      continue;
    }
    if (pl[i].mirrored ? !as_mirror : !as_direct) rep.violations.push_back({"MirrorFlag", {i}});
    if (as_direct && !as_mirror && !some_direct_only) some_direct_only = i;
    if (as_mirror && !as_direct && !some_mirror_only) some_mirror_only = i;
  }
  if (!cert.allow_mirror && some_direct_only && some_mirror_only)
    rep.violations.push_back({"MixedChirality", {std::min(*some_direct_only, *some_mirror_only),
                                                 std::max(*some_direct_only, *some_mirror_only)}});
  const auto tv = cert.target.boundary();
  for (std::size_t i = 0; i < pl.size(); ++i) {
    bool inside = true;
    for (const auto& x : pl[i].v)
      for (std::size_t k = 0; k < 3 && inside; ++k) inside = orient(tv[k], tv[(k + 1) % 3], x) >= 0;
    if (!inside) rep.violations.push_back({"OutsideTarget", {i}});
  }
  for (std::size_t i = 0; i < pl.size(); ++i)
    for (std::size_t j = i + 1; j < pl.size(); ++j)
      if (proper[i] && proper[j] && !interiors_disjoint(pl[i], pl[j])) rep.violations.push_back({"Overlap", {i, j}});
  QRoot3 total = 0;
  for (const auto& p : pl) total += twice_signed_area({p.v.begin(), p.v.end()});
  const QRoot3 target2 = twice_signed_area(tv);
  if (total != target2 || QRoot3(static_cast<long>(pl.size())) * t.area * QRoot3(2) != target2)
    rep.violations.push_back({"AreaMismatch", {}});

  if (rep.valid() && !t.is_isosceles() && !similar_to_tile(cert.target) && extract_edge_relations(cert).empty())
    rep.warnings.push_back(
        "valid tiling by a scalene 120-degree tile not similar to the target realizes no edge relation; "
        "such tilings are known to give rise to one");
  return rep;
}

namespace {

struct LineEdge {
  QRoot3 start, end;  // parameters along the line direction, start < end
  int side;           // +1 tile on the left of the line direction
  int cls;            // 0 = a, 1 = b, 2 = c
};

struct LineKey {
  Vec2 dir;  // (1, y) or (0, 1)
  QRoot3 offset;
  friend auto operator<=>(const LineKey& a, const LineKey& b) {
    if (auto c = a.dir <=> b.dir; c != 0) return c;
    return a.offset <=> b.offset;
  }
  friend bool operator==(const LineKey&, const LineKey&) = default;
};

EdgeRelation relation_from_difference(const std::array<long, 3>& d) {
  // d[0] a + d[1] b + d[2] c = 0 with mixed signs.  Put the lone term on
  // the left, preferring b, then a, then c.
  auto lone_positive = [&](std::size_t k, int sgn) {
    if (sgn * d[k] <= 0) return false;
    for (std::size_t o = 0; o < 3; ++o)
      if (o != k && sgn * d[o] > 0) return false;
    return true;
  };
  for (std::size_t k : {std::size_t{1}, std::size_t{0}, std::size_t{2}})
    for (int sgn : {1, -1})
      if (lone_positive(k, sgn)) {
        const long j = sgn * d[k];
        auto mag = [&](std::size_t o) { return -sgn * d[o]; };
        EdgeRelation r{};
        if (k == 1) r = {EdgeRelation::Kind::BSide, j, mag(0), mag(2)};
        if (k == 0) r = {EdgeRelation::Kind::ASide, j, mag(1), mag(2)};
        if (k == 2) r = {EdgeRelation::Kind::CSide, j, mag(0), mag(1)};
        return r.canonical();
      }
  throw std::logic_error("edge counts do not balance");
}

}  // namespace

std::vector<EdgeRelation> extract_edge_relations(const Certificate& cert) {
  const TileShape& t = cert.tile;
  const QRoot3 a2 = t.a * t.a, b2 = t.b * t.b;
  std::map<LineKey, std::vector<LineEdge>> lines;
  for (const auto& p : cert.placements)
    for (std::size_t k = 0; k < 3; ++k) {
      const Point& s = p.v[k];
      const Point& e = p.v[(k + 1) % 3];
      const Vec2 v = e - s;
      LineKey key;
      key.dir = v.x.is_zero() ? Vec2{QRoot3(0), QRoot3(1)} : Vec2{QRoot3(1), v.y / v.x};
      key.offset = cross(key.dir, s);
      const QRoot3 ts = dot(s, key.dir), te = dot(e, key.dir);
      const bool forward = ts < te;
      const QRoot3 len2 = norm2(v);
      const int cls = len2 == a2 ? 0 : (len2 == b2 ? 1 : 2);
      lines[key].push_back({forward ? ts : te, forward ? te : ts, forward ? 1 : -1, cls});
    }
  const auto tv = cert.target.boundary();
  auto on_target_side = [&](const LineKey& key) {
    for (std::size_t k = 0; k < 3; ++k) {
      const Point& p = tv[k];
      const Point& q = tv[(k + 1) % 3];
      if (cross(key.dir, q - p).is_zero() && cross(key.dir, p) == key.offset) return true;
    }
    return false;
  };
  std::vector<EdgeRelation> out;
  for (auto& [key, edges] : lines) {
    if (on_target_side(key)) continue;
    std::sort(edges.begin(), edges.end(), [](const LineEdge& x, const LineEdge& y) { return x.start < y.start; });
    std::size_t i = 0;
    while (i < edges.size()) {
      std::array<long, 3> diff{0, 0, 0};
      QRoot3 reach = edges[i].end;
      std::size_t j = i;
      while (j < edges.size() && edges[j].start <= reach) {
        if (edges[j].end > reach) reach = edges[j].end;
        diff[static_cast<std::size_t>(edges[j].cls)] += edges[j].side;
        ++j;
      }
      if (diff != std::array<long, 3>{0, 0, 0}) out.push_back(relation_from_difference(diff));
      i = j;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string render_svg(const Certificate& cert) {
  if (cert.placements.empty()) throw std::runtime_error("empty certificate");
  const auto tv = cert.target.boundary();
  double minx = tv[0].x.to_double(), maxx = minx, miny = tv[0].y.to_double(), maxy = miny;
  for (const auto& p : tv) {
    minx = std::min(minx, p.x.to_double());
    maxx = std::max(maxx, p.x.to_double());
    miny = std::min(miny, p.y.to_double());
    maxy = std::max(maxy, p.y.to_double());
  }
  const double width = 800, margin = 10;
  const double scale = (width - 2 * margin) / (maxx - minx);
  const double height = (maxy - miny) * scale + 2 * margin;
  auto pt = [&](const Point& p) {
    return fmt((p.x.to_double() - minx) * scale + margin) + "," + fmt((maxy - p.y.to_double()) * scale + margin);
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
     << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height) << "\">\n";
  for (std::size_t i = 0; i < cert.placements.size(); ++i) {
    const auto& p = cert.placements[i];
    os << "  <polygon id=\"t" << i << "\" points=\"" << pt(p.v[0]) << " " << pt(p.v[1]) << " " << pt(p.v[2])
       << "\" fill=\"" << (p.mirrored ? "#fdae6b" : "#9ecae1") << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  }
  // Target outline as a path so the polygons are exactly the tiles.
  os << "  <path d=\"M " << pt(tv[0]) << " L " << pt(tv[1]) << " L " << pt(tv[2])
     << " Z\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
  os << "</svg>\n";
  return os.str();
}

void render_svg(const Certificate& cert, const std::filesystem::path& path) {
  const std::string svg = render_svg(cert);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << svg;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

void to_json(json& j, const Placement& p) {
  json v = json::array();
  for (const auto& x : p.v) v.push_back({x.x, x.y});
  j = {{"v", v}, {"mirrored", p.mirrored}};
}

void from_json(const json& j, Placement& p) {
  const auto& v = j.at("v");
  if (!v.is_array() || v.size() != 3) throw std::invalid_argument("placement needs three vertices");
  for (std::size_t k = 0; k < 3; ++k) {
    if (!v[k].is_array() || v[k].size() != 2) throw std::invalid_argument("vertex must be [x, y]");
    p.v[k] = {v[k][0].get<QRoot3>(), v[k][1].get<QRoot3>()};
  }
  p.mirrored = j.at("mirrored").get<bool>();
}

void to_json(json& j, const Certificate& c) {
  j = {{"schema", "v1"},       {"tile", c.tile},          {"target", c.target},
       {"allow_mirror", c.allow_mirror}, {"N", c.placements.size()}, {"placements", c.placements}};
}

Certificate certificate_from_json(const json& j) {
  if (j.value("schema", "") != "v1") throw std::invalid_argument("unsupported certificate schema");
  Certificate c;
  c.tile = j.at("tile").get<TileShape>();
  const auto& tj = j.at("target");
  c.target = make_triangle(c.tile, tj.at("X").get<QRoot3>(), tj.at("Y").get<QRoot3>(), tj.at("Z").get<QRoot3>());
  if (tj.contains("vertices")) {
    const auto& vs = tj.at("vertices");
    for (std::size_t k = 0; k < 3; ++k)
      if (Point{vs.at(k).at(0).get<QRoot3>(), vs.at(k).at(1).get<QRoot3>()} != c.target.vertices[k])
        throw std::invalid_argument("target vertices do not match its sides");
  }
  c.allow_mirror = j.at("allow_mirror").get<bool>();
  c.placements = j.at("placements").get<std::vector<Placement>>();
  if (j.contains("N") && j.at("N").get<std::size_t>() != c.placements.size())
    throw std::invalid_argument("N does not match the placement count");
  return c;
}

}  // namespace tforge
