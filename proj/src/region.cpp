#include "tforge/search.hpp"

#include "tforge/json_io.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace tforge {

namespace {

bool is_zero_angle(const Vec2& d) { return d.y.is_zero() && d.x.sign() > 0; }

// Drops vertices between collinear edges and rotates the boundary so that it
// starts at its lexicographically smallest vertex.
Region normalize(std::vector<Point> pts, std::vector<Vec2> dirs) {
  Region out;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    if (dirs[i] == dirs[prev]) continue;
    out.boundary.push_back(pts[i]);
    out.dirs.push_back(dirs[i]);
  }
  const auto first = std::min_element(out.boundary.begin(), out.boundary.end()) - out.boundary.begin();
  std::rotate(out.boundary.begin(), out.boundary.begin() + first, out.boundary.end());
  std::rotate(out.dirs.begin(), out.dirs.begin() + first, out.dirs.end());
  return out;
}

struct Piece {
  Point from, to;
  Vec2 dir;
  bool alive = true;
};

// Splits the segment p -> q (unit direction d) at the given points lying
// strictly inside it.
void split_into(std::vector<Piece>& out, const Point& p, const Point& q, const Vec2& d,
                const std::vector<Point>& cuts) {
  const QRoot3 len = dot(q - p, d);
  std::vector<std::pair<QRoot3, Point>> inside;
  for (const auto& c : cuts) {
    const Vec2 w = c - p;
    if (!cross(d, w).is_zero()) continue;
    const QRoot3 t = dot(w, d);
    if (t.sign() > 0 && (len - t).sign() > 0) inside.emplace_back(t, c);
  }
  std::sort(inside.begin(), inside.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Point cur = p;
  for (const auto& [t, c] : inside) {
    if (c == cur) continue;
    out.push_back({cur, c, d});
    cur = c;
  }
  out.push_back({cur, q, d});
}

}  // namespace

Vec2 Region::angle_dir(std::size_t i) const {
  const std::size_t n = dirs.size();
  return Angle::between(dirs[i], -dirs[(i + n - 1) % n]).dir;
}

Region region_from_polygon(const std::vector<Point>& pts) {
  if (pts.size() < 3) throw std::invalid_argument("polygon needs three vertices");
  std::vector<Vec2> dirs;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec2 e = pts[(i + 1) % pts.size()] - pts[i];
    const auto len = norm2(e).sqrt_exact();
    if (!len || len->is_zero()) throw std::invalid_argument("edge length outside Q(sqrt3)");
    dirs.push_back(len->inverse() * e);
  }
  if (twice_signed_area(pts).sign() <= 0) throw std::invalid_argument("polygon must be counterclockwise");
  return normalize(pts, dirs);
}

Region region_from_target(const TriangleSpec& target) { return region_from_polygon(target.boundary()); }

TilingContext::TilingContext(const TileShape& tile, const QRoot3& max_length, Chirality chirality, bool prune)
    : tile_(tile), chirality_(chirality), prune_(prune), max_length_(max_length) {
  const TileAngles ta = TileAngles::of(tile);
  angle_dir_ = {ta.alpha.dir, ta.beta.dir, ta.gamma.dir};
  for (Angle k = Angle::zero(); k.turns == 0; k = k + ta.gamma)
    for (Angle kj = k; kj.turns == 0; kj = kj + ta.beta)
      for (Angle kji = kj; kji.turns == 0; kji = kji + ta.alpha)
        if (!is_zero_angle(kji.dir)) angles_.insert(kji.dir);
  for (QRoot3 k = 0; k <= max_length; k += tile.c)
    for (QRoot3 kj = k; kj <= max_length; kj += tile.b)
      for (QRoot3 kji = kj; kji <= max_length; kji += tile.a)
        if (!kji.is_zero()) lengths_.insert(kji);
  inv_twice_tile_area_ = (QRoot3(2) * tile.area).inverse();
}

bool TilingContext::length_representable(const QRoot3& L) const {
  if (L > max_length_) return true;
  return lengths_.contains(L);
}

std::optional<long> TilingContext::tile_count(const QRoot3& twice_area) const {
  const QRoot3 q = twice_area * inv_twice_tile_area_;
  if (!q.is_rational() || !q.r().is_integer() || q.r().sign() <= 0) return std::nullopt;
  return q.r().num().get_si();
}

std::size_t choose_corner(const Region& region) {
  std::size_t best = 0;
  Vec2 best_dir = region.angle_dir(0);
  for (std::size_t i = 1; i < region.size(); ++i) {
    const Vec2 d = region.angle_dir(i);
    const int c = compare_direction(d, best_dir);
    if (c < 0 || (c == 0 && region.boundary[i] < region.boundary[best])) {
      best = i;
      best_dir = d;
    }
  }
  return best;
}

std::vector<Region> subtract_triangle(const Region& region, const Placement& tri,
                                      const std::array<Vec2, 3>& tri_dirs) {
  std::vector<Piece> pieces;
  const std::vector<Point> tri_pts(tri.v.begin(), tri.v.end());
  const std::size_t n = region.size();
  for (std::size_t i = 0; i < n; ++i)
    split_into(pieces, region.boundary[i], region.boundary[(i + 1) % n], region.dirs[i], tri_pts);
  const std::size_t region_pieces = pieces.size();
  for (std::size_t k = 0; k < 3; ++k)
    split_into(pieces, tri.v[(k + 1) % 3], tri.v[k], -tri_dirs[k], region.boundary);

  // Shared boundary appears once in each direction and cancels.
  for (std::size_t t = region_pieces; t < pieces.size(); ++t)
    for (std::size_t r = 0; r < region_pieces; ++r)
      if (pieces[r].alive && pieces[r].from == pieces[t].to && pieces[r].to == pieces[t].from) {
        pieces[r].alive = pieces[t].alive = false;
        break;
      }

  std::unordered_map<Point, std::vector<std::size_t>> outgoing;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i].alive) outgoing[pieces[i].from].push_back(i);

  std::vector<Region> out;
  std::vector<bool> used(pieces.size(), false);
  for (std::size_t start = 0; start < pieces.size(); ++start) {
    if (!pieces[start].alive || used[start]) continue;
    std::vector<Point> pts;
    std::vector<Vec2> dirs;
    std::size_t cur = start;
    while (!used[cur]) {
      used[cur] = true;
      pts.push_back(pieces[cur].from);
      dirs.push_back(pieces[cur].dir);
      const auto& cands = outgoing.at(pieces[cur].to);
      // At a pinch vertex take the first outgoing edge clockwise from the
      // reversed incoming edge; that keeps each component simple.
      const Vec2 back = -pieces[cur].dir;
      std::size_t next = cands.front();
      if (cands.size() > 1) {
        Vec2 best{};
        bool have = false;
        for (std::size_t c : cands) {
          if (used[c] && c != start) continue;
          const Vec2 turn = Angle::between(back, pieces[c].dir).dir;
          if (!have || compare_direction(turn, best) > 0) {
            best = turn;
            next = c;
            have = true;
          }
        }
      }
      cur = next;
    }
    if (cur != start) throw std::logic_error("region difference produced an open chain");
    Region comp = normalize(std::move(pts), std::move(dirs));
    if (comp.size() < 3 || comp.twice_area().sign() <= 0)
      throw std::logic_error("region difference produced a degenerate component");
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end(), [](const Region& a, const Region& b) { return a.boundary[0] < b.boundary[0]; });
  return out;
}

namespace {

// True when some edge of the region meets the open triangle.
bool meets_interior(const Region& region, const std::array<Point, 3>& t) {
  const std::size_t n = region.size();
  std::array<Vec2, 3> e;
  for (std::size_t k = 0; k < 3; ++k) e[k] = t[(k + 1) % 3] - t[k];
  std::vector<std::array<QRoot3, 3>> f(n);
  std::vector<std::array<int, 3>> s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < 3; ++k) {
      f[i][k] = cross(e[k], region.boundary[i] - t[k]);
      s[i][k] = f[i][k].sign();
    }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    bool excluded = false;
    for (std::size_t k = 0; k < 3 && !excluded; ++k) excluded = s[i][k] <= 0 && s[j][k] <= 0;
    if (excluded) continue;
    // Points p + t (q - p) strictly inside: each edge function is affine in t.
    QRoot3 lo = 0, hi = 1;
    for (std::size_t k = 0; k < 3; ++k) {
      if (s[i][k] > 0 && s[j][k] > 0) continue;
      const QRoot3 root = f[i][k] / (f[i][k] - f[j][k]);
      if (s[i][k] > 0) {
        if (root < hi) hi = root;
      } else if (root > lo) {
        lo = root;
      }
    }
    if (lo < hi) return true;
  }
  return false;
}

bool component_ok(const Region& comp, const TilingContext& ctx) {
  if (!ctx.tile_count(comp.twice_area())) return false;
  const std::size_t n = comp.size();
  std::vector<bool> convex(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 d = comp.angle_dir(i);
    if (!ctx.angle_representable(d)) return false;
    convex[i] = d.y.sign() > 0;
  }
  // Between two convex corners the edge is covered exactly by tile edges.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (!convex[i] || !convex[j]) continue;
    if (!ctx.length_representable(dot(comp.boundary[j] - comp.boundary[i], comp.dirs[i]))) return false;
  }
  return true;
}

}  // namespace

std::vector<Expansion> expand_corner(const Region& region, std::size_t corner, const TilingContext& ctx) {
  const TileShape& tile = ctx.tile();
  const Point& v = region.boundary[corner];
  const Vec2& u = region.dirs[corner];
  const Vec2 theta = region.angle_dir(corner);
  // Sides at each tile angle, the side running counterclockwise from the
  // vertex first; then the opposite side.
  const std::array<std::array<QRoot3, 3>, 3> sides{{{tile.c, tile.b, tile.a},
                                                    {tile.a, tile.c, tile.b},
                                                    {tile.b, tile.a, tile.c}}};
  std::vector<Expansion> out;
  std::vector<std::pair<Point, Point>> seen;
  for (int g = 0; g < 3; ++g) {
    const Vec2& phi = ctx.angle_dir(g);
    if (compare_direction(phi, theta) > 0) continue;
    const Vec2 rest = Angle::between(phi, theta).dir;
    if (ctx.prune() && !is_zero_angle(rest) && !ctx.angle_representable(rest)) continue;
    const auto& sd = sides[static_cast<std::size_t>(g)];
    const Vec2 u2 = cmul(u, phi);
    for (int assign = 0; assign < 2; ++assign) {
      const bool mirrored = assign == 1 && !tile.is_isosceles();
      if (ctx.chirality() == Chirality::Direct && mirrored) continue;
      if (ctx.chirality() == Chirality::Mirrored && !mirrored && !tile.is_isosceles()) continue;
      const QRoot3& s1 = sd[assign == 0 ? 0 : 1];
      const QRoot3& s2 = sd[assign == 0 ? 1 : 0];
      const Point p1 = v + s1 * u;
      const Point p2 = v + s2 * u2;
      if (std::find(seen.begin(), seen.end(), std::make_pair(p1, p2)) != seen.end()) continue;
      seen.emplace_back(p1, p2);
      Placement pl{{v, p1, p2}, mirrored};
      if (meets_interior(region, pl.v)) continue;
      const std::array<Vec2, 3> tri_dirs{u, sd[2].inverse() * (p2 - p1), -u2};
      auto comps = subtract_triangle(region, pl, tri_dirs);
      if (ctx.prune() &&
          !std::all_of(comps.begin(), comps.end(), [&](const Region& c) { return component_ok(c, ctx); }))
        continue;
      out.push_back({std::move(pl), std::move(comps)});
    }
  }
  return out;
}

std::vector<Placement> candidate_placements(const Region& region, std::size_t corner, const TileShape& tile,
                                            bool allow_mirror) {
  QRoot3 perimeter = 0;
  for (std::size_t i = 0; i < region.size(); ++i)
    perimeter += dot(region.boundary[(i + 1) % region.size()] - region.boundary[i], region.dirs[i]);
  const TilingContext ctx(tile, perimeter, allow_mirror ? Chirality::Any : Chirality::Direct);
  std::vector<Placement> out;
  for (auto& e : expand_corner(region, corner, ctx)) out.push_back(std::move(e.placement));
  return out;
}

void to_json(nlohmann::json& j, const Region& r) {
  nlohmann::json pts = nlohmann::json::array(), dirs = nlohmann::json::array();
  for (const auto& p : r.boundary) pts.push_back({p.x, p.y});
  for (const auto& d : r.dirs) dirs.push_back({d.x, d.y});
  j = {{"boundary", pts}, {"dirs", dirs}};
}

void from_json(const nlohmann::json& j, Region& r) {
  r.boundary.clear();
  r.dirs.clear();
  for (const auto& p : j.at("boundary")) r.boundary.push_back({p.at(0).get<QRoot3>(), p.at(1).get<QRoot3>()});
  for (const auto& d : j.at("dirs")) r.dirs.push_back({d.at(0).get<QRoot3>(), d.at(1).get<QRoot3>()});
  if (r.boundary.size() != r.dirs.size() || r.boundary.size() < 3) throw std::invalid_argument("malformed region");
}

}  // namespace tforge
