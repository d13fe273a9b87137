#include "tforge/constraints.hpp"

#include "tforge/json_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace tforge {

TileAngles TileAngles::of(const TileShape& t) {
  const QRoot3 half_sqrt3_over_c = QRoot3::sqrt3() / (QRoot3(2) * t.c);
  TileAngles out;
  out.alpha.dir = {t.cos_alpha, t.a * half_sqrt3_over_c};
  out.beta.dir = {t.cos_beta, t.b * half_sqrt3_over_c};
  out.gamma.dir = {QRoot3(Rational(-1, 2)), QRoot3(Rational(0), Rational(1, 2))};
  return out;
}

Angle TileAngles::combo(const AngleCombo& c) const {
  Angle out;
  for (long n = 0; n < c.i; ++n) out = out + alpha;
  for (long n = 0; n < c.j; ++n) out = out + beta;
  for (long n = 0; n < c.k; ++n) out = out + gamma;
  return out;
}

QRoot3 TriangleSpec::area() const { return twice_signed_area(boundary()) / QRoot3(2); }

namespace {

struct ComboEntry {
  AngleCombo combo;
  Angle angle;
};

// Combinations below pi in preference order: fewest corners (gamma counting
// as three), then most balanced, then fewest alphas.
std::vector<ComboEntry> triangle_angle_candidates(const TileAngles& ta) {
  std::vector<ComboEntry> out;
  // Angles grow with every added corner, so each row stops at the first
  // value that reaches pi.
  auto below_pi = [](const Angle& a) { return a.turns == 0 && a.dir.y.sign() > 0; };
  Angle row_start = Angle::zero();
  for (long k = 0; k <= 1; ++k, row_start = ta.gamma) {
    Angle with_alphas = row_start;
    for (long i = 0; i <= kMaxSplitCount; ++i, with_alphas = with_alphas + ta.alpha) {
      if (i + k > 0 && !below_pi(with_alphas)) break;
      Angle a = with_alphas;
      for (long j = 0; j <= kMaxSplitCount; ++j, a = a + ta.beta) {
        if (i + j + k == 0) continue;
        if (!below_pi(a)) break;
        out.push_back({AngleCombo{i, j, k}, a});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const ComboEntry& x, const ComboEntry& y) {
    auto key = [](const AngleCombo& c) {
      return std::tuple(c.i + c.j + 3 * c.k, std::labs(c.i - c.j), c.i);
    };
    return key(x.combo) < key(y.combo);
  });
  return out;
}

AngleCombo match_angle(const std::vector<ComboEntry>& cands, const QRoot3& cosine) {
  for (const auto& e : cands)
    if (e.angle.dir.x == cosine) return e.combo;
  throw std::invalid_argument("target angle with cosine " + cosine.to_string() +
                              " is not a combination of the tile angles");
}

}  // namespace

TriangleSpec make_triangle(const TileShape& tile, const QRoot3& s1, const QRoot3& s2, const QRoot3& s3) {
  std::array<QRoot3, 3> s{s1, s2, s3};
  for (const auto& x : s)
    if (x.sign() <= 0) throw std::invalid_argument("target sides must be positive");
  std::sort(s.begin(), s.end(), std::greater<>());
  TriangleSpec t;
  t.X = s[0];
  t.Y = s[1];
  t.Z = s[2];
  if (t.X >= t.Y + t.Z) throw std::invalid_argument("target sides violate the triangle inequality");
  const QRoot3 two(2);
  const QRoot3 cos_a = (t.Y * t.Y + t.Z * t.Z - t.X * t.X) / (two * t.Y * t.Z);
  const QRoot3 cos_b = (t.X * t.X + t.Z * t.Z - t.Y * t.Y) / (two * t.X * t.Z);
  const QRoot3 cos_c = (t.X * t.X + t.Y * t.Y - t.Z * t.Z) / (two * t.X * t.Y);
  const TileAngles ta = TileAngles::of(tile);
  const auto cands = triangle_angle_candidates(ta);
  t.angles = {match_angle(cands, cos_a), match_angle(cands, cos_b), match_angle(cands, cos_c)};
  const Angle total = ta.combo(t.angles[0]) + ta.combo(t.angles[1]) + ta.combo(t.angles[2]);
  if (total != pi_angle()) throw std::logic_error("target angles do not sum to pi");
  const Angle at_b = ta.combo(t.angles[1]);
  t.vertices[1] = {QRoot3(0), QRoot3(0)};
  t.vertices[2] = {t.X, QRoot3(0)};
  t.vertices[0] = t.Z * at_b.dir;
  if (norm2(t.vertices[0] - t.vertices[2]) != t.Y * t.Y) throw std::logic_error("target placement inconsistent");
  return t;
}

TriangleSpec make_equilateral(const TileShape& tile, const QRoot3& side) {
  return make_triangle(tile, side, side, side);
}

bool similar_to_tile(const TriangleSpec& tri) {
  auto angles = tri.angles;
  std::sort(angles.begin(), angles.end());
  const std::array<AngleCombo, 3> tile_angles{AngleCombo{0, 0, 1}, AngleCombo{0, 1, 0}, AngleCombo{1, 0, 0}};
  return angles == tile_angles;
}

std::vector<VertexSplit> enumerate_vertex_splits(const std::optional<Rational>& alpha_over_pi) {
  std::vector<VertexSplit> out;
  if (!alpha_over_pi) {
    // With alpha / pi irrational, P alpha + Q beta + R gamma = pi forces P = Q
    // and Q + 2R = 3.
    out.push_back({3, 3, 0});
    return out;
  }
  const Rational alpha = *alpha_over_pi;
  if (alpha.sign() <= 0 || alpha >= Rational(1, 3)) throw std::invalid_argument("alpha must lie in (0, pi/3)");
  const Rational beta = Rational(1, 3) - alpha;
  for (long R = 0; R <= 1; ++R)
    for (long P = 0; P <= kMaxSplitCount; ++P)
      for (long Q = 0; Q <= kMaxSplitCount; ++Q) {
        if (P + Q + R < 3 || (P == 1 && Q == 1 && R == 1)) continue;
        if (Rational(P) * alpha + Rational(Q) * beta + Rational(2 * R, 3) == Rational(1)) out.push_back({P, Q, R});
      }
  std::sort(out.begin(), out.end());
  return out;
}

Rational solve_alpha_from_split(long P, long Q, long R) {
  if (P == Q) throw std::invalid_argument("P = Q: the angle system is singular");
  return Rational(2 * R + Q - 3, 3 * (Q - P));
}

std::vector<DRow> row_solutions(const TileShape& tile, const QRoot3& length) {
  std::vector<DRow> out;
  const long max_p = (length / tile.a).floor().get_si();
  for (long p = 0; p <= max_p; ++p) {
    const QRoot3 rest_p = length - QRoot3(p) * tile.a;
    const long max_d = (rest_p / tile.b).floor().get_si();
    for (long d = 0; d <= max_d; ++d) {
      const QRoot3 e = (rest_p - QRoot3(d) * tile.b) / tile.c;
      if (e.is_rational() && e.r().is_integer() && e.sign() >= 0) out.push_back({p, d, e.r().num().get_si()});
    }
  }
  return out;
}

bool c_edge_condition_applies(const TileShape& tile, const TriangleSpec& tri) {
  if (tile.is_isosceles() || similar_to_tile(tri)) return false;
  const TileAngles ta = TileAngles::of(tile);
  for (const auto& a : tri.angles)
    if (ta.combo(a) == ta.gamma) return false;
  return true;
}

std::vector<DMatrix> enumerate_dmatrices(const TileShape& tile, const TriangleSpec& tri) {
  const auto rx = row_solutions(tile, tri.X);
  const auto ry = row_solutions(tile, tri.Y);
  const auto rz = row_solutions(tile, tri.Z);
  const bool flag = c_edge_condition_applies(tile, tri);
  std::vector<DMatrix> out;
  out.reserve(rx.size() * ry.size() * rz.size());
  for (const auto& x : rx)
    for (const auto& y : ry)
      for (const auto& z : rz) {
        DMatrix d{{x, y, z}, false};
        d.missing_c_edge = flag && (x[2] == 0 || y[2] == 0 || z[2] == 0);
        out.push_back(d);
      }
  return out;
}

Rational area_count(const TileShape& tile, const TriangleSpec& tri) {
  const QRoot3 ratio = tri.area() / tile.area;
  if (!ratio.is_rational()) throw std::domain_error("area ratio " + ratio.to_string() + " is irrational");
  return ratio.r();
}

XZCoefficients xz_coefficients(const DRow& row_x, const DRow& row_z, const Rational& lambda, const Rational& mu) {
  const Rational p(row_x[0]), d(row_x[1]), e(row_x[2]);
  const Rational h(row_z[0]), l(row_z[1]), r(row_z[2]);
  const Rational c2(3, 4);
  const Rational k = Rational(1) + lambda + lambda * lambda;
  // a^2 = s * ac + t * c^2
  const Rational s = -mu * (Rational(2) * lambda + Rational(1)) / k;
  const Rational t = (Rational(1) - mu * mu) / k;
  const Rational x_a = p + lambda * d, x_c = e + d * mu;
  const Rational z_a = h + lambda * l, z_c = r + l * mu;
  XZCoefficients out;
  out.ac_part = x_a * z_a * s + x_c * z_a + x_a * z_c;
  out.rational_part = c2 * (x_a * z_a * t + x_c * z_c);
  return out;
}

bool area_equation_nac(long N, const TileShape& tile, const QRoot3& X, const QRoot3& Z) {
  return QRoot3(N) * tile.a * tile.c == X * Z;
}

bool area_equation_nab(long N, const TileShape& tile, const QRoot3& X, const QRoot3& Z) {
  return QRoot3(N) * tile.a * tile.b == X * Z;
}

void to_json(nlohmann::json& j, const AngleCombo& c) { j = {c.i, c.j, c.k}; }

void to_json(nlohmann::json& j, const TriangleSpec& t) {
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : t.vertices) verts.push_back({v.x, v.y});
  j = {{"X", t.X}, {"Y", t.Y}, {"Z", t.Z}, {"angles", t.angles}, {"vertices", verts}};
}

void to_json(nlohmann::json& j, const VertexSplit& s) { j = {{"P", s.P}, {"Q", s.Q}, {"R", s.R}}; }

void to_json(nlohmann::json& j, const DMatrix& d) {
  j = {{"rows", d.rows}, {"missing_c_edge", d.missing_c_edge}};
}

}  // namespace tforge
