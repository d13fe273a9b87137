#ifndef TFORGE_CONSTRAINTS_HPP
#define TFORGE_CONSTRAINTS_HPP

#include "tforge/geometry.hpp"
#include "tforge/tile.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <vector>

namespace tforge {

// i*alpha + j*beta + k*gamma.
struct AngleCombo {
  long i = 0, j = 0, k = 0;
  friend auto operator<=>(const AngleCombo&, const AngleCombo&) = default;
};

// Exact unit directions of the tile angles.
struct TileAngles {
  Angle alpha, beta, gamma;

  static TileAngles of(const TileShape& t);
  Angle combo(const AngleCombo& c) const;
};

// Target triangle ABC with X = BC >= Y = AC >= Z = AB.  Angles are listed at
// A, B, C and expressed through the tile angles.  Vertices are placed with
// B at the origin, C on the positive x-axis and A above it.
struct TriangleSpec {
  QRoot3 X, Y, Z;
  std::array<AngleCombo, 3> angles;
  std::array<Point, 3> vertices;  // A, B, C

  // Counterclockwise boundary starting at B.
  std::vector<Point> boundary() const { return {vertices[1], vertices[2], vertices[0]}; }
  QRoot3 area() const;
};

// Builds the target from three side lengths in any order.  Throws
// std::invalid_argument for degenerate sides or for angles that are not
// combinations of the tile angles.
TriangleSpec make_triangle(const TileShape& tile, const QRoot3& s1, const QRoot3& s2, const QRoot3& s3);
TriangleSpec make_equilateral(const TileShape& tile, const QRoot3& side);

bool similar_to_tile(const TriangleSpec& tri);

struct VertexSplit {
  long P, Q, R;
  friend auto operator<=>(const VertexSplit&, const VertexSplit&) = default;
};

inline constexpr long kMaxSplitCount = 12;

// Splittings (P, Q, R) with P, Q <= 12 and R <= 1 satisfying
// P alpha + Q beta + R gamma = pi, other than the unsplit (1, 1, 1).
// alpha_over_pi is empty when alpha is not a rational multiple of pi.
std::vector<VertexSplit> enumerate_vertex_splits(const std::optional<Rational>& alpha_over_pi);

// alpha / pi = (2R + Q - 3) / (3 (Q - P)).  Throws std::invalid_argument if P == Q.
Rational solve_alpha_from_split(long P, long Q, long R);

using DRow = std::array<long, 3>;  // counts of a, b, c edges

struct DMatrix {
  std::array<DRow, 3> rows;  // (p,d,e) for X, (g,m,f) for Y, (h,l,r) for Z
  // Set when the tiling hypotheses force a c edge on every side but some
  // side has none (e, f or r is zero).
  bool missing_c_edge = false;
  friend bool operator==(const DMatrix& a, const DMatrix& b) { return a.rows == b.rows; }
};

// All (p, d, e) >= 0 with p a + d b + e c = length.
std::vector<DRow> row_solutions(const TileShape& tile, const QRoot3& length);

// True when the c-edge condition applies: no angle of ABC equals gamma, ABC
// is not similar to the tile, and the tile is not isosceles.
bool c_edge_condition_applies(const TileShape& tile, const TriangleSpec& tri);

std::vector<DMatrix> enumerate_dmatrices(const TileShape& tile, const TriangleSpec& tri);

// Area(tri) / Area(tile).  Throws std::domain_error if irrational.
Rational area_count(const TileShape& tile, const TriangleSpec& tri);

struct XZCoefficients {
  Rational rational_part;
  Rational ac_part;
};

// XZ written as rational_part + ac_part * ac after substituting
// b = lambda a + mu c and eliminating a^2, with c^2 = 3/4.
XZCoefficients xz_coefficients(const DRow& row_x, const DRow& row_z, const Rational& lambda, const Rational& mu);

// N a c = X Z (angle B = beta) and N a b = X Z (angle B = pi/3).  Both sides
// scale alike, so the tile may be given at any size.
bool area_equation_nac(long N, const TileShape& tile, const QRoot3& X, const QRoot3& Z);
bool area_equation_nab(long N, const TileShape& tile, const QRoot3& X, const QRoot3& Z);

void to_json(nlohmann::json& j, const AngleCombo& c);
void to_json(nlohmann::json& j, const TriangleSpec& t);
void to_json(nlohmann::json& j, const VertexSplit& s);
void to_json(nlohmann::json& j, const DMatrix& d);

}  // namespace tforge

#endif  // TFORGE_CONSTRAINTS_HPP
