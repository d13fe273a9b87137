#ifndef TFORGE_TILE_HPP
#define TFORGE_TILE_HPP

#include "tforge/qroot3.hpp"
#include "tforge/rational.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace tforge {

// Triangle with a 120 degree angle opposite side c.  Sides live in Q(sqrt3).
struct TileShape {
  QRoot3 a, b, c;
  QRoot3 cos_alpha, cos_beta;
  QRoot3 area;

  bool is_isosceles() const { return a == b; }
  std::array<QRoot3, 3> sides() const { return {a, b, c}; }
  friend bool operator==(const TileShape& x, const TileShape& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c;
  }
};

enum class SideOrder { Canonical, AsGiven };

// Throws std::invalid_argument for non-positive sides or when
// c^2 != a^2 + b^2 + ab.  Canonical order swaps a and b so that a <= b.
TileShape tile_from_sides(const QRoot3& a, const QRoot3& b, const QRoot3& c,
                          SideOrder order = SideOrder::Canonical);

struct EisensteinTriple {
  long a, b, c;
};

// (m^2 - n^2, 2mn + n^2, m^2 + mn + n^2).  Requires m > n >= 1.
EisensteinTriple eisenstein_triple(long m, long n);

// Integer identity between tile edge lengths.
//   BSide: j b = u a + v c
//   ASide: j a = u b + v c
//   CSide: j c = u a + v b
struct EdgeRelation {
  enum class Kind { BSide, ASide, CSide };
  Kind kind;
  long j, u, v;

  Rational lambda() const { return {u, j}; }
  Rational mu() const { return {v, j}; }
  bool holds(const TileShape& t) const;
  EdgeRelation canonical() const;
  std::string to_string() const;

  friend auto operator<=>(const EdgeRelation&, const EdgeRelation&) = default;
};

const char* kind_name(EdgeRelation::Kind k);
EdgeRelation::Kind kind_from_name(const std::string& s);

// Root p + q sqrt(disc) of A x^2 + B x + C with disc not a rational square
// or three times one.
struct QuadraticSurd {
  Rational qa, qb, qc;
  Rational p, q, disc;

  double to_double() const;
  // Substitutes the root into the quadratic with exact arithmetic.
  bool satisfies_quadratic() const;
  std::string to_string() const;
};

struct ShapeRoot {
  std::optional<QRoot3> exact;  // set when the root lies in Q(sqrt3)
  QuadraticSurd surd;           // always filled
  double to_double() const { return exact ? exact->to_double() : surd.to_double(); }
};

// Positive root x = a/c in (0,1) of the shape quadratic for b = lambda a + mu c.
// Throws std::domain_error("no valid shape") if none exists.
ShapeRoot shape_from_relation(const Rational& lambda, const Rational& mu);

struct ShapeRatios {
  ShapeRoot a_over_c;
  ShapeRoot b_over_c;
};

// Shape implied by a B- or A-side relation.  C-side relations cut the shape
// ellipse in up to two admissible points and are rejected.
ShapeRatios shape_from_relation(const EdgeRelation& rel);

// All canonical relations with j <= max_j holding for the given tile.
std::vector<EdgeRelation> relations_of_tile(const TileShape& t, long max_j = 12);

// Relations for the tile with rational a/c = x (c = 1).  Handles b/c outside
// Q(sqrt3) too.
std::vector<EdgeRelation> relation_from_shape(const Rational& x, long max_j = 12);

// (a + 2b) / (2a + b), checked against cos(alpha)/cos(beta).  Throws
// std::domain_error if the ratio is irrational.
Rational cos_ratio(const TileShape& t);

struct TileClass {
  bool integer_similar;
  bool alpha_rational_multiple_of_pi;
  std::optional<Rational> alpha_over_pi;
  bool decided;
};

TileClass classify_tile(const TileShape& t);

void to_json(nlohmann::json& j, const TileShape& t);
void from_json(const nlohmann::json& j, TileShape& t);
void to_json(nlohmann::json& j, const EdgeRelation& r);

}  // namespace tforge

#endif  // TFORGE_TILE_HPP
