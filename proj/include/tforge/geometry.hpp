#ifndef TFORGE_GEOMETRY_HPP
#define TFORGE_GEOMETRY_HPP

#include "tforge/qroot3.hpp"

#include <compare>
#include <ostream>
#include <vector>

namespace tforge {

// Exact point / vector in Q(sqrt3)^2.
struct Vec2 {
  QRoot3 x, y;

  Vec2 operator-() const { return {-x, -y}; }
  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend Vec2 operator*(const QRoot3& k, const Vec2& v) { return {k * v.x, k * v.y}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
  // Lexicographic order on (x, y).
  friend std::strong_ordering operator<=>(const Vec2& a, const Vec2& b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.y <=> b.y;
  }
  bool is_zero() const { return x.is_zero() && y.is_zero(); }
  std::size_t hash() const { return x.hash() * 1000003u ^ y.hash(); }
  friend std::ostream& operator<<(std::ostream& os, const Vec2& v) {
    return os << "(" << v.x << ", " << v.y << ")";
  }
};

using Point = Vec2;

inline QRoot3 cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline QRoot3 dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline QRoot3 norm2(const Vec2& a) { return dot(a, a); }
// Complex product: rotates a by the direction of b and scales by |b|.
inline Vec2 cmul(const Vec2& a, const Vec2& b) { return {a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x}; }
// Sign of the turn o -> a -> b.
inline int orient(const Point& o, const Point& a, const Point& b) { return cross(a - o, b - o).sign(); }

// Orders nonzero vectors by their polar angle in [0, 2pi), exactly.
int compare_direction(const Vec2& a, const Vec2& b);

// Angle in [0, inf) stored as full turns plus a direction.  The direction
// need not be a unit vector; only its polar angle matters.
struct Angle {
  long turns = 0;
  Vec2 dir{QRoot3(1), QRoot3(0)};

  static Angle zero() { return {}; }
  bool is_zero() const { return turns == 0 && dir.y.is_zero() && dir.x.sign() > 0; }
  // Angle from vector u counterclockwise to vector w, in [0, 2pi).
  static Angle between(const Vec2& u, const Vec2& w);
  double to_double() const;

  friend bool operator==(const Angle& a, const Angle& b) {
    return a.turns == b.turns && compare_direction(a.dir, b.dir) == 0;
  }
  friend std::strong_ordering operator<=>(const Angle& a, const Angle& b) {
    if (auto c = a.turns <=> b.turns; c != 0) return c;
    const int d = compare_direction(a.dir, b.dir);
    return d < 0 ? std::strong_ordering::less : (d > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
};

// Sum of two angles; the directions multiply.  For unit directions the result
// stays a unit vector.
Angle operator+(const Angle& a, const Angle& b);
// a - b for a >= b; throws std::domain_error if b > a.
Angle operator-(const Angle& a, const Angle& b);

Angle pi_angle();

// Twice the signed area of a polygon.
QRoot3 twice_signed_area(const std::vector<Point>& poly);

}  // namespace tforge

template <>
struct std::hash<tforge::Vec2> {
  std::size_t operator()(const tforge::Vec2& v) const noexcept { return v.hash(); }
};

#endif  // TFORGE_GEOMETRY_HPP
