#include "tforge/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tforge {

namespace {

// 0 for polar angle in [0, pi), 1 for [pi, 2pi).
int half(const Vec2& v) {
  const int sy = v.y.sign();
  if (sy > 0) return 0;
  if (sy < 0) return 1;
  return v.x.sign() > 0 ? 0 : 1;
}

}  // namespace

int compare_direction(const Vec2& a, const Vec2& b) {
  const int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb ? -1 : 1;
  return -cross(a, b).sign();
}

Angle Angle::between(const Vec2& u, const Vec2& w) {
  // Rotate w back by u: w * conj(u) has the polar angle of the difference.
  Angle out;
  out.dir = cmul(w, Vec2{u.x, -u.y});
  return out;
}

double Angle::to_double() const {
  double t = std::atan2(dir.y.to_double(), dir.x.to_double());
  if (t < 0) t += 2 * std::numbers::pi;
  if (half(dir) == 0 && t >= std::numbers::pi) t = std::nextafter(std::numbers::pi, 0.0);
  return 2 * std::numbers::pi * static_cast<double>(turns) + t;
}

Angle operator+(const Angle& a, const Angle& b) {
  Angle out;
  out.dir = cmul(a.dir, b.dir);
  out.turns = a.turns + b.turns;
  const bool b_zero_dir = b.dir.y.is_zero() && b.dir.x.sign() > 0;
  if (!b_zero_dir && compare_direction(out.dir, a.dir) < 0) ++out.turns;
  return out;
}

Angle operator-(const Angle& a, const Angle& b) {
  if (b > a) throw std::domain_error("negative angle difference");
  Angle out;
  out.dir = cmul(a.dir, Vec2{b.dir.x, -b.dir.y});
  out.turns = a.turns - b.turns;
  if (compare_direction(a.dir, b.dir) < 0) --out.turns;
  return out;
}

Angle pi_angle() {
  Angle out;
  out.dir = {QRoot3(-1), QRoot3(0)};
  return out;
}

QRoot3 twice_signed_area(const std::vector<Point>& poly) {
  QRoot3 s;
  for (std::size_t i = 0; i < poly.size(); ++i) s += cross(poly[i], poly[(i + 1) % poly.size()]);
  return s;
}

}  // namespace tforge
