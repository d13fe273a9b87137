#ifndef TFORGE_QTOWER_HPP
#define TFORGE_QTOWER_HPP

#include "tforge/qroot3.hpp"
#include "tforge/rational.hpp"

#include <array>
#include <ostream>
#include <string>

namespace tforge {

// Element of Q(sqrt2, sqrt3) in the basis {1, sqrt2, sqrt3, sqrt6}.
class QTower {
 public:
  QTower() = default;
  QTower(Rational c0) : c_{std::move(c0), 0, 0, 0} {}  // NOLINT(implicit)
  template <std::integral T>
  QTower(T v) : c_{Rational(v), 0, 0, 0} {}  // NOLINT(implicit)
  QTower(Rational one, Rational r2, Rational r3, Rational r6)
      : c_{std::move(one), std::move(r2), std::move(r3), std::move(r6)} {}
  QTower(const QRoot3& x) : c_{x.r(), 0, x.s(), 0} {}  // NOLINT(implicit)

  static QTower sqrt2() { return {0, 1, 0, 0}; }
  static QTower sqrt3() { return {0, 0, 1, 0}; }
  static QTower sqrt6() { return {0, 0, 0, 1}; }

  const Rational& operator[](std::size_t i) const { return c_.at(i); }

  bool is_zero() const;
  bool is_rational() const { return c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero(); }
  // True when the element lies in Q(sqrt3).
  bool in_qroot3() const { return c_[1].is_zero() && c_[3].is_zero(); }
  QRoot3 to_qroot3() const;
  double to_double() const;

  // Automorphism sending sqrt2 to -sqrt2 (flip2) or sqrt3 to -sqrt3 (flip3).
  QTower conj(bool flip2, bool flip3) const;
  // Product of the four conjugates.
  Rational norm() const;
  QTower inverse() const;

  std::string to_string() const;

  QTower operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }
  QTower& operator+=(const QTower& o);
  QTower& operator-=(const QTower& o);
  QTower& operator*=(const QTower& o);
  QTower& operator/=(const QTower& o) { return *this *= o.inverse(); }

  friend QTower operator+(QTower a, const QTower& b) { return a += b; }
  friend QTower operator-(QTower a, const QTower& b) { return a -= b; }
  friend QTower operator*(QTower a, const QTower& b) { return a *= b; }
  friend QTower operator/(QTower a, const QTower& b) { return a /= b; }
  friend bool operator==(const QTower& a, const QTower& b) { return a.c_ == b.c_; }

  friend std::ostream& operator<<(std::ostream& os, const QTower& x) { return os << x.to_string(); }

 private:
  std::array<Rational, 4> c_;
};

}  // namespace tforge

#endif  // TFORGE_QTOWER_HPP
