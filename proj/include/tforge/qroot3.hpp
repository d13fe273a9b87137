#ifndef TFORGE_QROOT3_HPP
#define TFORGE_QROOT3_HPP

#include "tforge/rational.hpp"

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace tforge {

// Element r + s*sqrt(3) of the real quadratic field Q(sqrt 3).
class QRoot3 {
 public:
  QRoot3() = default;
  QRoot3(Rational r) : r_(std::move(r)) {}  // NOLINT(implicit)
  template <std::integral T>
  QRoot3(T v) : r_(v) {}  // NOLINT(implicit)
  QRoot3(Rational r, Rational s) : r_(std::move(r)), s_(std::move(s)) {}

  static QRoot3 sqrt3() { return {Rational(0), Rational(1)}; }

  // Grammar: sum of terms, each INT, INT/INT, sqrt3, or RAT*sqrt3
  // (e.g. "3", "5/2", "sqrt3", "3/2*sqrt3", "1+2*sqrt3", "-sqrt3/2").
  static QRoot3 parse(std::string_view text);

  const Rational& r() const { return r_; }
  const Rational& s() const { return s_; }

  bool is_zero() const { return r_.is_zero() && s_.is_zero(); }
  bool is_rational() const { return s_.is_zero(); }
  int sign() const;
  double to_double() const;

  QRoot3 conj() const { return {r_, -s_}; }
  // Field norm r^2 - 3 s^2.
  Rational norm() const { return r_ * r_ - Rational(3) * s_ * s_; }
  QRoot3 inverse() const;
  QRoot3 abs() const { return sign() < 0 ? -*this : *this; }

  // Largest integer <= value.
  mpz_class floor() const;
  // Square root inside Q(sqrt 3) when one exists (nonnegative root).
  std::optional<QRoot3> sqrt_exact() const;

  std::string to_string() const;

  QRoot3 operator-() const { return {-r_, -s_}; }
  QRoot3& operator+=(const QRoot3& o) { r_ += o.r_; s_ += o.s_; return *this; }
  QRoot3& operator-=(const QRoot3& o) { r_ -= o.r_; s_ -= o.s_; return *this; }
  QRoot3& operator*=(const QRoot3& o);
  QRoot3& operator/=(const QRoot3& o) { return *this *= o.inverse(); }

  friend QRoot3 operator+(QRoot3 a, const QRoot3& b) { return a += b; }
  friend QRoot3 operator-(QRoot3 a, const QRoot3& b) { return a -= b; }
  friend QRoot3 operator*(QRoot3 a, const QRoot3& b) { return a *= b; }
  friend QRoot3 operator/(QRoot3 a, const QRoot3& b) { return a /= b; }

  friend bool operator==(const QRoot3& a, const QRoot3& b) { return a.r_ == b.r_ && a.s_ == b.s_; }
  // Numeric order of the real values.
  friend std::strong_ordering operator<=>(const QRoot3& a, const QRoot3& b) {
    const int c = (a - b).sign();
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const { return r_.hash() * 31 + s_.hash(); }

  friend std::ostream& operator<<(std::ostream& os, const QRoot3& x) { return os << x.to_string(); }

 private:
  Rational r_;
  Rational s_;
};

// Sign of r + s*sqrt(3), by case analysis on the signs of r and s and a
// comparison of r^2 against 3 s^2.  No floating point involved.
int qr3_sign(const QRoot3& x);

}  // namespace tforge

template <>
struct std::hash<tforge::QRoot3> {
  std::size_t operator()(const tforge::QRoot3& x) const noexcept { return x.hash(); }
};

#endif  // TFORGE_QROOT3_HPP
