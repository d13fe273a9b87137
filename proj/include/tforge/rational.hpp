#ifndef TFORGE_RATIONAL_HPP
#define TFORGE_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstddef>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <optional>

namespace tforge {

// Arbitrary-precision rational, always kept in lowest terms with a positive
// denominator.  Thin value wrapper around mpq_class.
class Rational {
 public:
  Rational() = default;
  template <std::integral T>
  Rational(T v) : v_(mpz_class(static_cast<long>(v))) {}  // NOLINT(implicit)
  Rational(long num, long den);
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpz_class& num) : v_(num) {}
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Accepts "p" or "p/q" with optional leading sign.  Throws
  // std::invalid_argument on malformed input or zero denominator.
  static Rational parse(std::string_view text);

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  double to_double() const { return v_.get_d(); }

  // Integer value; throws std::domain_error unless is_integer().
  mpz_class to_integer() const;
  // Floor as an integer.
  mpz_class floor() const;

  Rational abs() const { return Rational(mpq_class(::abs(v_))); }
  Rational inverse() const;
  Rational pow(int e) const;

  // Exact square root when this is the square of a rational.
  std::optional<Rational> sqrt_exact() const;

  // "p/q" form, always with an explicit denominator.
  std::string to_string() const;
  // Shorter form for humans: "p" when integral.
  std::string to_pretty() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const;

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_pretty();
  }

 private:
  mpq_class v_{0};
};

mpz_class gcd(const mpz_class& a, const mpz_class& b);

}  // namespace tforge

template <>
struct std::hash<tforge::Rational> {
  std::size_t operator()(const tforge::Rational& r) const noexcept { return r.hash(); }
};

#endif  // TFORGE_RATIONAL_HPP
