#ifndef TFORGE_POLY_HPP
#define TFORGE_POLY_HPP

#include "tforge/rational.hpp"

#include <complex>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace tforge {

// Dense univariate polynomial over Q, coefficients stored low degree first.
// Trailing zeros are always trimmed; the zero polynomial has no coefficients.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs);
  RatPoly(std::initializer_list<Rational> coeffs) : RatPoly(std::vector<Rational>(coeffs)) {}

  static RatPoly monomial(Rational c, std::size_t degree);

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& lead() const { return c_.back(); }
  bool has_integer_coeffs() const;

  std::complex<double> eval(std::complex<double> x) const;
  Rational eval(const Rational& x) const;

  // Quotient and remainder; throws std::domain_error for a zero divisor.
  std::pair<RatPoly, RatPoly> divmod(const RatPoly& divisor) const;
  RatPoly monic() const;

  std::string to_string(const std::string& var = "x") const;

  RatPoly operator-() const;
  RatPoly& operator+=(const RatPoly& o);
  RatPoly& operator-=(const RatPoly& o);
  RatPoly& operator*=(const RatPoly& o);
  RatPoly& operator*=(const Rational& k);

  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(RatPoly a, const RatPoly& b) { return a *= b; }
  friend RatPoly operator*(RatPoly a, const Rational& k) { return a *= k; }
  friend RatPoly operator%(const RatPoly& a, const RatPoly& b) { return a.divmod(b).second; }
  friend bool operator==(const RatPoly&, const RatPoly&) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct XgcdResult {
  RatPoly gcd;  // monic
  RatPoly s;
  RatPoly t;    // s*a + t*b = gcd
};

XgcdResult xgcd(const RatPoly& a, const RatPoly& b);

}  // namespace tforge

#endif  // TFORGE_POLY_HPP
