#ifndef TFORGE_CYCLO_HPP
#define TFORGE_CYCLO_HPP

#include "tforge/poly.hpp"
#include "tforge/rational.hpp"

#include <complex>
#include <ostream>
#include <string>
#include <vector>

namespace tforge {

long euler_phi(long n);
long gcd_long(long a, long b);
long lcm_long(long a, long b);
// Least nonnegative residue.
long mod_floor(long a, long n);

// n-th cyclotomic polynomial, built by dividing x^n - 1 by the cyclotomic
// polynomials of the proper divisors of n.  Results are memoised.
const RatPoly& cyclotomic_poly(long n);

// Automorphism zeta -> zeta^j of Q(zeta_n).
class GaloisMap {
 public:
  // Throws std::invalid_argument unless gcd(j, n) = 1.
  GaloisMap(long n, long j);
  long n() const { return n_; }
  long j() const { return j_; }
  GaloisMap compose(const GaloisMap& inner) const;  // this after inner
  friend bool operator==(const GaloisMap&, const GaloisMap&) = default;

 private:
  long n_;
  long j_;
};

// Element of Q(zeta_n): a polynomial in zeta reduced mod Phi_n, stored as
// exactly phi(n) rational coefficients.
class CycloElem {
 public:
  CycloElem(long n);  // zero element
  CycloElem(long n, const Rational& c);

  static CycloElem zeta_power(long n, long k);
  static CycloElem from_poly(long n, const RatPoly& p);

  long n() const { return n_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  RatPoly as_poly() const { return RatPoly(c_); }

  bool is_zero() const;
  bool is_rational() const;
  bool is_integral() const;
  // Constant coefficient; throws std::domain_error unless is_rational().
  Rational to_rational() const;

  std::complex<double> eval() const;
  CycloElem inverse() const;

  std::string to_string() const { return as_poly().to_string("z"); }

  CycloElem operator-() const;
  CycloElem& operator+=(const CycloElem& o);
  CycloElem& operator-=(const CycloElem& o);
  CycloElem& operator*=(const CycloElem& o);
  CycloElem& operator*=(const Rational& k);
  CycloElem& operator/=(const CycloElem& o) { return *this *= o.inverse(); }

  friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
  friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
  friend CycloElem operator*(CycloElem a, const CycloElem& b) { return a *= b; }
  friend CycloElem operator*(CycloElem a, const Rational& k) { return a *= k; }
  friend CycloElem operator/(CycloElem a, const CycloElem& b) { return a /= b; }
  friend bool operator==(const CycloElem&, const CycloElem&) = default;

  friend std::ostream& operator<<(std::ostream& os, const CycloElem& x) { return os << x.to_string(); }

 private:
  void require_same_field(const CycloElem& o) const;
  long n_;
  std::vector<Rational> c_;
};

CycloElem cyclo_reduce(const RatPoly& p, long n);

// zeta^m - zeta^-m in Q(zeta_n), i.e. 2i sin(2 pi m / n).
CycloElem sin_as_cyclo(long m, long n);

CycloElem galois_apply(const CycloElem& x, const GaloisMap& g);

// Product of all Galois conjugates.  Throws std::logic_error if the product
// fails to be rational.
Rational norm(const CycloElem& x);

// Product over j in (Z/n)* of 2 sin(j * theta), theta = angle_over_pi * pi,
// computed exactly in a cyclotomic field that contains i.
Rational galois_sine_product(const Rational& angle_over_pi, long n);

}  // namespace tforge

#endif  // TFORGE_CYCLO_HPP
