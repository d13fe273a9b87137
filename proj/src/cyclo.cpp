#include "tforge/cyclo.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace tforge {

long gcd_long(long a, long b) { return std::gcd(a, b); }
long lcm_long(long a, long b) { return std::lcm(a, b); }

long mod_floor(long a, long n) {
  const long r = a % n;
  return r < 0 ? r + n : r;
}

long euler_phi(long n) {
  if (n < 1) throw std::invalid_argument("euler_phi needs n >= 1");
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

const RatPoly& cyclotomic_poly(long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_poly needs n >= 1");
  static std::mutex mu;
  static std::map<long, RatPoly> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  RatPoly p = RatPoly::monomial(Rational(1), static_cast<std::size_t>(n)) - RatPoly{Rational(1)};
  for (long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto [q, r] = p.divmod(cyclotomic_poly(d));
    if (!r.is_zero()) throw std::logic_error("cyclotomic division left a remainder");
    p = std::move(q);
  }
  std::lock_guard lock(mu);
  return cache.emplace(n, std::move(p)).first->second;
}

GaloisMap::GaloisMap(long n, long j) : n_(n), j_(mod_floor(j, n)) {
  if (n < 1) throw std::invalid_argument("Galois map needs n >= 1");
  if (std::gcd(j_, n_) != 1 && n_ != 1)
    throw std::invalid_argument("Galois map exponent " + std::to_string(j) + " not coprime to " +
                                std::to_string(n));
}

GaloisMap GaloisMap::compose(const GaloisMap& inner) const {
  if (inner.n_ != n_) throw std::invalid_argument("composing Galois maps of different fields");
  return {n_, (j_ * inner.j_) % n_};
}

CycloElem::CycloElem(long n) : n_(n), c_(static_cast<std::size_t>(euler_phi(n))) {}

CycloElem::CycloElem(long n, const Rational& c) : CycloElem(n) { c_[0] = c; }

CycloElem CycloElem::from_poly(long n, const RatPoly& p) {
  CycloElem out(n);
  const RatPoly r = p % cyclotomic_poly(n);
  for (std::size_t i = 0; i < r.coeffs().size(); ++i) out.c_[i] = r.coeffs()[i];
  return out;
}

CycloElem CycloElem::zeta_power(long n, long k) {
  return from_poly(n, RatPoly::monomial(Rational(1), static_cast<std::size_t>(mod_floor(k, n))));
}

CycloElem cyclo_reduce(const RatPoly& p, long n) { return CycloElem::from_poly(n, p); }

bool CycloElem::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

bool CycloElem::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

bool CycloElem::is_integral() const {
  for (const auto& c : c_)
    if (!c.is_integer()) return false;
  return true;
}

Rational CycloElem::to_rational() const {
  if (!is_rational()) throw std::domain_error("cyclotomic element is not rational: " + to_string());
  return c_[0];
}

std::complex<double> CycloElem::eval() const {
  const double t = 2.0 * std::numbers::pi / static_cast<double>(n_);
  return as_poly().eval(std::complex<double>(std::cos(t), std::sin(t)));
}

CycloElem CycloElem::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero cyclotomic element");
  const XgcdResult r = xgcd(as_poly(), cyclotomic_poly(n_));
  if (r.gcd.degree() != 0) throw std::logic_error("cyclotomic polynomial not coprime to element");
  return from_poly(n_, r.s);
}

void CycloElem::require_same_field(const CycloElem& o) const {
  if (o.n_ != n_)
    throw std::invalid_argument("mixing Q(zeta_" + std::to_string(n_) + ") and Q(zeta_" +
                                std::to_string(o.n_) + ")");
}

CycloElem CycloElem::operator-() const {
  CycloElem out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

CycloElem& CycloElem::operator+=(const CycloElem& o) {
  require_same_field(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycloElem& CycloElem::operator-=(const CycloElem& o) {
  require_same_field(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycloElem& CycloElem::operator*=(const CycloElem& o) {
  require_same_field(o);
  *this = from_poly(n_, as_poly() * o.as_poly());
  return *this;
}

CycloElem& CycloElem::operator*=(const Rational& k) {
  for (auto& c : c_) c *= k;
  return *this;
}

CycloElem sin_as_cyclo(long m, long n) {
  return CycloElem::zeta_power(n, m) - CycloElem::zeta_power(n, -m);
}

CycloElem galois_apply(const CycloElem& x, const GaloisMap& g) {
  if (g.n() != x.n()) throw std::invalid_argument("Galois map and element live in different fields");
  CycloElem out(x.n());
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
    if (x.coeffs()[i].is_zero()) continue;
    out += CycloElem::zeta_power(x.n(), static_cast<long>(i) * g.j()) * x.coeffs()[i];
  }
  return out;
}

Rational norm(const CycloElem& x) {
  CycloElem prod(x.n(), Rational(1));
  for (long j = 1; j <= x.n(); ++j) {
    if (std::gcd(j, x.n()) != 1) continue;
    prod *= galois_apply(x, GaloisMap(x.n(), j));
  }
  if (!prod.is_rational()) throw std::logic_error("norm is not rational: " + prod.to_string());
  return prod.to_rational();
}

Rational galois_sine_product(const Rational& angle_over_pi, long n) {
  // theta = pi * p/q = 2 pi * p / (2q); work in Q(zeta_M) with 4 | M so i exists.
  const long p = angle_over_pi.num().get_si();
  const long q = angle_over_pi.den().get_si();
  const long field = std::lcm(2 * q, 4L);
  const long step = p * (field / (2 * q));
  const CycloElem inv_i = CycloElem::zeta_power(field, 3 * field / 4);
  CycloElem prod(field, Rational(1));
  for (long j = 1; j <= n; ++j) {
    if (std::gcd(j, n) != 1) continue;
    prod *= sin_as_cyclo(j * step, field) * inv_i;
  }
  if (!prod.is_rational()) throw std::logic_error("sine product is not rational: " + prod.to_string());
  return prod.to_rational();
}

}  // namespace tforge
