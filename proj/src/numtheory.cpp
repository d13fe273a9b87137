#include "tforge/numtheory.hpp"

#include "tforge/cyclo.hpp"

#include <numeric>
#include <stdexcept>

namespace tforge {

std::optional<Rational> niven_classify(const Rational& c) {
  if (c < Rational(-1) || c > Rational(1)) throw std::domain_error("cosine outside [-1, 1]");
  if (c == Rational(1)) return Rational(0);
  if (c == Rational(1, 2)) return Rational(1, 3);
  if (c.is_zero()) return Rational(1, 2);
  if (c == Rational(-1, 2)) return Rational(2, 3);
  if (c == Rational(-1)) return Rational(1);
  return std::nullopt;
}

std::optional<Rational> niven_classify(const QRoot3& c) {
  if (c.is_rational()) return niven_classify(c.r());
  if (c < QRoot3(-1) || c > QRoot3(1)) throw std::domain_error("cosine outside [-1, 1]");
  if (c.r().is_zero() && c.s() == Rational(1, 2)) return Rational(1, 6);
  if (c.r().is_zero() && c.s() == Rational(-1, 2)) return Rational(5, 6);
  return std::nullopt;
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long multiplicative_order(long a, long m) {
  if (m == 1) return 1;
  if (std::gcd(a, m) != 1) throw std::invalid_argument("order of a non-unit");
  long x = mod_floor(a, m);
  long k = 1;
  while (x != 1) {
    x = (x * a) % m;
    ++k;
  }
  return k;
}

PrimeSplitting prime_splitting(long p, long n) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (n < 2) throw std::invalid_argument("prime_splitting needs n >= 2");
  long m = n;
  long pk = 1;
  while (m % p == 0) {
    m /= p;
    pk *= p;
  }
  const long f = multiplicative_order(p, m);
  PrimeSplitting out{euler_phi(pk), f, euler_phi(m) / f, 0};
  mpz_ui_pow_ui(out.residue_norm.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(f));
  return out;
}

}  // namespace tforge
