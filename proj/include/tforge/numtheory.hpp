#ifndef TFORGE_NUMTHEORY_HPP
#define TFORGE_NUMTHEORY_HPP

#include "tforge/qroot3.hpp"
#include "tforge/rational.hpp"

#include <optional>

namespace tforge {

// theta/pi for theta = arccos(c) when theta is a rational multiple of pi,
// otherwise nullopt.  Throws std::domain_error unless -1 <= c <= 1.
std::optional<Rational> niven_classify(const Rational& c);

// Same question for a cosine in Q(sqrt3).  Besides the rational values the
// only cosines of rational angles in this field are +-sqrt3/2.
std::optional<Rational> niven_classify(const QRoot3& c);

struct PrimeSplitting {
  long e;  // ramification index
  long f;  // residue degree
  long g;  // number of primes above p
  mpz_class residue_norm;  // p^f
};

bool is_prime(long p);
long multiplicative_order(long a, long m);

// Decomposition of p in Z[zeta_n].  Throws std::invalid_argument unless p is
// prime and n >= 2.
PrimeSplitting prime_splitting(long p, long n);

}  // namespace tforge

#endif  // TFORGE_NUMTHEORY_HPP
