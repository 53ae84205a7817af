#ifndef QNT_INTEGERS_HPP
#define QNT_INTEGERS_HPP

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

namespace qnt {

using Int = mpz_class;
using Rat = mpq_class;

/* Remainder of a by m with m > 0, always in [0, m). */
Int mod_floor(const Int& a, const Int& m);

bool divides(const Int& d, const Int& a);

/* Reduced rational num/den with den > 0. */
Rat make_rat(const Int& num, const Int& den);

/* Largest s >= 0 with s*s <= n; requires n >= 0. */
Int isqrt_floor(const Int& n);

/* The exact square root when n is a perfect square >= 0, empty otherwise
   (negatives and non-squares both map to empty, not errors). */
std::optional<Int> integer_sqrt(const Int& n);

bool is_square(const Int& n);
/* A rational in lowest terms is a square iff numerator and denominator
   both are. */
bool is_square(const Rat& q);

/* True iff no prime p has p*p | n.  Decided by direct trial division so
   that the answer does not depend on factor(). */
bool squarefree(const Int& n);

/* Exact for every input: word-sized n use a fixed Miller-Rabin witness
   set that is deterministic below 3.3e24, larger n fall back to trial
   division.  Rejects n < 0. */
bool is_prime(const Int& n);

/* Prime factorization of n >= 2 as (prime, exponent) pairs with strictly
   increasing primes.  Trial division up to 10^6, Pollard rho for any
   remaining cofactor. */
std::vector<std::pair<Int, Int>> factor(const Int& n);

/* Kronecker symbol (a|n): the Jacobi symbol for odd n > 0, extended to
   all integers n.  Zero exactly when gcd(a, n) > 1. */
int kronecker(const Int& a, const Int& n);

}  // namespace qnt

#endif
