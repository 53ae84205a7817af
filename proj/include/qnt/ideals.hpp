#ifndef QNT_IDEALS_HPP
#define QNT_IDEALS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qnt/errors.hpp"
#include "qnt/integers.hpp"
#include "qnt/quad_ring.hpp"

namespace qnt {

/* Nonzero integral ideal of Z[alpha] in Hermite normal form: the
   Z-basis is {n, c + m*alpha} with n > 0, m > 0, m | n, m | c,
   0 <= c < n, and the lattice closed under multiplication by alpha.
   The representation is unique, so equality is componentwise, and the
   lattice index (the absolute norm) is n*m. */
struct quad_ideal {
  quad_params<Int> params;
  Int n;
  Int c;
  Int m;
  Int norm;
  friend bool operator==(const quad_ideal& x, const quad_ideal& y) {
    return x.params == y.params && x.n == y.n && x.c == y.c && x.m == y.m;
  }
  friend bool operator!=(const quad_ideal& x, const quad_ideal& y) { return !(x == y); }
};

/* Validates every representation invariant, including alpha-closure. */
quad_ideal make_ideal(const quad_params<Int>& params, const Int& n, const Int& c, const Int& m);

/* Smallest ideal containing the generators: the HNF of the lattice
   spanned by {g, alpha*g} over all g.  Rejects the zero ideal. */
quad_ideal ideal_from_generators(const quad_params<Int>& params,
                                 const std::vector<quad_elem<Int>>& gens);

quad_ideal principal_ideal(const quad_elem<Int>& g);

bool contains(const quad_ideal& I, const quad_elem<Int>& x);

/* inner as a subset of outer; in a Dedekind domain this is exactly
   "outer divides inner". */
bool contains_ideal(const quad_ideal& outer, const quad_ideal& inner);

quad_ideal ideal_mul(const quad_ideal& I, const quad_ideal& J);

/* The ideal gcd. */
quad_ideal ideal_sum(const quad_ideal& I, const quad_ideal& J);

quad_ideal ideal_conj(const quad_ideal& I);

/* n*m; multiplicative, and I * conj(I) = <abs_norm(I)>. */
Int abs_norm(const quad_ideal& I);

/* The norm-2 ideal of Z[sqrt(d)]: <sqrt(d), 2> when d = 2 (mod 4),
   <1 + sqrt(d), 2> when d = 3 (mod 4).  Squares to <2>. */
quad_ideal sqrt_2_ideal(const Int& d);

/* Shape of p*Z[alpha] read off from X^2 - aX - b mod p: no root keeps
   <p> prime, two roots split it, a double root ramifies it. */
enum class splitting_kind { inert, split, ramified };

struct prime_splitting {
  splitting_kind kind;
  /* inert: {<p>}; split: {P1, P2} with distinct roots; ramified: {P}.
     The primes multiply back to <p>. */
  std::vector<quad_ideal> primes;
};

/* Valid because every order used here is monogenic of index 1; the
   multiply-back property is rechecked and a violation reported rather
   than silently accepted. */
prime_splitting kummer_dedekind(const Int& p, const quad_params<Int>& params);

bool is_prime_ideal(const quad_ideal& I);

/* A generator g with <g> = I when one exists.  The search runs over
   |b2| <= sqrt(N/|d|) since b1^2 = N + d*b2^2 must be nonnegative, so
   it is exhaustive; among the associates +-g the returned generator
   has b1 > 0, or b2 > 0 when b1 = 0.  Only imaginary quadratic
   (a = 0, b < 0) parameters are supported. */
std::optional<quad_elem<Int>> is_principal(const quad_ideal& I);

using ideal_factorization = std::vector<std::pair<quad_ideal, Int>>;

/* Prime factorization via kummer_dedekind at each prime dividing the
   norm, with exponents read off by repeated containment.  Factors are
   ordered by (norm, n, c, m); <1> factors as the empty product. */
ideal_factorization factor_ideal(const quad_ideal& I);

/* "(n, c + m*sqrt(d))" with the second basis element rendered like a
   ring element, e.g. "(2, 1 + sqrt(-5))". */
std::string render_ideal(const quad_ideal& I, const ring_of_integers_model& model);

}  // namespace qnt

#endif
