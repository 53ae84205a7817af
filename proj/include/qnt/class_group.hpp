#ifndef QNT_CLASS_GROUP_HPP
#define QNT_CLASS_GROUP_HPP

#include <optional>
#include <vector>

#include "qnt/errors.hpp"
#include "qnt/ideals.hpp"
#include "qnt/integers.hpp"

namespace qnt {

/* Outcome of the norm-estimate search: Verified carries the finest
   grid resolution used, Refuted a grid cell on which every multiplier
   fails, Inconclusive the resolution cap that was reached. */
enum class mset_status { verified, refuted, inconclusive };

struct mset_certificate {
  Int d;
  std::vector<Int> m_set; /* sorted, deduplicated, all nonzero */
  mset_status status = mset_status::inconclusive;
  long resolution = 1;
  /* Refuted only: every point of [i/L, (i+1)/L] x [j/L, (j+1)/L] in
     the (1, sqrt(d)) basis fails the estimate for every multiplier. */
  long witness_i = 0;
  long witness_j = 0;
  long witness_l = 0;
};

/* Decides whether every field element gamma admits q in Z[sqrt(d)]
   and r in M with |N(r*gamma - q)| < 1.  gamma reduces to the unit
   square; the square is partitioned into exact rational cells and the
   positive-definite norm is bounded per cell through its coordinate
   monotonicity, refining ambiguous cells up to resolution 256. */
mset_certificate verify_m_set(const Int& d, const std::vector<Int>& m_set);

/* The prime ideals dividing <prod M>, via kummer_dedekind at each
   prime factor of the product.  Their classes generate the class
   group whenever the certificate is Verified; any other certificate
   is rejected. */
std::vector<quad_ideal> generator_primes(const Int& d, const mset_certificate& cert);

/* 4d for d = 2, 3 (mod 4), d for d = 1 (mod 4); d squarefree, not 1. */
Int discriminant(const Int& d);

/* A rational upper bound on (2/pi)*sqrt(|discriminant|), using a
   directed-rounding square root and the lower bound
   pi >= 314159265/10^8, so enumerating primes up to it is sound. */
Rat minkowski_bound(const Int& d);

/* The canonical representative of the ideal class of I: the first
   equivalent ideal in the enumeration of all ideals ordered by
   (norm, n, c, m), norms up to the Minkowski bound. */
quad_ideal reduce_class(const quad_ideal& I);

/* Smallest k >= 1 with I^k principal. */
Int order_of_class(const quad_ideal& I);

enum class cg_method { mset, minkowski };

struct class_group_descriptor {
  Int d;
  Int delta;
  Int h;
  /* Greedy generating sequence: each entry has maximal order in the
     quotient by the previously chosen generators, ties broken by the
     element ordering; empty for the trivial group. */
  std::vector<std::pair<quad_ideal, Int>> generators;
  /* Reduced representatives of all classes, ordered by (norm, n, c, m);
     the identity is <1>. */
  std::vector<quad_ideal> elements;
  cg_method method;
  /* Present for the mset method. */
  std::optional<mset_certificate> certificate;
};

/* Closes the classes of the generator primes under multiplication,
   with equivalence decided by principality of I*conj(J).  The mset
   method uses the supplied multiplier set, defaulting to
   {1, ..., ceil(minkowski_bound)}, and demands a Verified
   certificate; both methods produce identical group data. */
class_group_descriptor class_group(
    const Int& d, cg_method method = cg_method::minkowski,
    const std::optional<std::vector<Int>>& m_set = std::nullopt);

/* w/(2*delta) * sum over 0 < a < |delta| of kronecker(delta, a)*a,
   with w = 4, 6, 2 for d = -1, -3, anything else.  Throws logic_error
   if the sum fails to produce a positive integer. */
Int class_number_analytic(const Int& d);

/* Count of reduced primitive binary quadratic forms (A, B, C) of
   discriminant delta: B^2 - 4AC = delta, |B| <= A <= C, gcd 1, and
   B >= 0 when |B| = A or A = C. */
Int class_number_forms_oracle(const Int& d);

}  // namespace qnt

#endif
