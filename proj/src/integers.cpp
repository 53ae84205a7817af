#include "qnt/integers.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>

namespace qnt {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

/* Witnesses proving primality for every n below 3.3e24, so for all of
   u64.  (Sorenson & Webster's bound for the first twelve primes.) */
constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kWitnesses) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/* Pollard rho (Brent cycle finding) on a u64 composite with no factor
   found by the preceding trial division.  Always succeeds for such n. */
u64 rho_u64(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    while (d == 1) {
      x = (mulmod(x, x, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      u64 diff = x > y ? x - y : y - x;
      if (diff == 0) break;  // cycle without factor, try next c
      d = std::gcd(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
}

/* Same algorithm on mpz for inputs past 64 bits. */
Int rho_mpz(const Int& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (Int c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    while (d == 1) {
      x = mod_floor(x * x + c, n);
      y = mod_floor(y * y + c, n);
      y = mod_floor(y * y + c, n);
      Int diff = abs(x - y);
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_u64_into(u64 n, std::map<Int, Int>& out) {
  while (n % 2 == 0) {
    ++out[2];
    n /= 2;
  }
  for (u64 p = 3; p <= 1000000 && p * p <= n; p += 2) {
    while (n % p == 0) {
      ++out[Int(static_cast<unsigned long>(p))];
      n /= p;
    }
  }
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[Int(static_cast<unsigned long>(n))];
    return;
  }
  u64 f = rho_u64(n);
  factor_u64_into(f, out);
  factor_u64_into(n / f, out);
}

void factor_mpz_into(Int n, std::map<Int, Int>& out) {
  if (mpz_fits_ulong_p(n.get_mpz_t())) {
    factor_u64_into(n.get_ui(), out);
    return;
  }
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Int f = rho_mpz(n);
  factor_mpz_into(f, out);
  factor_mpz_into(n / f, out);
}

}  // namespace

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool divides(const Int& d, const Int& a) {
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Int isqrt_floor(const Int& n) {
  if (n < 0) throw std::invalid_argument("isqrt_floor: negative input");
  Int s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  return s;
}

std::optional<Int> integer_sqrt(const Int& n) {
  if (n < 0) return std::nullopt;
  Int s, rem;
  mpz_sqrtrem(s.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
  if (rem != 0) return std::nullopt;
  return s;
}

bool is_square(const Int& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_square(const Rat& q) {
  return is_square(Int(q.get_num())) && is_square(Int(q.get_den()));
}

bool squarefree(const Int& n) {
  if (n == 0) throw std::invalid_argument("squarefree: undefined for 0");
  if (mpz_fits_ulong_p(Int(abs(n)).get_mpz_t())) {
    u64 m = Int(abs(n)).get_ui();
    if (m % 2 == 0) {
      m /= 2;
      if (m % 2 == 0) return false;
    }
    for (u64 p = 3; p * p <= m; p += 2) {
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) return false;
      }
    }
    return true;
  }
  Int m = abs(n);
  if (mpz_even_p(m.get_mpz_t())) {
    m >>= 1;
    if (mpz_even_p(m.get_mpz_t())) return false;
  }
  for (Int p = 3; p * p <= m; p += 2) {
    if (divides(p, m)) {
      m /= p;
      if (divides(p, m)) return false;
    }
  }
  return true;
}

bool is_prime(const Int& n) {
  if (n < 0) throw std::invalid_argument("is_prime: negative input");
  if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime_u64(n.get_ui());
  /* Past u64: trial division.  Adequate for the sizes this library
     actually meets; no probabilistic answer is ever returned. */
  if (mpz_even_p(n.get_mpz_t())) return false;
  for (Int p = 3; p * p <= n; p += 2) {
    if (divides(p, n)) return false;
  }
  return true;
}

std::vector<std::pair<Int, Int>> factor(const Int& n) {
  if (n < 2) throw std::invalid_argument("factor: input must be >= 2");
  std::map<Int, Int> acc;
  if (mpz_fits_ulong_p(n.get_mpz_t())) {
    factor_u64_into(n.get_ui(), acc);
  } else {
    Int m = n;
    /* Strip small primes first so the rho stage only ever sees inputs
       with no factor below 10^6. */
    while (mpz_even_p(m.get_mpz_t())) {
      ++acc[2];
      m >>= 1;
    }
    for (Int p = 3; p <= 1000000 && p * p <= m; p += 2) {
      while (divides(p, m)) {
        ++acc[p];
        m /= p;
      }
    }
    if (m > 1) factor_mpz_into(m, acc);
  }
  return {acc.begin(), acc.end()};
}

int kronecker(const Int& a_in, const Int& n_in) {
  Int a = a_in, n = n_in;
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (mpz_even_p(a.get_mpz_t()) && mpz_even_p(n.get_mpz_t())) return 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  /* Split off the even part of n; each factor (a|2) is -1 iff
     a = 3, 5 (mod 8).  a is odd here by the shared-factor check. */
  unsigned long twos = mpz_scan1(n.get_mpz_t(), 0);
  if (twos > 0) {
    n >>= twos;
    if (twos & 1) {
      unsigned long a8 = mpz_fdiv_ui(a.get_mpz_t(), 8);
      if (a8 == 3 || a8 == 5) result = -result;
    }
  }
  /* Jacobi loop for odd n > 0 by reciprocity. */
  a = mod_floor(a, n);
  while (a != 0) {
    unsigned long z = mpz_scan1(a.get_mpz_t(), 0);
    if (z > 0) {
      a >>= z;
      if (z & 1) {
        unsigned long n8 = mpz_fdiv_ui(n.get_mpz_t(), 8);
        if (n8 == 3 || n8 == 5) result = -result;
      }
    }
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3)
      result = -result;
    swap(a, n);
    a = mod_floor(a, n);
  }
  return n == 1 ? result : 0;
}

}  // namespace qnt
