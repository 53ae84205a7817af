#include "qnt/ideals.hpp"

#include <algorithm>
#include <tuple>

namespace qnt {

quad_ideal make_ideal(const quad_params<Int>& params, const Int& n, const Int& c, const Int& m) {
  if (n <= 0 || m <= 0) throw std::invalid_argument("make_ideal: n and m must be positive");
  if (!divides(m, n) || !divides(m, c))
    throw std::invalid_argument("make_ideal: m must divide n and c");
  if (c < 0 || c >= n) throw std::invalid_argument("make_ideal: c must lie in [0, n)");
  /* alpha*(c + m*alpha) = m*b + (c + m*a)*alpha; with m | c its
     membership reduces to the single divisibility below, and
     alpha*n = n*alpha is in the lattice automatically. */
  if (!divides(n, m * params.b - (c / m) * (c + m * params.a)))
    throw std::invalid_argument("make_ideal: lattice is not closed under alpha");
  return {params, n, c, m, Int(n * m)};
}

quad_ideal ideal_from_generators(const quad_params<Int>& params,
                                 const std::vector<quad_elem<Int>>& gens) {
  if (gens.empty()) throw std::invalid_argument("ideal_from_generators: no generators");
  std::vector<std::pair<Int, Int>> rows;
  for (const auto& g : gens) {
    if (g.params != params)
      throw std::invalid_argument("ideal_from_generators: params mismatch");
    if (g.b1 == 0 && g.b2 == 0) continue;
    rows.push_back({g.b1, g.b2});
    rows.push_back({Int(g.b2 * params.b), Int(g.b1 + g.b2 * params.a)});
  }
  if (rows.empty()) throw std::invalid_argument("ideal_from_generators: zero ideal");
  /* Accumulate one combination row (cx, cy) whose y-coordinate is the
     gcd of all y-coordinates. */
  Int cx = 0, cy = 0;
  for (const auto& [x, y] : rows) {
    if (y == 0) continue;
    if (cy == 0) {
      cx = x;
      cy = y;
      if (cy < 0) {
        cx = -cx;
        cy = -cy;
      }
      continue;
    }
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), cy.get_mpz_t(), y.get_mpz_t());
    cx = s * cx + t * x;
    cy = g;
  }
  if (cy == 0) throw std::invalid_argument("ideal_from_generators: zero ideal");
  /* Clear every y-coordinate against the combination row; the leftover
     x-coordinates generate n*Z. */
  Int n = 0;
  for (const auto& [x, y] : rows) {
    Int xp = x - (y / cy) * cx;
    mpz_gcd(n.get_mpz_t(), n.get_mpz_t(), xp.get_mpz_t());
  }
  if (n == 0) throw std::invalid_argument("ideal_from_generators: rank-deficient lattice");
  return make_ideal(params, n, mod_floor(cx, n), cy);
}

quad_ideal principal_ideal(const quad_elem<Int>& g) {
  return ideal_from_generators(g.params, {g});
}

bool contains(const quad_ideal& I, const quad_elem<Int>& x) {
  if (x.params != I.params) throw std::invalid_argument("contains: params mismatch");
  if (!divides(I.m, x.b2)) return false;
  return divides(I.n, x.b1 - I.c * (x.b2 / I.m));
}

bool contains_ideal(const quad_ideal& outer, const quad_ideal& inner) {
  return contains(outer, {inner.params, inner.n, Int(0)}) &&
         contains(outer, {inner.params, inner.c, inner.m});
}

quad_ideal ideal_mul(const quad_ideal& I, const quad_ideal& J) {
  quad_elem<Int> i1{I.params, I.n, Int(0)}, i2{I.params, I.c, I.m};
  quad_elem<Int> j1{J.params, J.n, Int(0)}, j2{J.params, J.c, J.m};
  return ideal_from_generators(I.params, {i1 * j1, i1 * j2, i2 * j1, i2 * j2});
}

quad_ideal ideal_sum(const quad_ideal& I, const quad_ideal& J) {
  if (I.params != J.params) throw std::invalid_argument("ideal_sum: params mismatch");
  return ideal_from_generators(
      I.params,
      {{I.params, I.n, Int(0)}, {I.params, I.c, I.m}, {J.params, J.n, Int(0)}, {J.params, J.c, J.m}});
}

quad_ideal ideal_conj(const quad_ideal& I) {
  return ideal_from_generators(
      I.params, {conj(quad_elem<Int>{I.params, I.n, Int(0)}),
                 conj(quad_elem<Int>{I.params, I.c, I.m})});
}

Int abs_norm(const quad_ideal& I) { return I.norm; }

quad_ideal sqrt_2_ideal(const Int& d) {
  Int r = mod_floor(d, 4);
  if (r != 2 && r != 3)
    throw std::invalid_argument("sqrt_2_ideal: d must be 2 or 3 (mod 4)");
  if (!squarefree(d)) throw std::invalid_argument("sqrt_2_ideal: d must be squarefree");
  quad_params<Int> p{Int(0), d};
  quad_elem<Int> two{p, Int(2), Int(0)};
  if (r == 2) return ideal_from_generators(p, {{p, Int(0), Int(1)}, two});
  return ideal_from_generators(p, {{p, Int(1), Int(1)}, two});
}

prime_splitting kummer_dedekind(const Int& p, const quad_params<Int>& params) {
  if (!is_prime(p)) throw std::invalid_argument("kummer_dedekind: p must be prime");
  std::vector<Int> roots;
  for (Int r = 0; r < p; ++r) {
    if (mod_floor(r * r - params.a * r - params.b, p) == 0) roots.push_back(r);
  }
  quad_ideal whole = principal_ideal({params, p, Int(0)});
  prime_splitting out;
  if (roots.empty()) {
    out.kind = splitting_kind::inert;
    out.primes = {whole};
    return out;
  }
  out.kind = roots.size() == 2 ? splitting_kind::split : splitting_kind::ramified;
  for (const Int& r : roots)
    out.primes.push_back(ideal_from_generators(params, {{params, p, Int(0)}, {params, Int(-r), Int(1)}}));
  quad_ideal back = out.kind == splitting_kind::split
                        ? ideal_mul(out.primes[0], out.primes[1])
                        : ideal_mul(out.primes[0], out.primes[0]);
  if (back != whole)
    throw std::logic_error("kummer_dedekind: factors do not multiply back to <p>; the order is not maximal at p");
  return out;
}

bool is_prime_ideal(const quad_ideal& I) {
  if (I.norm == 1) return false;
  if (is_prime(I.norm)) return true;
  auto s = integer_sqrt(I.norm);
  if (!s || !is_prime(*s)) return false;
  if (I != principal_ideal({I.params, *s, Int(0)})) return false;
  return kummer_dedekind(*s, I.params).kind == splitting_kind::inert;
}

std::optional<quad_elem<Int>> is_principal(const quad_ideal& I) {
  if (I.params.a != 0 || I.params.b >= 0)
    throw unsupported_order_error("is_principal: requires a = 0 and b < 0");
  const Int& d = I.params.b;
  const Int& N = I.norm;
  for (Int b2 = 0; -d * b2 * b2 <= N; ++b2) {
    auto b1 = integer_sqrt(N + d * b2 * b2);
    if (!b1) continue;
    quad_elem<Int> g{I.params, *b1, b2};
    if (principal_ideal(g) == I) return g;
    if (b2 > 0 && *b1 > 0) {
      quad_elem<Int> h{I.params, *b1, Int(-b2)};
      if (principal_ideal(h) == I) return h;
    }
  }
  return std::nullopt;
}

ideal_factorization factor_ideal(const quad_ideal& I) {
  if (I.params.a * I.params.a + 4 * I.params.b >= 0)
    throw unsupported_order_error("factor_ideal: imaginary quadratic only");
  ideal_factorization out;
  if (I.norm == 1) return out;
  for (const auto& [p, e] : factor(I.norm)) {
    (void)e;
    for (const auto& P : kummer_dedekind(p, I.params).primes) {
      Int k = 0;
      quad_ideal pk = P;
      while (contains_ideal(pk, I)) {
        ++k;
        pk = ideal_mul(pk, P);
      }
      if (k > 0) out.push_back({P, k});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::tie(x.first.norm, x.first.n, x.first.c, x.first.m) <
           std::tie(y.first.norm, y.first.n, y.first.c, y.first.m);
  });
  return out;
}

std::string render_ideal(const quad_ideal& I, const ring_of_integers_model& model) {
  if (I.params != model.params)
    throw std::invalid_argument("render_ideal: ideal params do not match the model");
  return "(" + I.n.get_str() + ", " + render_elem({I.params, I.c, I.m}, model) + ")";
}

}  // namespace qnt
