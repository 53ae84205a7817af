#include "qnt/class_group.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "qnt/quad_ring.hpp"

namespace qnt {

namespace {

void validate_cg_d(const Int& d, const char* who) {
  if (d >= 0) {
    throw unsupported_order_error(std::string(who) +
                                  ": only imaginary quadratic orders are supported");
  }
  if (!squarefree(d)) {
    throw std::invalid_argument(std::string(who) + ": d must be squarefree");
  }
  if (mod_floor(d, 4) == 1) {
    throw std::invalid_argument(std::string(who) + ": d must be 2 or 3 (mod 4)");
  }
}

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int cdiv(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

struct cell {
  long i;
  long j;
  long l;
};

/* Whether some q in the scaled lattice (l*Z)^2 satisfies
   dx^2 + |d|*dy^2 < l^2 with dx, dy the largest coordinate distances
   from q to the box [r*i, r*(i+1)] x [r*j, r*(j+1)].  The coordinate
   distance is maximized at an endpoint, so this bounds the norm over
   the whole cell from above. */
bool cell_covered(const Int& absd, const Int& r, const cell& c) {
  Int L(c.l);
  Int L2 = L * L;
  Int u0 = r * c.i, u1 = u0 + r;
  Int v0 = r * c.j, v1 = v0 + r;
  for (Int kx = fdiv(u0, L), kx1 = cdiv(u1, L); kx <= kx1; ++kx) {
    Int qx = kx * L;
    Int dx = std::max(abs(qx - u0), abs(qx - u1));
    for (Int ky = fdiv(v0, L), ky1 = cdiv(v1, L); ky <= ky1; ++ky) {
      Int qy = ky * L;
      Int dy = std::max(abs(qy - v0), abs(qy - v1));
      if (dx * dx + absd * dy * dy < L2) return true;
    }
  }
  return false;
}

/* Whether no q reaches dx^2 + |d|*dy^2 < l^2 with dx, dy the smallest
   coordinate distances from q to the box, i.e. the multiplier fails at
   every point of the cell.  Only lattice points between the outermost
   multiples of l around the box can be nearest. */
bool cell_unreachable(const Int& absd, const Int& r, const cell& c) {
  Int L(c.l);
  Int L2 = L * L;
  Int u0 = r * c.i, u1 = u0 + r;
  Int v0 = r * c.j, v1 = v0 + r;
  for (Int kx = fdiv(u0, L), kx1 = cdiv(u1, L); kx <= kx1; ++kx) {
    Int qx = kx * L;
    Int dx = qx < u0 ? u0 - qx : (qx > u1 ? qx - u1 : Int(0));
    for (Int ky = fdiv(v0, L), ky1 = cdiv(v1, L); ky <= ky1; ++ky) {
      Int qy = ky * L;
      Int dy = qy < v0 ? v0 - qy : (qy > v1 ? qy - v1 : Int(0));
      if (dx * dx + absd * dy * dy < L2) return false;
    }
  }
  return true;
}

constexpr long kResolutionCap = 256;

Int rat_floor(const Rat& q) {
  Int n = q.get_num(), d = q.get_den();
  return fdiv(n, d);
}

Int rat_ceil(const Rat& q) {
  Int n = q.get_num(), d = q.get_den();
  return cdiv(n, d);
}

bool ideal_order_less(const quad_ideal& a, const quad_ideal& b) {
  return std::tie(a.norm, a.n, a.c, a.m) < std::tie(b.norm, b.n, b.c, b.m);
}

/* All ideals of the given norm, ordered by (n, c, m). */
std::vector<quad_ideal> ideals_of_norm(const quad_params<Int>& params, const Int& N) {
  std::vector<quad_ideal> out;
  for (Int m = 1; m * m <= N; ++m) {
    if (!divides(m * m, N)) continue;
    Int n = N / m;
    for (Int c = 0; c < n; c += m) {
      if (divides(n, m * params.b - (c / m) * (c + m * params.a))) {
        out.push_back(make_ideal(params, n, c, m));
      }
    }
  }
  std::sort(out.begin(), out.end(), ideal_order_less);
  return out;
}

bool same_class(const quad_ideal& I, const quad_ideal& J) {
  return is_principal(ideal_mul(I, ideal_conj(J))).has_value();
}

/* The classes generated by gens: reduced representatives, identity
   first, closed under multiplication by each generator. */
std::vector<quad_ideal> close_classes(const quad_ideal& one,
                                      const std::vector<quad_ideal>& gens) {
  std::vector<quad_ideal> elems{one};
  std::vector<quad_ideal> frontier{one};
  while (!frontier.empty()) {
    std::vector<quad_ideal> next;
    for (const auto& e : frontier) {
      for (const auto& g : gens) {
        quad_ideal r = reduce_class(ideal_mul(e, g));
        if (std::find(elems.begin(), elems.end(), r) == elems.end()) {
          elems.push_back(r);
          next.push_back(r);
        }
      }
    }
    frontier = std::move(next);
  }
  return elems;
}

}  // namespace

mset_certificate verify_m_set(const Int& d, const std::vector<Int>& m_set) {
  validate_cg_d(d, "verify_m_set");
  for (const Int& m : m_set) {
    if (m == 0) {
      throw std::invalid_argument("verify_m_set: multipliers must be nonzero");
    }
  }
  mset_certificate cert;
  cert.d = d;
  cert.m_set = m_set;
  std::sort(cert.m_set.begin(), cert.m_set.end());
  cert.m_set.erase(std::unique(cert.m_set.begin(), cert.m_set.end()),
                   cert.m_set.end());
  std::vector<Int> mags;
  for (const Int& m : cert.m_set) mags.push_back(abs(m));
  std::sort(mags.begin(), mags.end());
  mags.erase(std::unique(mags.begin(), mags.end()), mags.end());

  Int absd = -d;
  long finest = 1;
  bool incomplete = false;
  std::vector<cell> stack{{0, 0, 1}};
  while (!stack.empty()) {
    cell c = stack.back();
    stack.pop_back();
    bool covered = false;
    for (const Int& r : mags) {
      if (cell_covered(absd, r, c)) {
        covered = true;
        break;
      }
    }
    if (covered) {
      finest = std::max(finest, c.l);
      continue;
    }
    bool dead = true;
    for (const Int& r : mags) {
      if (!cell_unreachable(absd, r, c)) {
        dead = false;
        break;
      }
    }
    if (dead) {
      cert.status = mset_status::refuted;
      cert.resolution = c.l;
      cert.witness_i = c.i;
      cert.witness_j = c.j;
      cert.witness_l = c.l;
      return cert;
    }
    if (c.l >= kResolutionCap) {
      incomplete = true;
      continue;
    }
    long l2 = c.l * 2;
    stack.push_back({2 * c.i, 2 * c.j, l2});
    stack.push_back({2 * c.i + 1, 2 * c.j, l2});
    stack.push_back({2 * c.i, 2 * c.j + 1, l2});
    stack.push_back({2 * c.i + 1, 2 * c.j + 1, l2});
  }
  cert.status = incomplete ? mset_status::inconclusive : mset_status::verified;
  cert.resolution = incomplete ? kResolutionCap : finest;
  return cert;
}

std::vector<quad_ideal> generator_primes(const Int& d, const mset_certificate& cert) {
  validate_cg_d(d, "generator_primes");
  if (cert.d != d) {
    throw std::invalid_argument("generator_primes: certificate is for a different order");
  }
  if (cert.status != mset_status::verified) {
    throw std::invalid_argument("generator_primes: certificate must be Verified");
  }
  Int prod = 1;
  for (const Int& m : cert.m_set) prod *= abs(m);
  std::vector<quad_ideal> out;
  if (prod == 1) return out;
  quad_params<Int> params{Int(0), d};
  for (const auto& [p, e] : factor(prod)) {
    (void)e;
    for (const auto& P : kummer_dedekind(p, params).primes) out.push_back(P);
  }
  return out;
}

Int discriminant(const Int& d) {
  if (d == 0 || d == 1) {
    throw std::invalid_argument("discriminant: d must be squarefree and not 0 or 1");
  }
  if (!squarefree(d)) {
    throw std::invalid_argument("discriminant: d must be squarefree");
  }
  return mod_floor(d, 4) == 1 ? d : Int(4 * d);
}

Rat minkowski_bound(const Int& d) {
  if (d >= 0) {
    throw unsupported_order_error(
        "minkowski_bound: only imaginary quadratic orders are supported");
  }
  Int delta = discriminant(d);
  /* s/10^6 exceeds sqrt(|delta|) and 314159265/10^8 is below pi, so
     the quotient stays above (2/pi)*sqrt(|delta|). */
  Int scale("1000000");
  Int s = isqrt_floor(-delta * scale * scale) + 1;
  return make_rat(2 * s * Int("100000000"), scale * Int("314159265"));
}

quad_ideal reduce_class(const quad_ideal& I) {
  const quad_params<Int>& params = I.params;
  if (params.a != 0 || params.b >= 0) {
    throw unsupported_order_error(
        "reduce_class: only imaginary quadratic orders are supported");
  }
  validate_cg_d(params.b, "reduce_class");
  Int bound = rat_floor(minkowski_bound(params.b));
  for (Int N = 1; N <= bound; ++N) {
    for (const auto& J : ideals_of_norm(params, N)) {
      if (same_class(I, J)) return J;
    }
  }
  throw std::logic_error("reduce_class: no representative within the Minkowski bound");
}

Int order_of_class(const quad_ideal& I) {
  quad_ideal base = reduce_class(I);
  quad_ideal acc = base;
  Int k = 1;
  while (!is_principal(acc).has_value()) {
    acc = reduce_class(ideal_mul(acc, base));
    ++k;
    if (k > 10000) {
      throw std::logic_error("order_of_class: order exceeds 10000");
    }
  }
  return k;
}

class_group_descriptor class_group(const Int& d, cg_method method,
                                   const std::optional<std::vector<Int>>& m_set) {
  validate_cg_d(d, "class_group");
  class_group_descriptor out;
  out.d = d;
  out.delta = discriminant(d);
  out.method = method;

  quad_params<Int> params{Int(0), d};
  std::vector<quad_ideal> primes;
  if (method == cg_method::minkowski) {
    Int bound = rat_floor(minkowski_bound(d));
    for (Int p = 2; p <= bound; ++p) {
      if (!is_prime(p)) continue;
      for (const auto& P : kummer_dedekind(p, params).primes) primes.push_back(P);
    }
  } else {
    std::vector<Int> M;
    if (m_set) {
      M = *m_set;
    } else {
      Int bound = rat_ceil(minkowski_bound(d));
      for (Int m = 1; m <= bound; ++m) M.push_back(m);
    }
    mset_certificate cert = verify_m_set(d, M);
    if (cert.status == mset_status::refuted) {
      throw hypothesis_error("class_group: the multiplier set was refuted");
    }
    if (cert.status == mset_status::inconclusive) {
      throw hypothesis_error(
          "class_group: the multiplier search hit the resolution cap");
    }
    primes = generator_primes(d, cert);
    out.certificate = cert;
  }

  quad_ideal one = principal_ideal(quad_elem<Int>{params, Int(1), Int(0)});
  out.elements = close_classes(one, primes);
  std::sort(out.elements.begin(), out.elements.end(), ideal_order_less);
  out.h = Int(static_cast<long>(out.elements.size()));

  std::vector<quad_ideal> chosen;
  std::vector<quad_ideal> span{one};
  while (span.size() < out.elements.size()) {
    const quad_ideal* best = nullptr;
    Int best_order = 0;
    for (const auto& e : out.elements) {
      if (std::find(span.begin(), span.end(), e) != span.end()) continue;
      Int o = order_of_class(e);
      if (o > best_order) {
        best = &e;
        best_order = o;
      }
    }
    chosen.push_back(*best);
    out.generators.emplace_back(*best, best_order);
    span = close_classes(one, chosen);
  }
  return out;
}

Int class_number_analytic(const Int& d) {
  if (d >= 0) {
    throw unsupported_order_error(
        "class_number_analytic: only imaginary quadratic orders are supported");
  }
  if (!squarefree(d)) {
    throw std::invalid_argument("class_number_analytic: d must be squarefree");
  }
  Int delta = discriminant(d);
  Int w = d == -1 ? 4 : (d == -3 ? 6 : 2);
  Int sum = 0;
  for (Int a = 1; a < -delta; ++a) sum += kronecker(delta, a) * a;
  Rat h = make_rat(w * sum, 2 * delta);
  if (h.get_den() != 1 || h <= 0) {
    throw std::logic_error(
        "class_number_analytic: the character sum did not yield a positive integer");
  }
  return h.get_num();
}

Int class_number_forms_oracle(const Int& d) {
  if (d >= 0) {
    throw unsupported_order_error(
        "class_number_forms_oracle: only imaginary quadratic orders are supported");
  }
  if (!squarefree(d)) {
    throw std::invalid_argument("class_number_forms_oracle: d must be squarefree");
  }
  Int delta = discriminant(d);
  Int count = 0;
  for (Int A = 1; 3 * A * A <= -delta; ++A) {
    for (Int B = -A; B <= A; ++B) {
      Int num = B * B - delta;
      if (!divides(4 * A, num)) continue;
      Int C = num / (4 * A);
      if (C < A) continue;
      if (B < 0 && (-B == A || A == C)) continue;
      if (gcd(gcd(A, B), C) != 1) continue;
      ++count;
    }
  }
  return count;
}

}  // namespace qnt
