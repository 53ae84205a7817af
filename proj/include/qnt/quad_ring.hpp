#ifndef QNT_QUAD_RING_HPP
#define QNT_QUAD_RING_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "qnt/errors.hpp"
#include "qnt/integers.hpp"

namespace qnt {

/* Coefficients (a, b) of the defining relation alpha^2 = a*alpha + b.
   Used as a number ring this needs X^2 - aX - b to have no root in the
   base; construction does not check that, the model factory does. */
template <class S>
struct quad_params {
  S a;
  S b;
  friend bool operator==(const quad_params& x, const quad_params& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator!=(const quad_params& x, const quad_params& y) { return !(x == y); }
};

/* The element b1 + b2*alpha.  Coordinates are exact; equality is
   componentwise. */
template <class S>
struct quad_elem {
  quad_params<S> params;
  S b1;
  S b2;
  friend bool operator==(const quad_elem& x, const quad_elem& y) {
    return x.params == y.params && x.b1 == y.b1 && x.b2 == y.b2;
  }
  friend bool operator!=(const quad_elem& x, const quad_elem& y) { return !(x == y); }
};

template <class S>
quad_elem<S> constant(const quad_params<S>& p, const S& c) {
  return {p, c, S(0)};
}

template <class S>
void require_same_params(const quad_elem<S>& x, const quad_elem<S>& y) {
  if (x.params != y.params) throw std::invalid_argument("quad_elem: params mismatch");
}

template <class S>
quad_elem<S> operator+(const quad_elem<S>& x, const quad_elem<S>& y) {
  require_same_params(x, y);
  return {x.params, S(x.b1 + y.b1), S(x.b2 + y.b2)};
}

template <class S>
quad_elem<S> operator-(const quad_elem<S>& x, const quad_elem<S>& y) {
  require_same_params(x, y);
  return {x.params, S(x.b1 - y.b1), S(x.b2 - y.b2)};
}

template <class S>
quad_elem<S> operator-(const quad_elem<S>& x) {
  return {x.params, S(-x.b1), S(-x.b2)};
}

/* (b1 + b2 a)(c1 + c2 a) with a^2 = a*a + b substituted once. */
template <class S>
quad_elem<S> operator*(const quad_elem<S>& x, const quad_elem<S>& y) {
  require_same_params(x, y);
  return {x.params, S(x.b1 * y.b1 + x.b2 * y.b2 * x.params.b),
          S(x.b2 * y.b1 + x.b1 * y.b2 + x.b2 * y.b2 * x.params.a)};
}

/* Image under the automorphism sending alpha to a - alpha. */
template <class S>
quad_elem<S> conj(const quad_elem<S>& x) {
  return {x.params, S(x.b1 + x.params.a * x.b2), S(-x.b2)};
}

/* x * conj(x), landing in the base.  Multiplicative. */
template <class S>
S norm(const quad_elem<S>& x) {
  return S(x.b1 * x.b1 + x.params.a * x.b1 * x.b2 - x.params.b * x.b2 * x.b2);
}

/* x + conj(x), landing in the base.  Additive. */
template <class S>
S trace(const quad_elem<S>& x) {
  return S(2 * x.b1 + x.params.a * x.b2);
}

/* Closed form for a = 0, repeated multiplication otherwise. */
template <class S>
quad_elem<S> cube(const quad_elem<S>& x) {
  if (x.params.a == 0) {
    return {x.params, S(x.b1 * (x.b1 * x.b1 + 3 * x.b2 * x.b2 * x.params.b)),
            S(x.b2 * (3 * x.b1 * x.b1 + x.b2 * x.b2 * x.params.b))};
  }
  return x * x * x;
}

/* Presentation of the maximal order of Q(sqrt(d)), d squarefree and
   negative.  For d = 2, 3 (mod 4) the order is Z[sqrt(d)] with params
   (0, d); for d = 1 (mod 4) it is Z[w], w = (1 + sqrt(d))/2, with
   params (1, (d - 1)/4). */
enum class model_kind { sqrt_model, half_model };

struct ring_of_integers_model {
  Int d;
  quad_params<Int> params;
  model_kind kind;
};

/* Rejects d >= 0 as unsupported (real quadratic and degenerate cases)
   and non-squarefree d as invalid. */
ring_of_integers_model ring_of_integers(const Int& d);

/* The unit group of Z[sqrt(d)] for squarefree d < 0 with d = 2, 3
   (mod 4): {1, -1}, joined by {sqrt(-1), -sqrt(-1)} when d = -1.
   Every listed unit has norm 1 and is the cube of another unit. */
std::vector<quad_elem<Int>> units(const Int& d);

/* Whether the field element x, given in the (1, sqrt(d)) basis over Q,
   is an algebraic integer: both trace and norm are integers.  x then
   lies in the model ring. */
bool is_integral(const quad_elem<Rat>& x, const ring_of_integers_model& model);

/* Coordinates of a model-ring element in the (1, sqrt(d)) basis over Q.
   The identity for a sqrt model; for a half model (b1, b2) maps to
   (b1 + b2/2, b2/2). */
quad_elem<Rat> to_sqrt_basis(const ring_of_integers_model& model, const quad_elem<Int>& x);

/* Inverse of to_sqrt_basis.  Rejects inputs outside the model ring. */
quad_elem<Int> from_sqrt_basis(const ring_of_integers_model& model, const quad_elem<Rat>& x);

/* "b1 + b2*sqrt(d)" or "b1 + b2*w" with zero terms and unit
   coefficients folded away, e.g. "1 - sqrt(-5)", "2*w", "-3". */
std::string render_elem(const quad_elem<Int>& x, const ring_of_integers_model& model);

/* Exact inverse of render_elem on its output grammar; whitespace
   between tokens is ignored.  Throws parse_error with an offset. */
quad_elem<Int> parse_elem(const std::string& text, const ring_of_integers_model& model);

}  // namespace qnt

#endif
