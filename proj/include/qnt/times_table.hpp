#ifndef QNT_TIMES_TABLE_HPP
#define QNT_TIMES_TABLE_HPP

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qnt/integers.hpp"
#include "qnt/quad_ring.hpp"

namespace qnt {

/* The polynomial variable X_{var, coord}: coordinate `coord` of the
   ring-element variable `var`. */
struct poly_var {
  long var;
  long coord;
  friend auto operator<=>(const poly_var&, const poly_var&) = default;
};

/* Product of powers of distinct variables, sorted by variable, all
   exponents positive.  The empty monomial is 1. */
struct monomial {
  std::vector<std::pair<poly_var, long>> powers;
  friend bool operator==(const monomial&, const monomial&) = default;
};

long degree(const monomial& m);
monomial mono_mul(const monomial& x, const monomial& y);

/* Graded lexicographic order: total degree decides first, then the
   exponent vectors lexicographically with earlier variables most
   significant. */
bool grlex_less(const monomial& x, const monomial& y);

struct grlex_greater {
  bool operator()(const monomial& x, const monomial& y) const { return grlex_less(y, x); }
};

/* Sparse polynomial with exact coefficients.  Terms are strictly
   descending in graded lex order and no zero coefficient is stored, so
   structural equality is polynomial equality. */
template <class S>
struct polynomial {
  std::vector<std::pair<monomial, S>> terms;
  friend bool operator==(const polynomial&, const polynomial&) = default;
};

template <class S>
polynomial<S> poly_const(const S& c) {
  polynomial<S> p;
  if (c != 0) p.terms.push_back({monomial{}, c});
  return p;
}

template <class S>
polynomial<S> poly_of_var(const poly_var& v) {
  polynomial<S> p;
  p.terms.push_back({monomial{{{v, 1}}}, S(1)});
  return p;
}

template <class S>
polynomial<S> operator+(const polynomial<S>& x, const polynomial<S>& y) {
  polynomial<S> out;
  std::size_t i = 0, j = 0;
  while (i < x.terms.size() && j < y.terms.size()) {
    const auto& [mx, cx] = x.terms[i];
    const auto& [my, cy] = y.terms[j];
    if (mx == my) {
      S c = S(cx + cy);
      if (c != 0) out.terms.push_back({mx, c});
      ++i;
      ++j;
    } else if (grlex_less(mx, my)) {
      out.terms.push_back(y.terms[j]);
      ++j;
    } else {
      out.terms.push_back(x.terms[i]);
      ++i;
    }
  }
  out.terms.insert(out.terms.end(), x.terms.begin() + i, x.terms.end());
  out.terms.insert(out.terms.end(), y.terms.begin() + j, y.terms.end());
  return out;
}

template <class S>
polynomial<S> operator-(const polynomial<S>& x) {
  polynomial<S> out = x;
  for (auto& [m, c] : out.terms) c = S(-c);
  return out;
}

template <class S>
polynomial<S> operator-(const polynomial<S>& x, const polynomial<S>& y) {
  return x + (-y);
}

template <class S>
polynomial<S> poly_scale(const S& c, const polynomial<S>& x) {
  polynomial<S> out;
  if (c == 0) return out;
  out = x;
  for (auto& [m, coeff] : out.terms) coeff = S(c * coeff);
  return out;
}

template <class S>
polynomial<S> operator*(const polynomial<S>& x, const polynomial<S>& y) {
  std::map<monomial, S, grlex_greater> acc;
  for (const auto& [mx, cx] : x.terms) {
    for (const auto& [my, cy] : y.terms) {
      monomial m = mono_mul(mx, my);
      auto it = acc.find(m);
      if (it == acc.end()) {
        acc.emplace(std::move(m), S(cx * cy));
      } else {
        it->second = S(it->second + cx * cy);
      }
    }
  }
  polynomial<S> out;
  for (auto& [m, c] : acc) {
    if (c != 0) out.terms.push_back({m, c});
  }
  return out;
}

template <class S>
S evaluate(const polynomial<S>& p, const std::function<S(const poly_var&)>& value) {
  S total = S(0);
  for (const auto& [m, c] : p.terms) {
    S term = c;
    for (const auto& [v, e] : m.powers) {
      S base = value(v);
      for (long k = 0; k < e; ++k) term = S(term * base);
    }
    total = S(total + term);
  }
  return total;
}

/* Structure constants t[i][j][k] of a commutative ring that is free of
   finite rank over its base: b_i * b_j = sum_k t[i][j][k] b_k, with
   b_0 = 1.  Construction validates the identity row, symmetry in the
   first two indices, and associativity on every basis triple; the
   table is immutable afterwards. */
template <class S>
class times_table {
 public:
  times_table(long dim, std::vector<std::vector<std::vector<S>>> table)
      : dim_(dim), t_(std::move(table)) {
    if (dim_ < 1) throw std::invalid_argument("times_table: dimension must be positive");
    if (static_cast<long>(t_.size()) != dim_)
      throw std::invalid_argument("times_table: tensor shape mismatch");
    for (const auto& plane : t_) {
      if (static_cast<long>(plane.size()) != dim_)
        throw std::invalid_argument("times_table: tensor shape mismatch");
      for (const auto& row : plane) {
        if (static_cast<long>(row.size()) != dim_)
          throw std::invalid_argument("times_table: tensor shape mismatch");
      }
    }
    for (long j = 0; j < dim_; ++j) {
      for (long k = 0; k < dim_; ++k) {
        if (t_[0][j][k] != (j == k ? 1 : 0))
          throw std::invalid_argument("times_table: basis element 0 must act as 1");
      }
    }
    for (long i = 0; i < dim_; ++i) {
      for (long j = 0; j < dim_; ++j) {
        for (long k = 0; k < dim_; ++k) {
          if (t_[i][j][k] != t_[j][i][k])
            throw std::invalid_argument("times_table: product tensor must be symmetric");
        }
      }
    }
    for (long i = 0; i < dim_; ++i) {
      for (long j = 0; j < dim_; ++j) {
        for (long k = 0; k < dim_; ++k) {
          for (long m = 0; m < dim_; ++m) {
            S lhs = S(0), rhs = S(0);
            for (long l = 0; l < dim_; ++l) {
              lhs = S(lhs + t_[i][j][l] * t_[l][k][m]);
              rhs = S(rhs + t_[j][k][l] * t_[i][l][m]);
            }
            if (lhs != rhs)
              throw std::invalid_argument("times_table: product tensor is not associative");
          }
        }
      }
    }
  }

  long dim() const { return dim_; }
  const S& coeff(long i, long j, long k) const { return t_[i][j][k]; }

 private:
  long dim_;
  std::vector<std::vector<std::vector<S>>> t_;
};

/* Rank-2 table of alpha^2 = a*alpha + b over the basis {1, alpha}. */
template <class S>
times_table<S> table_for_quad(const quad_params<S>& p) {
  std::vector<std::vector<std::vector<S>>> t(
      2, std::vector<std::vector<S>>(2, std::vector<S>(2, S(0))));
  t[0][0] = {S(1), S(0)};
  t[0][1] = {S(0), S(1)};
  t[1][0] = {S(0), S(1)};
  t[1][1] = {p.b, p.a};
  return times_table<S>(2, std::move(t));
}

/* Coordinates of x*y in the table algebra. */
template <class S>
std::vector<S> table_mul(const times_table<S>& T, const std::vector<S>& x,
                         const std::vector<S>& y) {
  std::vector<S> out(T.dim(), S(0));
  for (long i = 0; i < T.dim(); ++i) {
    if (x[i] == 0) continue;
    for (long j = 0; j < T.dim(); ++j) {
      if (y[j] == 0) continue;
      S c = S(x[i] * y[j]);
      for (long k = 0; k < T.dim(); ++k) {
        if (T.coeff(i, j, k) != 0) out[k] = S(out[k] + c * T.coeff(i, j, k));
      }
    }
  }
  return out;
}

/* Syntax tree of ring expressions.  A Var stands for an unknown ring
   element; ConstScalar embeds a base-ring constant via basis 0. */
struct ring_expr;
using expr_ptr = std::shared_ptr<const ring_expr>;

struct ring_expr {
  enum class kind { var, const_scalar, basis_elem, add, mul, neg, pow, scalar_mul };
  kind node;
  long index = 0;   /* var id or basis index */
  Int scalar = 0;   /* const_scalar value, scalar_mul coefficient */
  long exponent = 0; /* pow only, >= 0 */
  expr_ptr lhs;
  expr_ptr rhs;
};

expr_ptr ex_var(long id);
expr_ptr ex_const(const Int& c);
expr_ptr ex_basis(long index);
expr_ptr ex_add(expr_ptr l, expr_ptr r);
expr_ptr ex_sub(expr_ptr l, expr_ptr r);
expr_ptr ex_mul(expr_ptr l, expr_ptr r);
expr_ptr ex_neg(expr_ptr e);
expr_ptr ex_pow(expr_ptr e, long n);
expr_ptr ex_scalar_mul(const Int& c, expr_ptr e);

/* Basis coordinates of an expression, each a canonical polynomial in
   the variables X_{v, i}.  Equality decides ring identities. */
template <class S>
struct normal_form {
  std::vector<polynomial<S>> coords;
  friend bool operator==(const normal_form&, const normal_form&) = default;
};

template <class S>
normal_form<S> nf_zero(const times_table<S>& T) {
  normal_form<S> out;
  out.coords.assign(T.dim(), polynomial<S>{});
  return out;
}

template <class S>
normal_form<S> nf_mul(const normal_form<S>& x, const normal_form<S>& y,
                      const times_table<S>& T) {
  normal_form<S> out = nf_zero(T);
  for (long i = 0; i < T.dim(); ++i) {
    if (x.coords[i].terms.empty()) continue;
    for (long j = 0; j < T.dim(); ++j) {
      if (y.coords[j].terms.empty()) continue;
      polynomial<S> prod = x.coords[i] * y.coords[j];
      for (long k = 0; k < T.dim(); ++k) {
        if (T.coeff(i, j, k) != 0)
          out.coords[k] = out.coords[k] + poly_scale(T.coeff(i, j, k), prod);
      }
    }
  }
  return out;
}

template <class S>
normal_form<S> normalize(const expr_ptr& e, const times_table<S>& T) {
  switch (e->node) {
    case ring_expr::kind::var: {
      normal_form<S> out = nf_zero(T);
      for (long i = 0; i < T.dim(); ++i)
        out.coords[i] = poly_of_var<S>({e->index, i});
      return out;
    }
    case ring_expr::kind::const_scalar: {
      normal_form<S> out = nf_zero(T);
      out.coords[0] = poly_const(S(e->scalar));
      return out;
    }
    case ring_expr::kind::basis_elem: {
      if (e->index < 0 || e->index >= T.dim())
        throw std::out_of_range("normalize: basis index out of range");
      normal_form<S> out = nf_zero(T);
      out.coords[e->index] = poly_const(S(1));
      return out;
    }
    case ring_expr::kind::add: {
      normal_form<S> l = normalize(e->lhs, T), r = normalize(e->rhs, T);
      for (long i = 0; i < T.dim(); ++i) l.coords[i] = l.coords[i] + r.coords[i];
      return l;
    }
    case ring_expr::kind::mul:
      return nf_mul(normalize(e->lhs, T), normalize(e->rhs, T), T);
    case ring_expr::kind::neg: {
      normal_form<S> l = normalize(e->lhs, T);
      for (auto& c : l.coords) c = -c;
      return l;
    }
    case ring_expr::kind::scalar_mul: {
      normal_form<S> l = normalize(e->lhs, T);
      for (auto& c : l.coords) c = poly_scale(S(e->scalar), c);
      return l;
    }
    case ring_expr::kind::pow: {
      /* Squaring keeps every intermediate term in normal form, so the
         term count stays polynomial in the exponent. */
      normal_form<S> base = normalize(e->lhs, T);
      normal_form<S> acc = nf_zero(T);
      acc.coords[0] = poly_const(S(1));
      long n = e->exponent;
      while (n > 0) {
        if (n & 1) acc = nf_mul(acc, base, T);
        n >>= 1;
        if (n > 0) base = nf_mul(base, base, T);
      }
      return acc;
    }
  }
  throw std::logic_error("normalize: unreachable");
}

/* True iff both sides have the same normal form; the identity then
   holds under every substitution of ring elements for variables. */
template <class S>
bool prove_eq(const expr_ptr& lhs, const expr_ptr& rhs, const times_table<S>& T) {
  return normalize(lhs, T) == normalize(rhs, T);
}

/* Direct evaluation in the table algebra; the semantic reference for
   normalize. */
template <class S>
std::vector<S> evaluate(const expr_ptr& e, const times_table<S>& T,
                        const std::map<long, std::vector<S>>& assign) {
  switch (e->node) {
    case ring_expr::kind::var: {
      const std::vector<S>& v = assign.at(e->index);
      if (static_cast<long>(v.size()) != T.dim())
        throw std::invalid_argument("evaluate: assignment has wrong dimension");
      return v;
    }
    case ring_expr::kind::const_scalar: {
      std::vector<S> out(T.dim(), S(0));
      out[0] = S(e->scalar);
      return out;
    }
    case ring_expr::kind::basis_elem: {
      if (e->index < 0 || e->index >= T.dim())
        throw std::out_of_range("evaluate: basis index out of range");
      std::vector<S> out(T.dim(), S(0));
      out[e->index] = S(1);
      return out;
    }
    case ring_expr::kind::add: {
      std::vector<S> l = evaluate(e->lhs, T, assign), r = evaluate(e->rhs, T, assign);
      for (long i = 0; i < T.dim(); ++i) l[i] = S(l[i] + r[i]);
      return l;
    }
    case ring_expr::kind::mul:
      return table_mul(T, evaluate(e->lhs, T, assign), evaluate(e->rhs, T, assign));
    case ring_expr::kind::neg: {
      std::vector<S> l = evaluate(e->lhs, T, assign);
      for (auto& c : l) c = S(-c);
      return l;
    }
    case ring_expr::kind::scalar_mul: {
      std::vector<S> l = evaluate(e->lhs, T, assign);
      for (auto& c : l) c = S(e->scalar * c);
      return l;
    }
    case ring_expr::kind::pow: {
      std::vector<S> base = evaluate(e->lhs, T, assign);
      std::vector<S> acc(T.dim(), S(0));
      acc[0] = S(1);
      long n = e->exponent;
      while (n > 0) {
        if (n & 1) acc = table_mul(T, acc, base);
        n >>= 1;
        if (n > 0) base = table_mul(T, base, base);
      }
      return acc;
    }
  }
  throw std::logic_error("evaluate: unreachable");
}

template <class S>
std::vector<S> evaluate(const normal_form<S>& nf,
                        const std::function<S(const poly_var&)>& value) {
  std::vector<S> out;
  out.reserve(nf.coords.size());
  for (const auto& p : nf.coords) out.push_back(evaluate(p, value));
  return out;
}

/* Interning table mapping identifier names to Var ids, shared across
   the expressions of one prove_eq query. */
struct expr_symbols {
  std::map<std::string, long> ids;
  long intern(const std::string& name);
};

/* Infix expression grammar over identifiers, integer literals, and
   + - * ^ with parentheses; the identifier "sqrt" denotes basis
   element 1, every other identifier a Var.  Grammar:
     expr   := term (("+" | "-") term)*
     term   := factor ("*" factor)*
     factor := atom ("^" digits)?
     atom   := digits | identifier | "(" expr ")" | "-" atom        */
expr_ptr parse_ring_expr(const std::string& text, expr_symbols& symbols);

/* "9*m_0^2 - 48*m_0*m_1 + 1" style rendering; the zero polynomial
   renders as "0".  `name` supplies the variable spelling. */
std::string render_poly(const polynomial<Int>& p,
                        const std::function<std::string(const poly_var&)>& name);

}  // namespace qnt

#endif
