#include "qnt/times_table.hpp"

#include <cctype>

#include "qnt/errors.hpp"

namespace qnt {

long degree(const monomial& m) {
  long d = 0;
  for (const auto& [v, e] : m.powers) {
    (void)v;
    d += e;
  }
  return d;
}

monomial mono_mul(const monomial& x, const monomial& y) {
  monomial out;
  std::size_t i = 0, j = 0;
  while (i < x.powers.size() && j < y.powers.size()) {
    if (x.powers[i].first == y.powers[j].first) {
      out.powers.push_back({x.powers[i].first, x.powers[i].second + y.powers[j].second});
      ++i;
      ++j;
    } else if (x.powers[i].first < y.powers[j].first) {
      out.powers.push_back(x.powers[i++]);
    } else {
      out.powers.push_back(y.powers[j++]);
    }
  }
  out.powers.insert(out.powers.end(), x.powers.begin() + i, x.powers.end());
  out.powers.insert(out.powers.end(), y.powers.begin() + j, y.powers.end());
  return out;
}

bool grlex_less(const monomial& x, const monomial& y) {
  long dx = degree(x), dy = degree(y);
  if (dx != dy) return dx < dy;
  /* Equal degree: lex on exponent vectors.  Whichever monomial first
     shows a positive exponent at an earlier variable is the larger. */
  std::size_t i = 0, j = 0;
  while (i < x.powers.size() && j < y.powers.size()) {
    const auto& [vx, ex] = x.powers[i];
    const auto& [vy, ey] = y.powers[j];
    if (vx != vy) return vy < vx;
    if (ex != ey) return ex < ey;
    ++i;
    ++j;
  }
  return i == x.powers.size() && j < y.powers.size();
}

namespace {

expr_ptr node(ring_expr e) { return std::make_shared<const ring_expr>(std::move(e)); }

}  // namespace

expr_ptr ex_var(long id) {
  return node({ring_expr::kind::var, id, 0, 0, nullptr, nullptr});
}

expr_ptr ex_const(const Int& c) {
  return node({ring_expr::kind::const_scalar, 0, c, 0, nullptr, nullptr});
}

expr_ptr ex_basis(long index) {
  if (index < 0) throw std::out_of_range("ex_basis: negative index");
  return node({ring_expr::kind::basis_elem, index, 0, 0, nullptr, nullptr});
}

expr_ptr ex_add(expr_ptr l, expr_ptr r) {
  return node({ring_expr::kind::add, 0, 0, 0, std::move(l), std::move(r)});
}

expr_ptr ex_sub(expr_ptr l, expr_ptr r) {
  return ex_add(std::move(l), ex_neg(std::move(r)));
}

expr_ptr ex_mul(expr_ptr l, expr_ptr r) {
  return node({ring_expr::kind::mul, 0, 0, 0, std::move(l), std::move(r)});
}

expr_ptr ex_neg(expr_ptr e) {
  return node({ring_expr::kind::neg, 0, 0, 0, std::move(e), nullptr});
}

expr_ptr ex_pow(expr_ptr e, long n) {
  if (n < 0) throw std::invalid_argument("ex_pow: exponent must be nonnegative");
  return node({ring_expr::kind::pow, 0, 0, n, std::move(e), nullptr});
}

expr_ptr ex_scalar_mul(const Int& c, expr_ptr e) {
  return node({ring_expr::kind::scalar_mul, 0, c, 0, std::move(e), nullptr});
}

long expr_symbols::intern(const std::string& name) {
  auto it = ids.find(name);
  if (it != ids.end()) return it->second;
  long id = static_cast<long>(ids.size());
  ids.emplace(name, id);
  return id;
}

namespace {

struct expr_parser {
  const std::string& text;
  expr_symbols& symbols;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  Int take_nat() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw parse_error(pos, "expected digits");
    return Int(text.substr(start, pos - start));
  }

  std::string take_ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_')) {
      ++pos;
    }
    if (pos == start) throw parse_error(pos, "expected an identifier");
    return text.substr(start, pos - start);
  }

  expr_ptr parse_expr() {
    expr_ptr acc = parse_term();
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos;
        acc = ex_add(acc, parse_term());
      } else if (c == '-') {
        ++pos;
        acc = ex_sub(acc, parse_term());
      } else {
        return acc;
      }
    }
  }

  expr_ptr parse_term() {
    expr_ptr acc = parse_factor();
    while (peek() == '*') {
      ++pos;
      acc = ex_mul(acc, parse_factor());
    }
    return acc;
  }

  expr_ptr parse_factor() {
    expr_ptr base = parse_atom();
    if (peek() == '^') {
      ++pos;
      std::size_t at = pos;
      Int n = take_nat();
      if (!mpz_fits_slong_p(n.get_mpz_t()))
        throw parse_error(at, "exponent too large");
      return ex_pow(base, n.get_si());
    }
    return base;
  }

  expr_ptr parse_atom() {
    char c = peek();
    if (c == '-') {
      ++pos;
      return ex_neg(parse_atom());
    }
    if (c == '(') {
      ++pos;
      expr_ptr e = parse_expr();
      if (peek() != ')') throw parse_error(pos, "expected ')'");
      ++pos;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return ex_const(take_nat());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = take_ident();
      if (name == "sqrt") return ex_basis(1);
      return ex_var(symbols.intern(name));
    }
    throw parse_error(pos, "expected a literal, identifier, or '('");
  }
};

}  // namespace

expr_ptr parse_ring_expr(const std::string& text, expr_symbols& symbols) {
  expr_parser p{text, symbols};
  expr_ptr e = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) throw parse_error(p.pos, "trailing input");
  return e;
}

std::string render_poly(const polynomial<Int>& p,
                        const std::function<std::string(const poly_var&)>& name) {
  if (p.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms) {
    Int mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
      first = false;
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string factors;
    for (const auto& [v, e] : m.powers) {
      if (!factors.empty()) factors += "*";
      factors += name(v);
      if (e > 1) factors += "^" + std::to_string(e);
    }
    if (factors.empty()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += factors;
    }
  }
  return out;
}

}  // namespace qnt
