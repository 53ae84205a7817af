#include "qnt/quad_ring.hpp"

#include <cctype>

namespace qnt {

ring_of_integers_model ring_of_integers(const Int& d) {
  if (d >= 0) throw unsupported_order_error("ring_of_integers: d must be negative");
  if (!squarefree(d)) throw std::invalid_argument("ring_of_integers: d must be squarefree");
  if (mod_floor(d, 4) == 1) {
    return {d, {Int(1), Int((d - 1) / 4)}, model_kind::half_model};
  }
  return {d, {Int(0), d}, model_kind::sqrt_model};
}

std::vector<quad_elem<Int>> units(const Int& d) {
  if (d >= 0) throw unsupported_order_error("units: d must be negative");
  if (!squarefree(d)) throw std::invalid_argument("units: d must be squarefree");
  if (mod_floor(d, 4) == 1)
    throw std::invalid_argument("units: defined on the sqrt presentation, d = 2, 3 (mod 4)");
  quad_params<Int> p{Int(0), d};
  std::vector<quad_elem<Int>> out = {{p, Int(1), Int(0)}, {p, Int(-1), Int(0)}};
  if (d == -1) {
    out.push_back({p, Int(0), Int(1)});
    out.push_back({p, Int(0), Int(-1)});
  }
  return out;
}

bool is_integral(const quad_elem<Rat>& x, const ring_of_integers_model& model) {
  if (x.params.a != 0 || x.params.b != Rat(model.d))
    throw std::invalid_argument("is_integral: element not in the sqrt basis of the model field");
  return trace(x).get_den() == 1 && norm(x).get_den() == 1;
}

quad_elem<Rat> to_sqrt_basis(const ring_of_integers_model& model, const quad_elem<Int>& x) {
  if (x.params != model.params)
    throw std::invalid_argument("to_sqrt_basis: element params do not match the model");
  quad_params<Rat> p{Rat(0), Rat(model.d)};
  if (model.kind == model_kind::sqrt_model) return {p, Rat(x.b1), Rat(x.b2)};
  return {p, Rat(x.b1) + make_rat(x.b2, 2), make_rat(x.b2, 2)};
}

quad_elem<Int> from_sqrt_basis(const ring_of_integers_model& model, const quad_elem<Rat>& x) {
  if (x.params.a != 0 || x.params.b != Rat(model.d))
    throw std::invalid_argument("from_sqrt_basis: element not in the sqrt basis of the model field");
  if (model.kind == model_kind::sqrt_model) {
    if (x.b1.get_den() != 1 || x.b2.get_den() != 1)
      throw std::invalid_argument("from_sqrt_basis: element not in the model ring");
    return {model.params, Int(x.b1.get_num()), Int(x.b2.get_num())};
  }
  Rat c2 = 2 * x.b2;
  Rat c1 = x.b1 - x.b2;
  if (c1.get_den() != 1 || c2.get_den() != 1)
    throw std::invalid_argument("from_sqrt_basis: element not in the model ring");
  return {model.params, Int(c1.get_num()), Int(c2.get_num())};
}

namespace {

std::string root_symbol(const ring_of_integers_model& model) {
  if (model.kind == model_kind::sqrt_model) return "sqrt(" + model.d.get_str() + ")";
  return "w";
}

}  // namespace

std::string render_elem(const quad_elem<Int>& x, const ring_of_integers_model& model) {
  if (x.params != model.params)
    throw std::invalid_argument("render_elem: element params do not match the model");
  if (x.b2 == 0) return x.b1.get_str();
  Int mag = abs(x.b2);
  std::string tail = (mag == 1 ? "" : mag.get_str() + "*") + root_symbol(model);
  if (x.b1 == 0) return (x.b2 < 0 ? "-" : "") + tail;
  return x.b1.get_str() + (x.b2 < 0 ? " - " : " + ") + tail;
}

namespace {

/* Tokens of the element grammar: integers, '+', '-', '*', '(', ')',
   and the root symbols "sqrt" and "w". */
struct elem_lexer {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos == text.size();
  }
  char peek_op() {
    skip_ws();
    if (pos == text.size()) return '\0';
    char c = text[pos];
    return (c == '+' || c == '-' || c == '*' || c == '(' || c == ')') ? c : '\0';
  }
  void take_op(char c) {
    if (peek_op() != c)
      throw parse_error(pos, std::string("expected '") + c + "'");
    ++pos;
  }
  bool peek_digit() {
    skip_ws();
    return pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]));
  }
  Int take_int() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw parse_error(pos, "expected an integer");
    return Int(text.substr(start, pos - start));
  }
  bool peek_word() {
    skip_ws();
    return pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]));
  }
  std::string take_word() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw parse_error(pos, "expected a symbol");
    return text.substr(start, pos - start);
  }
};

/* "sqrt" "(" ["-"] digits ")" for a sqrt model, "w" for a half model.
   The radicand must equal the model's d. */
void take_root(elem_lexer& lx, const ring_of_integers_model& model) {
  std::size_t at = lx.pos;
  std::string word = lx.take_word();
  if (model.kind == model_kind::half_model) {
    if (word != "w") throw parse_error(at, "expected 'w'");
    return;
  }
  if (word != "sqrt") throw parse_error(at, "expected 'sqrt'");
  lx.take_op('(');
  bool neg = false;
  if (lx.peek_op() == '-') {
    lx.take_op('-');
    neg = true;
  }
  std::size_t dat = lx.pos;
  Int dval = lx.take_int();
  if (neg) dval = -dval;
  if (dval != model.d) throw parse_error(dat, "radicand does not match the ring");
  lx.take_op(')');
}

/* [digits "*"] root */
Int take_coef_root(elem_lexer& lx, const ring_of_integers_model& model) {
  if (lx.peek_digit()) {
    Int n = lx.take_int();
    lx.take_op('*');
    take_root(lx, model);
    return n;
  }
  take_root(lx, model);
  return 1;
}

}  // namespace

quad_elem<Int> parse_elem(const std::string& text, const ring_of_integers_model& model) {
  elem_lexer lx{text};
  Int b1 = 0, b2 = 0;
  int sign = 1;
  if (lx.peek_op() == '-') {
    lx.take_op('-');
    sign = -1;
  }
  if (lx.peek_digit()) {
    Int n = lx.take_int();
    char op = lx.peek_op();
    if (op == '*') {
      lx.take_op('*');
      take_root(lx, model);
      b2 = sign * n;
    } else if (op == '+' || op == '-') {
      lx.take_op(op);
      b1 = sign * n;
      b2 = (op == '-' ? -1 : 1) * take_coef_root(lx, model);
    } else {
      b1 = sign * n;
    }
  } else if (lx.peek_word()) {
    b2 = sign * take_coef_root(lx, model);
  } else {
    throw parse_error(lx.pos, "expected an integer or a root symbol");
  }
  if (!lx.at_end()) throw parse_error(lx.pos, "trailing input");
  return {model.params, b1, b2};
}

}  // namespace qnt
