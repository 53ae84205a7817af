#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>

#include "qnt/times_table.hpp"

using namespace qnt;

static polynomial<Int> PV(long v, long i) { return poly_of_var<Int>({v, i}); }
static polynomial<Int> PC(long c) { return poly_const<Int>(Int(c)); }

static times_table<Int> quad_table(long a, long b) {
  return table_for_quad<Int>({Int(a), Int(b)});
}

/* Rank-3 table of Z[c] with c^3 = 2 over the basis {1, c, c^2}. */
static std::vector<std::vector<std::vector<Int>>> cubic_tensor() {
  std::vector<std::vector<std::vector<Int>>> t(
      3, std::vector<std::vector<Int>>(3, std::vector<Int>(3, Int(0))));
  for (long j = 0; j < 3; ++j) t[0][j][j] = 1;
  for (long j = 0; j < 3; ++j) t[j][0][j] = 1;
  t[1][1][2] = 1;
  t[1][2][0] = 2;
  t[2][1][0] = 2;
  t[2][2][1] = 2;
  return t;
}

TEST_CASE("table_for_quad lays out the stated products") {
  auto T = quad_table(0, -5);
  CHECK(T.dim() == 2);
  CHECK(T.coeff(1, 1, 0) == -5);
  CHECK(T.coeff(1, 1, 1) == 0);
  auto U = quad_table(1, -1);
  CHECK(U.coeff(1, 1, 0) == -1);
  CHECK(U.coeff(1, 1, 1) == 1);
  for (long j = 0; j < 2; ++j) {
    for (long k = 0; k < 2; ++k) {
      CHECK(T.coeff(0, j, k) == (j == k ? 1 : 0));
    }
  }
}

TEST_CASE("table validation accepts the cubic table and rejects corruptions") {
  CHECK_NOTHROW(times_table<Int>(3, cubic_tensor()));

  auto broken = cubic_tensor();
  broken[1][1][1] = 1;  /* perturb c*c; symmetry still holds */
  CHECK_THROWS_WITH_AS(times_table<Int>(3, broken),
                       "times_table: product tensor is not associative",
                       std::invalid_argument);

  auto asym = cubic_tensor();
  asym[1][2][0] = 3;
  CHECK_THROWS_WITH_AS(times_table<Int>(3, asym),
                       "times_table: product tensor must be symmetric",
                       std::invalid_argument);

  auto badrow = cubic_tensor();
  badrow[0][1][1] = 2;
  CHECK_THROWS_AS(times_table<Int>(3, badrow), std::invalid_argument);

  CHECK_THROWS_AS(times_table<Int>(2, cubic_tensor()), std::invalid_argument);
}

TEST_CASE("normalize on stated expressions") {
  auto T = quad_table(0, -5);
  auto x = ex_var(0), y = ex_var(1);

  auto prod = normalize(ex_mul(x, y), T);
  CHECK(prod.coords[0] == PV(0, 0) * PV(1, 0) + poly_scale(Int(-5), PV(0, 1) * PV(1, 1)));
  CHECK(prod.coords[1] == PV(0, 1) * PV(1, 0) + PV(0, 0) * PV(1, 1));

  auto zero = normalize(ex_add(x, ex_neg(x)), T);
  CHECK(zero == nf_zero(T));

  auto cubed = normalize(ex_pow(x, 3), T);
  CHECK(cubed.coords[1] ==
        poly_scale(Int(3), PV(0, 0) * PV(0, 0) * PV(0, 1)) +
            poly_scale(Int(-5), PV(0, 1) * PV(0, 1) * PV(0, 1)));

  CHECK_THROWS_AS(normalize(ex_basis(2), T), std::out_of_range);
  CHECK_THROWS_AS(ex_pow(x, -1), std::invalid_argument);
}

TEST_CASE("prove_eq validates commutative ring axioms on random tables") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> dab(-9, 9);
  auto x = ex_var(0), y = ex_var(1), z = ex_var(2);
  auto one = ex_const(1), nil = ex_const(0);
  for (int i = 0; i < 25; ++i) {
    auto T = quad_table(dab(rng), dab(rng));
    CHECK(prove_eq(ex_add(x, y), ex_add(y, x), T));
    CHECK(prove_eq(ex_add(ex_add(x, y), z), ex_add(x, ex_add(y, z)), T));
    CHECK(prove_eq(ex_add(x, nil), x, T));
    CHECK(prove_eq(ex_add(x, ex_neg(x)), nil, T));
    CHECK(prove_eq(ex_mul(x, y), ex_mul(y, x), T));
    CHECK(prove_eq(ex_mul(ex_mul(x, y), z), ex_mul(x, ex_mul(y, z)), T));
    CHECK(prove_eq(ex_mul(x, one), x, T));
    CHECK(prove_eq(ex_mul(x, ex_add(y, z)), ex_add(ex_mul(x, y), ex_mul(x, z)), T));
  }
}

TEST_CASE("prove_eq on stated identities") {
  auto x = ex_var(0), y = ex_var(1);
  auto cube_diff_lhs =
      ex_mul(ex_sub(x, y), ex_add(ex_add(ex_pow(x, 2), ex_mul(x, y)), ex_pow(y, 2)));
  auto cube_diff_rhs = ex_sub(ex_pow(x, 3), ex_pow(y, 3));
  CHECK(prove_eq(cube_diff_lhs, cube_diff_rhs, quad_table(0, -5)));
  CHECK(prove_eq(cube_diff_lhs, cube_diff_rhs, quad_table(1, -1)));
  CHECK(prove_eq(cube_diff_lhs, cube_diff_rhs, times_table<Int>(3, cubic_tensor())));
  CHECK(!prove_eq(ex_mul(x, y), ex_mul(x, x), quad_table(0, -5)));

  /* With d = eps - 3m^2 substituted, (m(3d + m^2))^2 = (m^2 - d)^3 + d
     becomes a one-variable identity valid in every commutative ring. */
  for (long eps : {1L, -1L}) {
    auto m = ex_var(0);
    auto dd = ex_sub(ex_const(eps), ex_scalar_mul(3, ex_pow(m, 2)));
    auto lhs = ex_pow(ex_mul(m, ex_add(ex_scalar_mul(3, dd), ex_pow(m, 2))), 2);
    auto rhs = ex_add(ex_pow(ex_sub(ex_pow(m, 2), dd), 3), dd);
    CHECK(prove_eq(lhs, rhs, quad_table(0, -13)));
    CHECK(prove_eq(lhs, rhs, quad_table(1, -2)));
  }
}

TEST_CASE("prove_eq over a rational base") {
  quad_params<Rat> p{Rat(0), make_rat(-5, 4)};
  auto T = table_for_quad<Rat>(p);
  auto x = ex_var(0), y = ex_var(1);
  CHECK(prove_eq(ex_mul(x, y), ex_mul(y, x), T));
  CHECK(normalize(ex_pow(x, 2), T).coords[0] ==
        poly_of_var<Rat>({0, 0}) * poly_of_var<Rat>({0, 0}) +
            poly_scale(make_rat(-5, 4), poly_of_var<Rat>({0, 1}) * poly_of_var<Rat>({0, 1})));
}

namespace {

expr_ptr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> dk(0, depth == 0 ? 2 : 7);
  std::uniform_int_distribution<long> dc(-5, 5);
  std::uniform_int_distribution<long> dvar(0, 2);
  std::uniform_int_distribution<long> dexp(0, 3);
  switch (dk(rng)) {
    case 0: return ex_var(dvar(rng));
    case 1: return ex_const(Int(dc(rng)));
    case 2: return ex_basis(dvar(rng) % 2);
    case 3: return ex_add(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 4: return ex_mul(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 5: return ex_neg(random_expr(rng, depth - 1));
    case 6: return ex_pow(random_expr(rng, depth - 1), dexp(rng));
    default: return ex_scalar_mul(Int(dc(rng)), random_expr(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("evaluation commutes with normalize on random expressions") {
  auto T = quad_table(0, -5);
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<long> dv(-9, 9);
  for (int i = 0; i < 1000; ++i) {
    expr_ptr e = random_expr(rng, 6);
    std::map<long, std::vector<Int>> assign;
    for (long v = 0; v < 3; ++v) assign[v] = {Int(dv(rng)), Int(dv(rng))};
    auto direct = evaluate(e, T, assign);
    auto nf = normalize(e, T);
    auto via_nf = evaluate<Int>(nf, [&](const poly_var& v) { return assign.at(v.var)[v.coord]; });
    CHECK(direct == via_nf);
  }
}

namespace {

/* Rebuild an expression from a normal form, one fresh ring variable
   per polynomial variable. */
expr_ptr reify(const normal_form<Int>& nf, std::map<poly_var, long>& fresh,
               std::map<long, poly_var>& back) {
  expr_ptr total = ex_const(0);
  for (long k = 0; k < static_cast<long>(nf.coords.size()); ++k) {
    expr_ptr coord = ex_const(0);
    for (const auto& [m, c] : nf.coords[k].terms) {
      expr_ptr t = ex_const(c);
      for (const auto& [v, e] : m.powers) {
        auto it = fresh.find(v);
        if (it == fresh.end()) {
          long id = 100 + static_cast<long>(fresh.size());
          it = fresh.emplace(v, id).first;
          back.emplace(id, v);
        }
        t = ex_mul(t, ex_pow(ex_var(it->second), e));
      }
      coord = ex_add(coord, t);
    }
    total = ex_add(total, ex_mul(coord, ex_basis(k)));
  }
  return total;
}

/* Specialize each fresh variable to the base-ring value it re-reified:
   coordinate 0 renames back, higher coordinates vanish. */
polynomial<Int> specialize(const polynomial<Int>& p, const std::map<long, poly_var>& back) {
  polynomial<Int> out;
  for (const auto& [m, c] : p.terms) {
    bool dead = false;
    polynomial<Int> term = poly_const(c);
    for (const auto& [v, e] : m.powers) {
      if (v.coord != 0) {
        dead = true;
        break;
      }
      for (long k = 0; k < e; ++k) term = term * poly_of_var<Int>(back.at(v.var));
    }
    if (!dead) out = out + term;
  }
  return out;
}

}  // namespace

TEST_CASE("normalize is idempotent through re-reification") {
  auto T = quad_table(0, -5);
  std::mt19937_64 rng(33);
  for (int i = 0; i < 200; ++i) {
    expr_ptr e = random_expr(rng, 4);
    auto nf = normalize(e, T);
    std::map<poly_var, long> fresh;
    std::map<long, poly_var> back;
    auto nf2 = normalize(reify(nf, fresh, back), T);
    normal_form<Int> recovered;
    for (const auto& c : nf2.coords) recovered.coords.push_back(specialize(c, back));
    CHECK(recovered == nf);
  }
}

TEST_CASE("expression parser follows the documented grammar") {
  auto T = quad_table(0, -5);
  expr_symbols sym;
  auto parsed = parse_ring_expr("(x - y) * (x^2 + x*y + y^2)", sym);
  auto x = ex_var(sym.intern("x")), y = ex_var(sym.intern("y"));
  CHECK(prove_eq(parsed, ex_sub(ex_pow(x, 3), ex_pow(y, 3)), T));

  expr_symbols sym2;
  auto sq = parse_ring_expr("sqrt * sqrt", sym2);
  CHECK(prove_eq(sq, ex_const(-5), T));

  expr_symbols sym3;
  auto prec = parse_ring_expr("2 + 3 * x ^ 2", sym3);
  auto xv = ex_var(sym3.intern("x"));
  CHECK(prove_eq(prec, ex_add(ex_const(2), ex_scalar_mul(3, ex_pow(xv, 2))), T));

  expr_symbols sym4;
  auto negs = parse_ring_expr("-x * -x", sym4);
  CHECK(prove_eq(negs, ex_pow(ex_var(sym4.intern("x")), 2), T));

  expr_symbols bad;
  CHECK_THROWS_AS(parse_ring_expr("x +", bad), parse_error);
  CHECK_THROWS_AS(parse_ring_expr("(x", bad), parse_error);
  CHECK_THROWS_AS(parse_ring_expr("x ^ y", bad), parse_error);
  CHECK_THROWS_AS(parse_ring_expr("x ) y", bad), parse_error);
  CHECK_THROWS_AS(parse_ring_expr("", bad), parse_error);
}

TEST_CASE("polynomial rendering") {
  auto name = [](const poly_var& v) {
    return std::string(1, static_cast<char>('x' + v.var)) + std::to_string(v.coord);
  };
  CHECK(render_poly(polynomial<Int>{}, name) == "0");
  CHECK(render_poly(PC(-7), name) == "-7");
  auto p = PV(0, 0) * PV(1, 0) + poly_scale(Int(-5), PV(0, 1) * PV(1, 1));
  CHECK(render_poly(p, name) == "x0*y0 - 5*x1*y1");
  auto q = poly_scale(Int(3), PV(0, 0) * PV(0, 0) * PV(0, 1)) +
           poly_scale(Int(-1), PV(0, 1) * PV(0, 1) * PV(0, 1)) + PC(1);
  CHECK(render_poly(q, name) == "3*x0^2*x1 - x1^3 + 1");
}

TEST_CASE("evaluate error conditions") {
  auto T = quad_table(0, -5);
  std::map<long, std::vector<Int>> empty_assign;
  CHECK_THROWS_AS(evaluate(ex_var(0), T, empty_assign), std::out_of_range);
  std::map<long, std::vector<Int>> bad_dim{{0, {Int(1)}}};
  CHECK_THROWS_AS(evaluate(ex_var(0), T, bad_dim), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(ex_basis(5), T, empty_assign), std::out_of_range);
}
