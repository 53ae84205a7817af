#include "qnt/mordell.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "qnt/class_group.hpp"

namespace qnt {

namespace {

constexpr long kObstructionScanMax = 72;

quad_ideal ideal_pow(const quad_ideal& I, long e) {
  quad_ideal acc = principal_ideal(quad_elem<Int>{I.params, Int(1), Int(0)});
  for (long k = 0; k < e; ++k) acc = ideal_mul(acc, I);
  return acc;
}

std::string istr(const Int& v) { return v.get_str(); }

[[noreturn]] void fail_stage(const std::string& name, const std::string& why) {
  throw hypothesis_error("descent_trace: stage " + name + " failed: " + why);
}

}  // namespace

mordell_instance check_hypotheses(const Int& d) {
  if (d == 0) {
    throw std::invalid_argument("check_hypotheses: d must be nonzero");
  }
  mordell_instance inst;
  inst.d = d;
  inst.negative = d < 0;
  inst.squarefree = qnt::squarefree(d);
  Int r = mod_floor(d, 4);
  inst.residue_23_mod4 = (r == 2 || r == 3);
  if (inst.negative && inst.squarefree && inst.residue_23_mod4) {
    inst.h = class_group(d).h;
    inst.class_gcd3 = mod_floor(inst.h, 3) != 0;
  }
  return inst;
}

mordell_result solve(const mordell_instance& inst) {
  if (!inst.qualifies()) {
    throw hypothesis_error("solve: instance has a false hypothesis flag");
  }
  const Int& d = inst.d;
  std::vector<Int> ms;
  for (int eps : {1, -1}) {
    Int num = Int(eps) - d;
    if (!divides(Int(3), num)) continue;
    std::optional<Int> m = integer_sqrt(num / 3);
    if (m) ms.push_back(*m);
  }

  mordell_result res;
  if (ms.empty()) {
    res.outcome = mordell_outcome::no_integer_m;
    for (Int n = 2; n <= kObstructionScanMax; ++n) {
      if (quadratic_insoluble_mod(Int(3), Int(0), d - 1, n) &&
          quadratic_insoluble_mod(Int(3), Int(0), d + 1, n)) {
        res.outcome = mordell_outcome::modular_obstruction;
        res.obstruction_modulus = n;
        break;
      }
    }
    return res;
  }

  res.outcome = mordell_outcome::solutions;
  for (const Int& m : ms) {
    Int x = m * m - d;
    Int y = m * (3 * d + m * m);
    if (!verify_solution(d, x, y)) {
      throw std::logic_error("solve: produced point fails the curve equation");
    }
    res.solutions.push_back({m, x, abs(y)});
    if (y != 0) res.solutions.push_back({m, x, -abs(y)});
  }
  std::sort(res.solutions.begin(), res.solutions.end(),
            [](const mordell_solution& a, const mordell_solution& b) {
              return std::tie(a.x, a.y) < std::tie(b.x, b.y);
            });
  res.solutions.erase(std::unique(res.solutions.begin(), res.solutions.end()),
                      res.solutions.end());
  return res;
}

bool verify_solution(const Int& d, const Int& x, const Int& y) {
  return y * y == x * x * x + d;
}

bool x_odd_certificate(const Int& d) {
  Int r = mod_floor(d, 8);
  return r == 2 || r == 3 || r == 5 || r == 6 || r == 7;
}

bool gcd_certificate(const Int& d, const Int& y) {
  quad_params<Int> params{Int(0), d};
  quad_ideal plus = principal_ideal(quad_elem<Int>{params, y, Int(1)});
  quad_ideal minus = principal_ideal(quad_elem<Int>{params, y, Int(-1)});
  return abs_norm(ideal_sum(plus, minus)) == 1;
}

descent_report descent_trace(const Int& d, const Int& x, const Int& y) {
  descent_report rep;
  rep.d = d;
  rep.x = x;
  rep.y = y;

  if (!verify_solution(d, x, y)) {
    fail_stage("curve", istr(y) + "^2 != " + istr(x) + "^3 + (" + istr(d) + ")");
  }
  rep.stages.push_back(
      {"curve", istr(y) + "^2 = " + istr(x) + "^3 + (" + istr(d) + ")"});

  mordell_instance inst = check_hypotheses(d);
  if (!inst.qualifies()) {
    fail_stage("hypotheses", std::string("flags: negative=") +
                                 (inst.negative ? "true" : "false") +
                                 " squarefree=" + (inst.squarefree ? "true" : "false") +
                                 " residue_23_mod4=" +
                                 (inst.residue_23_mod4 ? "true" : "false") +
                                 " gcd(3,h)=1: " + (inst.class_gcd3 ? "true" : "false"));
  }
  rep.stages.push_back({"hypotheses",
                        "d < 0 squarefree, d = " + istr(mod_floor(d, 4)) +
                            " (mod 4), h = " + istr(inst.h) + ", gcd(3, h) = 1"});

  ring_of_integers_model model = ring_of_integers(d);
  quad_params<Int> params{Int(0), d};
  rep.plus_ideal = principal_ideal(quad_elem<Int>{params, y, Int(1)});
  rep.minus_ideal = principal_ideal(quad_elem<Int>{params, y, Int(-1)});
  quad_ideal x_cubed = ideal_pow(principal_ideal(quad_elem<Int>{params, x, Int(0)}), 3);
  if (ideal_mul(rep.plus_ideal, rep.minus_ideal) != x_cubed) {
    fail_stage("product", "ideal product does not equal <x>^3");
  }
  rep.stages.push_back({"product", render_ideal(rep.plus_ideal, model) + " * " +
                                       render_ideal(rep.minus_ideal, model) + " = " +
                                       render_ideal(x_cubed, model)});

  quad_ideal sum = ideal_sum(rep.plus_ideal, rep.minus_ideal);
  if (abs_norm(sum) != 1) {
    fail_stage("gcd", "ideal sum " + render_ideal(sum, model) + " is not the unit ideal");
  }
  rep.stages.push_back({"gcd", render_ideal(rep.plus_ideal, model) + " + " +
                                   render_ideal(rep.minus_ideal, model) + " = " +
                                   render_ideal(sum, model)});

  rep.plus_factors = factor_ideal(rep.plus_ideal);
  rep.cube_root = principal_ideal(quad_elem<Int>{params, Int(1), Int(0)});
  for (const auto& [P, e] : rep.plus_factors) {
    if (mod_floor(e, 3) != 0) {
      fail_stage("cube_root", "exponent of " + render_ideal(P, model) +
                                  " is not divisible by 3");
    }
    long third = static_cast<long>(mpz_get_si(Int(e / 3).get_mpz_t()));
    rep.cube_root = ideal_mul(rep.cube_root, ideal_pow(P, third));
  }
  if (ideal_pow(rep.cube_root, 3) != rep.plus_ideal) {
    fail_stage("cube_root", "cube of the extracted root misses the ideal");
  }
  rep.stages.push_back({"cube_root", render_ideal(rep.cube_root, model) + "^3 = " +
                                         render_ideal(rep.plus_ideal, model)});

  std::optional<quad_elem<Int>> z0 = is_principal(rep.cube_root);
  if (!z0) {
    fail_stage("principal", render_ideal(rep.cube_root, model) + " is not principal");
  }
  rep.generator = *z0;
  rep.stages.push_back({"principal", render_ideal(rep.cube_root, model) + " = (" +
                                         render_elem(rep.generator, model) + ")"});

  quad_elem<Int> target{params, y, Int(1)};
  bool adjusted = false;
  for (const auto& u : units(d)) {
    quad_elem<Int> z = u * rep.generator;
    if (cube(z) == target) {
      rep.unit = u;
      rep.cube_generator = z;
      adjusted = true;
      break;
    }
  }
  if (!adjusted) {
    fail_stage("unit_adjust", "no unit multiple of " + render_elem(rep.generator, model) +
                                  " cubes to " + render_elem(target, model));
  }
  rep.stages.push_back({"unit_adjust",
                        "(" + render_elem(rep.unit, model) + ") * (" +
                            render_elem(rep.generator, model) + ") = " +
                            render_elem(rep.cube_generator, model) + ", cube = " +
                            render_elem(target, model)});

  const Int& a = rep.cube_generator.b1;
  const Int& b = rep.cube_generator.b2;
  bool comp_y = a * (a * a + 3 * b * b * d) == y;
  bool comp_one = b * (3 * a * a + b * b * d) == 1;
  if (!comp_y || !comp_one || !(b == 1 || b == -1)) {
    fail_stage("components", "component equations fail for a = " + istr(a) +
                                 ", b = " + istr(b));
  }
  rep.stages.push_back(
      {"components", "a = " + istr(a) + ", b = " + istr(b) +
                         ": a*(a^2 + 3*b^2*d) = " + istr(y) +
                         ", b*(3*a^2 + b^2*d) = 1, b = +/-1"});
  return rep;
}

bool quadratic_insoluble_mod(const Int& c2, const Int& c1, const Int& c0,
                             const Int& n) {
  if (n < 2) {
    throw std::invalid_argument("quadratic_insoluble_mod: modulus must be at least 2");
  }
  if (!mpz_fits_ulong_p(n.get_mpz_t())) {
    throw std::invalid_argument("quadratic_insoluble_mod: modulus too large");
  }
  unsigned long nn = mpz_get_ui(n.get_mpz_t());
  std::vector<bool> is_sq(nn, false);
  for (unsigned long t = 0; t < nn; ++t) {
    is_sq[static_cast<unsigned long>((static_cast<unsigned __int128>(t) * t) % nn)] = true;
  }
  for (Int t = 0; t < n; ++t) {
    Int v = mod_floor(c2 * t * t + c1 * t + c0, n);
    if (is_sq[mpz_get_ui(v.get_mpz_t())]) return false;
  }
  return true;
}

std::optional<Int> search_modulus(const Int& c2, const Int& c1, const Int& c0,
                                  const Int& n_max) {
  for (Int n = 2; n <= n_max; ++n) {
    if (quadratic_insoluble_mod(c2, c1, c0, n)) return n;
  }
  return std::nullopt;
}

std::vector<std::pair<Int, Int>> brute_force_points(const Int& d, const Int& x_bound) {
  if (x_bound < 1) {
    throw std::invalid_argument("brute_force_points: x_bound must be at least 1");
  }
  std::vector<std::pair<Int, Int>> out;
  for (Int x = -x_bound; x <= x_bound; ++x) {
    Int rhs = x * x * x + d;
    if (rhs < 0) continue;
    std::optional<Int> y = integer_sqrt(rhs);
    if (!y) continue;
    if (*y != 0) out.emplace_back(x, -*y);
    out.emplace_back(x, *y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qnt
