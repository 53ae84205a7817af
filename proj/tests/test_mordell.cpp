#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qnt/mordell.hpp"
#include "qnt/quad_ring.hpp"

using namespace qnt;

namespace {

std::vector<std::string> stage_names(const descent_report& rep) {
  std::vector<std::string> out;
  for (const auto& s : rep.stages) out.push_back(s.name);
  return out;
}

const std::vector<std::string> kAllStages = {
    "curve",     "hypotheses",  "product",    "gcd",
    "cube_root", "principal",   "unit_adjust", "components"};

std::string failing_stage(const Int& d, const Int& x, const Int& y) {
  try {
    descent_trace(d, x, y);
  } catch (const hypothesis_error& e) {
    std::string what = e.what();
    for (const auto& name : kAllStages) {
      if (what.find("stage " + name + " failed") != std::string::npos) return name;
    }
    return "unmatched: " + what;
  }
  return "none";
}

/* Exhaustive two-variable scan, independent of the library routine. */
bool brute_insoluble(long c2, long c1, long c0, long n) {
  for (long t = 0; t < n; ++t) {
    for (long y = 0; y < n; ++y) {
      long lhs = ((c2 * t * t + c1 * t + c0) % n + n * n) % n;
      if (lhs == (y * y) % n) return false;
    }
  }
  return true;
}

std::set<std::pair<Int, Int>> solution_set(const mordell_result& r) {
  std::set<std::pair<Int, Int>> out;
  for (const auto& s : r.solutions) out.insert({s.x, s.y});
  return out;
}

}  // namespace

TEST_CASE("check_hypotheses evaluates every flag") {
  mordell_instance i13 = check_hypotheses(Int(-13));
  CHECK(i13.negative);
  CHECK(i13.squarefree);
  CHECK(i13.residue_23_mod4);
  CHECK(i13.class_gcd3);
  CHECK(i13.h == 2);
  CHECK(i13.qualifies());

  mordell_instance i3 = check_hypotheses(Int(-3));
  CHECK(i3.negative);
  CHECK(i3.squarefree);
  CHECK(!i3.residue_23_mod4);
  CHECK(!i3.qualifies());
  CHECK(i3.h == 0);

  mordell_instance i4 = check_hypotheses(Int(-4));
  CHECK(!i4.squarefree);
  CHECK(!i4.qualifies());

  /* h(-26) = 6, so gcd(3, h) = 3 blocks the descent. */
  mordell_instance i26 = check_hypotheses(Int(-26));
  CHECK(i26.negative);
  CHECK(i26.squarefree);
  CHECK(i26.residue_23_mod4);
  CHECK(i26.h == 6);
  CHECK(!i26.class_gcd3);
  CHECK(!i26.qualifies());

  mordell_instance ipos = check_hypotheses(Int(5));
  CHECK(!ipos.negative);
  CHECK(!ipos.qualifies());

  CHECK_THROWS_AS(check_hypotheses(Int(0)), std::invalid_argument);
}

TEST_CASE("solve returns the known point sets for the five instances") {
  mordell_result r1 = solve(check_hypotheses(Int(-1)));
  CHECK(r1.outcome == mordell_outcome::solutions);
  REQUIRE(r1.solutions.size() == 1);
  CHECK(r1.solutions[0] == mordell_solution{Int(0), Int(1), Int(0)});

  mordell_result r2 = solve(check_hypotheses(Int(-2)));
  CHECK(r2.outcome == mordell_outcome::solutions);
  REQUIRE(r2.solutions.size() == 2);
  CHECK(r2.solutions[0] == mordell_solution{Int(1), Int(3), Int(-5)});
  CHECK(r2.solutions[1] == mordell_solution{Int(1), Int(3), Int(5)});

  mordell_result r13 = solve(check_hypotheses(Int(-13)));
  CHECK(r13.outcome == mordell_outcome::solutions);
  REQUIRE(r13.solutions.size() == 2);
  CHECK(r13.solutions[0] == mordell_solution{Int(2), Int(17), Int(-70)});
  CHECK(r13.solutions[1] == mordell_solution{Int(2), Int(17), Int(70)});

  mordell_result r5 = solve(check_hypotheses(Int(-5)));
  CHECK(r5.outcome != mordell_outcome::solutions);
  CHECK(r5.solutions.empty());

  mordell_result r6 = solve(check_hypotheses(Int(-6)));
  CHECK(r6.outcome != mordell_outcome::solutions);
  CHECK(r6.solutions.empty());
}

TEST_CASE("empty results carry a sound modular obstruction when one exists") {
  mordell_result r5 = solve(check_hypotheses(Int(-5)));
  REQUIRE(r5.outcome == mordell_outcome::modular_obstruction);
  REQUIRE(r5.obstruction_modulus.has_value());
  CHECK(*r5.obstruction_modulus == 9);

  mordell_result r6 = solve(check_hypotheses(Int(-6)));
  REQUIRE(r6.outcome == mordell_outcome::modular_obstruction);
  REQUIRE(r6.obstruction_modulus.has_value());
  CHECK(*r6.obstruction_modulus == 12);

  /* The certificate is re-checked by exhaustive scan: both branch
     quadratics 3t^2 + (d -+ 1) miss every square mod n, and no
     smaller modulus has that joint property. */
  for (long d : {-5L, -6L}) {
    Int n = *solve(check_hypotheses(Int(d))).obstruction_modulus;
    long nn = n.get_si();
    CHECK(brute_insoluble(3, 0, d - 1, nn));
    CHECK(brute_insoluble(3, 0, d + 1, nn));
    for (long k = 2; k < nn; ++k) {
      CHECK(!(brute_insoluble(3, 0, d - 1, k) && brute_insoluble(3, 0, d + 1, k)));
    }
  }
}

TEST_CASE("solve rejects instances with a false flag") {
  CHECK_THROWS_AS(solve(check_hypotheses(Int(-3))), hypothesis_error);
  CHECK_THROWS_AS(solve(check_hypotheses(Int(-4))), hypothesis_error);
  CHECK_THROWS_AS(solve(check_hypotheses(Int(-26))), hypothesis_error);
  CHECK_THROWS_AS(solve(check_hypotheses(Int(7))), hypothesis_error);
}

TEST_CASE("verify_solution is the exact curve predicate") {
  CHECK(verify_solution(Int(-2), Int(3), Int(5)));
  CHECK(!verify_solution(Int(-5), Int(0), Int(0)));
  CHECK(verify_solution(Int(-13), Int(17), Int(-70)));
  CHECK(verify_solution(Int(-1), Int(1), Int(0)));
  CHECK(!verify_solution(Int(-2), Int(3), Int(4)));
}

TEST_CASE("the closed-form family always lands on the curve") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> md(0, 1000);
  for (int t = 0; t < 1000; ++t) {
    Int m(md(rng));
    for (int eps : {1, -1}) {
      Int d = Int(eps) - 3 * m * m;
      Int x = m * m - d;
      Int y = m * (3 * d + m * m);
      CHECK(verify_solution(d, x, y));
      CHECK(verify_solution(d, x, -y));
    }
  }
}

TEST_CASE("x_odd_certificate matches the residue set") {
  CHECK(x_odd_certificate(Int(-5)));
  CHECK(x_odd_certificate(Int(-1)));
  CHECK(!x_odd_certificate(Int(-8)));
  for (long d = -40; d <= 40; ++d) {
    Int r = mod_floor(Int(d), 8);
    bool in_set = r == 2 || r == 3 || r == 5 || r == 6 || r == 7;
    CHECK(x_odd_certificate(Int(d)) == in_set);
  }
}

TEST_CASE("no even x survives the mod 8 residue check on the certified set") {
  for (long d8 : {2L, 3L, 5L, 6L, 7L}) {
    for (long x = 0; x < 8; x += 2) {
      for (long y = 0; y < 8; ++y) {
        CHECK((y * y - d8 - x * x * x) % 8 != 0);
      }
    }
  }
}

TEST_CASE("gcd_certificate computes the ideal sum") {
  CHECK(gcd_certificate(Int(-2), Int(5)));
  CHECK(gcd_certificate(Int(-13), Int(70)));
  CHECK(gcd_certificate(Int(-13), Int(-70)));
  /* y = 0 over d = -1: sqrt(-1) is a unit, so the sum is <1>. */
  CHECK(gcd_certificate(Int(-1), Int(0)));
  /* y = 0 over d = -5: the sum is <sqrt(-5)>, norm 5. */
  CHECK(!gcd_certificate(Int(-5), Int(0)));
}

TEST_CASE("descent_trace passes all stages on the certified points") {
  struct probe {
    long d, x, y;
    long za, zb;
  };
  std::vector<probe> probes = {{-2, 3, 5, -1, 1},
                               {-2, 3, -5, 1, 1},
                               {-13, 17, 70, -2, -1},
                               {-13, 17, -70, 2, -1}};
  for (const auto& p : probes) {
    descent_report rep = descent_trace(Int(p.d), Int(p.x), Int(p.y));
    CHECK(stage_names(rep) == kAllStages);
    quad_params<Int> params{Int(0), Int(p.d)};
    CHECK(rep.cube_generator == quad_elem<Int>{params, Int(p.za), Int(p.zb)});
    CHECK(cube(rep.cube_generator) == quad_elem<Int>{params, Int(p.y), Int(1)});
    quad_ideal root_cubed =
        ideal_mul(ideal_mul(rep.cube_root, rep.cube_root), rep.cube_root);
    CHECK(root_cubed == rep.plus_ideal);
    CHECK(abs_norm(rep.plus_ideal) == Int(p.x) * Int(p.x) * Int(p.x));
    const Int& a = rep.cube_generator.b1;
    const Int& b = rep.cube_generator.b2;
    CHECK(a * (a * a + 3 * b * b * p.d) == p.y);
    CHECK(b * (3 * a * a + b * b * p.d) == 1);
  }
}

TEST_CASE("descent_trace degenerates gracefully on the y = 0 boundary") {
  descent_report rep = descent_trace(Int(-1), Int(1), Int(0));
  CHECK(stage_names(rep) == kAllStages);
  CHECK(abs_norm(rep.plus_ideal) == 1);
  CHECK(rep.plus_factors.empty());
  quad_params<Int> params{Int(0), Int(-1)};
  CHECK(rep.cube_generator == quad_elem<Int>{params, Int(0), Int(-1)});
  CHECK(cube(rep.cube_generator) == quad_elem<Int>{params, Int(0), Int(1)});
}

TEST_CASE("descent_trace aborts with the failing stage identifier") {
  CHECK(failing_stage(Int(-2), Int(3), Int(4)) == "curve");
  /* (3, 1) lies on y^2 = x^3 - 26 but h(-26) = 6 is divisible by 3. */
  CHECK(failing_stage(Int(-26), Int(3), Int(1)) == "hypotheses");
  /* (-3, 2) lies on y^2 = x^3 + 31 but d > 0 is out of scope. */
  CHECK(failing_stage(Int(31), Int(-3), Int(2)) == "hypotheses");
}

TEST_CASE("quadratic_insoluble_mod scans the full residue table") {
  /* t itself is always a square residue target mod 2. */
  CHECK(!quadratic_insoluble_mod(Int(0), Int(1), Int(0), Int(2)));
  /* The two branch quadratics for d = -5 miss every square mod 9. */
  CHECK(quadratic_insoluble_mod(Int(3), Int(0), Int(-6), Int(9)));
  CHECK(quadratic_insoluble_mod(Int(3), Int(0), Int(-4), Int(9)));
  /* Mod 11 both are soluble, since cubing is a bijection mod 11 and
     more directly 3t^2 - 6 hits the square 3 at t = 4. */
  CHECK(!quadratic_insoluble_mod(Int(3), Int(0), Int(-6), Int(11)));
  /* The d = -6 branch quadratics miss every square mod 12. */
  CHECK(quadratic_insoluble_mod(Int(3), Int(0), Int(-7), Int(12)));
  CHECK(quadratic_insoluble_mod(Int(3), Int(0), Int(-5), Int(12)));
  CHECK_THROWS_AS(quadratic_insoluble_mod(Int(1), Int(0), Int(1), Int(1)),
                  std::invalid_argument);
  /* Agreement with the independent scan on random small inputs. */
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> coef(-20, 20);
  std::uniform_int_distribution<long> mod(2, 30);
  for (int t = 0; t < 300; ++t) {
    long c2 = coef(rng), c1 = coef(rng), c0 = coef(rng), n = mod(rng);
    CHECK(quadratic_insoluble_mod(Int(c2), Int(c1), Int(c0), Int(n)) ==
          brute_insoluble(c2, c1, c0, n));
  }
}

TEST_CASE("search_modulus returns the least certifying modulus") {
  std::optional<Int> n7 = search_modulus(Int(3), Int(0), Int(-7), Int(72));
  REQUIRE(n7.has_value());
  CHECK(*n7 == 3);
  CHECK(brute_insoluble(3, 0, -7, 3));
  /* t + 0 realizes every residue, so y^2 = t is soluble everywhere. */
  CHECK(!search_modulus(Int(0), Int(1), Int(0), Int(72)).has_value());
  /* Minimality across the scanned range. */
  std::optional<Int> n5 = search_modulus(Int(3), Int(0), Int(-6), Int(72));
  REQUIRE(n5.has_value());
  for (Int k = 2; k < *n5; ++k) {
    CHECK(!quadratic_insoluble_mod(Int(3), Int(0), Int(-6), k));
  }
}

TEST_CASE("brute_force_points finds exactly the points within the bound") {
  auto p2 = brute_force_points(Int(-2), Int(100));
  REQUIRE(p2.size() == 2);
  CHECK(p2[0] == std::pair<Int, Int>{Int(3), Int(-5)});
  CHECK(p2[1] == std::pair<Int, Int>{Int(3), Int(5)});
  CHECK(brute_force_points(Int(-6), Int(100)).empty());
  CHECK(brute_force_points(Int(-11), Int(100)).size() == 4);
  CHECK_THROWS_AS(brute_force_points(Int(-2), Int(0)), std::invalid_argument);

  /* Point counts for -d = 1..13 within |x| <= 100. */
  std::vector<std::size_t> expected = {1, 2, 0, 4, 0, 0, 4, 1, 0, 0, 4, 0, 2};
  for (long k = 1; k <= 13; ++k) {
    CHECK(brute_force_points(Int(-k), Int(100)).size() == expected[k - 1]);
  }

  /* Every reported point satisfies the curve, and a direct rescan of
     a small window finds nothing extra. */
  for (long d : {-1L, -4L, -7L, -11L}) {
    auto pts = brute_force_points(Int(d), Int(50));
    for (const auto& [x, y] : pts) CHECK(verify_solution(Int(d), x, y));
    std::set<std::pair<Int, Int>> seen(pts.begin(), pts.end());
    for (long x = -50; x <= 50; ++x) {
      for (long y = -400; y <= 400; ++y) {
        if (Int(y) * y == Int(x) * x * x + d) {
          CHECK(seen.count({Int(x), Int(y)}) == 1);
        }
      }
    }
  }
}

TEST_CASE("solve agrees with brute force on the five instances") {
  std::vector<std::size_t> counts;
  for (long d : {-1L, -2L, -5L, -6L, -13L}) {
    mordell_result r = solve(check_hypotheses(Int(d)));
    auto brute = brute_force_points(Int(d), Int(10000));
    std::set<std::pair<Int, Int>> bset(brute.begin(), brute.end());
    CHECK(solution_set(r) == bset);
    counts.push_back(bset.size());
    for (const auto& s : r.solutions) CHECK(verify_solution(Int(d), s.x, s.y));
  }
  CHECK(counts == std::vector<std::size_t>{1, 2, 0, 0, 2});
}
