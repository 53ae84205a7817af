#ifndef QNT_MORDELL_HPP
#define QNT_MORDELL_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qnt/errors.hpp"
#include "qnt/ideals.hpp"
#include "qnt/integers.hpp"
#include "qnt/quad_ring.hpp"

namespace qnt {

/* Hypotheses under which the descent solver is complete.  h is the
   class number, left at 0 whenever an earlier flag already blocks the
   class-group computation (then class_gcd3 is false as well). */
struct mordell_instance {
  Int d;
  bool negative = false;
  bool squarefree = false;
  bool residue_23_mod4 = false;
  bool class_gcd3 = false;
  Int h = 0;

  bool qualifies() const {
    return negative && squarefree && residue_23_mod4 && class_gcd3;
  }
};

/* One solution family: y = +/-m*(3d + m^2) with m >= 0, x = m^2 - d;
   both signs appear as separate entries. */
struct mordell_solution {
  Int m;
  Int x;
  Int y;
  friend bool operator==(const mordell_solution&, const mordell_solution&) = default;
};

enum class mordell_outcome { solutions, no_integer_m, modular_obstruction };

struct mordell_result {
  mordell_outcome outcome;
  /* Sorted by (x, y); empty unless outcome == solutions. */
  std::vector<mordell_solution> solutions;
  /* A modulus n for which both 3t^2 + (d-1) and 3t^2 + (d+1) avoid
     every square mod n; present only for modular_obstruction. */
  std::optional<Int> obstruction_modulus;
};

/* Evaluates every hypothesis flag for y^2 = x^3 + d.  d must be
   nonzero. */
mordell_instance check_hypotheses(const Int& d);

/* The complete set of integral points for a qualifying instance: m
   candidates come from integer_sqrt((1-d)/3) and integer_sqrt((-1-d)/3)
   where divisible, each produced point is re-verified against the
   curve.  Rejects any instance with a false flag. */
mordell_result solve(const mordell_instance& inst);

/* Exact check of y^2 = x^3 + d. */
bool verify_solution(const Int& d, const Int& x, const Int& y);

/* True iff d mod 8 lies in {2, 3, 5, 6, 7}; then every integral point
   has odd x, by an exhaustive residue check mod 8. */
bool x_odd_certificate(const Int& d);

/* Whether <y + sqrt(d)> + <y - sqrt(d)> is the unit ideal. */
bool gcd_certificate(const Int& d, const Int& y);

struct descent_stage {
  std::string name;
  std::string detail;
};

/* Stagewise record of the ideal descent on a verified point.  Every
   stage passed; a failing stage raises hypothesis_error naming it. */
struct descent_report {
  Int d;
  Int x;
  Int y;
  quad_ideal plus_ideal;            /* <y + sqrt(d)> */
  quad_ideal minus_ideal;           /* <y - sqrt(d)> */
  ideal_factorization plus_factors; /* prime factorization of plus_ideal */
  quad_ideal cube_root;             /* L with L^3 = plus_ideal */
  quad_elem<Int> generator;         /* z0 with <z0> = L */
  quad_elem<Int> unit;              /* u with (u*z0)^3 = y + sqrt(d) */
  quad_elem<Int> cube_generator;    /* z = u*z0 */
  std::vector<descent_stage> stages;
};

/* Runs the descent stages curve, hypotheses, product, gcd, cube_root,
   principal, unit_adjust, components on (x, y). */
descent_report descent_trace(const Int& d, const Int& x, const Int& y);

/* Whether c2*t^2 + c1*t + c0 misses every square modulo n, checked
   exhaustively over t; n >= 2. */
bool quadratic_insoluble_mod(const Int& c2, const Int& c1, const Int& c0, const Int& n);

/* Smallest n in [2, n_max] making the quadratic insoluble, if any. */
std::optional<Int> search_modulus(const Int& c2, const Int& c1, const Int& c0,
                                  const Int& n_max);

/* All integral points with |x| <= x_bound, by perfect-square testing
   of x^3 + d; sorted by (x, y).  x_bound >= 1. */
std::vector<std::pair<Int, Int>> brute_force_points(const Int& d, const Int& x_bound);

}  // namespace qnt

#endif
