#pragma once

// Exponent bookkeeping for the determinant method, all in exact rationals.
// Sizes are written T1^-a T2^-b with tau = log T2 / log T1.

#include <optional>
#include <string>
#include <vector>

#include "pfv/bigint.hpp"

namespace pfv {

struct MonomialSize {
  unsigned a = 0;                  // T1 exponent (alpha degree)
  unsigned b = 0;                  // T2 exponent (beta degree, 0 or 1)
  std::vector<unsigned> alpha;     // exponents of alpha_1 .. alpha_{d-1}
  int beta = -1;                   // index j of the beta_j factor, or -1
  std::string label() const;       // "1", "a1^2*a2", "b1", "a1*b2", ...

  bool operator==(const MonomialSize&) const = default;
};

struct MonomialSelection {
  std::vector<MonomialSize> monomials;  // decreasing size
  BigInt sum_a = 0;
  BigInt sum_b = 0;
};

struct MRange {
  Rational lower, upper;
  bool nonempty = false;
};

struct FinalExponent {
  Rational n_bound_exp;   // (1 - 1/d)(1 + m)
  Rational lhs;           // (d - 1) m
  bool sufficient = false;  // lhs < 1
};

struct BoundReport {
  unsigned d = 0;
  unsigned R = 0;  // d^2
  unsigned S = 0;  // d(d+1)/2
  std::optional<Rational> xi;  // d >= 4
  Rational tau;
  Rational a_exp, b_exp;
  MonomialSelection selection;
  // sum_{m<=2} n(m, d-1) < R <= sum_{m<=3} n(m, d-1)
  BigInt monomials_upto_2 = 0, monomials_upto_3 = 0;
  bool upto_2_below_R = false, upto_3_reaches_R = false;
  MRange m_range;
  // M^(d-1) << min(A, X), as an upper exponent for M.
  Rational taylor_upper;
  FinalExponent final_at_lower;
  // (d-1) * lower at a = b = 1 and the bound it is compared with
  // (8/11 vs 1 for d = 3, 4d/(5d+2) vs 4/5 for d >= 4).
  Rational driver;
  Rational driver_limit;
  bool driver_ok = false;
};

BigInt monomial_count(unsigned degree, unsigned variables);

// (d-1)(5d+2)/2; throws DegreeTooSmall for d < 4.
Rational xi_exponent(unsigned d);

// The R largest sizes over alpha-monomials in d-1 variables, optionally
// times one beta_j. Ordered by a + tau b, then smaller b, then the alpha
// exponent vector in decreasing lexicographic order, then beta index.
MonomialSelection largest_monomials(unsigned d, const Rational& tau, unsigned R);

MRange m_range(unsigned d, const Rational& a_exp, const Rational& b_exp);

FinalExponent final_exponent(unsigned d, const Rational& m_exp);

Rational large_b_exponent(unsigned d, const Rational& b_exp);

// tau defaults to 1 / lower(a = b = 1), i.e. T1 = M at the bottom of the range.
BoundReport bound_report(unsigned d, std::optional<Rational> tau = std::nullopt, const Rational& a_exp = 1,
                         const Rational& b_exp = 1);

}  // namespace pfv
