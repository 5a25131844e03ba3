#include <doctest.h>

#include <algorithm>

#include "pfv/detbounds.hpp"
#include "pfv/errors.hpp"

using namespace pfv;

namespace {

// Independent enumeration: every exponent tuple of total degree <= cap in
// d-1 alpha slots, alone or times one beta_j, keyed by (a + tau b, b).
std::pair<BigInt, BigInt> oracle_sums(unsigned d, const Rational& tau, unsigned R, unsigned cap) {
  const unsigned n = d - 1;
  std::vector<std::pair<std::pair<Rational, unsigned>, unsigned>> all;
  std::vector<unsigned> e(n, 0);
  auto visit = [&](auto&& self, unsigned i, unsigned used) -> void {
    if (i == n) {
      all.push_back({{Rational(used), 0}, used});
      for (unsigned j = 0; j < n; ++j) all.push_back({{Rational(used) + tau, 1}, used});
      return;
    }
    for (unsigned v = 0; used + v <= cap; ++v) self(self, i + 1, used + v);
  };
  visit(visit, 0, 0);
  std::sort(all.begin(), all.end());
  REQUIRE(all.size() >= R);
  // the cutoff must exceed every selected key for the truncation to be exact
  REQUIRE(all[R - 1].first.first < Rational(cap + 1));
  BigInt sa = 0, sb = 0;
  for (unsigned i = 0; i < R; ++i) {
    sa += all[i].second;
    sb += all[i].first.second;
  }
  return {sa, sb};
}

BigInt binom(unsigned n, unsigned k) {
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) r = r * (n - i);
  for (unsigned i = 1; i <= k; ++i) r /= i;
  return r;
}

}  // namespace

TEST_CASE("monomial count") {
  CHECK(monomial_count(2, 3) == 6);
  CHECK(monomial_count(0, 5) == 1);
  CHECK(monomial_count(0, 2) + monomial_count(1, 2) + monomial_count(2, 2) == 6);
  for (unsigned D = 0; D < 8; ++D)
    for (unsigned N = 1; N < 8; ++N) CHECK(monomial_count(D, N) == binom(N + D - 1, D));
}

TEST_CASE("xi") {
  CHECK(xi_exponent(4) == 33);
  CHECK(xi_exponent(5) == 54);
  CHECK_THROWS_AS(xi_exponent(3), Error);
  for (unsigned d = 4; d <= 12; ++d) {
    const auto sel = largest_monomials(d, Rational(d - 1), d * d);
    CHECK(Rational(sel.sum_a) == xi_exponent(d));
    const auto o = oracle_sums(d, Rational(d - 1), d * d, 4);
    CHECK(o.first == sel.sum_a);
    CHECK(o.second == sel.sum_b);
  }
}

TEST_CASE("largest monomials") {
  const auto sel = largest_monomials(3, Rational(11, 4), 9);
  std::vector<std::string> labels;
  for (const auto& m : sel.monomials) labels.push_back(m.label());
  CHECK(labels == std::vector<std::string>{"1", "a1", "a2", "a1^2", "a1*a2", "a2^2", "b1", "b2", "a1^3"});
  CHECK(sel.sum_a == 11);
  CHECK(sel.sum_b == 2);
  const auto s4 = largest_monomials(4, Rational(3), 16);
  CHECK(s4.sum_a == 33);
  CHECK(s4.sum_b == 0);
  const auto s1 = largest_monomials(5, Rational(2), 1);
  REQUIRE(s1.monomials.size() == 1);
  CHECK(s1.monomials[0].label() == "1");
  CHECK(s1.sum_a == 0);
  for (unsigned d = 3; d <= 6; ++d)
    for (Rational tau : {Rational(1), Rational(3, 2), Rational(11, 4), Rational(5)}) {
      BigInt prev = 0;
      for (unsigned R = 1; R <= 40; ++R) {
        const auto s = largest_monomials(d, tau, R);
        const Rational prod = Rational(s.sum_a) + tau * Rational(s.sum_b);
        CHECK(prod >= Rational(prev));
        prev = numerator(prod) / denominator(prod);
        const auto o = oracle_sums(d, tau, R, 12);
        CHECK(Rational(o.first) + tau * Rational(o.second) == prod);
      }
    }
}

TEST_CASE("monomial count inequalities") {
  for (unsigned d = 3; d <= 30; ++d) {
    const BigInt two = monomial_count(0, d - 1) + monomial_count(1, d - 1) + monomial_count(2, d - 1);
    CHECK(two == d * (d + 1) / 2);
    CHECK(two < d * d);
    CHECK(two + monomial_count(3, d - 1) >= d * d);
  }
}

TEST_CASE("m range") {
  auto r = m_range(3, 1, 1);
  CHECK(r.lower == Rational(4, 11));
  CHECK(r.upper == Rational(1, 2));
  CHECK(r.nonempty);
  r = m_range(4, 1, 1);
  CHECK(r.lower == Rational(8, 33));
  CHECK(r.upper == Rational(1, 3));
  CHECK(Rational(3) * r.lower == Rational(8, 11));
  for (unsigned d = 3; d <= 12; ++d) {
    const auto m = m_range(d, 1, 1);
    CHECK(m.nonempty);
    CHECK(final_exponent(d, m.lower).sufficient);
    if (d >= 4) {
      CHECK(Rational(d - 1) * m.lower == Rational(4 * d, 5 * d + 2));
      CHECK(Rational(4 * d, 5 * d + 2) < Rational(4, 5));
    }
  }
  CHECK_FALSE(m_range(3, 1, 2).nonempty);
}

TEST_CASE("final exponent") {
  auto f = final_exponent(3, Rational(4, 11));
  CHECK(f.n_bound_exp == Rational(10, 11));
  CHECK(f.lhs == Rational(8, 11));
  CHECK(f.sufficient);
  CHECK(final_exponent(4, Rational(8, 33)).sufficient);
  CHECK(final_exponent(4, Rational(8, 33)).lhs == Rational(24, 33));
  CHECK_FALSE(final_exponent(3, Rational(1, 2)).sufficient);
}

TEST_CASE("large b exponent") {
  CHECK(large_b_exponent(3, Rational(9, 10)) == Rational(19, 20));
  CHECK(large_b_exponent(3, 1) == 1);
  CHECK(large_b_exponent(4, Rational(9, 10)) == Rational(14, 15));
  CHECK(large_b_exponent(3, 2) == 2);
}

TEST_CASE("bound report") {
  const auto r = bound_report(3);
  CHECK(r.tau == Rational(11, 4));
  CHECK(r.selection.sum_a == 11);
  CHECK(r.selection.sum_b == 2);
  CHECK(r.m_range.lower == Rational(4, 11));
  CHECK(r.m_range.upper == Rational(1, 2));
  CHECK(r.final_at_lower.sufficient);
  CHECK(r.driver == Rational(8, 11));
  CHECK(r.driver_ok);
  CHECK_FALSE(r.xi.has_value());
  const auto r4 = bound_report(4);
  CHECK(*r4.xi == 33);
  CHECK(r4.selection.sum_a == 33);
  CHECK(r4.driver == Rational(16, 22));
  CHECK(r4.upto_2_below_R);
  CHECK(r4.upto_3_reaches_R);
  CHECK(r4.taylor_upper == r4.m_range.upper);
}
