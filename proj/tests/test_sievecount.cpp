#include <doctest.h>

#include <random>

#include "pfv/errors.hpp"
#include "pfv/sieve.hpp"
#include "pfv/sievecount.hpp"

using namespace pfv;

namespace {

// k-free by trial division, independent of the factorization code.
bool trial_kfree(BigInt n, unsigned k) {
  if (n < 0) n = -n;
  if (n == 0) return false;
  for (BigInt p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e >= k) return false;
  }
  return k > 1 || n == 1;
}

std::uint64_t brute_count(const IntPolynomial& f, std::uint64_t x, bool primes_only, unsigned k) {
  std::uint64_t c = 0;
  for (std::uint64_t n = 1; n <= x; ++n) {
    if (primes_only && !is_prime_u64(n)) continue;
    c += trial_kfree(evaluate(f, BigInt(n)), k);
  }
  return c;
}

const std::vector<IntPolynomial> kMatrix = {
    IntPolynomial{2, 0, 0, 1},
    IntPolynomial{2, 1, 0, 1},
    IntPolynomial{1, 1, 0, 0, 1},
    IntPolynomial{-1, -1, 0, 0, 0, 1},
    IntPolynomial{-7, 3, -5, 2},
    IntPolynomial{0, 6, 11, 6, 1},
};

}  // namespace

TEST_CASE("is_kfree") {
  CHECK_FALSE(is_kfree(10650, 2));
  CHECK(is_kfree(30, 2));
  CHECK_FALSE(is_kfree(8, 3));
  CHECK(is_kfree(1, 2));
  CHECK(is_kfree(12, 3));
}

TEST_CASE("count examples") {
  const IntPolynomial f{2, 0, 0, 1};
  CHECK(count_kfree(f, 10, Domain::Integers, CountMethod::Both).count == 10);
  CHECK(count_kfree(f, 25, Domain::Integers, CountMethod::Both).count == 24);
  CHECK(count_kfree(f, 10, Domain::Primes, CountMethod::Both).count == 4);
  CHECK(count_kfree(f, 10, Domain::Primes, CountMethod::Hybrid).domain_size == 4);
  CHECK(brute_count(f, 25, false, 2) == 24);
  CHECK(brute_count(f, 10, true, 2) == 4);
}

TEST_CASE("count agrees with trial division oracle") {
  for (const auto& f : kMatrix) {
    const unsigned k = f.degree() - 1;
    for (std::uint64_t x : {1, 2, 50, 600}) {
      CHECK(count_kfree(f, x, Domain::Integers, CountMethod::Hybrid).count == brute_count(f, x, false, k));
      CHECK(count_kfree(f, x, Domain::Primes, CountMethod::Direct).count == brute_count(f, x, true, k));
    }
  }
}

TEST_CASE("hybrid with a small sieve bound exercises the cofactor paths") {
  const IntPolynomial f{2, 0, 0, 1};
  CountOptions opts;
  opts.sieve_bound = 30;
  const auto a = kfree_flags(f, 1, 20000, CountMethod::Hybrid, opts);
  const auto b = kfree_flags(f, 1, 20000, CountMethod::Direct, opts);
  CHECK(a == b);
  // k = 2 on a quartic: cofactors above (Q+1)^3 go to factorization
  opts.k = 2;
  const IntPolynomial g{1, 1, 0, 0, 1};
  CHECK(kfree_flags(g, 1, 5000, CountMethod::Hybrid, opts) == kfree_flags(g, 1, 5000, CountMethod::Direct, opts));
}

TEST_CASE("method agreement over the test matrix") {
  for (const auto& f : kMatrix) {
    const auto r = count_kfree(f, 20000, Domain::Integers, CountMethod::Both);
    CHECK(r.count <= 20000);
  }
}

TEST_CASE("monotone in X and bounded by pi(X)") {
  const IntPolynomial f{2, 0, 0, 1};
  std::uint64_t prev = 0;
  for (std::uint64_t x = 100; x <= 3000; x += 290) {
    const auto r = count_kfree(f, x, Domain::Integers, CountMethod::Hybrid);
    CHECK(r.count >= prev);
    prev = r.count;
    const auto p = count_kfree(f, x, Domain::Primes, CountMethod::Hybrid);
    CHECK(p.count <= prime_count(x));
  }
}

TEST_CASE("large coefficients take the big-integer path") {
  // (x+c)(x+c+1)(x+c+2) with c = 2^44: values exceed 2^127 but split
  // into factors near 2^44, which keeps the oracle cheap.
  const IntPolynomial l(std::vector<BigInt>{BigInt(1) << 44, BigInt(1)});
  const IntPolynomial f = l * (l + IntPolynomial{1}) * (l + IntPolynomial{2});
  REQUIRE(evaluate(f, 1) > BigInt(1) << 130);
  std::uint64_t expect = 0;
  for (std::uint64_t n = 1; n <= 40; ++n) {
    const BigInt m = (BigInt(1) << 44) + n;
    // m and m+2 share the factor 2 when m is even
    expect += m % 2 == 1 && is_kfree(m, 2) && is_kfree(m + 1, 2) && is_kfree(m + 2, 2);
  }
  const auto flags = kfree_flags(f, 1, 40, CountMethod::Both);
  std::uint64_t got = 0;
  for (auto v : flags) got += v;
  CHECK(got == expect);
}

TEST_CASE("f vanishing counts as not k-free") {
  // (x-5)(x^2+1)
  const IntPolynomial f{-5, 1, -5, 1};
  const auto flags = kfree_flags(f, 1, 10, CountMethod::Hybrid);
  CHECK(flags[4] == 0);
  CHECK(kfree_flags(f, 1, 10, CountMethod::Direct) == flags);
}

TEST_CASE("thread determinism") {
  for (const auto& f : kMatrix) {
    CountOptions one, many;
    many.threads = 4;
    const auto a = count_kfree(f, 50000, Domain::Integers, CountMethod::Hybrid, one);
    const auto b = count_kfree(f, 50000, Domain::Integers, CountMethod::Hybrid, many);
    CHECK(a.count == b.count);
    const auto c = count_kfree(f, 50000, Domain::Primes, CountMethod::Direct, one);
    const auto d = count_kfree(f, 50000, Domain::Primes, CountMethod::Direct, many);
    CHECK(c.count == d.count);
  }
}

TEST_CASE("count_divisible") {
  const IntPolynomial f{2, 0, 0, 1};
  CHECK(count_divisible(f, 11, 5, Domain::Integers) == 1);
  CHECK(count_divisible(f, 11, 2, Domain::Integers) == 0);
  CHECK(count_divisible(f, 11, 1, Domain::Integers) == 11);
  // oracle
  for (std::uint64_t m = 1; m <= 60; ++m)
    for (std::uint64_t x : {7, 100, 333}) {
      std::uint64_t ci = 0, cp = 0;
      for (std::uint64_t n = x + 1; n <= 2 * x; ++n)
        if (evaluate_mod(f, n, m * m) == 0) {
          ++ci;
          cp += is_prime_u64(n);
        }
      CHECK(count_divisible(f, x, m, Domain::Integers) == ci);
      CHECK(count_divisible(f, x, m, Domain::Primes) == cp);
    }
}

TEST_CASE("moebius identity") {
  const IntPolynomial f{2, 0, 0, 1};
  for (auto dom : {Domain::Integers, Domain::Primes})
    for (std::uint64_t x : {10, 100, 500}) {
      const auto r = moebius_check(f, x, dom);
      CHECK(r.equal);
      CHECK(r.lhs == r.rhs);
    }
  const auto r = moebius_check(IntPolynomial{2, 1, 0, 1}, 10, Domain::Integers);
  CHECK(r.equal);
  for (const auto& g : kMatrix) CHECK(moebius_check(g, 200, Domain::Integers).equal);
}

TEST_CASE("triples") {
  const IntPolynomial f{2, 0, 0, 1};
  auto t = count_triples(f, 11, 4, 256);
  REQUIRE(t.size() == 1);
  CHECK(t[0] == TripleRecord{22, 5, 426});
  CHECK(verify_triple(f, 2, 11, 4, 256, t[0]));
  CHECK(count_triples(f, 11, 100, 256).empty());
  CHECK(count_triples(f, 10, 1, ipow(BigInt(10), 6)).empty());

  // exhaustive oracle: every (n, a) pair with a squarefree and a^2 | f(n)
  for (std::uint64_t x : {20, 150})
    for (BigInt A : {BigInt(1), BigInt(2), BigInt(5)})
      for (BigInt B : {BigInt(1), BigInt(10), BigInt(1000)}) {
        std::vector<TripleRecord> expect;
        for (std::uint64_t n = x + 1; n <= 2 * x; ++n) {
          const BigInt v = evaluate(f, BigInt(n));
          for (BigInt a = A + 1; a <= 2 * A; ++a) {
            if (!trial_kfree(a, 2) || v % (a * a) != 0) continue;
            const BigInt b = v / (a * a);
            if (b > B && b <= 2 * B) expect.push_back({n, a, b});
          }
        }
        const auto got = count_triples(f, x, A, B);
        CHECK(got == expect);
        for (const auto& tr : got) CHECK(verify_triple(f, 2, x, A, B, tr));
      }
}
