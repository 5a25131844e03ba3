#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pfv/bigint.hpp"
#include "pfv/factor.hpp"
#include "pfv/poly.hpp"

namespace pfv {

enum class Domain { Integers, Primes };
enum class CountMethod { Direct, Hybrid, Both };

std::string_view to_string(Domain d);
std::string_view to_string(CountMethod m);

struct CountOptions {
  unsigned threads = 1;
  FactorOptions factor;
  // Hybrid sieve bound Q; 0 selects the default (see hybrid_sieve_bound).
  std::uint64_t sieve_bound = 0;
  // Exponent k; 0 means deg(f) - 1.
  unsigned k = 0;
};

/// Result of counting arguments whose polynomial value is k-free.
struct CountReport {
  IntPolynomial f;
  std::uint64_t x = 0;
  Domain domain = Domain::Integers;
  unsigned k = 0;
  std::uint64_t count = 0;
  std::uint64_t domain_size = 0;  // X or pi(X)
  CountMethod method = CountMethod::Hybrid;
  std::uint64_t sieve_bound = 0;  // hybrid only
  std::optional<BigInt> fixed_divisor;
  double elapsed_seconds = 0.0;
};

/// A solution of a^k b = f(n) with a squarefree, n ~ X, a ~ A, b ~ B.
struct TripleRecord {
  BigInt n, a, b;
  bool operator==(const TripleRecord&) const = default;
};

struct MoebiusReport {
  BigInt lhs;
  BigInt rhs;
  bool equal = false;
  BigInt m_bound;             // largest m considered
  std::uint64_t terms = 0;    // squarefree m with a nonzero N'_0 root set
};

// n >= 1, k >= 2.
bool is_kfree(const BigInt& n, unsigned k, const FactorOptions& options = {});

// Default hybrid bound for `count` arguments ending at hi:
// max(1000, sqrt(hi), min((max |f|)^(1/(k+1)) + 1, 8 count, 2^25)).
std::uint64_t hybrid_sieve_bound(const IntPolynomial& f, std::uint64_t hi, unsigned k, std::uint64_t count);

// flags[i] = 1 iff |f(lo + i)| is k-free (f(n) = 0 counts as not k-free),
// for lo + i in [lo, hi]. `mask`, when non-empty, restricts which entries are
// decided (others are 0).
std::vector<std::uint8_t> kfree_flags(const IntPolynomial& f, std::uint64_t lo, std::uint64_t hi,
                                      CountMethod method, const CountOptions& options = {},
                                      const std::vector<std::uint8_t>& mask = {});

// Arguments in [1, X] (or primes <= X) with f(.) k-free, k = deg f - 1 by
// default. `Both` runs both methods and throws std::logic_error on mismatch.
CountReport count_kfree(const IntPolynomial& f, std::uint64_t x, Domain domain, CountMethod method,
                        const CountOptions& options = {});

// #{n in (X, 2X] : m^k | f(n)}, restricted to primes for Domain::Primes.
std::uint64_t count_divisible(const IntPolynomial& f, std::uint64_t x, const BigInt& m, Domain domain,
                              unsigned k = 0);

// Checks sum over (X, 2X] of the k-free indicator against
// sum_m mu(m) count_divisible(f, X, m), m squarefree up to (max |f|)^(1/k).
MoebiusReport moebius_check(const IntPolynomial& f, std::uint64_t x, Domain domain,
                            const CountOptions& options = {});

std::vector<TripleRecord> count_triples(const IntPolynomial& f, std::uint64_t x, const BigInt& a_bound,
                                        const BigInt& b_bound, const CountOptions& options = {});

// Re-checks every TripleRecord invariant from scratch.
bool verify_triple(const IntPolynomial& f, unsigned k, std::uint64_t x, const BigInt& a_bound,
                   const BigInt& b_bound, const TripleRecord& t);

}  // namespace pfv
