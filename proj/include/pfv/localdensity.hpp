#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pfv/bigint.hpp"
#include "pfv/poly.hpp"

namespace pfv {

/// Sorted residues r in [0, modulus) with f(r) = 0 mod modulus.
struct RootSet {
  BigInt modulus = 1;
  std::vector<BigInt> roots;

  std::size_t rho() const { return roots.size(); }
  // Roots coprime to the modulus.
  std::size_t rho_prime() const;

  bool operator==(const RootSet&) const = default;
};

struct RootOptions {
  // Primes below this are handled by evaluating f at every residue.
  std::uint64_t enumeration_threshold = 100000;
};

// Exact root set of f mod a prime p < 2^63. Throws NotPrime.
RootSet roots_mod_prime(const IntPolynomial& f, const BigInt& p, const RootOptions& options = {});

// Root set mod p^k by level-by-level lifting. Throws NotPrime.
RootSet lift_roots(const IntPolynomial& f, const BigInt& p, unsigned k,
                   const RootOptions& options = {});

// Root set mod m, CRT-combined from the prime-power root sets.
RootSet roots_mod(const IntPolynomial& f, const BigInt& m, const RootOptions& options = {});

// rho(m) = #{n mod m : m | f(n)} and rho'(m), the coprime-residue count.
// Multiplicative evaluation from the factorization of m; the root set is
// never materialized.
BigInt rho(const IntPolynomial& f, const BigInt& m, const RootOptions& options = {});
BigInt rho_prime(const IntPolynomial& f, const BigInt& m, const RootOptions& options = {});

BigInt euler_phi(const BigInt& m);

// Smallest prime p <= deg f with rho(p^k) = p^k. Content of f must be 1.
std::optional<BigInt> fixed_power_divisor(const IntPolynomial& f, unsigned k);

enum class DensityKind { SquarefreeIntegers, SquarefreePrimes };  // c_f, c'_f

std::string_view to_string(DensityKind kind);

struct EulerOptions {
  bool exact = false;   // also accumulate the exact rational partial product
  unsigned threads = 1;
  // relative rounding allowance per floating-point factor
  double rounding_per_factor = 1e-14;
};

/// Truncated Euler product with a certified enclosure of the full product.
struct DensityEstimate {
  DensityKind kind = DensityKind::SquarefreeIntegers;
  std::uint64_t truncation = 0;
  std::size_t factor_count = 0;
  double partial_product = 0.0;
  double tail_bound = 0.0;      // bound on |log(full / partial)|
  double rounding_slack = 0.0;  // relative
  double lo = 0.0;
  double hi = 0.0;
  std::optional<Rational> exact_partial;
  std::optional<BigInt> fixed_divisor;  // set when the product vanishes
  std::vector<BigInt> exceptional_primes;  // primes dividing disc(f) * lc(f)
};

DensityEstimate euler_product(const IntPolynomial& f, DensityKind kind, std::uint64_t prime_bound,
                              const EulerOptions& options = {});

}  // namespace pfv
