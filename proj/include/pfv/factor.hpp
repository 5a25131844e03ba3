#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pfv/bigint.hpp"

namespace pfv {

struct FactorOptions {
  // Seeds the rho starting points and the randomized Miller-Rabin rounds.
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  // Random Miller-Rabin rounds used above the deterministic witness range.
  unsigned mr_rounds = 64;
  // Cap on the total number of rho iterations spent on one factorize call.
  std::uint64_t rho_effort = std::uint64_t{1} << 32;
  // Trial division by all primes below this bound before anything else.
  std::uint32_t trial_bound = 1024;
};

struct PrimePower {
  BigInt prime;
  unsigned exponent = 0;

  bool operator==(const PrimePower&) const = default;
};

struct FactorizationResult {
  BigInt n;
  std::vector<PrimePower> factors;  // ascending primes

  BigInt product() const;
};

// Below 3317044064679887385961981 the first 13 prime witnesses make the
// test deterministic. Above it, `options.mr_rounds` random bases are used.
bool is_prime(const BigInt& n, const FactorOptions& options = {});
bool is_prime_u64(std::uint64_t n);

// Complete factorization of n >= 1. Throws Error(EffortExceeded) when the
// rho budget runs out.
FactorizationResult factorize(const BigInt& n, const FactorOptions& options = {});

// Same, for word-size input; fills `out` with (prime, exponent) ascending.
void factorize_u128(u128 n, std::vector<std::pair<u128, unsigned>>& out,
                    const FactorOptions& options = {});

}  // namespace pfv
