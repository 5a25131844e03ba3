#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace pfv {

// Calls `visit(p)` for every prime p in [lo, hi], ascending, using a
// segmented sieve of Eratosthenes.
void for_each_prime(std::uint64_t lo, std::uint64_t hi, const std::function<void(std::uint64_t)>& visit);

// All primes <= x, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t x);

// flags[i] != 0 iff lo + i is prime, for i in [0, hi - lo].
std::vector<std::uint8_t> prime_flags(std::uint64_t lo, std::uint64_t hi);

// pi(x)
std::uint64_t prime_count(std::uint64_t x);

}  // namespace pfv
