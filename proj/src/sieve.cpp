#include "pfv/sieve.hpp"

#include <algorithm>
#include <cmath>

namespace pfv {

namespace {

constexpr std::uint64_t kSegment = std::uint64_t{1} << 18;

std::vector<std::uint32_t> base_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

std::uint64_t isqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

// Marks composites of [lo, lo + len) in `seg` (1 = prime candidate).
void sieve_segment(std::uint64_t lo, std::uint64_t len, const std::vector<std::uint32_t>& primes,
                   std::vector<std::uint8_t>& seg) {
  seg.assign(len, 1);
  const std::uint64_t hi = lo + len - 1;
  for (std::uint32_t p : primes) {
    const std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
    if (pp > hi) break;
    std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
    for (std::uint64_t j = start; j <= hi; j += p) seg[j - lo] = 0;
  }
  for (std::uint64_t v = lo; v <= std::min<std::uint64_t>(hi, 1); ++v) seg[v - lo] = 0;
}

}  // namespace

void for_each_prime(std::uint64_t lo, std::uint64_t hi, const std::function<void(std::uint64_t)>& visit) {
  if (hi < 2 || lo > hi) return;
  lo = std::max<std::uint64_t>(lo, 2);
  const auto primes = base_primes(isqrt(hi));
  std::vector<std::uint8_t> seg;
  for (std::uint64_t start = lo; start <= hi; start += kSegment) {
    const std::uint64_t len = std::min(kSegment, hi - start + 1);
    sieve_segment(start, len, primes, seg);
    for (std::uint64_t i = 0; i < len; ++i)
      if (seg[i]) visit(start + i);
    if (start + len < start) break;  // wrapped
  }
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  if (x >= 10) out.reserve(static_cast<std::size_t>(1.26 * static_cast<double>(x) / std::log(static_cast<double>(x))) + 16);
  for_each_prime(2, x, [&](std::uint64_t p) { out.push_back(p); });
  return out;
}

std::vector<std::uint8_t> prime_flags(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint8_t> flags;
  if (lo > hi) return flags;
  const auto primes = base_primes(isqrt(hi));
  sieve_segment(lo, hi - lo + 1, primes, flags);
  return flags;
}

std::uint64_t prime_count(std::uint64_t x) {
  std::uint64_t n = 0;
  for_each_prime(2, x, [&](std::uint64_t) { ++n; });
  return n;
}

}  // namespace pfv
