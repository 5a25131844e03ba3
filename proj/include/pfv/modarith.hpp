#pragma once

// Word-size modular arithmetic: plain mulmod for 64-bit moduli and
// Montgomery multiplication for odd moduli below 2^63 and 2^127.

#include <cstdint>

#include "pfv/bigint.hpp"

namespace pfv::modarith {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  const std::uint64_t s = a + b;
  return (s >= m || s < a) ? s - m : s;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + (m - b);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Inverse of a modulo m for gcd(a, m) = 1; returns 0 otherwise.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
u128 gcd(u128 a, u128 b);

// Full 128x128 -> 256 product.
inline void mul_full(u128 a, u128 b, u128& hi, u128& lo) {
  const std::uint64_t a0 = static_cast<std::uint64_t>(a), a1 = static_cast<std::uint64_t>(a >> 64);
  const std::uint64_t b0 = static_cast<std::uint64_t>(b), b1 = static_cast<std::uint64_t>(b >> 64);
  const u128 p00 = static_cast<u128>(a0) * b0;
  const u128 p01 = static_cast<u128>(a0) * b1;
  const u128 p10 = static_cast<u128>(a1) * b0;
  const u128 p11 = static_cast<u128>(a1) * b1;
  const u128 mid = (p00 >> 64) + static_cast<std::uint64_t>(p01) + static_cast<std::uint64_t>(p10);
  lo = static_cast<std::uint64_t>(p00) | (mid << 64);
  hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
}

// Montgomery arithmetic modulo an odd n < 2^63, R = 2^64.
class Mont64 {
 public:
  using word = std::uint64_t;

  explicit Mont64(word n) : n_(n) {
    word inv = n;
    for (int i = 0; i < 6; ++i) inv *= 2 - n * inv;
    neg_inv_ = ~inv + 1;
    r2_ = static_cast<word>((static_cast<u128>(1) << 64) % n);
    r2_ = static_cast<word>(static_cast<u128>(r2_) * r2_ % n);
  }

  word modulus() const { return n_; }
  word to(word a) const { return mul(a % n_, r2_); }
  word from(word a) const { return reduce(a); }
  word one() const { return to(1); }

  word mul(word a, word b) const { return reduce(static_cast<u128>(a) * b); }
  word add(word a, word b) const {
    const word s = a + b;
    return s >= n_ ? s - n_ : s;
  }
  word sub(word a, word b) const { return a >= b ? a - b : a + (n_ - b); }

  word pow(word base, word exp) const {
    word result = one();
    while (exp > 0) {
      if (exp & 1) result = mul(result, base);
      base = mul(base, base);
      exp >>= 1;
    }
    return result;
  }

 private:
  word reduce(u128 t) const {
    const word m = static_cast<word>(t) * neg_inv_;
    const u128 u = (t + static_cast<u128>(m) * n_) >> 64;
    const word r = static_cast<word>(u);
    return r >= n_ ? r - n_ : r;
  }

  word n_;
  word neg_inv_;
  word r2_;
};

// Montgomery arithmetic modulo an odd n < 2^127, R = 2^128.
class Mont128 {
 public:
  using word = u128;

  explicit Mont128(word n) : n_(n) {
    word inv = n;
    for (int i = 0; i < 7; ++i) inv *= 2 - n * inv;
    neg_inv_ = ~inv + 1;
    // R mod n, then R^2 mod n by 128 modular doublings.
    word r = (~static_cast<word>(0) - n + 1) % n;
    word r2 = r;
    for (int i = 0; i < 128; ++i) {
      r2 <<= 1;
      if (r2 >= n) r2 -= n;
    }
    r2_ = r2;
  }

  word modulus() const { return n_; }
  word to(word a) const { return mul(a % n_, r2_); }
  word from(word a) const { return reduce(0, a); }
  word one() const { return to(1); }

  word mul(word a, word b) const {
    word hi, lo;
    mul_full(a, b, hi, lo);
    return reduce(hi, lo);
  }
  word add(word a, word b) const {
    const word s = a + b;
    return s >= n_ ? s - n_ : s;
  }
  word sub(word a, word b) const { return a >= b ? a - b : a + (n_ - b); }

  word pow(word base, word exp) const {
    word result = one();
    while (exp > 0) {
      if (exp & 1) result = mul(result, base);
      base = mul(base, base);
      exp >>= 1;
    }
    return result;
  }

 private:
  word reduce(word hi, word lo) const {
    const word m = lo * neg_inv_;
    word mh, ml;
    mul_full(m, n_, mh, ml);
    const word carry = (lo != 0) ? 1 : 0;
    const word u = hi + mh + carry;
    return u >= n_ ? u - n_ : u;
  }

  word n_;
  word neg_inv_;
  word r2_;
};

}  // namespace pfv::modarith
