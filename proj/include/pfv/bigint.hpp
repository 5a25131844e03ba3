#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace pfv {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

using u128 = unsigned __int128;

inline BigInt numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

// n / d for any nonzero d (the two-argument Rational constructor rejects
// negative denominators).
inline Rational make_rational(const BigInt& n, const BigInt& d) {
  return d < 0 ? Rational(-n, -d) : Rational(n, d);
}

inline bool fits_u64(const BigInt& n) {
  return n >= 0 && boost::multiprecision::msb(n + 1) < 64;
}

// True when 0 <= n < 2^bits.
inline bool fits_bits(const BigInt& n, unsigned bits) {
  return n >= 0 && (n == 0 || boost::multiprecision::msb(n) < bits);
}

inline u128 to_u128(const BigInt& n) {
  const BigInt lo = n & BigInt(UINT64_MAX);
  const BigInt hi = n >> 64;
  return (static_cast<u128>(static_cast<std::uint64_t>(hi)) << 64) |
         static_cast<std::uint64_t>(lo);
}

inline BigInt from_u128(u128 v) {
  BigInt r = static_cast<std::uint64_t>(v >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(v);
  return r;
}

std::string to_decimal(const BigInt& n);
std::string to_decimal(u128 n);

// "num/den" with den > 0, always both parts.
std::string to_fraction_string(const Rational& q);

// Parses a decimal integer with optional sign; throws Error(Parse) on junk.
BigInt parse_bigint(const std::string& text);

// Parses "n" or "num/den".
Rational parse_rational(const std::string& text);

// Floor of the k-th root of n >= 0.
BigInt iroot(const BigInt& n, unsigned k);

// Floor of the k-th root of n.
u128 iroot(u128 n, unsigned k);

// True iff n == r^k for some integer r >= 0.
bool is_perfect_power(u128 n, unsigned k);

BigInt ipow(const BigInt& base, unsigned exp);

}  // namespace pfv
