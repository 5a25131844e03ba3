#include "pfv/bigint.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "pfv/errors.hpp"

namespace pfv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::ContentNotOne: return "ContentNotOne";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::FactorizationFailed: return "FactorizationFailed";
    case ErrorCode::EffortExceeded: return "EffortExceeded";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::FixedDivisorPresent: return "FixedDivisorPresent";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::MismatchedField: return "MismatchedField";
    case ErrorCode::NonMonic: return "NonMonic";
    case ErrorCode::SingularPolynomial: return "SingularPolynomial";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string to_decimal(const BigInt& n) { return n.str(); }

std::string to_decimal(u128 n) {
  if (n == 0) return "0";
  std::string s;
  while (n > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(n % 10)));
    n /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string to_fraction_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

BigInt parse_bigint(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t j = text.size();
  while (j > i && std::isspace(static_cast<unsigned char>(text[j - 1]))) --j;
  const std::string t = text.substr(i, j - i);
  std::size_t k = 0;
  if (k < t.size() && (t[k] == '+' || t[k] == '-')) ++k;
  if (k == t.size()) throw Error(ErrorCode::Parse, "expected integer, got '" + text + "'");
  for (std::size_t p = k; p < t.size(); ++p) {
    if (!std::isdigit(static_cast<unsigned char>(t[p])))
      throw Error(ErrorCode::Parse, "expected integer, got '" + text + "'");
  }
  BigInt v(t[0] == '+' ? t.substr(1) : t);
  return v;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_bigint(text));
  const BigInt num = parse_bigint(text.substr(0, slash));
  const BigInt den = parse_bigint(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + text + "'");
  return make_rational(num, den);
}

BigInt ipow(const BigInt& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }

BigInt iroot(const BigInt& n, unsigned k) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "iroot of negative number");
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "iroot with k = 0");
  if (k == 1 || n < 2) return n;
  // Newton iteration from an upper bound 2^ceil(bits/k).
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
  BigInt x = BigInt(1) << ((bits + k - 1) / k);
  for (;;) {
    const BigInt y = ((k - 1) * x + n / ipow(x, k - 1)) / k;
    if (y >= x) break;
    x = y;
  }
  while (ipow(x, k) > n) --x;
  while (ipow(x + 1, k) <= n) ++x;
  return x;
}

namespace {

// r^k if it fits below 2^128, otherwise returns false.
bool checked_pow(u128 r, unsigned k, u128& out) {
  u128 acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (r != 0 && acc > (~static_cast<u128>(0)) / r) return false;
    acc *= r;
  }
  out = acc;
  return true;
}

}  // namespace

u128 iroot(u128 n, unsigned k) {
  if (k == 1 || n < 2) return n;
  long double approx = std::pow(static_cast<long double>(n), 1.0L / k);
  u128 r = static_cast<u128>(approx);
  if (r > 0) r -= 1;
  u128 p;
  // Step down while r^k > n, then up while (r+1)^k <= n.
  while (r > 0 && (!checked_pow(r, k, p) || p > n)) --r;
  while (checked_pow(r + 1, k, p) && p <= n) ++r;
  return r;
}

bool is_perfect_power(u128 n, unsigned k) {
  const u128 r = iroot(n, k);
  u128 p;
  return checked_pow(r, k, p) && p == n;
}

}  // namespace pfv
