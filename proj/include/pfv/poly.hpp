#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfv/bigint.hpp"
#include "pfv/fp_poly.hpp"

namespace pfv {

/// Integer polynomial with exact coefficients c_0 ... c_d (ascending).
///
/// The zero polynomial has degree -1 and an empty coefficient list; every
/// other value has a nonzero last coefficient.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs);
  IntPolynomial(std::initializer_list<long long> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  const BigInt& coeff(std::size_t i) const;
  const BigInt& leading() const;
  bool is_monic() const { return !is_zero() && leading() == 1; }

  // gcd of the coefficients, nonnegative.
  BigInt content() const;

  // Reduction mod a word-size prime.
  fp::FpPoly mod_p(std::uint64_t p) const;

  bool operator==(const IntPolynomial&) const = default;

 private:
  std::vector<BigInt> coeffs_;
};

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);

BigInt evaluate(const IntPolynomial& f, const BigInt& n);
// f(n) mod m for 1 <= m < 2^64, result in [0, m).
std::uint64_t evaluate_mod(const IntPolynomial& f, std::uint64_t n, std::uint64_t m);
BigInt evaluate_mod(const IntPolynomial& f, const BigInt& n, const BigInt& m);

IntPolynomial derivative(const IntPolynomial& f);

// Primitive part with positive leading coefficient.
IntPolynomial primitive_part(const IntPolynomial& f);

// Quotient f / g when g divides f exactly over Z, otherwise nullopt.
std::optional<IntPolynomial> exact_divide(const IntPolynomial& f, const IntPolynomial& g);

// Resultant via the Sylvester determinant (fraction-free elimination).
BigInt resultant(const IntPolynomial& f, const IntPolynomial& g);

// disc(f) = (-1)^{d(d-1)/2} Res(f, f') / lc(f), degree >= 1.
BigInt discriminant(const IntPolynomial& f);

// Determinant of a square integer matrix (row-major, n*n) by Bareiss.
BigInt bareiss_determinant(std::vector<BigInt> m, std::size_t n);

/// Text formats: "2,0,0,1" (ascending coefficients) or a symbolic sum such
/// as "x^3 + 2" / "-3*x^2+x-1". `require_content_one` rejects polynomials
/// whose coefficients share a common factor.
IntPolynomial parse_polynomial(const std::string& text, bool require_content_one = true);

std::string format_coefficients(const IntPolynomial& f);
std::string format_symbolic(const IntPolynomial& f);

enum class IrreducibilityStatus { CertifiedIrreducible, Reducible, Unknown };

struct DegreePattern {
  std::uint64_t prime = 0;
  std::vector<int> factor_degrees;
};

struct IrreducibilityVerdict {
  IrreducibilityStatus status = IrreducibilityStatus::Unknown;
  // CertifiedIrreducible: the prime where f is irreducible, if there is one.
  std::optional<std::uint64_t> witness_prime;
  // Patterns observed at every tested prime, in test order.
  std::vector<DegreePattern> patterns;
  // Degrees a nontrivial factor could still have (empty when certified).
  std::vector<int> compatible_degrees;
  // Reducible: a nontrivial primitive factor.
  std::optional<IntPolynomial> factor;
};

std::string_view to_string(IrreducibilityStatus s);

// Proper subset sums (1..d-1) of a factor-degree multiset.
std::vector<int> achievable_degrees(const std::vector<int>& factor_degrees);

IrreducibilityVerdict certify_irreducible(const IntPolynomial& f, unsigned prime_budget = 25);

}  // namespace pfv
