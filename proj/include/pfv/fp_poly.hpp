#pragma once

// Dense polynomials over F_p for a word-size prime p, ascending coefficients.
// Used for distinct-degree factorization and root extraction.

#include <cstdint>
#include <vector>

namespace pfv::fp {

using Coeffs = std::vector<std::uint64_t>;

class FpPoly {
 public:
  FpPoly(std::uint64_t p, Coeffs c) : p_(p), c_(std::move(c)) { trim(); }
  explicit FpPoly(std::uint64_t p) : p_(p) {}

  static FpPoly x(std::uint64_t p) { return FpPoly(p, {0, 1}); }
  static FpPoly constant(std::uint64_t p, std::uint64_t v) { return FpPoly(p, {v % p}); }

  std::uint64_t prime() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Coeffs& coeffs() const { return c_; }
  std::uint64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::uint64_t leading() const { return c_.empty() ? 0 : c_.back(); }

  std::uint64_t eval(std::uint64_t x) const;

  bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::uint64_t p_;
  Coeffs c_;

  friend FpPoly operator+(const FpPoly&, const FpPoly&);
  friend FpPoly operator-(const FpPoly&, const FpPoly&);
  friend FpPoly operator*(const FpPoly&, const FpPoly&);
};

FpPoly operator+(const FpPoly& a, const FpPoly& b);
FpPoly operator-(const FpPoly& a, const FpPoly& b);
FpPoly operator*(const FpPoly& a, const FpPoly& b);

// Quotient and remainder of a by nonzero b.
void divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r);
FpPoly mod(const FpPoly& a, const FpPoly& b);
FpPoly make_monic(const FpPoly& a);
FpPoly gcd(FpPoly a, FpPoly b);
FpPoly derivative(const FpPoly& a);

// base^e mod m.
FpPoly powmod(const FpPoly& base, std::uint64_t e, const FpPoly& m);

// Degrees of the irreducible factors of a squarefree polynomial with
// nonzero leading coefficient, ascending (distinct-degree factorization).
std::vector<int> factor_degrees(const FpPoly& f);

// Sorted distinct roots of f in F_p (f nonzero). Uses gcd(x^p - x, f) and
// equal-degree splitting with deterministic shifts.
std::vector<std::uint64_t> roots(const FpPoly& f);

}  // namespace pfv::fp
