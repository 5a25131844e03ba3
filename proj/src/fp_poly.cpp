#include "pfv/fp_poly.hpp"

#include <algorithm>

#include "pfv/errors.hpp"
#include "pfv/modarith.hpp"

namespace pfv::fp {

using modarith::addmod;
using modarith::invmod;
using modarith::mulmod;
using modarith::submod;

std::uint64_t FpPoly::eval(std::uint64_t x) const {
  std::uint64_t acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = addmod(mulmod(acc, x, p_), *it, p_);
  return acc;
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  const std::uint64_t p = a.p_;
  Coeffs c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = addmod(a[i], b[i], p);
  return FpPoly(p, std::move(c));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  const std::uint64_t p = a.p_;
  Coeffs c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = submod(a[i], b[i], p);
  return FpPoly(p, std::move(c));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  const std::uint64_t p = a.p_;
  if (a.is_zero() || b.is_zero()) return FpPoly(p);
  Coeffs c(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      c[i + j] = addmod(c[i + j], mulmod(a.c_[i], b.c_[j], p), p);
  }
  return FpPoly(p, std::move(c));
}

void divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero mod p");
  const std::uint64_t p = a.prime();
  Coeffs rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) {
    q = FpPoly(p);
    r = a;
    return;
  }
  Coeffs quo(static_cast<std::size_t>(a.degree() - db + 1), 0);
  const std::uint64_t inv = invmod(b.leading(), p);
  for (int i = a.degree(); i >= db; --i) {
    const std::uint64_t t = mulmod(rem[static_cast<std::size_t>(i)], inv, p);
    quo[static_cast<std::size_t>(i - db)] = t;
    if (t == 0) continue;
    for (int j = 0; j <= db; ++j) {
      auto& slot = rem[static_cast<std::size_t>(i - db + j)];
      slot = submod(slot, mulmod(t, b[static_cast<std::size_t>(j)], p), p);
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  q = FpPoly(p, std::move(quo));
  r = FpPoly(p, std::move(rem));
}

FpPoly mod(const FpPoly& a, const FpPoly& b) {
  FpPoly q(a.prime()), r(a.prime());
  divmod(a, b, q, r);
  return r;
}

FpPoly make_monic(const FpPoly& a) {
  if (a.is_zero()) return a;
  const std::uint64_t p = a.prime();
  const std::uint64_t inv = invmod(a.leading(), p);
  Coeffs c = a.coeffs();
  for (auto& v : c) v = mulmod(v, inv, p);
  return FpPoly(p, std::move(c));
}

FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

FpPoly derivative(const FpPoly& a) {
  const std::uint64_t p = a.prime();
  if (a.degree() < 1) return FpPoly(p);
  Coeffs c(static_cast<std::size_t>(a.degree()), 0);
  for (std::size_t i = 1; i < a.coeffs().size(); ++i) c[i - 1] = mulmod(a[i], i % p, p);
  return FpPoly(p, std::move(c));
}

FpPoly powmod(const FpPoly& base, std::uint64_t e, const FpPoly& m) {
  const std::uint64_t p = base.prime();
  FpPoly result = mod(FpPoly::constant(p, 1), m);
  FpPoly b = mod(base, m);
  while (e > 0) {
    if (e & 1) result = mod(result * b, m);
    e >>= 1;
    if (e > 0) b = mod(b * b, m);
  }
  return result;
}

std::vector<int> factor_degrees(const FpPoly& f) {
  const std::uint64_t p = f.prime();
  FpPoly rem = make_monic(f);
  std::vector<int> degrees;
  const FpPoly x = FpPoly::x(p);
  FpPoly h = mod(x, rem);
  int i = 0;
  while (rem.degree() >= 2 * (i + 1)) {
    ++i;
    h = powmod(h, p, rem);
    FpPoly g = gcd(h - x, rem);
    if (g.degree() > 0) {
      for (int k = 0; k < g.degree() / i; ++k) degrees.push_back(i);
      FpPoly q(p), r(p);
      divmod(rem, g, q, r);
      rem = q;
      h = mod(h, rem);
    }
  }
  if (rem.degree() > 0) degrees.push_back(rem.degree());
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

namespace {

void split_linear(const FpPoly& g, std::vector<std::uint64_t>& out) {
  const std::uint64_t p = g.prime();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    // g = g1 x + g0 -> root -g0/g1
    out.push_back(mulmod(submod(0, g[0], p), invmod(g[1], p), p));
    return;
  }
  // Odd p here: p = 2 products of distinct linear factors have degree <= 2 and
  // are handled by the caller's enumeration.
  const std::uint64_t half = (p - 1) / 2;
  for (std::uint64_t a = 0; a < p; ++a) {
    const FpPoly shifted(p, {a, 1});
    FpPoly t = powmod(shifted, half, g) - FpPoly::constant(p, 1);
    FpPoly h = gcd(t, g);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      FpPoly q(p), r(p);
      divmod(g, h, q, r);
      split_linear(h, out);
      split_linear(q, out);
      return;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "root splitting failed; modulus not prime?");
}

}  // namespace

std::vector<std::uint64_t> roots(const FpPoly& f) {
  const std::uint64_t p = f.prime();
  if (f.is_zero()) throw Error(ErrorCode::InvalidArgument, "roots of the zero polynomial");
  std::vector<std::uint64_t> out;
  if (p < 64) {
    for (std::uint64_t r = 0; r < p; ++r)
      if (f.eval(r) == 0) out.push_back(r);
    return out;
  }
  const FpPoly fm = make_monic(f);
  const FpPoly xp = powmod(FpPoly::x(p), p, fm);
  const FpPoly g = gcd(xp - FpPoly::x(p), fm);
  split_linear(g, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pfv::fp
