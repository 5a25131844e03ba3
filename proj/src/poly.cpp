#include "pfv/poly.hpp"


#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>
#include <utility>

#include "pfv/complex_roots.hpp"
#include "pfv/errors.hpp"
#include "pfv/factor.hpp"
#include "pfv/modarith.hpp"

namespace pfv {

namespace {

const BigInt kZero = 0;

void trim(std::vector<BigInt>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  trim(coeffs_);
}

IntPolynomial::IntPolynomial(std::initializer_list<long long> coeffs) {
  for (long long c : coeffs) coeffs_.emplace_back(c);
  trim(coeffs_);
}

const BigInt& IntPolynomial::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : kZero;
}

const BigInt& IntPolynomial::leading() const {
  if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "leading coefficient of zero polynomial");
  return coeffs_.back();
}

BigInt IntPolynomial::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) g = boost::multiprecision::gcd(g, c);
  return boost::multiprecision::abs(g);
}

fp::FpPoly IntPolynomial::mod_p(std::uint64_t p) const {
  fp::Coeffs c;
  c.reserve(coeffs_.size());
  const BigInt bp(p);
  for (const auto& v : coeffs_) {
    BigInt r = v % bp;
    if (r < 0) r += bp;
    c.push_back(static_cast<std::uint64_t>(r));
  }
  return fp::FpPoly(p, std::move(c));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> c(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> c(a.coeffs().size() + b.coeffs().size() - 1);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return IntPolynomial(std::move(c));
}

BigInt evaluate(const IntPolynomial& f, const BigInt& n) {
  BigInt acc = 0;
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) acc = acc * n + *it;
  return acc;
}

std::uint64_t evaluate_mod(const IntPolynomial& f, std::uint64_t n, std::uint64_t m) {
  if (m == 1) return 0;
  const BigInt bm(m);
  std::uint64_t acc = 0;
  n %= m;
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    BigInt c = *it % bm;
    if (c < 0) c += bm;
    acc = modarith::addmod(modarith::mulmod(acc, n, m), static_cast<std::uint64_t>(c), m);
  }
  return acc;
}

BigInt evaluate_mod(const IntPolynomial& f, const BigInt& n, const BigInt& m) {
  BigInt acc = 0;
  BigInt x = n % m;
  if (x < 0) x += m;
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    acc = (acc * x + *it) % m;
  }
  if (acc < 0) acc += m;
  return acc;
}

IntPolynomial derivative(const IntPolynomial& f) {
  if (f.degree() < 1) return {};
  std::vector<BigInt> c(static_cast<std::size_t>(f.degree()));
  for (std::size_t i = 1; i < f.coeffs().size(); ++i) c[i - 1] = f.coeffs()[i] * static_cast<unsigned>(i);
  return IntPolynomial(std::move(c));
}

IntPolynomial primitive_part(const IntPolynomial& f) {
  if (f.is_zero()) return f;
  BigInt g = f.content();
  if (f.leading() < 0) g = -g;
  std::vector<BigInt> c = f.coeffs();
  for (auto& v : c) v /= g;
  return IntPolynomial(std::move(c));
}

std::optional<IntPolynomial> exact_divide(const IntPolynomial& f, const IntPolynomial& g) {
  if (g.is_zero()) return std::nullopt;
  if (f.is_zero()) return IntPolynomial{};
  if (f.degree() < g.degree()) return std::nullopt;
  std::vector<BigInt> rem = f.coeffs();
  const int dg = g.degree();
  std::vector<BigInt> quo(static_cast<std::size_t>(f.degree() - dg + 1));
  const BigInt& lc = g.leading();
  for (int i = f.degree(); i >= dg; --i) {
    const BigInt& top = rem[static_cast<std::size_t>(i)];
    if (top % lc != 0) return std::nullopt;
    const BigInt t = top / lc;
    quo[static_cast<std::size_t>(i - dg)] = t;
    for (int j = 0; j <= dg; ++j) rem[static_cast<std::size_t>(i - dg + j)] -= t * g.coeffs()[static_cast<std::size_t>(j)];
  }
  for (int i = 0; i < dg; ++i)
    if (rem[static_cast<std::size_t>(i)] != 0) return std::nullopt;
  return IntPolynomial(std::move(quo));
}

BigInt bareiss_determinant(std::vector<BigInt> m, std::size_t n) {
  if (n == 0) return 1;
  auto at = [&](std::size_t r, std::size_t c) -> BigInt& { return m[r * n + c]; };
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(swap_row, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

BigInt resultant(const IntPolynomial& f, const IntPolynomial& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  const auto m = static_cast<std::size_t>(f.degree());
  const auto n = static_cast<std::size_t>(g.degree());
  const std::size_t size = m + n;
  if (size == 0) return 1;
  std::vector<BigInt> s(size * size);
  // Rows 0..n-1 carry f, rows n..n+m-1 carry g; coefficients descending.
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r * size + r + k] = f.coeffs()[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[(n + r) * size + r + k] = g.coeffs()[n - k];
  return bareiss_determinant(std::move(s), size);
}

BigInt discriminant(const IntPolynomial& f) {
  const int d = f.degree();
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "discriminant needs degree >= 1");
  const BigInt r = resultant(f, derivative(f));
  const BigInt q = r / f.leading();
  return ((d * (d - 1) / 2) % 2 == 0) ? q : -q;
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  return out;
}

IntPolynomial parse_symbolic(const std::string& raw) {
  const std::string s = strip(raw);
  if (s.empty()) throw Error(ErrorCode::Parse, "empty polynomial");
  std::map<unsigned, BigInt> terms;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw Error(ErrorCode::Parse, "expected '+' or '-' in '" + raw + "'");
    }
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    BigInt coef = 1;
    const bool has_coef = j > i;
    if (has_coef) coef = BigInt(s.substr(i, j - i));
    i = j;
    unsigned power = 0;
    if (i < s.size() && s[i] == '*') {
      if (!has_coef) throw Error(ErrorCode::Parse, "dangling '*' in '" + raw + "'");
      ++i;
      if (i >= s.size() || s[i] != 'x') throw Error(ErrorCode::Parse, "expected 'x' after '*' in '" + raw + "'");
    }
    if (i < s.size() && s[i] == 'x') {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t k = i;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == i) throw Error(ErrorCode::Parse, "expected exponent in '" + raw + "'");
        power = static_cast<unsigned>(std::stoul(s.substr(i, k - i)));
        i = k;
      }
    } else if (!has_coef) {
      throw Error(ErrorCode::Parse, "malformed term in '" + raw + "'");
    }
    if (power > 4096) throw Error(ErrorCode::Parse, "degree too large in '" + raw + "'");
    terms[power] += sign * coef;
  }
  std::vector<BigInt> c(terms.empty() ? 0 : terms.rbegin()->first + 1);
  for (const auto& [k, v] : terms) c[k] = v;
  return IntPolynomial(std::move(c));
}

IntPolynomial parse_list(const std::string& raw) {
  std::vector<BigInt> c;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) c.push_back(parse_bigint(item));
  if (!raw.empty() && raw.back() == ',') throw Error(ErrorCode::Parse, "trailing comma in '" + raw + "'");
  return IntPolynomial(std::move(c));
}

}  // namespace

IntPolynomial parse_polynomial(const std::string& text, bool require_content_one) {
  const bool symbolic = text.find('x') != std::string::npos;
  IntPolynomial f = symbolic ? parse_symbolic(text) : parse_list(text);
  if (f.is_zero()) throw Error(ErrorCode::Parse, "zero polynomial");
  if (require_content_one && f.content() != 1)
    throw Error(ErrorCode::ContentNotOne, "content of '" + text + "' is " + f.content().str());
  return f;
}

std::string format_coefficients(const IntPolynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i) out += ",";
    out += f.coeffs()[i].str();
  }
  return out;
}

std::string format_symbolic(const IntPolynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (int k = f.degree(); k >= 0; --k) {
    const BigInt& c = f.coeff(static_cast<std::size_t>(k));
    if (c == 0) continue;
    const BigInt mag = boost::multiprecision::abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (k == 0) {
      out += mag.str();
      continue;
    }
    if (mag != 1) out += mag.str() + "*";
    out += "x";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Irreducibility

std::string_view to_string(IrreducibilityStatus s) {
  switch (s) {
    case IrreducibilityStatus::CertifiedIrreducible: return "CertifiedIrreducible";
    case IrreducibilityStatus::Reducible: return "Reducible";
    case IrreducibilityStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::vector<int> achievable_degrees(const std::vector<int>& factor_degrees) {
  int total = 0;
  for (int e : factor_degrees) total += e;
  std::vector<bool> reach(static_cast<std::size_t>(total + 1), false);
  reach[0] = true;
  for (int e : factor_degrees)
    for (int s = total; s >= e; --s)
      if (reach[static_cast<std::size_t>(s - e)]) reach[static_cast<std::size_t>(s)] = true;
  std::vector<int> out;
  for (int s = 1; s < total; ++s)
    if (reach[static_cast<std::size_t>(s)]) out.push_back(s);
  return out;
}

namespace {

std::vector<BigInt> divisors_of(const BigInt& n, std::size_t cap) {
  std::vector<BigInt> divs{1};
  if (n == 1) return divs;
  const auto fr = factorize(n);
  std::size_t count = 1;
  for (const auto& pp : fr.factors) {
    count *= pp.exponent + 1;
    if (count > cap) return {};
  }
  for (const auto& pp : fr.factors) {
    const std::size_t base = divs.size();
    BigInt pk = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pk *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

// A linear factor b*x - a from a rational root a/b, if any.
std::optional<IntPolynomial> rational_root_factor(const IntPolynomial& f) {
  if (f.coeff(0) == 0) return IntPolynomial{0, 1};
  constexpr std::size_t cap = 20000;
  const auto num = divisors_of(boost::multiprecision::abs(f.coeff(0)), cap);
  const auto den = divisors_of(boost::multiprecision::abs(f.leading()), cap);
  if (num.empty() || den.empty()) return std::nullopt;
  const int d = f.degree();
  for (const auto& b : den) {
    for (const auto& a0 : num) {
      if (boost::multiprecision::gcd(a0, b) != 1) continue;
      for (int sgn : {1, -1}) {
        const BigInt a = sgn * a0;
        // b^d f(a/b) = sum c_i a^i b^{d-i}
        BigInt acc = 0, apow = 1;
        std::vector<BigInt> bpow(static_cast<std::size_t>(d + 1), 1);
        for (int i = 1; i <= d; ++i) bpow[static_cast<std::size_t>(i)] = bpow[static_cast<std::size_t>(i - 1)] * b;
        for (int i = 0; i <= d; ++i) {
          acc += f.coeff(static_cast<std::size_t>(i)) * apow * bpow[static_cast<std::size_t>(d - i)];
          apow *= a;
        }
        if (acc == 0) return IntPolynomial(std::vector<BigInt>{-a, b});
      }
    }
  }
  return std::nullopt;
}

// Looks for an integer factor among products of e complex roots.
std::optional<IntPolynomial> numeric_factor_trial(const IntPolynomial& f, const std::vector<int>& degrees) {
  using Complex = std::complex<long double>;
  const int d = f.degree();
  if (d > 20) return std::nullopt;
  std::vector<Complex> c;
  for (const auto& v : f.coeffs()) c.emplace_back(static_cast<long double>(v), 0.0L);
  const auto roots = aberth_roots(c, 1e-17L, 2000);
  if (!roots.converged) return std::nullopt;
  const long double lc = static_cast<long double>(f.leading());
  for (int e : degrees) {
    if (2 * e > d) continue;
    std::vector<int> idx(static_cast<std::size_t>(e));
    for (int i = 0; i < e; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
      std::vector<Complex> prod{Complex(lc, 0)};
      for (int k : idx) {
        std::vector<Complex> next(prod.size() + 1, Complex(0, 0));
        for (std::size_t i = 0; i < prod.size(); ++i) {
          next[i + 1] += prod[i];
          next[i] -= prod[i] * roots.roots[static_cast<std::size_t>(k)];
        }
        prod = std::move(next);
      }
      bool ok = true;
      std::vector<BigInt> g;
      for (const auto& z : prod) {
        if (std::abs(z.imag()) > 0.25L || std::abs(z.real()) > 1e17L) {
          ok = false;
          break;
        }
        g.emplace_back(static_cast<long long>(std::llround(z.real())));
      }
      if (ok) {
        const IntPolynomial cand = primitive_part(IntPolynomial(std::move(g)));
        if (cand.degree() == e && exact_divide(f, cand)) return cand;
      }
      // Next combination.
      int pos = e - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == d - e + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < e; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace

IrreducibilityVerdict certify_irreducible(const IntPolynomial& f, unsigned prime_budget) {
  if (f.degree() < 1) throw Error(ErrorCode::InvalidArgument, "irreducibility needs degree >= 1");
  if (f.content() != 1) throw Error(ErrorCode::ContentNotOne, "content is " + f.content().str());
  IrreducibilityVerdict v;
  const int d = f.degree();
  if (d == 1) {
    v.status = IrreducibilityStatus::CertifiedIrreducible;
    return v;
  }
  if (auto lin = rational_root_factor(f)) {
    v.status = IrreducibilityStatus::Reducible;
    v.factor = primitive_part(*lin);
    return v;
  }
  const BigInt disc = discriminant(f);
  if (disc == 0) {
    // Repeated factor: gcd(f, f') is nontrivial; found below by the numeric trial.
    v.compatible_degrees.clear();
    for (int e = 1; e < d; ++e) v.compatible_degrees.push_back(e);
  }
  std::vector<bool> compat(static_cast<std::size_t>(d), true);
  compat[0] = false;
  unsigned tested = 0;
  for (std::uint64_t p = 2; tested < prime_budget && disc != 0; ++p) {
    if (!is_prime_u64(p)) continue;
    if (f.leading() % p == 0 || disc % p == 0) continue;
    ++tested;
    const auto degs = fp::factor_degrees(f.mod_p(p));
    v.patterns.push_back({p, degs});
    if (degs.size() == 1) {
      v.status = IrreducibilityStatus::CertifiedIrreducible;
      v.witness_prime = p;
      return v;
    }
    std::vector<bool> here(static_cast<std::size_t>(d), false);
    for (int e : achievable_degrees(degs)) here[static_cast<std::size_t>(e)] = true;
    bool any = false;
    for (int e = 1; e < d; ++e) {
      compat[static_cast<std::size_t>(e)] = compat[static_cast<std::size_t>(e)] && here[static_cast<std::size_t>(e)];
      any = any || compat[static_cast<std::size_t>(e)];
    }
    if (!any) {
      v.status = IrreducibilityStatus::CertifiedIrreducible;
      return v;
    }
  }
  if (disc != 0) {
    v.compatible_degrees.clear();
    for (int e = 1; e < d; ++e)
      if (compat[static_cast<std::size_t>(e)]) v.compatible_degrees.push_back(e);
  }
  if (auto g = numeric_factor_trial(f, v.compatible_degrees)) {
    v.status = IrreducibilityStatus::Reducible;
    v.factor = *g;
    return v;
  }
  v.status = IrreducibilityStatus::Unknown;
  return v;
}

}  // namespace pfv
