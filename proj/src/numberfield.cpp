#include "pfv/numberfield.hpp"

#include <algorithm>

#include "pfv/complex_roots.hpp"
#include "pfv/errors.hpp"

namespace pfv {

namespace {

using Real50 = boost::multiprecision::cpp_bin_float_50;

void require_same(const ThetaElement& a, const ThetaElement& b) {
  if (!(a.field() == b.field())) throw Error(ErrorCode::MismatchedField, "elements of different fields");
}

BigInt lcm_of_denominators(const RationalVector& v) {
  BigInt l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const BigInt den = denominator(v(i));
    l = l / boost::multiprecision::gcd(l, den) * den;
  }
  return l;
}

// Reduces an ascending coefficient vector of length <= 2d-1 modulo monic f.
RationalVector reduce(std::vector<Rational> p, const IntPolynomial& f) {
  const int d = f.degree();
  for (int i = static_cast<int>(p.size()) - 1; i >= d; --i) {
    const Rational c = p[i];
    if (c == 0) continue;
    for (int k = 0; k < d; ++k) p[i - d + k] -= c * f.coeff(k);
    p[i] = 0;
  }
  RationalVector out = RationalVector::Zero(d);
  for (int i = 0; i < d && i < static_cast<int>(p.size()); ++i) out(i) = p[i];
  return out;
}

BigInt integer_determinant(const IntMatrix& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<BigInt> flat(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) flat[r * n + c] = m(r, c);
  return bareiss_determinant(std::move(flat), n);
}

}  // namespace

NumberField::NumberField(IntPolynomial f) {
  if (f.degree() < 1) throw Error(ErrorCode::InvalidArgument, "field polynomial needs degree >= 1");
  if (!f.is_monic()) throw Error(ErrorCode::NonMonic, "Z[theta] arithmetic needs a monic polynomial");
  f_ = std::make_shared<const IntPolynomial>(std::move(f));
}

ThetaElement NumberField::element(RationalVector coords) const { return ThetaElement(*this, std::move(coords)); }

ThetaElement NumberField::element(const std::vector<Rational>& coords) const {
  if (static_cast<int>(coords.size()) > 2 * degree() - 1 && degree() > 1)
    throw Error(ErrorCode::InvalidArgument, "too many coordinates");
  return ThetaElement(*this, reduce(coords, polynomial()));
}

ThetaElement NumberField::constant(const Rational& c) const {
  RationalVector v = RationalVector::Zero(degree());
  v(0) = c;
  return ThetaElement(*this, v);
}

ThetaElement NumberField::theta() const { return element(std::vector<Rational>{0, 1}); }

ThetaElement::ThetaElement(NumberField field, RationalVector coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  if (coords_.size() != field_.degree()) throw Error(ErrorCode::InvalidArgument, "coordinate count must equal degree");
}

bool ThetaElement::is_integral() const {
  for (Eigen::Index i = 0; i < coords_.size(); ++i)
    if (!is_integer(coords_(i))) return false;
  return true;
}

bool ThetaElement::is_zero() const {
  for (Eigen::Index i = 0; i < coords_.size(); ++i)
    if (coords_(i) != 0) return false;
  return true;
}

bool ThetaElement::operator==(const ThetaElement& o) const { return field_ == o.field_ && coords_ == o.coords_; }

ThetaElement operator+(const ThetaElement& a, const ThetaElement& b) {
  require_same(a, b);
  return ThetaElement(a.field(), a.coords() + b.coords());
}

ThetaElement operator-(const ThetaElement& a, const ThetaElement& b) {
  require_same(a, b);
  return ThetaElement(a.field(), a.coords() - b.coords());
}

ThetaElement operator-(const ThetaElement& a) { return ThetaElement(a.field(), -a.coords()); }

ThetaElement operator*(const Rational& s, const ThetaElement& a) { return ThetaElement(a.field(), a.coords() * s); }

ThetaElement nf_mul(const ThetaElement& a, const ThetaElement& b) {
  require_same(a, b);
  const int d = a.degree();
  std::vector<Rational> p(static_cast<std::size_t>(2 * d - 1));
  for (int i = 0; i < d; ++i) {
    if (a.coord(i) == 0) continue;
    for (int j = 0; j < d; ++j) p[i + j] += a.coord(i) * b.coord(j);
  }
  return ThetaElement(a.field(), reduce(std::move(p), a.field().polynomial()));
}

ThetaElement nf_pow(const ThetaElement& a, unsigned e) {
  ThetaElement result = a.field().constant(1);
  ThetaElement base = a;
  while (e > 0) {
    if (e & 1) result = nf_mul(result, base);
    e >>= 1;
    if (e) base = nf_mul(base, base);
  }
  return result;
}

RationalMatrix multiplication_matrix(const ThetaElement& a) {
  const int d = a.degree();
  const ThetaElement theta = a.field().theta();
  RationalMatrix m(d, d);
  ThetaElement col = a;
  for (int j = 0; j < d; ++j) {
    m.col(j) = col.coords();
    if (j + 1 < d) col = nf_mul(col, theta);
  }
  return m;
}

Rational rational_determinant(const RationalMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  if (n == 0) return 1;
  IntMatrix scaled(n, n);
  BigInt scale = 1;
  for (Eigen::Index r = 0; r < n; ++r) {
    const BigInt l = lcm_of_denominators(m.row(r).transpose());
    scale *= l;
    for (Eigen::Index c = 0; c < n; ++c) scaled(r, c) = numerator(m(r, c) * l);
  }
  return make_rational(integer_determinant(scaled), scale);
}

ThetaElement nf_inverse(const ThetaElement& a) {
  if (a.is_zero()) throw Error(ErrorCode::InvalidArgument, "inverse of zero");
  // Cramer's rule on M x = e_0, since a * x = 1 means M(a) x = (1, 0, ..., 0).
  const RationalMatrix m = multiplication_matrix(a);
  const Rational det = rational_determinant(m);
  if (det == 0) throw Error(ErrorCode::InvalidArgument, "zero divisor has no inverse (f is reducible)");
  const int d = a.degree();
  RationalVector x(d);
  for (int i = 0; i < d; ++i) {
    RationalMatrix mi = m;
    mi.col(i).setZero();
    mi(0, i) = 1;
    x(i) = rational_determinant(mi) / det;
  }
  return ThetaElement(a.field(), x);
}

Rational nf_norm(const ThetaElement& a) {
  if (a.is_zero()) return 0;
  const BigInt l = lcm_of_denominators(a.coords());
  std::vector<BigInt> g(static_cast<std::size_t>(a.degree()));
  for (int i = 0; i < a.degree(); ++i) g[i] = numerator(a.coord(i) * l);
  // Res(f, g) = prod g(theta_i) for monic f.
  const BigInt res = resultant(a.field().polynomial(), IntPolynomial(g));
  return make_rational(res, ipow(l, static_cast<unsigned>(a.degree())));
}

TraceData trace_data(const IntPolynomial& f) {
  TraceData td{NumberField(f), {}, {}, 0, {}, {}};
  const int d = f.degree();
  // Newton's identities for x^d + a_{d-1} x^{d-1} + ... + a_0.
  auto a = [&](int i) -> const BigInt& { return f.coeff(static_cast<std::size_t>(i)); };
  std::vector<BigInt>& p = td.power_traces;
  p.assign(static_cast<std::size_t>(2 * d - 1), 0);
  p[0] = d;
  for (int k = 1; k <= 2 * d - 2; ++k) {
    BigInt s = 0;
    for (int i = 1; i <= std::min(k - 1, d); ++i) s += a(d - i) * p[k - i];
    if (k <= d) s += BigInt(k) * a(d - k);
    p[k] = -s;
  }
  td.trace_matrix = IntMatrix(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) td.trace_matrix(j, i) = p[i + j];
  td.det = integer_determinant(td.trace_matrix);
  if (td.det == 0) throw Error(ErrorCode::SingularPolynomial, "trace form is singular (disc = 0)");

  // Inverse from cofactors: every entry is a quotient of integer determinants.
  td.inverse = RationalMatrix(d, d);
  if (d == 1) {
    td.inverse(0, 0) = make_rational(1, td.det);
  } else {
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        IntMatrix minor(d - 1, d - 1);
        for (int i = 0, mi = 0; i < d; ++i) {
          if (i == r) continue;
          for (int j = 0, mj = 0; j < d; ++j) {
            if (j == c) continue;
            minor(mi, mj++) = td.trace_matrix(i, j);
          }
          ++mi;
        }
        const BigInt cof = ((r + c) % 2 == 0 ? 1 : -1) * integer_determinant(minor);
        td.inverse(c, r) = make_rational(cof, td.det);
      }
  }
  for (int i = 0; i < d; ++i) td.projection_constants.push_back(td.field.element(td.inverse.row(i).transpose()));
  return td;
}

Rational nf_trace(const TraceData& td, const ThetaElement& a) {
  if (!(a.field() == td.field)) throw Error(ErrorCode::MismatchedField, "element and trace data differ");
  Rational t = 0;
  for (int k = 0; k < a.degree(); ++k) t += a.coord(k) * td.power_traces[k];
  return t;
}

Rational project(const TraceData& td, const ThetaElement& a, int j) {
  if (j < 0 || j >= a.degree()) throw Error(ErrorCode::InvalidArgument, "projection index out of range");
  return nf_trace(td, nf_mul(td.projection_constants[j], a));
}

Rational project(const ThetaElement& a, int j) { return project(trace_data(a.field().polynomial()), a, j); }

namespace {

template <class C>
std::vector<C> complex_coeffs(const IntPolynomial& f) {
  std::vector<C> out;
  for (const auto& c : f.coeffs()) out.emplace_back(static_cast<long double>(c));
  return out;
}

std::vector<Complex50> precise_coeffs(const IntPolynomial& f) {
  std::vector<Complex50> out;
  for (const auto& c : f.coeffs()) out.emplace_back(Real50(c));
  return out;
}

// Newton refinement at 50 digits; returns false if it fails to settle.
bool polish(const std::vector<Complex50>& coeffs, Complex50& z) {
  const Real50 eps("1e-45");
  for (int i = 0; i < 60; ++i) {
    Complex50 v, dv;
    horner_with_derivative(coeffs, z, v, dv);
    if (abs(dv) == 0) return false;
    const Complex50 step = v / dv;
    z -= step;
    if (abs(step) <= eps * (1 + abs(z))) return true;
  }
  return false;
}

long double residual_of(const std::vector<Complex50>& coeffs, const std::vector<Complex50>& roots) {
  Real50 worst = 0;
  for (const auto& z : roots) {
    Complex50 v, dv;
    horner_with_derivative(coeffs, z, v, dv);
    worst = std::max<Real50>(worst, abs(v));
  }
  return static_cast<long double>(worst);
}

// Sorts, snaps real roots and pairs conjugates. False on an inconsistent set.
bool normalize(std::vector<Complex50>& roots, int& real_count) {
  const Real50 tiny("1e-35");
  std::vector<Complex50> reals, upper, lower;
  for (auto& z : roots) {
    if (abs(z.imag()) <= tiny * (1 + abs(z))) {
      reals.emplace_back(z.real());
    } else if (z.imag() > 0) {
      upper.push_back(z);
    } else {
      lower.push_back(z);
    }
  }
  if (upper.size() != lower.size()) return false;
  std::sort(reals.begin(), reals.end(), [](const Complex50& a, const Complex50& b) { return a.real() < b.real(); });
  std::sort(upper.begin(), upper.end(), [](const Complex50& a, const Complex50& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  for (const auto& z : upper) {
    auto best = std::min_element(lower.begin(), lower.end(), [&](const Complex50& a, const Complex50& b) {
      return abs(a - conj(z)) < abs(b - conj(z));
    });
    if (abs(*best - conj(z)) > Real50("1e-30") * (1 + abs(z))) return false;
    lower.erase(best);
  }
  roots = reals;
  for (const auto& z : upper) {
    roots.push_back(z);
    roots.push_back(conj(z));
  }
  real_count = static_cast<int>(reals.size());
  return true;
}

bool distinct(const std::vector<Complex50>& roots) {
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (abs(roots[i] - roots[j]) <= Real50("1e-30") * (1 + abs(roots[i]))) return false;
  return true;
}

}  // namespace

EmbeddingSet embeddings(const IntPolynomial& f, long double residual_bound) {
  if (!f.is_monic()) throw Error(ErrorCode::NonMonic, "embeddings need a monic polynomial");
  if (f.degree() < 1) throw Error(ErrorCode::InvalidArgument, "degree must be >= 1");
  if (discriminant(f) == 0) throw Error(ErrorCode::SingularPolynomial, "repeated roots (disc = 0)");

  const auto pc = precise_coeffs(f);
  EmbeddingSet out;
  out.f = f;
  std::string diagnostics;
  for (int stage = 0; stage < 3; ++stage) {
    std::vector<Complex50> roots;
    int iterations = 0;
    bool converged = false;
    if (stage == 0) {
      auto r = aberth_roots<std::complex<double>, double>(
          [&] {
            std::vector<std::complex<double>> c;
            for (const auto& v : f.coeffs()) c.emplace_back(static_cast<double>(v));
            return c;
          }(),
          1e-14, 500);
      iterations = r.iterations;
      converged = r.converged;
      for (const auto& z : r.roots) roots.emplace_back(Real50(z.real()), Real50(z.imag()));
    } else if (stage == 1) {
      auto r = aberth_roots<Complex, long double>(complex_coeffs<Complex>(f), 1e-17L, 1000);
      iterations = r.iterations;
      converged = r.converged;
      for (const auto& z : r.roots) roots.emplace_back(Real50(z.real()), Real50(z.imag()));
    } else {
      auto r = aberth_roots<Complex50, Real50>(pc, Real50("1e-40"), 2000);
      iterations = r.iterations;
      converged = r.converged;
      roots = r.roots;
    }
    bool ok = converged;
    for (auto& z : roots) ok = polish(pc, z) && ok;
    int real_count = 0;
    ok = ok && distinct(roots) && normalize(roots, real_count);
    const long double res = residual_of(pc, roots);
    static const char* names[] = {"double", "long double", "50 digits"};
    diagnostics += std::string(names[stage]) + ": " + std::to_string(iterations) + " iterations, residual " +
                   std::to_string(static_cast<double>(res)) + (ok ? "" : " (rejected)") + "; ";
    if (ok && res < residual_bound) {
      out.precise_roots = roots;
      out.roots = ComplexVector(static_cast<Eigen::Index>(roots.size()));
      for (std::size_t i = 0; i < roots.size(); ++i)
        out.roots(static_cast<Eigen::Index>(i)) =
            Complex(static_cast<long double>(roots[i].real()), static_cast<long double>(roots[i].imag()));
      out.residual = res;
      out.real_count = real_count;
      out.iterations = iterations;
      out.precision = names[stage];
      return out;
    }
  }
  throw Error(ErrorCode::NonConvergence, "root iteration did not certify: " + diagnostics);
}

ComplexVector embed(const ThetaElement& a, const EmbeddingSet& e) {
  if (!(a.field().polynomial() == e.f)) throw Error(ErrorCode::MismatchedField, "embedding set of another field");
  ComplexVector out(static_cast<Eigen::Index>(e.precise_roots.size()));
  std::vector<Complex50> coeffs;
  for (int k = 0; k < a.degree(); ++k) {
    const Rational& r = a.coord(k);
    coeffs.emplace_back(Real50(numerator(r)) / Real50(denominator(r)));
  }
  for (std::size_t i = 0; i < e.precise_roots.size(); ++i) {
    Complex50 v, dv;
    horner_with_derivative(coeffs, e.precise_roots[i], v, dv);
    out(static_cast<Eigen::Index>(i)) = Complex(static_cast<long double>(v.real()), static_cast<long double>(v.imag()));
  }
  return out;
}

RationalMatrix g_matrix(const ThetaElement& alpha) {
  const TraceData td = trace_data(alpha.field().polynomial());
  const int d = alpha.degree();
  const ThetaElement lead = nf_pow(alpha, static_cast<unsigned>(d - 1));
  const ThetaElement theta = alpha.field().theta();
  RationalMatrix g(d - 1, d);
  ThetaElement col = lead;
  for (int j = 0; j < d; ++j) {
    for (int i = 1; i < d; ++i) g(i - 1, j) = project(td, col, i);
    col = nf_mul(col, theta);
  }
  return g;
}

RationalVector verify_system(const ThetaElement& alpha, const ThetaElement& beta) {
  require_same(alpha, beta);
  const TraceData td = trace_data(alpha.field().polynomial());
  const int d = alpha.degree();
  const ThetaElement prod = nf_mul(nf_pow(alpha, static_cast<unsigned>(d - 1)), beta);
  RationalVector e(d - 1);
  for (int i = 1; i < d; ++i) e(i - 1) = project(td, prod, i);
  return e;
}

Complex vandermonde_det(const EmbeddingSet& e) {
  Complex50 v(1);
  const auto& r = e.precise_roots;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j) v *= r[i] - r[j];
  return Complex(static_cast<long double>(v.real()), static_cast<long double>(v.imag()));
}

}  // namespace pfv
