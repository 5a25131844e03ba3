#pragma once

// Arithmetic in Q(theta) = Q[x]/(f) for monic f, in theta-power coordinates.

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "pfv/bigint.hpp"
#include "pfv/poly.hpp"

namespace pfv {

using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using IntMatrix = Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic>;
using Complex = std::complex<long double>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using Complex50 = boost::multiprecision::cpp_complex_50;

class ThetaElement;

/// Shared handle on a monic defining polynomial.
class NumberField {
 public:
  // Throws NonMonic, or InvalidArgument for degree < 1.
  explicit NumberField(IntPolynomial f);

  const IntPolynomial& polynomial() const { return *f_; }
  int degree() const { return f_->degree(); }

  ThetaElement element(RationalVector coords) const;
  ThetaElement element(const std::vector<Rational>& coords) const;
  ThetaElement constant(const Rational& c) const;
  ThetaElement theta() const;

  bool operator==(const NumberField& o) const { return *f_ == *o.f_; }

 private:
  std::shared_ptr<const IntPolynomial> f_;
  friend class ThetaElement;
};

/// sum_i coords[i] theta^i, 0 <= i < d.
class ThetaElement {
 public:
  ThetaElement(NumberField field, RationalVector coords);

  const NumberField& field() const { return field_; }
  const RationalVector& coords() const { return coords_; }
  const Rational& coord(int i) const { return coords_(i); }
  int degree() const { return field_.degree(); }
  bool is_integral() const;
  bool is_zero() const;

  bool operator==(const ThetaElement& o) const;

 private:
  NumberField field_;
  RationalVector coords_;
};

ThetaElement operator+(const ThetaElement& a, const ThetaElement& b);
ThetaElement operator-(const ThetaElement& a, const ThetaElement& b);
ThetaElement operator-(const ThetaElement& a);
ThetaElement operator*(const Rational& s, const ThetaElement& a);

// Throws MismatchedField when the defining polynomials differ.
ThetaElement nf_mul(const ThetaElement& a, const ThetaElement& b);
inline ThetaElement operator*(const ThetaElement& a, const ThetaElement& b) { return nf_mul(a, b); }
ThetaElement nf_pow(const ThetaElement& a, unsigned e);

// Inverse via the multiplication matrix. Throws InvalidArgument for zero
// and, when f is reducible, for zero divisors.
ThetaElement nf_inverse(const ThetaElement& a);

// Column j holds the coordinates of a * theta^j.
RationalMatrix multiplication_matrix(const ThetaElement& a);

// N(a) as a resultant of f and the coordinate polynomial of a.
Rational nf_norm(const ThetaElement& a);

// Determinant of a rational matrix by fraction-free elimination.
Rational rational_determinant(const RationalMatrix& m);

struct TraceData {
  NumberField field;
  std::vector<BigInt> power_traces;  // Tr(theta^k), k = 0 .. 2d-2
  IntMatrix trace_matrix;             // C(j, i) = Tr(theta^(i+j))
  BigInt det;                         // det C = disc(f)
  RationalMatrix inverse;             // C^-1
  // c_i = sum_k inverse(i, k) theta^k, so that C c = (1, theta, ..., theta^(d-1)).
  std::vector<ThetaElement> projection_constants;
};

// Throws NonMonic or SingularPolynomial (disc = 0).
TraceData trace_data(const IntPolynomial& f);

Rational nf_trace(const TraceData& td, const ThetaElement& a);

// pi_j(a) = Tr(c_j a), the j-th coordinate of a.
Rational project(const TraceData& td, const ThetaElement& a, int j);
Rational project(const ThetaElement& a, int j);

struct EmbeddingSet {
  IntPolynomial f;
  // Real roots first (ascending), then complex pairs (positive imaginary
  // part first, conjugate next).
  ComplexVector roots;
  std::vector<Complex50> precise_roots;
  long double residual = 0;  // max |f(sigma_i)| at 50 digits
  int real_count = 0;
  int iterations = 0;
  std::string precision;  // "double", "long double" or "50 digits"
};

// Throws NonMonic, SingularPolynomial, or NonConvergence when the residual
// stays at or above `residual_bound` after the last precision step.
EmbeddingSet embeddings(const IntPolynomial& f, long double residual_bound = 1e-12L);

// (sigma_1(a), ..., sigma_d(a)).
ComplexVector embed(const ThetaElement& a, const EmbeddingSet& e);

// Rows i = 1 .. d-1, columns j = 0 .. d-1: pi_i(a^(d-1) theta^j).
RationalMatrix g_matrix(const ThetaElement& alpha);

// (pi_i(a^(d-1) b)), i = 1 .. d-1.
RationalVector verify_system(const ThetaElement& alpha, const ThetaElement& beta);

// prod_{i<j} (sigma_i - sigma_j) in the stored root order.
Complex vandermonde_det(const EmbeddingSet& e);

}  // namespace pfv
