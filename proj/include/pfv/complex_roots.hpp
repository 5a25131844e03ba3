#pragma once

// Simultaneous (Aberth-Ehrlich) iteration for all complex roots of a
// polynomial, templated on the complex scalar so the same code runs in
// double, long double and multiprecision.

#include <cmath>
#include <complex>
#include <vector>

namespace pfv {

template <class Complex>
struct AberthResult {
  std::vector<Complex> roots;
  int iterations = 0;
  bool converged = false;
};

// p(z) and p'(z) by Horner; coeffs ascending.
template <class Complex>
void horner_with_derivative(const std::vector<Complex>& coeffs, const Complex& z, Complex& value,
                            Complex& deriv) {
  value = Complex(0);
  deriv = Complex(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    deriv = deriv * z + value;
    value = value * z + *it;
  }
}

template <class Complex, class Real>
AberthResult<Complex> aberth_roots(const std::vector<Complex>& coeffs, const Real& tolerance,
                                   int max_iterations = 500) {
  using std::abs;
  using std::cos;
  using std::sin;
  AberthResult<Complex> out;
  const int d = static_cast<int>(coeffs.size()) - 1;
  if (d < 1) {
    out.converged = true;
    return out;
  }
  // Cauchy bound on root moduli.
  Real bound(0);
  for (int i = 0; i < d; ++i) {
    const Real r = Real(abs(coeffs[static_cast<std::size_t>(i)] / coeffs.back()));
    if (r > bound) bound = r;
  }
  bound = bound + Real(1);
  const Real radius = bound / Real(2);
  out.roots.resize(static_cast<std::size_t>(d));
  const Real two_pi = Real(2) * Real(3.14159265358979323846264338327950288L);
  for (int k = 0; k < d; ++k) {
    const Real angle = two_pi * Real(k) / Real(d) + Real(0.4);
    out.roots[static_cast<std::size_t>(k)] = Complex(radius * cos(angle), radius * sin(angle));
  }

  for (int it = 1; it <= max_iterations; ++it) {
    Real max_step(0);
    for (int k = 0; k < d; ++k) {
      auto& zk = out.roots[static_cast<std::size_t>(k)];
      Complex value, deriv;
      horner_with_derivative(coeffs, zk, value, deriv);
      if (abs(value) == Real(0)) continue;
      const Complex w = value / deriv;
      Complex s(0);
      for (int j = 0; j < d; ++j) {
        if (j == k) continue;
        s += Complex(1) / (zk - out.roots[static_cast<std::size_t>(j)]);
      }
      const Complex step = w / (Complex(1) - w * s);
      zk -= step;
      const Real rel = Real(abs(step)) / (Real(1) + Real(abs(zk)));
      if (rel > max_step) max_step = rel;
    }
    out.iterations = it;
    if (max_step < tolerance) {
      out.converged = true;
      break;
    }
  }
  // Newton polish.
  for (auto& z : out.roots) {
    for (int i = 0; i < 3; ++i) {
      Complex value, deriv;
      horner_with_derivative(coeffs, z, value, deriv);
      if (abs(deriv) == Real(0)) break;
      z -= value / deriv;
    }
  }
  return out;
}

}  // namespace pfv
