#include "pfv/detbounds.hpp"

#include <algorithm>
#include <functional>

#include "pfv/errors.hpp"

namespace pfv {

std::string MonomialSize::label() const {
  std::string out;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "a" + std::to_string(i + 1);
    if (alpha[i] > 1) out += "^" + std::to_string(alpha[i]);
  }
  if (beta >= 0) {
    if (!out.empty()) out += "*";
    out += "b" + std::to_string(beta + 1);
  }
  return out.empty() ? "1" : out;
}

BigInt monomial_count(unsigned degree, unsigned variables) {
  if (variables == 0) return degree == 0 ? 1 : 0;
  // binom(N + D - 1, D)
  BigInt r = 1;
  for (unsigned i = 1; i <= degree; ++i) r = r * (variables + i - 1) / i;
  return r;
}

Rational xi_exponent(unsigned d) {
  if (d < 4) throw Error(ErrorCode::DegreeTooSmall, "xi is defined for d >= 4");
  return Rational((d - 1) * (5 * d + 2), 2);
}

namespace {

// All exponent vectors of total degree `deg` in n variables, in decreasing
// lexicographic order.
void exponent_vectors(unsigned n, unsigned deg, std::vector<std::vector<unsigned>>& out) {
  std::vector<unsigned> cur(n, 0);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned left) {
    if (i + 1 == n) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
  };
  if (n == 0) {
    if (deg == 0) out.push_back({});
    return;
  }
  rec(0, deg);
}

}  // namespace

MonomialSelection largest_monomials(unsigned d, const Rational& tau, unsigned R) {
  if (d < 2) throw Error(ErrorCode::DegreeTooSmall, "need d >= 2");
  if (R < 1) throw Error(ErrorCode::InvalidArgument, "R must be >= 1");
  if (tau < 1) throw Error(ErrorCode::InvalidArgument, "tau must be >= 1");
  const unsigned n = d - 1;

  struct Entry {
    Rational key;
    MonomialSize m;
  };
  std::vector<Entry> pool;
  // Grow the key cutoff until at least R monomials have key <= cutoff; the
  // R smallest keys are then all inside the pool.
  for (unsigned cutoff = 0;; ++cutoff) {
    pool.clear();
    for (unsigned a = 0; a <= cutoff; ++a) {
      std::vector<std::vector<unsigned>> vecs;
      exponent_vectors(n, a, vecs);
      for (const auto& v : vecs) {
        pool.push_back({Rational(a), {a, 0, v, -1}});
        if (Rational(a) + tau <= cutoff)
          for (unsigned j = 0; j < n; ++j) pool.push_back({Rational(a) + tau, {a, 1, v, static_cast<int>(j)}});
      }
    }
    if (pool.size() >= R) break;
  }
  std::stable_sort(pool.begin(), pool.end(), [](const Entry& x, const Entry& y) {
    if (x.key != y.key) return x.key < y.key;
    if (x.m.b != y.m.b) return x.m.b < y.m.b;
    if (x.m.alpha != y.m.alpha) return x.m.alpha > y.m.alpha;
    return x.m.beta < y.m.beta;
  });
  MonomialSelection sel;
  for (unsigned i = 0; i < R; ++i) {
    sel.monomials.push_back(pool[i].m);
    sel.sum_a += pool[i].m.a;
    sel.sum_b += pool[i].m.b;
  }
  return sel;
}

MRange m_range(unsigned d, const Rational& a_exp, const Rational& b_exp) {
  if (d < 3) throw Error(ErrorCode::DegreeTooSmall, "m_range needs d >= 3");
  if (a_exp <= 0 || b_exp <= 0) throw Error(ErrorCode::InvalidArgument, "exponents must be positive");
  MRange r;
  if (d == 3) {
    r.lower = Rational(3, 11) * (a_exp + b_exp) - Rational(2, 11);
  } else {
    r.lower = Rational(2 * d, (5 * d + 2) * (d - 1)) * (a_exp + b_exp);
  }
  r.upper = std::min<Rational>(Rational(1), a_exp) / (d - 1);
  r.nonempty = r.lower < r.upper;
  return r;
}

FinalExponent final_exponent(unsigned d, const Rational& m_exp) {
  if (d < 2) throw Error(ErrorCode::DegreeTooSmall, "need d >= 2");
  if (m_exp <= 0) throw Error(ErrorCode::InvalidArgument, "m exponent must be positive");
  FinalExponent f;
  f.n_bound_exp = (1 - Rational(1, d)) * (1 + m_exp);
  f.lhs = Rational(d - 1) * m_exp;
  f.sufficient = f.lhs < 1;
  return f;
}

Rational large_b_exponent(unsigned d, const Rational& b_exp) {
  if (d < 2) throw Error(ErrorCode::DegreeTooSmall, "need d >= 2");
  if (b_exp <= 0) throw Error(ErrorCode::InvalidArgument, "b exponent must be positive");
  const Rational gap = 1 - b_exp;
  return b_exp + (gap > 0 ? gap : Rational(0)) / (d - 1);
}

BoundReport bound_report(unsigned d, std::optional<Rational> tau, const Rational& a_exp, const Rational& b_exp) {
  if (d < 3) throw Error(ErrorCode::DegreeTooSmall, "bounds need d >= 3");
  BoundReport rep;
  rep.d = d;
  rep.R = d * d;
  rep.S = d * (d + 1) / 2;
  if (d >= 4) rep.xi = xi_exponent(d);
  rep.a_exp = a_exp;
  rep.b_exp = b_exp;
  const MRange base = m_range(d, 1, 1);
  rep.tau = tau ? *tau : 1 / base.lower;
  rep.selection = largest_monomials(d, rep.tau, rep.R);
  for (unsigned m = 0; m <= 3; ++m) {
    const BigInt c = monomial_count(m, d - 1);
    if (m <= 2) rep.monomials_upto_2 += c;
    rep.monomials_upto_3 += c;
  }
  rep.upto_2_below_R = rep.monomials_upto_2 < rep.R;
  rep.upto_3_reaches_R = rep.monomials_upto_3 >= rep.R;
  rep.m_range = m_range(d, a_exp, b_exp);
  rep.taylor_upper = std::min<Rational>(a_exp, Rational(1)) / (d - 1);
  if (rep.m_range.lower > 0) rep.final_at_lower = final_exponent(d, rep.m_range.lower);
  rep.driver = Rational(d - 1) * base.lower;
  rep.driver_limit = d == 3 ? Rational(1) : Rational(4, 5);
  rep.driver_ok = rep.driver < rep.driver_limit;
  return rep;
}

}  // namespace pfv
