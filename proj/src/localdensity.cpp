#include "pfv/localdensity.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "pfv/errors.hpp"
#include "pfv/factor.hpp"
#include "pfv/modarith.hpp"
#include "pfv/sieve.hpp"

namespace pfv {

std::size_t RootSet::rho_prime() const {
  std::size_t n = 0;
  for (const auto& r : roots)
    if (boost::multiprecision::gcd(r, modulus) == 1) ++n;
  return n;
}

std::string_view to_string(DensityKind kind) {
  return kind == DensityKind::SquarefreeIntegers ? "c_f" : "c_f_prime";
}

namespace {

void require_prime(const BigInt& p) {
  if (!fits_u64(p) || p >= (BigInt(1) << 63)) throw Error(ErrorCode::InvalidArgument, "prime modulus too large: " + p.str());
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, p.str() + " is not prime");
}

std::vector<std::uint64_t> word_roots_mod_prime(const IntPolynomial& f, std::uint64_t p,
                                                const RootOptions& options) {
  std::vector<std::uint64_t> out;
  if (p < options.enumeration_threshold) {
    const fp::FpPoly fp = f.mod_p(p);
    if (fp.is_zero()) {
      for (std::uint64_t r = 0; r < p; ++r) out.push_back(r);
      return out;
    }
    for (std::uint64_t r = 0; r < p; ++r)
      if (fp.eval(r) == 0) out.push_back(r);
    return out;
  }
  const fp::FpPoly fp = f.mod_p(p);
  if (fp.is_zero()) {
    for (std::uint64_t r = 0; r < p; ++r) out.push_back(r);
    return out;
  }
  if (fp.degree() == 0) return out;
  return fp::roots(fp);
}

// Roots mod p^k from the roots mod p. A root r mod p^j with f'(r) != 0 mod p
// has exactly one lift mod p^{j+1} (Newton step). For a singular root,
// f(r + t p^j) = f(r) mod p^{j+1} for every t, so either all p candidates
// r + t p^j survive or none does.
std::vector<BigInt> lift(const IntPolynomial& f, const IntPolynomial& df, const BigInt& p,
                         std::vector<BigInt> roots, unsigned k) {
  BigInt pj = p;
  for (unsigned j = 1; j < k; ++j) {
    const BigInt next_mod = pj * p;
    std::vector<BigInt> next;
    for (const auto& r : roots) {
      BigInt dr = evaluate_mod(df, r, p);
      const BigInt fr = evaluate_mod(f, r, next_mod);
      if (dr != 0) {
        // t = -(f(r)/p^j) / f'(r) mod p
        BigInt inv_d = boost::multiprecision::powm(dr, p - 2, p);
        BigInt t = (-(fr / pj) * inv_d) % p;
        if (t < 0) t += p;
        next.push_back(r + t * pj);
      } else if (fr == 0) {
        for (BigInt t = 0; t < p; ++t) next.push_back(r + t * pj);
      }
    }
    roots = std::move(next);
    pj = next_mod;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

RootSet roots_mod_prime(const IntPolynomial& f, const BigInt& p, const RootOptions& options) {
  require_prime(p);
  RootSet rs;
  rs.modulus = p;
  for (std::uint64_t r : word_roots_mod_prime(f, static_cast<std::uint64_t>(p), options)) rs.roots.emplace_back(r);
  return rs;
}

RootSet lift_roots(const IntPolynomial& f, const BigInt& p, unsigned k, const RootOptions& options) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "lift_roots needs k >= 1");
  RootSet base = roots_mod_prime(f, p, options);
  RootSet rs;
  rs.modulus = ipow(p, k);
  rs.roots = lift(f, derivative(f), p, std::move(base.roots), k);
  return rs;
}

RootSet roots_mod(const IntPolynomial& f, const BigInt& m, const RootOptions& options) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "modulus must be >= 1");
  RootSet acc;
  acc.modulus = 1;
  acc.roots = {0};
  const auto fr = factorize(m);
  for (const auto& pp : fr.factors) {
    const RootSet local = lift_roots(f, pp.prime, pp.exponent, options);
    // CRT: x = a mod M, x = b mod q  ->  x = a + M * ((b - a) * M^{-1} mod q)
    const BigInt& q = local.modulus;
    BigInt m_inv;
    {
      // q is a prime power coprime to acc.modulus; invert via extended gcd.
      BigInt a = acc.modulus % q, b = q, x0 = 1, x1 = 0;
      while (b != 0) {
        const BigInt t = a / b;
        BigInt tmp = a - t * b;
        a = b;
        b = tmp;
        tmp = x0 - t * x1;
        x0 = x1;
        x1 = tmp;
      }
      m_inv = x0 % q;
      if (m_inv < 0) m_inv += q;
    }
    std::vector<BigInt> next;
    next.reserve(acc.roots.size() * local.roots.size());
    for (const auto& a : acc.roots) {
      for (const auto& b : local.roots) {
        BigInt t = ((b - a) % q) * m_inv % q;
        if (t < 0) t += q;
        next.push_back(a + acc.modulus * t);
      }
    }
    acc.modulus *= q;
    acc.roots = std::move(next);
  }
  std::sort(acc.roots.begin(), acc.roots.end());
  return acc;
}

BigInt rho(const IntPolynomial& f, const BigInt& m, const RootOptions& options) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "modulus must be >= 1");
  BigInt count = 1;
  for (const auto& pp : factorize(m).factors) {
    count *= lift_roots(f, pp.prime, pp.exponent, options).rho();
    if (count == 0) break;
  }
  return count;
}

BigInt rho_prime(const IntPolynomial& f, const BigInt& m, const RootOptions& options) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "modulus must be >= 1");
  BigInt count = 1;
  for (const auto& pp : factorize(m).factors) {
    count *= lift_roots(f, pp.prime, pp.exponent, options).rho_prime();
    if (count == 0) break;
  }
  return count;
}

BigInt euler_phi(const BigInt& m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "phi needs m >= 1");
  BigInt phi = 1;
  for (const auto& pp : factorize(m).factors) phi *= ipow(pp.prime, pp.exponent - 1) * (pp.prime - 1);
  return phi;
}

std::optional<BigInt> fixed_power_divisor(const IntPolynomial& f, unsigned k) {
  if (f.content() != 1) throw Error(ErrorCode::ContentNotOne, "content is " + f.content().str());
  const int d = std::max(f.degree(), 1);
  for (std::uint64_t p = 2; p <= static_cast<std::uint64_t>(d); ++p) {
    if (!is_prime_u64(p)) continue;
    const BigInt bp(p);
    if (lift_roots(f, bp, k).rho() == ipow(bp, k)) return bp;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

struct LocalFactor {
  std::uint64_t p;
  std::uint64_t count;  // rho(p^k) or rho'(p^k)
};

}  // namespace

DensityEstimate euler_product(const IntPolynomial& f, DensityKind kind, std::uint64_t prime_bound,
                              const EulerOptions& options) {
  const int d = f.degree();
  if (d < 3) throw Error(ErrorCode::DegreeTooSmall, "Euler product needs degree >= 3");
  if (prime_bound < 2) throw Error(ErrorCode::TruncationTooSmall, "prime bound must be >= 2");
  const unsigned k = static_cast<unsigned>(d - 1);
  const bool primes_kind = kind == DensityKind::SquarefreePrimes;

  DensityEstimate est;
  est.kind = kind;
  est.truncation = prime_bound;

  const BigInt disc = discriminant(f);
  if (disc == 0) throw Error(ErrorCode::SingularPolynomial, "disc(f) = 0");
  for (const auto& pp : factorize(boost::multiprecision::abs(disc * f.leading())).factors)
    est.exceptional_primes.push_back(pp.prime);

  if (auto p = fixed_power_divisor(f, k)) {
    est.fixed_divisor = *p;
    est.exact_partial = Rational(0);
    return est;
  }

  auto is_exceptional = [&](std::uint64_t p) {
    return std::find(est.exceptional_primes.begin(), est.exceptional_primes.end(), BigInt(p)) !=
           est.exceptional_primes.end();
  };
  // Local count at p: exact lifting for exceptional primes, otherwise the
  // roots mod p lift uniquely.
  const RootOptions root_opts{.enumeration_threshold = 64};
  auto local_count = [&](std::uint64_t p) -> std::uint64_t {
    if (is_exceptional(p)) {
      const RootSet rs = lift_roots(f, BigInt(p), k, root_opts);
      return primes_kind ? rs.rho_prime() : rs.rho();
    }
    const auto roots = word_roots_mod_prime(f, p, root_opts);
    if (!primes_kind) return roots.size();
    return static_cast<std::uint64_t>(std::count_if(roots.begin(), roots.end(), [](auto r) { return r != 0; }));
  };

  const auto primes = primes_up_to(prime_bound);
  std::vector<LocalFactor> factors(primes.size());
  const unsigned threads = std::max(1u, options.threads);
  {
    auto work = [&](unsigned tid) {
      for (std::size_t i = tid; i < primes.size(); i += threads) factors[i] = {primes[i], local_count(primes[i])};
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool) th.join();
  }

  // Denominator p^k (c_f) or phi(p^k) = p^{k-1}(p-1) (c'_f).
  auto denom_double = [&](std::uint64_t p) {
    const double pd = static_cast<double>(p);
    return primes_kind ? std::pow(pd, k - 1) * (pd - 1.0) : std::pow(pd, k);
  };

  double prod = 1.0;
  Rational exact = 1;
  for (const auto& lf : factors) {
    if (lf.count == 0) continue;
    ++est.factor_count;
    prod *= 1.0 - static_cast<double>(lf.count) / denom_double(lf.p);
    if (options.exact) {
      const BigInt bp(lf.p);
      const BigInt den = primes_kind ? ipow(bp, k - 1) * (bp - 1) : ipow(bp, k);
      exact *= Rational(den - lf.count, den);
    }
  }
  est.partial_product = prod;
  if (options.exact) est.exact_partial = exact;

  // Tail: primes in (P, P0] one by one (worst case for generic primes, exact
  // for exceptional ones), then 2d/(P0 - 1) beyond P0.
  const std::uint64_t p0 = std::max<std::uint64_t>(prime_bound, 1000);
  double tail = 0.0;
  for_each_prime(prime_bound + 1, p0, [&](std::uint64_t p) {
    if (is_exceptional(p)) {
      const double x = static_cast<double>(local_count(p)) / denom_double(p);
      tail += -std::log1p(-x);
      return;
    }
    const std::uint64_t cap = primes_kind ? p - 1 : p;
    const double x = static_cast<double>(std::min<std::uint64_t>(static_cast<std::uint64_t>(d), cap)) / denom_double(p);
    tail += -std::log1p(-x);
  });
  for (const auto& q : est.exceptional_primes) {
    if (q <= BigInt(p0)) continue;
    // Exceptional primes beyond P0 are also covered by the generic bound
    // only if rho stays <= d; account for them exactly instead.
    const RootSet rs = lift_roots(f, q, k, root_opts);
    const double cnt = static_cast<double>(primes_kind ? rs.rho_prime() : rs.rho());
    const double qd = static_cast<double>(q);
    const double den = primes_kind ? std::pow(qd, k - 1) * (qd - 1.0) : std::pow(qd, k);
    tail += -std::log1p(-cnt / den);
  }
  tail += 2.0 * d / static_cast<double>(p0 - 1);
  tail *= 1.0 + 1e-12;
  est.tail_bound = tail;

  est.rounding_slack = std::expm1(static_cast<double>(est.factor_count + 4) * std::log1p(options.rounding_per_factor));
  est.lo = prod * std::exp(-tail) * (1.0 - est.rounding_slack);
  est.hi = prod * std::exp(tail) * (1.0 + est.rounding_slack);
  return est;
}

}  // namespace pfv
