#include "pfv/factor.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "pfv/errors.hpp"
#include "pfv/modarith.hpp"

namespace pfv {

namespace {

using modarith::Mont128;
using modarith::Mont64;

constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

// 3317044064679887385961981: first 13 prime bases are deterministic below it.
const u128 kDeterministicLimit =
    static_cast<u128>(3317044064679887ULL) * 1000000000ULL + 385961981ULL;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 1 << 16;
    std::vector<bool> composite(limit, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i < limit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j < limit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

std::mt19937_64 make_rng(std::uint64_t seed, u128 n) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n >> 32),
                    static_cast<std::uint32_t>(n >> 64), static_cast<std::uint32_t>(n >> 96)};
  return std::mt19937_64(seq);
}

template <class M>
bool strong_probable_prime(const M& mont, typename M::word n, typename M::word base) {
  using word = typename M::word;
  word d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  const word one = mont.one();
  const word minus_one = mont.sub(0, one);
  word x = mont.pow(mont.to(base % n), d);
  if (x == one || x == minus_one) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mont.mul(x, x);
    if (x == minus_one) return true;
    if (x == one) return false;
  }
  return false;
}

bool small_prime_screen(u128 n, bool& verdict) {
  if (n < 2) {
    verdict = false;
    return true;
  }
  for (std::uint64_t p : kWitnesses) {
    if (n == p) {
      verdict = true;
      return true;
    }
    if (n % p == 0) {
      verdict = false;
      return true;
    }
  }
  return false;
}

bool is_prime_word(u128 n, const FactorOptions& options) {
  bool verdict;
  if (small_prime_screen(n, verdict)) return verdict;
  if (n < (static_cast<u128>(1) << 63)) {
    const auto m = static_cast<std::uint64_t>(n);
    Mont64 mont(m);
    for (std::uint64_t a : kWitnesses) {
      if (!strong_probable_prime(mont, m, a)) return false;
    }
    return true;
  }
  Mont128 mont(n);
  for (std::uint64_t a : kWitnesses) {
    if (!strong_probable_prime(mont, n, static_cast<u128>(a))) return false;
  }
  if (n < kDeterministicLimit) return true;
  auto rng = make_rng(options.seed, n);
  for (unsigned i = 0; i < options.mr_rounds; ++i) {
    const u128 a = ((static_cast<u128>(rng()) << 64) | rng()) % (n - 3) + 2;
    if (!strong_probable_prime(mont, n, a)) return false;
  }
  return true;
}

bool is_prime_big(const BigInt& n, const FactorOptions& options) {
  if (fits_bits(n, 127)) return is_prime_word(to_u128(n), options);
  for (std::uint64_t p : kWitnesses) {
    if (n % p == 0) return false;
  }
  BigInt d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto check = [&](const BigInt& a) {
    BigInt x = boost::multiprecision::powm(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n - 1) return true;
      if (x == 1) return false;
    }
    return false;
  };
  for (std::uint64_t a : kWitnesses) {
    if (!check(BigInt(a))) return false;
  }
  std::mt19937_64 rng(options.seed ^ static_cast<std::uint64_t>(n & BigInt(UINT64_MAX)));
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
  for (unsigned i = 0; i < options.mr_rounds; ++i) {
    BigInt a = 0;
    for (unsigned b = 0; b < bits + 64; b += 64) a = (a << 64) | rng();
    a = a % (n - 3) + 2;
    if (!check(a)) return false;
  }
  return true;
}

// Arithmetic on BigInt residues with the same interface as the Montgomery classes.
class ModBig {
 public:
  using word = BigInt;
  explicit ModBig(BigInt n) : n_(std::move(n)) {}
  const BigInt& modulus() const { return n_; }
  BigInt to(const BigInt& a) const { return a % n_; }
  BigInt from(const BigInt& a) const { return a; }
  BigInt one() const { return 1; }
  BigInt mul(const BigInt& a, const BigInt& b) const { return a * b % n_; }
  BigInt add(const BigInt& a, const BigInt& b) const {
    BigInt s = a + b;
    if (s >= n_) s -= n_;
    return s;
  }
  BigInt sub(const BigInt& a, const BigInt& b) const { return a >= b ? a - b : a + n_ - b; }

 private:
  BigInt n_;
};

template <class W>
W generic_gcd(W a, W b) {
  while (b != 0) {
    W t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Brent's variant of Pollard rho; returns a nontrivial divisor of the
// composite modulus.
template <class M, class Rng>
typename M::word brent_split(const M& mont, Rng& rng, std::uint64_t& effort) {
  using word = typename M::word;
  const word n = mont.modulus();
  auto random_residue = [&]() {
    word r = 0;
    for (int i = 0; i < 3; ++i) r = (r << 48) + word(rng() >> 16);
    return mont.to(r % n);
  };
  constexpr std::uint64_t block = 128;
  auto charge = [&](std::uint64_t steps) {
    if (effort < steps) throw Error(ErrorCode::EffortExceeded, "Pollard rho effort cap reached");
    effort -= steps;
  };
  for (;;) {
    const word c = random_residue();
    word y = random_residue();
    auto step = [&](const word& v) { return mont.add(mont.mul(v, v), c); };
    word x = y, ys = y, q = mont.one(), g = 1;
    std::uint64_t r = 1;
    do {
      x = y;
      charge(r);
      for (std::uint64_t i = 0; i < r; ++i) y = step(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        const std::uint64_t lim = std::min(block, r - k);
        charge(lim);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = step(y);
          q = mont.mul(q, mont.sub(x, y));
        }
        g = generic_gcd<word>(q, n);
        k += block;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        charge(1);
        ys = step(ys);
        g = generic_gcd<word>(mont.sub(x, ys), n);
      } while (g == 1);
    }
    if (g != n && g != 0) return g;
  }
}

void split_word(u128 n, std::vector<u128>& primes, const FactorOptions& options,
                std::uint64_t& effort) {
  if (n == 1) return;
  while ((n & 1) == 0) {
    primes.push_back(2);
    n >>= 1;
  }
  if (n == 1) return;
  if (is_prime_word(n, options)) {
    primes.push_back(n);
    return;
  }
  auto rng = make_rng(options.seed, n);
  u128 d;
  if (n < (static_cast<u128>(1) << 63)) {
    Mont64 mont(static_cast<std::uint64_t>(n));
    d = brent_split(mont, rng, effort);
  } else {
    Mont128 mont(n);
    d = brent_split(mont, rng, effort);
  }
  split_word(d, primes, options, effort);
  split_word(n / d, primes, options, effort);
}

void split_big(const BigInt& n, std::vector<BigInt>& primes, const FactorOptions& options,
               std::uint64_t& effort) {
  if (n == 1) return;
  if (fits_bits(n, 127)) {
    std::vector<u128> words;
    split_word(to_u128(n), words, options, effort);
    for (u128 w : words) primes.push_back(from_u128(w));
    return;
  }
  if (is_prime_big(n, options)) {
    primes.push_back(n);
    return;
  }
  auto rng = make_rng(options.seed, to_u128(n & ((BigInt(1) << 128) - 1)));
  ModBig mod(n);
  const BigInt d = brent_split(mod, rng, effort);
  split_big(d, primes, options, effort);
  split_big(n / d, primes, options, effort);
}

// Removes small prime factors of n by trial division; returns the cofactor.
template <class W>
W trial_divide(W n, std::uint32_t bound, std::map<BigInt, unsigned>& acc) {
  for (std::uint32_t p : small_primes()) {
    if (p >= bound) break;
    if (static_cast<W>(p) * p > n) break;
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    acc[BigInt(p)] += e;
  }
  return n;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) { return is_prime_word(n, FactorOptions{}); }

bool is_prime(const BigInt& n, const FactorOptions& options) {
  if (n < 2) return false;
  return is_prime_big(n, options);
}

BigInt FactorizationResult::product() const {
  BigInt p = 1;
  for (const auto& f : factors) p *= ipow(f.prime, f.exponent);
  return p;
}

void factorize_u128(u128 n, std::vector<std::pair<u128, unsigned>>& out,
                    const FactorOptions& options) {
  out.clear();
  if (n <= 1) return;
  if (n >= (static_cast<u128>(1) << 127)) {
    const auto r = factorize(from_u128(n), options);
    for (const auto& f : r.factors) out.emplace_back(to_u128(f.prime), f.exponent);
    return;
  }
  for (std::uint32_t p : small_primes()) {
    if (p >= options.trial_bound) break;
    if (static_cast<u128>(p) * p > n) break;
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n == 1) return;
  std::vector<u128> primes;
  std::uint64_t effort = options.rho_effort;
  split_word(n, primes, options, effort);
  std::sort(primes.begin(), primes.end());
  for (u128 p : primes) {
    if (!out.empty() && out.back().first == p) {
      ++out.back().second;
    } else {
      out.emplace_back(p, 1);
    }
  }
}

FactorizationResult factorize(const BigInt& n, const FactorOptions& options) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "factorize requires n >= 1");
  FactorizationResult result;
  result.n = n;
  std::map<BigInt, unsigned> acc;
  std::uint64_t effort = options.rho_effort;
  BigInt rest = trial_divide<BigInt>(n, options.trial_bound, acc);
  if (rest > 1) {
    std::vector<BigInt> primes;
    split_big(rest, primes, options, effort);
    for (const auto& p : primes) acc[p] += 1;
  }
  for (const auto& [p, e] : acc) result.factors.push_back({p, e});
  return result;
}

}  // namespace pfv
