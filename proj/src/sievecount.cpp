#include "pfv/sievecount.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <mutex>
#include <thread>

#include "pfv/errors.hpp"
#include "pfv/localdensity.hpp"
#include "pfv/sieve.hpp"

namespace pfv {

std::string_view to_string(Domain d) { return d == Domain::Integers ? "integers" : "primes"; }

std::string_view to_string(CountMethod m) {
  switch (m) {
    case CountMethod::Direct: return "direct";
    case CountMethod::Hybrid: return "hybrid";
    case CountMethod::Both: return "both";
  }
  return "hybrid";
}

bool is_kfree(const BigInt& n, unsigned k, const FactorOptions& options) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "is_kfree needs n >= 1");
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "is_kfree needs k >= 2");
  for (const auto& pp : factorize(n, options).factors)
    if (pp.exponent >= k) return false;
  return true;
}

namespace {

using i128 = __int128;

constexpr std::uint64_t kMaxSieveBound = std::uint64_t{1} << 25;

unsigned exponent_for(const IntPolynomial& f, const CountOptions& options) {
  if (options.k != 0) return options.k;
  if (f.degree() < 3) throw Error(ErrorCode::DegreeTooSmall, "counting needs degree >= 3 (or an explicit k)");
  return static_cast<unsigned>(f.degree() - 1);
}

// Upper bound for |f(n)| on 0 <= n <= hi.
BigInt value_bound(const IntPolynomial& f, std::uint64_t hi) {
  BigInt acc = 0;
  const BigInt h(hi);
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) acc = acc * h + boost::multiprecision::abs(*it);
  return acc;
}

// Word-size evaluation when every Horner partial is below 2^126.
struct WordEvaluator {
  std::vector<i128> coeffs;
  explicit WordEvaluator(const IntPolynomial& f) {
    for (const auto& c : f.coeffs()) {
      const BigInt mag = boost::multiprecision::abs(c);
      const i128 v = static_cast<i128>(to_u128(mag));
      coeffs.push_back(c < 0 ? -v : v);
    }
  }
  u128 abs_value(std::uint64_t n) const {
    i128 acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * static_cast<i128>(n) + *it;
    return static_cast<u128>(acc < 0 ? -acc : acc);
  }
};

bool word_path(const IntPolynomial& f, std::uint64_t hi) { return fits_bits(value_bound(f, hi), 125); }

// Splits [0, count) into blocks handed out round-robin to `threads` workers.
template <class Fn>
void parallel_blocks(std::uint64_t count, std::uint64_t block, unsigned threads, Fn&& fn) {
  const std::uint64_t nblocks = (count + block - 1) / block;
  threads = std::max(1u, threads);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      try {
        fn(b * block, std::min(count, (b + 1) * block));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(nblocks);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

bool kfree_word(u128 v, unsigned k, const FactorOptions& options, std::vector<std::pair<u128, unsigned>>& scratch) {
  if (v == 0) return false;
  factorize_u128(v, scratch, options);
  for (const auto& [p, e] : scratch)
    if (e >= k) return false;
  return true;
}

bool kfree_value(const BigInt& v, unsigned k, const FactorOptions& options) {
  if (v == 0) return false;
  for (const auto& pp : factorize(boost::multiprecision::abs(v), options).factors)
    if (pp.exponent >= k) return false;
  return true;
}

void direct_flags(const IntPolynomial& f, std::uint64_t lo, std::uint64_t hi, unsigned k,
                  const CountOptions& options, const std::vector<std::uint8_t>& mask,
                  std::vector<std::uint8_t>& flags) {
  const std::uint64_t count = hi - lo + 1;
  if (word_path(f, hi)) {
    const WordEvaluator ev(f);
    parallel_blocks(count, 4096, options.threads, [&](std::uint64_t b, std::uint64_t e) {
      std::vector<std::pair<u128, unsigned>> scratch;
      for (std::uint64_t i = b; i < e; ++i) {
        if (!mask.empty() && !mask[i]) continue;
        flags[i] = kfree_word(ev.abs_value(lo + i), k, options.factor, scratch) ? 1 : 0;
      }
    });
    return;
  }
  parallel_blocks(count, 1024, options.threads, [&](std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t i = b; i < e; ++i) {
      if (!mask.empty() && !mask[i]) continue;
      flags[i] = kfree_value(evaluate(f, BigInt(lo + i)), k, options.factor) ? 1 : 0;
    }
  });
}

struct SieveRoot {
  std::uint64_t q;
  std::uint64_t r;
};

// Roots of f mod every prime q <= bound.
std::vector<SieveRoot> sieve_roots(const IntPolynomial& f, std::uint64_t bound, unsigned threads) {
  const auto primes = primes_up_to(bound);
  std::vector<std::vector<std::uint64_t>> per(primes.size());
  parallel_blocks(primes.size(), 2048, threads, [&](std::uint64_t b, std::uint64_t e) {
    const RootOptions opts{.enumeration_threshold = 64};
    for (std::uint64_t i = b; i < e; ++i) {
      const auto rs = roots_mod_prime(f, BigInt(primes[i]), opts);
      for (const auto& r : rs.roots) per[i].push_back(static_cast<std::uint64_t>(r));
    }
  });
  std::vector<SieveRoot> out;
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::uint64_t r : per[i]) out.push_back({primes[i], r});
  return out;
}

// Generic value operations for the hybrid sieve.
struct WordOps {
  using V = u128;
  static bool divisible(const V& v, std::uint64_t q) { return v % q == 0; }
  static void divide(V& v, std::uint64_t q) { v /= q; }
  static bool is_zero(const V& v) { return v == 0; }
  static bool is_one(const V& v) { return v == 1; }
  static bool perfect_power(const V& v, unsigned k) { return is_perfect_power(v, k); }
  static bool kfree_full(const V& v, unsigned k, const FactorOptions& o) {
    std::vector<std::pair<u128, unsigned>> scratch;
    return kfree_word(v, k, o, scratch);
  }
};

struct BigOps {
  using V = BigInt;
  static bool divisible(const V& v, std::uint64_t q) { return v % q == 0; }
  static void divide(V& v, std::uint64_t q) { v /= q; }
  static bool is_zero(const V& v) { return v == 0; }
  static bool is_one(const V& v) { return v == 1; }
  static bool perfect_power(const V& v, unsigned k) { return ipow(iroot(v, k), k) == v; }
  static bool kfree_full(const V& v, unsigned k, const FactorOptions& o) { return kfree_value(v, k, o); }
};

// Divides out every prime q <= Q along the progressions n = r mod q, marks
// arguments where some exponent reaches k, then decides the cofactor c (all
// of whose prime factors exceed Q). If c < (Q+1)^(k+1), c has at most k prime
// factors, so it fails to be k-free exactly when it is a perfect k-th power;
// larger cofactors are factorized.
template <class Ops, class Eval>
void hybrid_flags_impl(const Eval& eval, std::uint64_t lo, std::uint64_t hi, unsigned k, std::uint64_t bound,
                       const std::vector<SieveRoot>& roots, const CountOptions& options,
                       const std::vector<std::uint8_t>& mask, std::vector<std::uint8_t>& flags) {
  using V = typename Ops::V;
  const std::uint64_t count = hi - lo + 1;
  const BigInt small_limit = ipow(BigInt(bound) + 1, k + 1);
  const std::uint64_t block = std::clamp<std::uint64_t>(count / (8 * std::max(1u, options.threads)) + 1,
                                                        std::uint64_t{1} << 14, std::uint64_t{1} << 20);
  parallel_blocks(count, block, options.threads, [&](std::uint64_t b, std::uint64_t e) {
    const std::uint64_t len = e - b;
    const std::uint64_t first = lo + b;
    std::vector<V> vals(len);
    std::vector<std::uint8_t> bad(len, 0);
    for (std::uint64_t i = 0; i < len; ++i) {
      vals[i] = eval(first + i);
      if (Ops::is_zero(vals[i])) bad[i] = 1;
    }
    for (const auto& sr : roots) {
      const std::uint64_t q = sr.q;
      std::uint64_t i = (sr.r + q - first % q) % q;
      for (; i < len; i += q) {
        if (bad[i]) continue;
        V& v = vals[i];
        unsigned exp = 0;
        while (Ops::divisible(v, q)) {
          Ops::divide(v, q);
          ++exp;
        }
        if (exp >= k) bad[i] = 1;
      }
    }
    for (std::uint64_t i = 0; i < len; ++i) {
      const std::uint64_t idx = b + i;
      if (!mask.empty() && !mask[idx]) continue;
      if (bad[i]) {
        flags[idx] = 0;
        continue;
      }
      const V& c = vals[i];
      bool ok;
      if (Ops::is_one(c)) {
        ok = true;
      } else if (BigInt(c) < small_limit) {
        ok = !Ops::perfect_power(c, k);
      } else {
        ok = Ops::kfree_full(c, k, options.factor);
      }
      flags[idx] = ok ? 1 : 0;
    }
  });
}

}  // namespace

std::uint64_t hybrid_sieve_bound(const IntPolynomial& f, std::uint64_t hi, unsigned k, std::uint64_t count) {
  const std::uint64_t base =
      std::max<std::uint64_t>(1000, static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1);
  // Past a few times the range length each prime hits at most a handful of
  // arguments, and computing its roots costs more than factoring.
  const std::uint64_t cap = std::min<std::uint64_t>(kMaxSieveBound, std::max<std::uint64_t>(count, 1) * 8);
  const BigInt root = iroot(value_bound(f, hi), k + 1) + 1;
  const std::uint64_t want = root > BigInt(cap) ? cap : static_cast<std::uint64_t>(root);
  return std::max(base, want);
}

std::vector<std::uint8_t> kfree_flags(const IntPolynomial& f, std::uint64_t lo, std::uint64_t hi,
                                      CountMethod method, const CountOptions& options,
                                      const std::vector<std::uint8_t>& mask) {
  if (lo > hi) return {};
  const unsigned k = exponent_for(f, options);
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "k must be >= 2");
  std::vector<std::uint8_t> flags(hi - lo + 1, 0);
  if (!mask.empty() && mask.size() != flags.size()) throw Error(ErrorCode::InvalidArgument, "mask size mismatch");
  if (method == CountMethod::Direct) {
    direct_flags(f, lo, hi, k, options, mask, flags);
    return flags;
  }
  if (method == CountMethod::Both) {
    auto direct = kfree_flags(f, lo, hi, CountMethod::Direct, options, mask);
    auto hybrid = kfree_flags(f, lo, hi, CountMethod::Hybrid, options, mask);
    if (direct != hybrid) throw std::logic_error("direct and hybrid k-free flags disagree");
    return hybrid;
  }
  const std::uint64_t bound = options.sieve_bound ? options.sieve_bound : hybrid_sieve_bound(f, hi, k, hi - lo + 1);
  const auto roots = sieve_roots(f, bound, options.threads);
  if (word_path(f, hi)) {
    const WordEvaluator ev(f);
    hybrid_flags_impl<WordOps>([&](std::uint64_t n) { return ev.abs_value(n); }, lo, hi, k, bound, roots, options,
                               mask, flags);
  } else {
    hybrid_flags_impl<BigOps>([&](std::uint64_t n) { return BigInt(boost::multiprecision::abs(evaluate(f, BigInt(n)))); },
                              lo, hi, k, bound, roots, options, mask, flags);
  }
  return flags;
}

CountReport count_kfree(const IntPolynomial& f, std::uint64_t x, Domain domain, CountMethod method,
                        const CountOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  CountReport rep;
  rep.f = f;
  rep.x = x;
  rep.domain = domain;
  rep.method = method;
  rep.k = exponent_for(f, options);
  rep.fixed_divisor = fixed_power_divisor(f, rep.k);
  if (x >= 1) {
    std::vector<std::uint8_t> mask;
    if (domain == Domain::Primes) mask = prime_flags(1, x);
    if (method != CountMethod::Direct)
      rep.sieve_bound = options.sieve_bound ? options.sieve_bound : hybrid_sieve_bound(f, x, rep.k, x);
    const auto flags = kfree_flags(f, 1, x, method, options, mask);
    for (std::uint64_t i = 0; i < flags.size(); ++i) rep.count += flags[i];
    rep.domain_size = domain == Domain::Primes
                          ? static_cast<std::uint64_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}))
                          : x;
  }
  rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

namespace {

// floor(a / b) for b > 0.
BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && (a < 0)) q -= 1;
  return q;
}

// Members of the progression r mod m inside (x, 2x], optionally only primes.
std::uint64_t progression_count(const BigInt& r, const BigInt& m, std::uint64_t x,
                                const std::vector<std::uint8_t>* window_primes) {
  const BigInt lo(x), hi(2 * x);
  if (!window_primes) {
    const BigInt c = floor_div(hi - r, m) - floor_div(lo - r, m);
    return static_cast<std::uint64_t>(c);
  }
  // First member > x.
  BigInt n = r + m * (floor_div(lo - r, m) + 1);
  std::uint64_t c = 0;
  for (; n <= hi; n += m) {
    const auto idx = static_cast<std::uint64_t>(n) - x - 1;
    c += (*window_primes)[idx];
  }
  return c;
}

BigInt crt_inverse(const BigInt& a, const BigInt& m) {
  BigInt r0 = a % m, r1 = m, s0 = 1, s1 = 0;
  while (r1 != 0) {
    const BigInt q = r0 / r1;
    BigInt t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  s0 %= m;
  if (s0 < 0) s0 += m;
  return s0;
}

std::vector<BigInt> crt_combine(const std::vector<BigInt>& a_roots, const BigInt& a_mod,
                                const std::vector<BigInt>& b_roots, const BigInt& b_mod) {
  const BigInt inv = crt_inverse(a_mod, b_mod);
  std::vector<BigInt> out;
  out.reserve(a_roots.size() * b_roots.size());
  for (const auto& a : a_roots)
    for (const auto& b : b_roots) {
      BigInt t = ((b - a) % b_mod) * inv % b_mod;
      if (t < 0) t += b_mod;
      out.push_back(a + a_mod * t);
    }
  return out;
}

}  // namespace

std::uint64_t count_divisible(const IntPolynomial& f, std::uint64_t x, const BigInt& m, Domain domain,
                              unsigned k) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  if (k == 0) {
    if (f.degree() < 2) throw Error(ErrorCode::DegreeTooSmall, "need degree >= 2 or explicit k");
    k = static_cast<unsigned>(f.degree() - 1);
  }
  const BigInt mk = ipow(m, k);
  const RootSet rs = roots_mod(f, mk);
  std::vector<std::uint8_t> window;
  if (domain == Domain::Primes) window = prime_flags(x + 1, 2 * x);
  std::uint64_t total = 0;
  for (const auto& r : rs.roots) total += progression_count(r, mk, x, domain == Domain::Primes ? &window : nullptr);
  return total;
}

MoebiusReport moebius_check(const IntPolynomial& f, std::uint64_t x, Domain domain, const CountOptions& options) {
  if (x < 1) throw Error(ErrorCode::InvalidArgument, "X must be >= 1");
  const unsigned k = exponent_for(f, options);
  MoebiusReport rep;

  std::vector<std::uint8_t> window;
  if (domain == Domain::Primes) window = prime_flags(x + 1, 2 * x);
  BigInt max_value = 0;
  for (std::uint64_t n = x + 1; n <= 2 * x; ++n) {
    const BigInt v = boost::multiprecision::abs(evaluate(f, BigInt(n)));
    if (v == 0) throw Error(ErrorCode::InvalidArgument, "f vanishes at n = " + std::to_string(n));
    if (v > max_value) max_value = v;
  }
  const auto flags = kfree_flags(f, x + 1, 2 * x, CountMethod::Hybrid, options, window);
  std::uint64_t lhs = 0;
  for (auto v : flags) lhs += v;
  rep.lhs = lhs;

  rep.m_bound = iroot(max_value, k);
  if (rep.m_bound > BigInt(std::uint64_t{1} << 34)) throw Error(ErrorCode::InvalidArgument, "m range too large for desk scale");
  const auto m_max = static_cast<std::uint64_t>(rep.m_bound);
  const auto primes = primes_up_to(m_max);
  std::vector<RootSet> local(primes.size());
  parallel_blocks(primes.size(), 512, options.threads, [&](std::uint64_t b, std::uint64_t e) {
    const RootOptions opts{.enumeration_threshold = 64};
    for (std::uint64_t i = b; i < e; ++i) local[i] = lift_roots(f, BigInt(primes[i]), k, opts);
  });

  const std::vector<std::uint8_t>* wp = domain == Domain::Primes ? &window : nullptr;
  BigInt rhs = 0;
  std::uint64_t terms = 0;
  // Depth-first over squarefree m = p_1 < p_2 < ... with nonempty root sets.
  struct Frame {
    std::size_t next;
    std::uint64_t m;
    BigInt mk;
    std::vector<BigInt> roots;
    int mu;
  };
  std::vector<Frame> stack;
  stack.push_back({0, 1, BigInt(1), {BigInt(0)}, 1});
  while (!stack.empty()) {
    Frame fr = std::move(stack.back());
    stack.pop_back();
    std::uint64_t c = 0;
    for (const auto& r : fr.roots) c += progression_count(r, fr.mk, x, wp);
    if (fr.mu > 0) {
      rhs += c;
    } else {
      rhs -= c;
    }
    ++terms;
    for (std::size_t j = fr.next; j < primes.size(); ++j) {
      const std::uint64_t p = primes[j];
      if (fr.m > m_max / p) break;
      if (local[j].roots.empty()) continue;
      stack.push_back({j + 1, fr.m * p, fr.mk * local[j].modulus,
                       crt_combine(fr.roots, fr.mk, local[j].roots, local[j].modulus), -fr.mu});
    }
  }
  rep.rhs = rhs;
  rep.terms = terms;
  rep.equal = rep.lhs == rep.rhs;
  return rep;
}

std::vector<TripleRecord> count_triples(const IntPolynomial& f, std::uint64_t x, const BigInt& a_bound,
                                        const BigInt& b_bound, const CountOptions& options) {
  if (a_bound < 1 || b_bound < 1) throw Error(ErrorCode::InvalidArgument, "A and B must be >= 1");
  const unsigned k = exponent_for(f, options);
  std::vector<std::vector<TripleRecord>> per(x);
  parallel_blocks(x, 1024, options.threads, [&](std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t i = b; i < e; ++i) {
      const BigInt n(x + 1 + i);
      const BigInt v = evaluate(f, n);
      if (v <= 0) continue;
      const auto fr = factorize(v, options.factor);
      std::vector<BigInt> candidates;
      for (const auto& pp : fr.factors)
        if (pp.exponent >= k) candidates.push_back(pp.prime);
      // Every squarefree a with a^k | v is a product of a subset of candidates.
      std::vector<BigInt> as{BigInt(1)};
      for (const auto& p : candidates) {
        const std::size_t base = as.size();
        for (std::size_t j = 0; j < base; ++j) as.push_back(as[j] * p);
      }
      std::sort(as.begin(), as.end());
      for (const auto& a : as) {
        if (a <= a_bound || a > 2 * a_bound) continue;
        const BigInt bval = v / ipow(a, k);
        if (bval <= b_bound || bval > 2 * b_bound) continue;
        per[i].push_back({n, a, bval});
      }
    }
  });
  std::vector<TripleRecord> out;
  for (auto& v : per)
    for (auto& t : v) out.push_back(std::move(t));
  return out;
}

bool verify_triple(const IntPolynomial& f, unsigned k, std::uint64_t x, const BigInt& a_bound,
                   const BigInt& b_bound, const TripleRecord& t) {
  if (t.n <= BigInt(x) || t.n > BigInt(2 * x)) return false;
  if (t.a <= a_bound || t.a > 2 * a_bound) return false;
  if (t.b <= b_bound || t.b > 2 * b_bound) return false;
  if (ipow(t.a, k) * t.b != evaluate(f, t.n)) return false;
  // a squarefree: no prime square divides it.
  for (const auto& pp : factorize(t.a).factors)
    if (pp.exponent >= 2) return false;
  return true;
}

}  // namespace pfv
