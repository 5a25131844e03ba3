#include <CLI11.hpp>

#include <iostream>

#include "pfv/cli.hpp"

namespace {

const char* kExamples = R"(Examples:
  pfv rho --poly 2,0,0,1 --modulus 25
  pfv density --poly 2,0,0,1 --prime-limit 10 --exact
  pfv density --poly "x^3+2" --prime-limit 100000
  pfv count --poly 2,0,0,1 --x 1000000 --threads 4
  pfv count --poly 2,0,0,1 --x 100000 --domain primes --method both --format csv
  pfv moebius-check --poly 2,0,0,1 --x 2000 --domain primes
  pfv triples --poly 2,0,0,1 --x 11 --a 4 --b 256
  pfv fielddata --poly 2,0,0,1
  pfv bounds --d 3
  pfv verify --poly 2,0,0,1 --x 1000000 --prime-limit 100000

Polynomials are ascending coefficients (2,0,0,1 is x^3+2) or a sum of
a*x^k terms. Exit codes: 0 ok, 2 usage or parse error, 3 computation
failure, 4 hypothesis violation (report still written).)";

void common(CLI::App* s, pfv::RunConfig& c) {
  s->add_option("--format", c.format, "json, csv (count and triples only) or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  s->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  s->add_option("--seed", c.seed, "seed for randomized factorization steps");
  s->add_option("--effort", c.effort, "rho iteration budget per factorization");
  s->add_flag("!--no-timing", c.timing, "write null elapsed times (byte-stable output)");
}

void poly(CLI::App* s, pfv::RunConfig& c) { s->add_option("--poly", c.poly, "polynomial")->required(); }

void counting(CLI::App* s, pfv::RunConfig& c) {
  s->add_option("--x", c.x, "upper end X")->required();
  s->add_option("--k", c.k, "power k (default deg f - 1)");
}

}  // namespace

int main(int argc, char** argv) {
  pfv::RunConfig c;
  CLI::App app{"Power-free values of polynomials: local densities, counts and proof bookkeeping"};
  app.footer(kExamples);
  app.set_version_flag("--version", pfv::kVersion);
  app.require_subcommand(1);

  auto* rho = app.add_subcommand("rho", "rho(m) and rho'(m) with the root list");
  poly(rho, c);
  rho->add_option("--modulus", c.modulus, "modulus m >= 1")->required();

  auto* density = app.add_subcommand("density", "Euler products c_f and c'_f with certified intervals");
  poly(density, c);
  density->add_option("--prime-limit", c.prime_limit, "truncation P");
  density->add_flag("--exact", c.exact, "also report the exact rational partial product");
  density->add_option("--k", c.k, "power k (default deg f - 1)");

  auto* count = app.add_subcommand("count", "count n <= X (or primes) with f(n) k-free");
  poly(count, c);
  counting(count, c);
  count->add_option("--domain", c.domain, "integers or primes")->check(CLI::IsMember({"integers", "primes"}));
  count->add_option("--method", c.method, "direct, hybrid or both")->check(CLI::IsMember({"direct", "hybrid", "both"}));

  auto* moebius = app.add_subcommand("moebius-check", "check the Moebius decomposition over (X, 2X]");
  poly(moebius, c);
  counting(moebius, c);
  moebius->add_option("--domain", c.domain, "integers or primes")->check(CLI::IsMember({"integers", "primes"}));

  auto* triples = app.add_subcommand("triples", "solutions of a^k b = f(n), n ~ X, a ~ A, b ~ B");
  poly(triples, c);
  counting(triples, c);
  triples->add_option("--a", c.a, "A")->required();
  triples->add_option("--b", c.b, "B")->required();

  auto* fielddata = app.add_subcommand("fielddata", "trace form, projection constants and embeddings");
  poly(fielddata, c);

  auto* bounds = app.add_subcommand("bounds", "determinant-method exponent bookkeeping");
  bounds->add_option("--d", c.d, "degree d >= 3")->required();
  bounds->add_option("--tau", c.tau, "log T2 / log T1 as num/den (default 1 / lower end of the m range)");
  bounds->add_option("--a-exp", c.a_exp, "A = X^a_exp");
  bounds->add_option("--b-exp", c.b_exp, "B = X^b_exp");

  auto* verify = app.add_subcommand("verify", "counts along a ladder of X against the density intervals");
  poly(verify, c);
  counting(verify, c);
  verify->add_option("--prime-limit", c.prime_limit, "truncation P for the constants");
  verify->add_option("--method", c.method, "direct, hybrid or both")->check(CLI::IsMember({"direct", "hybrid", "both"}));

  for (auto* s : {rho, density, count, moebius, triples, fielddata, bounds, verify}) {
    common(s, c);
    s->footer(kExamples);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pfv::kExitUsage;
  }
  c.command = app.get_subcommands().front()->get_name();
  return pfv::run(c, std::cout, std::cerr);
}
