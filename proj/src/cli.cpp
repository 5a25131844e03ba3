#include "pfv/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "pfv/detbounds.hpp"
#include "pfv/errors.hpp"
#include "pfv/localdensity.hpp"
#include "pfv/numberfield.hpp"
#include "pfv/sieve.hpp"
#include "pfv/sievecount.hpp"

namespace pfv {

using json = nlohmann::ordered_json;

namespace {

std::string dec(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dec(long double v) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.21Lg", v);
  return buf;
}

std::string frac(const Rational& q) { return to_fraction_string(q); }

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "text") return OutputFormat::Text;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + s + "'");
}

Domain parse_domain(const std::string& s) {
  if (s == "integers") return Domain::Integers;
  if (s == "primes") return Domain::Primes;
  throw Error(ErrorCode::InvalidArgument, "unknown domain '" + s + "'");
}

CountMethod parse_method(const std::string& s) {
  if (s == "direct") return CountMethod::Direct;
  if (s == "hybrid") return CountMethod::Hybrid;
  if (s == "both") return CountMethod::Both;
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + s + "'");
}

CountOptions count_options(const RunConfig& c) {
  CountOptions o;
  o.threads = c.threads;
  o.k = c.k;
  o.factor.seed = c.seed;
  o.factor.rho_effort = c.effort;
  return o;
}

IntPolynomial need_poly(const RunConfig& c, bool content_one = true) {
  if (c.poly.empty()) throw Error(ErrorCode::InvalidArgument, "--poly is required");
  return parse_polynomial(c.poly, content_one);
}

void need_x(const RunConfig& c) {
  if (c.x == 0) throw Error(ErrorCode::InvalidArgument, "--x must be >= 1");
}

json poly_json(const IntPolynomial& f) {
  json j;
  j["coefficients"] = format_coefficients(f);
  j["symbolic"] = format_symbolic(f);
  j["degree"] = f.degree();
  return j;
}

json verdict_json(const IrreducibilityVerdict& v) {
  json j;
  j["status"] = std::string(to_string(v.status));
  j["witness_prime"] = v.witness_prime ? json(*v.witness_prime) : json(nullptr);
  j["compatible_degrees"] = v.compatible_degrees;
  if (v.factor) j["factor"] = format_coefficients(*v.factor);
  return j;
}

json density_json(const DensityEstimate& e) {
  json j;
  j["kind"] = std::string(to_string(e.kind));
  j["truncation"] = e.truncation;
  j["factor_count"] = e.factor_count;
  j["partial_product"] = dec(e.partial_product);
  j["tail_bound"] = dec(e.tail_bound);
  j["rounding_slack"] = dec(e.rounding_slack);
  j["lo"] = dec(e.lo);
  j["hi"] = dec(e.hi);
  j["width"] = dec(e.hi - e.lo);
  j["exact_partial"] = e.exact_partial ? json(frac(*e.exact_partial)) : json(nullptr);
  j["fixed_divisor"] = e.fixed_divisor ? json(e.fixed_divisor->str()) : json(nullptr);
  json ex = json::array();
  for (const auto& p : e.exceptional_primes) ex.push_back(p.str());
  j["exceptional_primes"] = ex;
  return j;
}

json count_json(const CountReport& r, bool timing) {
  json j;
  j["x"] = r.x;
  j["domain"] = std::string(to_string(r.domain));
  j["k"] = r.k;
  j["count"] = std::to_string(r.count);
  j["domain_size"] = std::to_string(r.domain_size);
  j["method"] = std::string(to_string(r.method));
  j["sieve_bound"] = r.sieve_bound;
  j["fixed_divisor"] = r.fixed_divisor ? json(r.fixed_divisor->str()) : json(nullptr);
  j["elapsed_seconds"] = timing ? json(r.elapsed_seconds) : json(nullptr);
  return j;
}

json triple_json(const TripleRecord& t) { return json{{"n", t.n.str()}, {"a", t.a.str()}, {"b", t.b.str()}}; }

json matrix_json(const RationalMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(frac(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

json element_json(const ThetaElement& a) {
  json c = json::array();
  for (int i = 0; i < a.degree(); ++i) c.push_back(frac(a.coord(i)));
  return c;
}

json monomial_json(const MonomialSize& m) { return json{{"label", m.label()}, {"a", m.a}, {"b", m.b}}; }

// Hypothesis flags shared by the commands that need f irreducible with no
// fixed (d-1)-th power divisor.
struct Hypotheses {
  IrreducibilityVerdict verdict;
  std::optional<BigInt> fixed;
  bool violated() const { return verdict.status == IrreducibilityStatus::Reducible || fixed.has_value(); }
};

Hypotheses check_hypotheses(const IntPolynomial& f, unsigned k, json& report) {
  Hypotheses h;
  h.verdict = certify_irreducible(f);
  if (f.degree() >= 1 && k >= 1) h.fixed = fixed_power_divisor(f, k);
  json j;
  j["irreducibility"] = verdict_json(h.verdict);
  j["fixed_power_divisor"] = h.fixed ? json(h.fixed->str()) : json(nullptr);
  j["violated"] = h.violated();
  report["hypotheses"] = j;
  return h;
}

unsigned default_k(const IntPolynomial& f, unsigned k) {
  if (k != 0) return k;
  if (f.degree() < 3) throw Error(ErrorCode::DegreeTooSmall, "default k = deg f - 1 needs deg f >= 3");
  return static_cast<unsigned>(f.degree() - 1);
}

int cmd_rho(const RunConfig& c, json& r) {
  const IntPolynomial f = need_poly(c, false);
  if (!c.modulus) throw Error(ErrorCode::InvalidArgument, "--modulus is required");
  const BigInt m = parse_bigint(*c.modulus);
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "--modulus must be >= 1");
  r["poly"] = poly_json(f);
  r["modulus"] = m.str();
  r["rho"] = rho(f, m).str();
  r["rho_prime"] = rho_prime(f, m).str();
  const RootSet roots = roots_mod(f, m);
  json list = json::array();
  for (const auto& x : roots.roots) list.push_back(x.str());
  r["roots"] = list;
  return kExitOk;
}

int cmd_density(const RunConfig& c, json& r) {
  const IntPolynomial f = need_poly(c);
  const unsigned k = default_k(f, c.k);
  r["poly"] = poly_json(f);
  const Hypotheses h = check_hypotheses(f, k, r);
  EulerOptions o;
  o.exact = c.exact;
  o.threads = c.threads;
  r["c_f"] = density_json(euler_product(f, DensityKind::SquarefreeIntegers, c.prime_limit, o));
  r["c_prime_f"] = density_json(euler_product(f, DensityKind::SquarefreePrimes, c.prime_limit, o));
  if (h.fixed) r["warning"] = "fixed power divisor " + h.fixed->str() + ": both constants vanish";
  return h.violated() ? kExitHypothesis : kExitOk;
}

int cmd_count(const RunConfig& c, json& r) {
  const IntPolynomial f = need_poly(c);
  need_x(c);
  const unsigned k = c.k ? c.k : (f.degree() >= 3 ? f.degree() - 1 : 0);
  r["poly"] = poly_json(f);
  const Hypotheses h = check_hypotheses(f, k, r);
  r["result"] = count_json(count_kfree(f, c.x, parse_domain(c.domain), parse_method(c.method), count_options(c)),
                           c.timing);
  return h.violated() ? kExitHypothesis : kExitOk;
}

int cmd_moebius(const RunConfig& c, json& r) {
  const IntPolynomial f = need_poly(c);
  need_x(c);
  r["poly"] = poly_json(f);
  const MoebiusReport m = moebius_check(f, c.x, parse_domain(c.domain), count_options(c));
  json j;
  j["x"] = c.x;
  j["domain"] = c.domain;
  j["lhs"] = m.lhs.str();
  j["rhs"] = m.rhs.str();
  j["equal"] = m.equal;
  j["m_bound"] = m.m_bound.str();
  j["terms"] = m.terms;
  r["result"] = j;
  return m.equal ? kExitOk : kExitCompute;
}

int cmd_triples(const RunConfig& c, json& r) {
  const IntPolynomial f = need_poly(c);
  need_x(c);
  if (c.a.empty() || c.b.empty()) throw Error(ErrorCode::InvalidArgument, "--a and --b are required");
  const BigInt a = parse_bigint(c.a), b = parse_bigint(c.b);
  const CountOptions o = count_options(c);
  const unsigned k = default_k(f, c.k);
  r["poly"] = poly_json(f);
  const auto triples = count_triples(f, c.x, a, b, o);
  json list = json::array();
  bool ok = true;
  for (const auto& t : triples) {
    list.push_back(triple_json(t));
    ok = ok && verify_triple(f, k, c.x, a, b, t);
  }
  json j;
  j["x"] = c.x;
  j["a_bound"] = a.str();
  j["b_bound"] = b.str();
  j["k"] = k;
  j["count"] = std::to_string(triples.size());
  j["records"] = list;
  j["verified"] = ok;
  r["result"] = j;
  return ok ? kExitOk : kExitCompute;
}

int cmd_fielddata(const RunConfig& c, json& r) {
  const IntPolynomial f = need_poly(c);
  r["poly"] = poly_json(f);
  const TraceData td = trace_data(f);
  json traces = json::array();
  for (const auto& t : td.power_traces) traces.push_back(t.str());
  r["power_traces"] = traces;
  json cm = json::array();
  for (Eigen::Index i = 0; i < td.trace_matrix.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < td.trace_matrix.cols(); ++k) row.push_back(td.trace_matrix(i, k).str());
    cm.push_back(row);
  }
  r["C"] = cm;
  r["det"] = td.det.str();
  r["C_inverse"] = matrix_json(td.inverse);
  json cv = json::array();
  json tr = json::array();
  for (const auto& ci : td.projection_constants) {
    cv.push_back(element_json(ci));
    tr.push_back(frac(nf_trace(td, ci)));
  }
  r["c"] = cv;
  r["trace_of_c"] = tr;
  const EmbeddingSet e = embeddings(f);
  json roots = json::array();
  for (Eigen::Index i = 0; i < e.roots.size(); ++i) roots.push_back(json::array({dec(e.roots(i).real()), dec(e.roots(i).imag())}));
  json emb;
  emb["roots"] = roots;
  emb["real_count"] = e.real_count;
  emb["residual"] = dec(e.residual);
  emb["residual_bound"] = "1e-12";
  emb["precision"] = e.precision;
  r["embeddings"] = emb;
  return kExitOk;
}

int cmd_bounds(const RunConfig& c, json& r) {
  if (c.d == 0) throw Error(ErrorCode::InvalidArgument, "--d is required");
  std::optional<Rational> tau;
  if (c.tau) tau = parse_rational(*c.tau);
  const BoundReport b = bound_report(c.d, tau, parse_rational(c.a_exp), parse_rational(c.b_exp));
  r["d"] = b.d;
  r["R"] = b.R;
  r["S"] = b.S;
  r["xi"] = b.xi ? json(frac(*b.xi)) : json(nullptr);
  r["tau"] = frac(b.tau);
  r["a_exp"] = frac(b.a_exp);
  r["b_exp"] = frac(b.b_exp);
  json mons = json::array();
  for (const auto& m : b.selection.monomials) mons.push_back(monomial_json(m));
  r["monomials"] = mons;
  r["sum_a"] = b.selection.sum_a.str();
  r["sum_b"] = b.selection.sum_b.str();
  r["monomials_upto_2"] = b.monomials_upto_2.str();
  r["monomials_upto_3"] = b.monomials_upto_3.str();
  r["upto_2_below_R"] = b.upto_2_below_R;
  r["upto_3_reaches_R"] = b.upto_3_reaches_R;
  r["m_range"] = json{{"lower", frac(b.m_range.lower)}, {"upper", frac(b.m_range.upper)}, {"nonempty", b.m_range.nonempty}};
  r["taylor_upper"] = frac(b.taylor_upper);
  r["final_at_lower"] = json{{"n_bound_exp", frac(b.final_at_lower.n_bound_exp)},
                             {"lhs", frac(b.final_at_lower.lhs)},
                             {"sufficient", b.final_at_lower.sufficient}};
  r["driver"] = json{{"value", frac(b.driver)}, {"limit", frac(b.driver_limit)}, {"ok", b.driver_ok}};
  r["feasible"] = b.m_range.nonempty && b.final_at_lower.sufficient && b.driver_ok;
  return kExitOk;
}

int cmd_verify(const RunConfig& c, json& r) {
  const IntPolynomial f = need_poly(c);
  need_x(c);
  const unsigned k = default_k(f, c.k);
  r["poly"] = poly_json(f);
  const Hypotheses h = check_hypotheses(f, k, r);
  EulerOptions eo;
  eo.threads = c.threads;
  const DensityEstimate cf = euler_product(f, DensityKind::SquarefreeIntegers, c.prime_limit, eo);
  const DensityEstimate cpf = euler_product(f, DensityKind::SquarefreePrimes, c.prime_limit, eo);
  r["c_f"] = density_json(cf);
  r["c_prime_f"] = density_json(cpf);
  const double mid = (cf.lo + cf.hi) / 2, midp = (cpf.lo + cpf.hi) / 2;
  const CountMethod method = parse_method(c.method);
  const CountOptions o = count_options(c);

  std::vector<std::uint64_t> ladder;
  for (std::uint64_t v = 1000; v < c.x; v *= 10) ladder.push_back(v);
  ladder.push_back(c.x);

  json rows = json::array();
  r["rows"] = rows;
  try {
    for (std::uint64_t x : ladder) {
      const CountReport ni = count_kfree(f, x, Domain::Integers, method, o);
      const CountReport np = count_kfree(f, x, Domain::Primes, method, o);
      const CountReport np2 = count_kfree(f, 2 * x, Domain::Primes, method, o);
      const double ri = static_cast<double>(ni.count) / static_cast<double>(x);
      const double rp = np.domain_size ? static_cast<double>(np.count) / static_cast<double>(np.domain_size) : 0.0;
      const std::uint64_t dyadic = np2.count - np.count;
      const std::uint64_t dyadic_pi = np2.domain_size - np.domain_size;
      json row;
      row["x"] = x;
      row["N_f"] = std::to_string(ni.count);
      row["ratio"] = dec(ri);
      row["abs_error"] = dec(std::abs(ri - mid));
      row["in_interval"] = cf.lo <= ri && ri <= cf.hi;
      row["pi_x"] = std::to_string(np.domain_size);
      row["N_prime_f"] = std::to_string(np.count);
      row["prime_ratio"] = dec(rp);
      row["prime_abs_error"] = dec(std::abs(rp - midp));
      row["dyadic_count"] = std::to_string(dyadic);
      row["dyadic_pi"] = std::to_string(dyadic_pi);
      row["dyadic_expected"] = dec(midp * static_cast<double>(dyadic_pi));
      row["dyadic_expected_pi_x"] = dec(midp * static_cast<double>(np.domain_size));
      rows.push_back(row);
      r["rows"] = rows;
    }
  } catch (const Error&) {
    r["partial"] = true;
    throw;
  }
  r["note"] =
      "dyadic_expected uses c'_f (pi(2X) - pi(X)); dyadic_expected_pi_x uses c'_f pi(X), which agrees only to "
      "leading order";
  return h.violated() ? kExitHypothesis : kExitOk;
}

void flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    out << prefix << ": " << j.get<std::string>() << "\n";
  } else {
    out << prefix << ": " << j.dump() << "\n";
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char ch : s) {
    if (ch == '"') o += '"';
    o += ch;
  }
  return o + "\"";
}

void write_csv(const RunConfig& c, const json& r, std::ostream& out) {
  if (c.command == "count") {
    const json& x = r["result"];
    out << "poly,x,domain,k,method,count,domain_size,sieve_bound\n";
    out << csv_escape(r["poly"]["coefficients"].get<std::string>()) << "," << x["x"].dump() << ","
        << x["domain"].get<std::string>() << "," << x["k"].dump() << "," << x["method"].get<std::string>() << ","
        << x["count"].get<std::string>() << "," << x["domain_size"].get<std::string>() << ","
        << x["sieve_bound"].dump() << "\n";
  } else {
    out << "n,a,b\n";
    for (const auto& t : r["result"]["records"])
      out << t["n"].get<std::string>() << "," << t["a"].get<std::string>() << "," << t["b"].get<std::string>()
          << "\n";
  }
}

}  // namespace

json config_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["poly"] = c.poly;
  j["modulus"] = c.modulus ? json(*c.modulus) : json(nullptr);
  j["prime_limit"] = c.prime_limit;
  j["exact"] = c.exact;
  j["x"] = c.x;
  j["a"] = c.a;
  j["b"] = c.b;
  j["d"] = c.d;
  j["tau"] = c.tau ? json(*c.tau) : json(nullptr);
  j["a_exp"] = c.a_exp;
  j["b_exp"] = c.b_exp;
  j["domain"] = c.domain;
  j["method"] = c.method;
  j["k"] = c.k;
  j["format"] = c.format;
  j["threads"] = c.threads;
  j["seed"] = std::to_string(c.seed);
  j["effort"] = std::to_string(c.effort);
  j["timing"] = c.timing;
  return j;
}

namespace {

// Fills `r` as far as the command gets, so a failure still leaves whatever
// was computed before it.
void run_into(const RunConfig& c, json& r, int& exit_code) {
  const auto start = std::chrono::steady_clock::now();
  r["tool"] = "pfv";
  r["version"] = kVersion;
  r["config"] = config_json(c);
  if (c.threads == 0) throw Error(ErrorCode::InvalidArgument, "--threads must be >= 1");
  if (c.command == "rho") exit_code = cmd_rho(c, r);
  else if (c.command == "density") exit_code = cmd_density(c, r);
  else if (c.command == "count") exit_code = cmd_count(c, r);
  else if (c.command == "moebius-check") exit_code = cmd_moebius(c, r);
  else if (c.command == "triples") exit_code = cmd_triples(c, r);
  else if (c.command == "fielddata") exit_code = cmd_fielddata(c, r);
  else if (c.command == "bounds") exit_code = cmd_bounds(c, r);
  else if (c.command == "verify") exit_code = cmd_verify(c, r);
  else throw Error(ErrorCode::InvalidArgument, "unknown command '" + c.command + "'");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r["elapsed_seconds"] = c.timing ? json(secs) : json(nullptr);
}

}  // namespace

json run_json(const RunConfig& c, int& exit_code) {
  json r;
  run_into(c, r, exit_code);
  return r;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  OutputFormat fmt;
  try {
    fmt = parse_format(c.format);
    if (fmt == OutputFormat::Csv && c.command != "count" && c.command != "triples")
      throw Error(ErrorCode::InvalidArgument, "csv output is only available for count and triples");
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  int code = kExitOk;
  json r;
  try {
    run_into(c, r, code);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::Parse || e.code() == ErrorCode::InvalidArgument) return kExitUsage;
    code = is_hypothesis_violation(e.code()) ? kExitHypothesis : kExitCompute;
    r["error"] = json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    r["elapsed_seconds"] = nullptr;
    fmt = OutputFormat::Json;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCompute;
  }
  if (fmt == OutputFormat::Json) out << r.dump(2) << "\n";
  else if (fmt == OutputFormat::Csv) write_csv(c, r, out);
  else flatten(r, "", out);
  return code;
}

}  // namespace pfv
