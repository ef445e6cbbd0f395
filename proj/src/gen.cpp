#include "amns/gen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "amns/amns.hpp"
#include "amns/error.hpp"

namespace amns::gen {

namespace {

double log2_big(const Wideint& v) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

Wideint abs_lambda(std::int64_t lambda) { return abs(from_i64(lambda)); }

// ceil(p^(1/n)) by exact integer root.
Wideint ceil_root(const Wideint& p, std::uint32_t n) {
  Wideint r;
  const bool exact = mpz_root(r.get_mpz_t(), p.get_mpz_t(), n) != 0;
  return exact ? r : Wideint(r + 1);
}

}  // namespace

const char* to_string(LambdaShape shape) noexcept {
  return shape == LambdaShape::two_term ? "two-term" : "extended-shape";
}

double omega(const EnumConfig& cfg, const Wideint& p) {
  const double lp = log2_big(p);
  const double k = cfg.k;
  return k + std::log2(k) - std::log2(lp) - k * lp / (lp + k * cfg.c + k);
}

bool degree_in_range(const EnumConfig& cfg, const Wideint& p, std::uint32_t n) {
  const double ratio = log2_big(p) / cfg.k;
  return ratio < n && n <= ratio + 1 + cfg.c;
}

LambdaEnumeration enumerate_lambda(const EnumConfig& cfg, const Wideint& p) {
  LambdaEnumeration out;
  out.omega = omega(cfg, p);
  if (out.omega < 1) throw Error(Errc::precondition, "Omega < 1: no admissible lambda");
  out.width = static_cast<unsigned>(std::floor(out.omega));
  // |lambda| must fit the signed runtime word; larger widths are unusable anyway.
  out.width = std::min(out.width, 62u);
  out.nominal_count = 4ull * out.width * (out.width - 1) / 2;

  std::set<std::int64_t> two_term, singles;
  for (unsigned i = 0; i < out.width; ++i) {
    const std::int64_t a = std::int64_t{1} << i;
    singles.insert(a);
    singles.insert(-a);
    for (unsigned j = 0; j < out.width; ++j) {
      if (i == j) continue;
      const std::int64_t b = std::int64_t{1} << j;
      for (std::int64_t v : {a + b, a - b, -a + b, -a - b})
        if (v != 0) two_term.insert(v);
    }
  }
  for (std::int64_t v : two_term) out.values.push_back({v, LambdaShape::two_term});
  for (std::int64_t v : singles)
    if (!two_term.contains(v)) out.values.push_back({v, LambdaShape::extended});
  std::sort(out.values.begin(), out.values.end(), [](const LambdaCandidate& x, const LambdaCandidate& y) {
    const auto ax = x.value < 0 ? -x.value : x.value;
    const auto ay = y.value < 0 ? -y.value : y.value;
    if (ax != ay) return ax < ay;
    return x.value > y.value;
  });
  return out;
}

unsigned choose_rho_exp(const Wideint& p, std::uint32_t n, std::int64_t lambda, const Wideint& sigma) {
  const Wideint need_m = 2 * abs_lambda(lambda) * n * sigma;
  const Wideint need_p = ceil_root(p, n) / 2 + 1;
  const Wideint need = std::max(need_m, need_p);
  unsigned e = 0;
  while (pow2(e) < need) ++e;
  while (pow2(e * n) <= p) ++e;
  return e;
}

std::string check_bounds(const AmnsSystem& sys) {
  const Wideint lam = abs_lambda(sys.lambda);
  const Wideint rho = sys.rho();
  const Wideint d1 = Wideint(sys.delta) + 1;
  if (sys.k == 0 || sys.k > 64) return "1 <= k <= 64";
  if (sys.rho_exp > 62) return "rho <= 2^62 (coefficients fit a signed word)";
  if (sys.phi() < 2 * d1 * d1 * lam * sys.n * rho) return "phi >= 2 (delta+1)^2 |lambda| n rho";
  if (sys.n * lam * d1 * d1 * rho * rho >= pow2(2 * sys.k - 1))
    return "n |lambda| (delta+1)^2 rho^2 < 2^(2k-1)";
  return {};
}

PrecompTables precompute_tables(const AmnsSystem& sys) {
  const Arith arith(sys);
  PrecompTables t;
  t.T = arith.T();
  t.g = arith.gamma_powers();
  const Element r = arith.to_amns_m2(mod_floor(sys.rho(), sys.p));  // represents rho * phi
  WideVector wide;
  wide.n = sys.n;
  for (std::uint32_t i = 0; i < sys.n; ++i) wide.c[i] = r[i];
  Element pi = arith.red_coeff(wide);  // represents rho
  for (std::uint32_t i = 1; i < sys.n; ++i) {
    t.P.push_back(pi.to_poly());
    pi = arith.mul(pi, r);
  }
  return t;
}

std::vector<GeneratedSystem> generate(const Wideint& p, std::uint32_t n, std::int64_t lambda, unsigned k,
                                      unsigned delta, const GenOptions& options) {
  if (n < 2) throw Error(Errc::precondition, "n must be at least 2");
  if (lambda == 0) throw Error(Errc::precondition, "lambda must be nonzero");
  const zp::PrimeField field(p);
  if (abs_lambda(lambda) >= p) throw Error(Errc::precondition, "|lambda| must be below p");

  const auto gamma = zp::find_gamma({n, from_i64(lambda)}, field, options.root_provider, options.seed);
  if (!gamma) {
    std::ostringstream msg;
    msg << "no " << n << "-th root of " << lambda << " mod p";
    throw Error(Errc::gamma_unavailable, msg.str());
  }

  const bool even = (lambda % 2) == 0;
  lattice::LatticeBasis basis =
      even ? lattice::build_basis_even(p, *gamma, n) : lattice::build_basis_odd(p, *gamma, n);
  basis = lattice::lll_reduce(std::move(basis));
  auto candidates = even ? lattice::candidates_even(basis) : lattice::candidates_odd(basis);
  if (candidates.empty())
    throw Error(Errc::invariant_failure, "reduced basis yields no M invertible mod (E, phi)");

  std::vector<GeneratedSystem> out;
  std::string first_failure;
  for (auto& cand : candidates) {
    AmnsSystem sys;
    sys.p = p;
    sys.n = n;
    sys.gamma = *gamma;
    sys.lambda = lambda;
    sys.k = k;
    sys.delta = delta;
    sys.M = cand.poly;
    sys.rho_exp = choose_rho_exp(p, n, lambda, cand.norm_inf);
    if (std::string failed = check_bounds(sys); !failed.empty()) {
      if (first_failure.empty()) first_failure = failed;
      continue;
    }
    sys.Mprime = poly::hensel_inverse_neg(sys.M, sys.e(), k);
    GeneratedSystem g{sys, precompute_tables(sys), cand.origin};
    const VerifyReport report = verify_system(g.system, &g.tables);
    if (!report.all_passed()) {
      std::string failed;
      for (const auto& c : report.checks)
        if (!c.passed) failed += " " + c.name;
      throw Error(Errc::invariant_failure, "generated system failed verification:" + failed);
    }
    out.push_back(std::move(g));
    if (options.max_systems != 0 && out.size() >= options.max_systems) break;
  }
  if (out.empty()) throw Error(Errc::infeasible_bounds, "no M candidate satisfies " + first_failure);
  return out;
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* VerifyReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

VerifyReport verify_system(const AmnsSystem& sys, const PrecompTables* tables) {
  VerifyReport rep;
  auto add = [&rep](std::string name, bool ok, std::string detail = {}) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  const bool p_ok = sys.p > 3 && mpz_odd_p(sys.p.get_mpz_t()) && zp::is_probable_prime(sys.p);
  add("p_prime", p_ok, "p odd, prime, > 3");
  const bool shape_ok = sys.n >= 2 && sys.M.size() == sys.n && sys.Mprime.size() == sys.n;
  add("shape", shape_ok, "n >= 2, M and M' have n coefficients");
  const bool lambda_ok = sys.lambda != 0 && abs_lambda(sys.lambda) < sys.p;
  add("lambda_range", lambda_ok, "lambda != 0, |lambda| < p");
  add("k_range", sys.k >= 1 && sys.k <= 64 && sys.rho_exp < sys.k, "1 <= k <= 64, rho < phi");
  if (!p_ok || !shape_ok || !lambda_ok) return rep;

  const zp::PrimeField field(sys.p);
  const Wideint lam = from_i64(sys.lambda);
  const Wideint lam_abs = abs(lam);
  const Wideint rho = sys.rho();
  const Wideint phi = sys.phi();
  const Wideint sigma = sys.sigma();
  const Wideint d1 = Wideint(sys.delta) + 1;
  const auto e = sys.e();

  add("gamma_root", sys.gamma > 0 && sys.gamma < sys.p &&
                        zp::mod_pow(sys.gamma, Wideint(sys.n), field) == field.reduce(lam),
      "gamma^n = lambda (mod p)");
  add("m_vanishes", poly::eval_mod(sys.M, sys.gamma, sys.p) == 0, "M(gamma) = 0 (mod p)");
  bool range_ok = true;
  for (const auto& c : sys.Mprime) range_ok = range_ok && c >= 0 && c < phi;
  add("mprime_range", range_ok, "M' coefficients in [0, phi)");
  {
    const poly::IntPoly prod = poly::mul_mod_e_pow2(sys.M, poly::resized(sys.Mprime, sys.n), e, sys.k);
    bool ok = prod[0] == phi - 1;
    for (std::uint32_t i = 1; i < sys.n; ++i) ok = ok && prod[i] == 0;
    add("m_mprime_inverse", ok, "M M' = -1 mod (E, phi)");
  }
  add("rho_vs_sigma", rho >= 2 * lam_abs * sys.n * sigma, "rho >= 2 |lambda| n sigma");
  add("rho_digits", pow2(sys.rho_exp * sys.n) > sys.p, "rho^n > p");
  {
    Wideint two_rho_n;
    Wideint two_rho = 2 * rho;
    mpz_pow_ui(two_rho_n.get_mpz_t(), two_rho.get_mpz_t(), sys.n);
    add("rho_cover", sys.p <= two_rho_n, "p <= (2 rho)^n");
  }
  add("phi_bound", phi >= 2 * d1 * d1 * lam_abs * sys.n * rho, "phi >= 2 (delta+1)^2 |lambda| n rho");
  add("overflow_guard", sys.n * lam_abs * d1 * d1 * rho * rho < pow2(2 * sys.k - 1),
      "n |lambda| (delta+1)^2 rho^2 < 2^(2k-1)");

  if (tables) {
    add("table_T", tables->T == zp::mod_pow(phi, Wideint(sys.n), field), "T = phi^n mod p");
    bool g_ok = tables->g.size() == sys.n;
    for (std::uint32_t i = 0; g_ok && i < sys.n; ++i)
      g_ok = tables->g[i] == zp::mod_pow(sys.gamma, Wideint(i), field);
    add("table_g", g_ok, "g_i = gamma^i mod p");
    bool p_tab_ok = tables->P.size() + 1 == sys.n;
    Wideint rho_pow = 1;
    for (std::size_t i = 0; p_tab_ok && i < tables->P.size(); ++i) {
      rho_pow = field.reduce(rho_pow * rho);
      const auto& pi = tables->P[i];
      p_tab_ok = pi.size() == sys.n && poly::norm_inf(pi) < rho &&
                 poly::eval_mod(pi, sys.gamma, sys.p) == rho_pow;
    }
    add("table_P", p_tab_ok, "P_i(gamma) = rho^i mod p, |P_i| < rho");
  }
  return rep;
}

}  // namespace amns::gen
