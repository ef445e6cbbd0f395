#include "amns/poly.hpp"

#include <algorithm>
#include <bit>
#include <utility>

#include "amns/error.hpp"

namespace amns::poly {

int F2Poly::degree() const noexcept {
  return bits_ == 0 ? -1 : 63 - std::countl_zero(bits_);
}

F2Poly F2Poly::from_int(const IntPoly& p) {
  if (p.size() > 64) throw Error(Errc::unsupported, "F2 polynomials are limited to degree 63");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (mpz_odd_p(p[i].get_mpz_t())) bits |= std::uint64_t{1} << i;
  }
  return F2Poly(bits);
}

F2Poly f2_mul(F2Poly a, F2Poly b) {
  if (a.degree() + b.degree() >= 64) throw Error(Errc::unsupported, "F2 product exceeds degree 63");
  std::uint64_t out = 0;
  std::uint64_t x = a.bits();
  for (int i = 0; i <= b.degree(); ++i) {
    if ((b.bits() >> i) & 1) out ^= x << i;
  }
  return F2Poly(out);
}

std::pair<F2Poly, F2Poly> f2_divmod(F2Poly a, F2Poly b) {
  if (b.is_zero()) throw Error(Errc::precondition, "F2 division by zero");
  std::uint64_t q = 0, r = a.bits();
  const int db = b.degree();
  for (int dr = F2Poly(r).degree(); dr >= db; dr = F2Poly(r).degree()) {
    q |= std::uint64_t{1} << (dr - db);
    r ^= b.bits() << (dr - db);
  }
  return {F2Poly(q), F2Poly(r)};
}

F2Poly f2_gcd(F2Poly a, F2Poly b) {
  if (a.is_zero() && b.is_zero()) throw Error(Errc::precondition, "gcd(0, 0) is undefined");
  while (!b.is_zero()) {
    F2Poly r = f2_divmod(a, b).second;
    a = b;
    b = r;
  }
  return a;
}

namespace {

// Inverse of a modulo m over F2, or zero polynomial if none exists.
F2Poly f2_inverse_mod(F2Poly a, F2Poly m) {
  F2Poly old_r = m, r = f2_divmod(a, m).second;
  F2Poly old_s(0), s(1);
  while (!r.is_zero()) {
    auto [q, rem] = f2_divmod(old_r, r);
    old_r = r;
    r = rem;
    F2Poly next(old_s.bits() ^ f2_mul(q, s).bits());
    old_s = s;
    s = next;
  }
  if (old_r.bits() != 1) return F2Poly(0);
  return f2_divmod(old_s, m).second;
}

}  // namespace

IntPoly resized(IntPoly p, std::size_t n) {
  p.resize(n, Wideint(0));
  return p;
}

Wideint norm_inf(const IntPoly& p) {
  Wideint best = 0;
  for (const auto& c : p) {
    Wideint a = abs(c);
    if (a > best) best = a;
  }
  return best;
}

Wideint eval_mod(const IntPoly& p, const Wideint& x, const Wideint& m) {
  Wideint acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = mod_floor(acc * x + *it, m);
  return acc;
}

IntPoly ext_reduce(const IntPoly& v, const ExtReductionPoly& e) {
  const std::size_t n = e.n;
  if (v.size() > 2 * n - 1) throw Error(Errc::precondition, "ext_reduce expects degree <= 2n-2");
  IntPoly out = resized(v, 2 * n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) out[i] += e.lambda * out[i + n];
  out.resize(n);
  return out;
}

IntPoly mul_mod_e(const IntPoly& a, const IntPoly& b, const ExtReductionPoly& e) {
  const std::size_t n = e.n;
  if (a.size() > n || b.size() > n) throw Error(Errc::precondition, "operands must have degree < n");
  IntPoly wide(2 * n - 1, Wideint(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) wide[i + j] += a[i] * b[j];
  return ext_reduce(wide, e);
}

IntPoly mul_mod_e_pow2(const IntPoly& a, const IntPoly& b, const ExtReductionPoly& e, unsigned k) {
  IntPoly r = mul_mod_e(a, b, e);
  for (auto& c : r) c = mod_pow2(c, k);
  return r;
}

Wideint bareiss_det(std::vector<std::vector<Wideint>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Wideint sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

Wideint resultant_with_e(const IntPoly& m, const ExtReductionPoly& e) {
  IntPoly mp = m;
  while (!mp.empty() && mp.back() == 0) mp.pop_back();
  if (mp.empty()) throw Error(Errc::precondition, "resultant with the zero polynomial");
  const std::size_t n = e.n;
  const std::size_t deg_m = mp.size() - 1;
  const std::size_t size = n + deg_m;

  // Coefficients from highest degree down, as in the usual Sylvester layout.
  IntPoly e_desc(n + 1, Wideint(0));
  e_desc[0] = 1;
  e_desc[n] = -e.lambda;
  IntPoly m_desc(mp.rbegin(), mp.rend());

  std::vector<std::vector<Wideint>> syl(size, std::vector<Wideint>(size, Wideint(0)));
  for (std::size_t r = 0; r < deg_m; ++r)
    for (std::size_t j = 0; j <= n; ++j) syl[r][r + j] = e_desc[j];
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j <= deg_m; ++j) syl[deg_m + r][r + j] = m_desc[j];
  return bareiss_det(std::move(syl));
}

bool invertible_mod_e_phi(const IntPoly& m, const ExtReductionPoly& e) {
  const IntPoly mm = resized(m, e.n);
  if (mpz_even_p(e.lambda.get_mpz_t())) return mpz_odd_p(mm[0].get_mpz_t()) != 0;
  const F2Poly mbar = F2Poly::from_int(mm);
  if (mbar.is_zero()) return false;
  const F2Poly xn_plus_1((std::uint64_t{1} << e.n) | 1);
  return f2_gcd(mbar, xn_plus_1).bits() == 1;
}

IntPoly hensel_inverse_neg(const IntPoly& m, const ExtReductionPoly& e, unsigned k) {
  if (k == 0) throw Error(Errc::precondition, "k must be positive");
  if (e.n >= 64) throw Error(Errc::unsupported, "degree too large for F2 inversion");
  const std::size_t n = e.n;
  const IntPoly mm = resized(m, n);

  // Inverse modulo (E, 2): E mod 2 is X^n (lambda even) or X^n + 1 (lambda odd).
  const bool lambda_odd = mpz_odd_p(e.lambda.get_mpz_t()) != 0;
  const F2Poly ebar((std::uint64_t{1} << n) | (lambda_odd ? 1u : 0u));
  const F2Poly winv = f2_inverse_mod(F2Poly::from_int(mm), ebar);
  if (winv.is_zero()) throw Error(Errc::precondition, "M is not invertible modulo (E, 2^k)");

  IntPoly w(n, Wideint(0));
  for (std::size_t i = 0; i < n; ++i) w[i] = (winv.bits() >> i) & 1;

  // Newton step W <- W (2 - M W), doubling the 2-adic precision each time.
  unsigned precision = 1;
  IntPoly two(n, Wideint(0));
  two[0] = 2;
  while (precision < k) {
    precision = std::min(2 * precision, k);
    IntPoly mw = mul_mod_e_pow2(mm, w, e, precision);
    for (std::size_t i = 0; i < n; ++i) mw[i] = two[i] - mw[i];
    w = mul_mod_e_pow2(w, mw, e, precision);
  }
  for (auto& c : w) c = mod_pow2(-c, k);
  return w;
}

}  // namespace amns::poly
