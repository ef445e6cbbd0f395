#include "amns/amns.hpp"

#include <utility>

#include "amns/error.hpp"
#include "amns/zp.hpp"

namespace amns {

std::uint64_t Element::norm_inf() const noexcept {
  std::uint64_t best = 0;
  for (std::uint32_t i = 0; i < n_; ++i) {
    const std::uint64_t mag = c_[i] < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(c_[i])
                                        : static_cast<std::uint64_t>(c_[i]);
    best = mag > best ? mag : best;
  }
  return best;
}

poly::IntPoly Element::to_poly() const {
  poly::IntPoly out(n_);
  for (std::uint32_t i = 0; i < n_; ++i) out[i] = from_i64(c_[i]);
  return out;
}

Element Element::from_poly(const poly::IntPoly& p, std::uint32_t n, std::uint32_t depth) {
  if (n > kMaxDegree) throw Error(Errc::unsupported, "degree exceeds the fixed-width element capacity");
  if (p.size() > n) throw Error(Errc::precondition, "polynomial has more than n coefficients");
  Element e(n);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!fits_i64(p[i])) throw Error(Errc::precondition, "coefficient does not fit in a word");
    e.c_[i] = to_i64(p[i]);
  }
  e.depth_ = depth;
  return e;
}

Arith::Arith(AmnsSystem sys, std::optional<PrecompTables> tables) : sys_(std::move(sys)) {
  const std::uint32_t n = sys_.n;
  if (n < 2 || n > kMaxDegree) throw Error(Errc::unsupported, "n must lie in [2, 32]");
  if (sys_.k == 0 || sys_.k > 64) throw Error(Errc::unsupported, "k must lie in [1, 64]");
  if (sys_.rho_exp == 0 || sys_.rho_exp > 62) throw Error(Errc::unsupported, "rho must lie in [2, 2^62]");
  if (sys_.M.size() != n || sys_.Mprime.size() != n)
    throw Error(Errc::precondition, "M and M' must have exactly n coefficients");

  const zp::PrimeField field(sys_.p);
  mask_ = sys_.k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << sys_.k) - 1;
  rho_ = std::uint64_t{1} << sys_.rho_exp;

  const Int128 lambda = sys_.lambda;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (sys_.M[i] != 0) {
      if (!fits_i64(sys_.M[i])) throw Error(Errc::unsupported, "M coefficient exceeds a word");
      const std::int64_t v = to_i64(sys_.M[i]);
      const Int128 lv = lambda * v;
      if (lv > INT64_MAX || lv < INT64_MIN) throw Error(Errc::unsupported, "lambda * M exceeds a word");
      m_terms_.push_back({i, v, static_cast<std::int64_t>(lv)});
    }
    if (sys_.Mprime[i] < 0 || sys_.Mprime[i] >= sys_.phi())
      throw Error(Errc::precondition, "M' coefficients must lie in [0, phi)");
    if (sys_.Mprime[i] != 0) {
      const std::uint64_t v = low_u64(sys_.Mprime[i]);
      mprime_terms_.push_back({i, v, v * static_cast<std::uint64_t>(sys_.lambda)});
    }
  }

  T_ = zp::mod_pow(sys_.phi(), Wideint(n), field);
  phi2_mod_p_ = zp::mod_pow(sys_.phi(), Wideint(2), field);
  g_.resize(n);
  g_[0] = 1;
  for (std::uint32_t i = 1; i < n; ++i) g_[i] = field.reduce(g_[i - 1] * sys_.gamma);

  if (tables && !tables->P.empty()) {
    if (tables->P.size() != n - 1) throw Error(Errc::precondition, "expected n-1 rho-power representatives");
    for (const auto& p : tables->P) P_.push_back(Element::from_poly(p, n));
  }
}

detail::ReductionParams Arith::reduction_params() const noexcept {
  return {sys_.n, sys_.k, mask_, mprime_terms_, m_terms_};
}

Element Arith::red_coeff(const WideVector& v) const {
  Element out(sys_.n);
  detail::NullTrace trace;
  const std::uint64_t low = detail::red_coeff(v.c.data(), out.data(), reduction_params(), trace);
  if (low != 0) throw Error(Errc::invariant_failure, "RedCoeff remainder not divisible by phi (corrupted M')");
  return out;
}

poly::IntPoly Arith::red_coeff_wide(const poly::IntPoly& v) const {
  const auto e = sys_.e();
  const poly::IntPoly vv = poly::resized(v, sys_.n);
  const poly::IntPoly q = poly::mul_mod_e_pow2(vv, sys_.Mprime, e, sys_.k);
  poly::IntPoly r = poly::mul_mod_e(q, sys_.M, e);
  for (std::uint32_t i = 0; i < sys_.n; ++i) {
    r[i] += vv[i];
    if (mod_pow2(r[i], sys_.k) != 0)
      throw Error(Errc::invariant_failure, "RedCoeff remainder not divisible by phi (corrupted M')");
    mpz_fdiv_q_2exp(r[i].get_mpz_t(), r[i].get_mpz_t(), sys_.k);
  }
  return r;
}

WideVector Arith::mul_unreduced(const Element& a, const Element& b) const {
  WideVector v;
  v.n = sys_.n;
  detail::NullTrace trace;
  detail::mul_mod_e(a.data(), b.data(), v.c.data(), sys_.n, sys_.lambda, trace);
  return v;
}

Element Arith::mul(const Element& a, const Element& b) const {
  if (a.depth() > sys_.delta || b.depth() > sys_.delta)
    throw Error(Errc::contract, "operand addition depth exceeds delta");
  return red_coeff(mul_unreduced(a, b));
}

Element Arith::add(const Element& a, const Element& b) const {
  const std::uint32_t depth = a.depth() + b.depth() + 1;
  if (depth > sys_.delta)
    throw Error(Errc::contract,
                "addition budget delta exceeded; multiply by one() first to reduce the operand");
  Element out(sys_.n);
  detail::NullTrace trace;
  detail::add(a.data(), b.data(), out.data(), sys_.n, trace);
  out.set_depth(depth);
  return out;
}

Element Arith::one() const { return to_amns_m2(Wideint(1)); }

void Arith::check_residue(const Wideint& a) const {
  if (a < 0 || a >= sys_.p) throw Error(Errc::precondition, "value must lie in [0, p)");
}

Element Arith::to_amns_m1(const Wideint& a) const {
  check_residue(a);
  if (P_.empty()) throw Error(Errc::precondition, "conversion method 1 needs the rho-power tables");
  const std::uint32_t n = sys_.n;
  Wideint b = mod_floor(a * phi2_mod_p_, sys_.p);
  WideVector u;
  u.n = n;
  for (std::uint32_t i = 0; i < n; ++i) {
    const Wideint digit_w = mod_pow2(b, sys_.rho_exp);
    mpz_fdiv_q_2exp(b.get_mpz_t(), b.get_mpz_t(), sys_.rho_exp);
    const std::int64_t digit = to_i64(digit_w);
    if (i == 0) {
      u.c[0] += digit;  // P_0 is the constant 1
      continue;
    }
    const Element& pi = P_[i - 1];
    for (std::uint32_t c = 0; c < n; ++c) u.c[c] += static_cast<Int128>(digit) * pi[c];
  }
  if (b != 0) throw Error(Errc::invariant_failure, "rho^n <= p: radix-rho digits overflow");
  return red_coeff(u);
}

Element Arith::to_amns_m2(const Wideint& a) const {
  check_residue(a);
  poly::IntPoly acc(sys_.n, Wideint(0));
  acc[0] = mod_floor(a * T_, sys_.p);
  for (std::uint32_t i = 1; i < sys_.n; ++i) acc = red_coeff_wide(acc);
  const Wideint rho = sys_.rho();
  for (const auto& c : acc)
    if (abs(c) >= rho) throw Error(Errc::invariant_failure, "conversion method 2 left a coefficient >= rho");
  return Element::from_poly(acc, sys_.n);
}

Element Arith::widen_and_reduce(const Element& a) const {
  WideVector v;
  v.n = sys_.n;
  for (std::uint32_t i = 0; i < sys_.n; ++i) v.c[i] = a[i];
  return red_coeff(v);
}

Wideint Arith::evaluate(const Element& a) const { return poly::eval_mod(a.to_poly(), sys_.gamma, sys_.p); }

Wideint Arith::from_amns_horner(const Element& a) const {
  const Element b = widen_and_reduce(a);
  Wideint acc = 0;
  for (std::uint32_t i = sys_.n; i-- > 0;) acc = mod_floor(acc * sys_.gamma + from_i64(b[i]), sys_.p);
  return acc;
}

Wideint Arith::from_amns_powers(const Element& a) const {
  const Element b = widen_and_reduce(a);
  Wideint acc = 0;
  for (std::uint32_t i = sys_.n; i-- > 0;) acc += from_i64(b[i]) * g_[i];
  return mod_floor(acc, sys_.p);
}

Element Arith::dpa_to_amns(const Wideint& a, const Wideint& beta) const {
  check_residue(a);
  const Wideint mask = mod_floor(beta, sys_.p);
  if (mask == 0) throw Error(Errc::precondition, "beta must be a unit mod p");
  return to_amns_m1(mod_floor(a * mask, sys_.p));
}

Wideint Arith::dpa_from_amns(const Element& a, const Wideint& beta) const {
  const Wideint mask = mod_floor(beta, sys_.p);
  if (mask == 0) throw Error(Errc::precondition, "beta must be a unit mod p");
  return mod_floor(from_amns_horner(a) * mask, sys_.p);
}

}  // namespace amns
