#pragma once

// Polynomials over Z, Z/2^kZ and F2, specialised to the external reduction
// polynomial E(X) = X^n - lambda.

#include <cstdint>
#include <vector>

#include "amns/wideint.hpp"

namespace amns::poly {

/// Coefficient i is the coefficient of X^i. Trailing zeros are allowed.
using IntPoly = std::vector<Wideint>;

/// E(X) = X^n - lambda.
struct ExtReductionPoly {
  std::uint32_t n = 0;
  Wideint lambda;
};

/// Polynomial over F2, bit i = coefficient of X^i. Degree < 64.
class F2Poly {
 public:
  F2Poly() = default;
  explicit F2Poly(std::uint64_t bits) : bits_(bits) {}

  std::uint64_t bits() const noexcept { return bits_; }
  bool is_zero() const noexcept { return bits_ == 0; }
  /// -1 for the zero polynomial.
  int degree() const noexcept;

  friend bool operator==(F2Poly, F2Poly) = default;

  /// Reduction mod 2 of the first n coefficients of an integer polynomial.
  static F2Poly from_int(const IntPoly& p);

 private:
  std::uint64_t bits_ = 0;
};

F2Poly f2_mul(F2Poly a, F2Poly b);
/// Quotient and remainder; b must be nonzero.
std::pair<F2Poly, F2Poly> f2_divmod(F2Poly a, F2Poly b);
/// Over F2 every nonzero polynomial is already monic. Throws if both are zero.
F2Poly f2_gcd(F2Poly a, F2Poly b);

/// Pads/truncates to exactly n coefficients (no reduction performed).
IntPoly resized(IntPoly p, std::size_t n);

Wideint norm_inf(const IntPoly& p);

/// Horner evaluation at x, reduced mod m into [0, m).
Wideint eval_mod(const IntPoly& p, const Wideint& x, const Wideint& m);

/// Folds a polynomial of degree <= 2n-2 into degree <= n-1 with X^n -> lambda.
IntPoly ext_reduce(const IntPoly& v, const ExtReductionPoly& e);

/// a * b mod E in exact arithmetic; inputs are degree <= n-1.
IntPoly mul_mod_e(const IntPoly& a, const IntPoly& b, const ExtReductionPoly& e);

/// mul_mod_e followed by coefficient reduction into [0, 2^k).
IntPoly mul_mod_e_pow2(const IntPoly& a, const IntPoly& b, const ExtReductionPoly& e, unsigned k);

/// Determinant of an integer matrix by fraction-free (Bareiss) elimination.
Wideint bareiss_det(std::vector<std::vector<Wideint>> m);

/// Res(E, M) as the determinant of the Sylvester matrix. m must be nonzero.
Wideint resultant_with_e(const IntPoly& m, const ExtReductionPoly& e);

/// Whether M^-1 mod (E, 2^k) exists for any k >= 1 (parity criteria).
bool invertible_mod_e_phi(const IntPoly& m, const ExtReductionPoly& e);

/// M' = -M^-1 mod (E, 2^k) with coefficients in [0, 2^k).
IntPoly hensel_inverse_neg(const IntPoly& m, const ExtReductionPoly& e, unsigned k);

}  // namespace amns::poly
