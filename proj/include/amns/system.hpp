#pragma once

// The complete parameter tuple of an AMNS and its precomputed tables.

#include <cstdint>
#include <vector>

#include "amns/poly.hpp"
#include "amns/wideint.hpp"

namespace amns {

struct AmnsSystem {
  Wideint p;
  std::uint32_t n = 0;
  Wideint gamma;
  std::int64_t lambda = 0;
  unsigned k = 64;        // phi = 2^k
  unsigned rho_exp = 0;   // rho = 2^rho_exp
  unsigned delta = 0;     // addition budget
  poly::IntPoly M;        // internal reduction polynomial, n coefficients
  poly::IntPoly Mprime;   // -M^-1 mod (E, phi), coefficients in [0, phi)

  poly::ExtReductionPoly e() const { return {n, Wideint(static_cast<long>(lambda))}; }
  Wideint phi() const { return pow2(k); }
  Wideint rho() const { return pow2(rho_exp); }
  Wideint sigma() const { return poly::norm_inf(M); }
};

struct PrecompTables {
  /// P[i-1] represents rho^i (P_i(gamma) = rho^i mod p), i = 1..n-1.
  std::vector<poly::IntPoly> P;
  /// phi^n mod p.
  Wideint T;
  /// g[i] = gamma^i mod p, i = 0..n-1.
  std::vector<Wideint> g;
};

}  // namespace amns
