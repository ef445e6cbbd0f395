#pragma once

// Arbitrary-precision helpers on top of GMP's mpz_class.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace amns {

using Wideint = mpz_class;
using Int128 = __int128;
using UInt128 = unsigned __int128;

/// Parses "0x1f", "-0x1F" or a plain decimal string. Throws Error{parse}.
Wideint parse_int(std::string_view text);

/// Lowercase, 0x-prefixed hex with a leading '-' for negatives. Zero is "0x0".
std::string to_hex(const Wideint& v);

/// Floor-mod: result in [0, m).
inline Wideint mod_floor(const Wideint& a, const Wideint& m) {
  Wideint r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Wideint from_i64(std::int64_t v) { return Wideint(static_cast<long>(v)); }
inline Wideint from_u64(std::uint64_t v) { return Wideint(static_cast<unsigned long>(v)); }
Wideint from_i128(Int128 v);

bool fits_i64(const Wideint& v);
/// Requires fits_i64(v).
std::int64_t to_i64(const Wideint& v);
/// Low 64 bits of the two's-complement image of v.
std::uint64_t low_u64(const Wideint& v);

/// Low k bits of v as a non-negative integer (v mod 2^k).
inline Wideint mod_pow2(const Wideint& v, unsigned k) {
  Wideint r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), v.get_mpz_t(), k);
  return r;
}

inline Wideint pow2(unsigned e) {
  Wideint r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

inline std::size_t bit_length(const Wideint& v) {
  return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

}  // namespace amns
