#pragma once

// Fixed-width AMNS kernels. Loop bounds depend only on n and on the positions
// of the nonzero coefficients of M and M' (public parameters); no branch
// depends on element coefficients. The Trace parameter lets tests count the
// executed multiply-accumulate steps.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "amns/wideint.hpp"

namespace amns::detail {

inline constexpr std::size_t kMaxN = 32;

struct NullTrace {
  void tick() noexcept {}
};

struct CountingTrace {
  std::uint64_t steps = 0;
  void tick() noexcept { ++steps; }
};

/// Nonzero coefficient of M' (mod 2^64 arithmetic); lam_value = lambda * value mod 2^64.
struct LowTerm {
  std::uint32_t index;
  std::uint64_t value;
  std::uint64_t lam_value;
};

/// Nonzero coefficient of M; lam_value = lambda * value.
struct SignedTerm {
  std::uint32_t index;
  std::int64_t value;
  std::int64_t lam_value;
};

struct ReductionParams {
  std::uint32_t n;
  unsigned k;
  std::uint64_t mask;  // phi - 1
  std::span<const LowTerm> mprime;
  std::span<const SignedTerm> m;
};

/// S = (V + (V M' mod (E, phi)) M mod E) / phi. Returns the OR of the low k
/// bits of every R_i, which is zero whenever M M' = -1 mod (E, phi).
template <class Trace>
std::uint64_t red_coeff(const Int128* v, std::int64_t* out, const ReductionParams& prm, Trace& trace) {
  const std::uint32_t n = prm.n;
  std::array<std::uint64_t, kMaxN> q{};
  for (const LowTerm& t : prm.mprime) {
    const std::uint32_t d = t.index;
    for (std::uint32_t j = 0; j < n - d; ++j) {
      q[j + d] += static_cast<std::uint64_t>(v[j]) * t.value;
      trace.tick();
    }
    for (std::uint32_t j = n - d; j < n; ++j) {
      q[j + d - n] += static_cast<std::uint64_t>(v[j]) * t.lam_value;
      trace.tick();
    }
  }
  std::array<Int128, kMaxN> r{};
  for (std::uint32_t i = 0; i < n; ++i) {
    q[i] &= prm.mask;
    r[i] = v[i];
  }
  for (const SignedTerm& t : prm.m) {
    const std::uint32_t d = t.index;
    for (std::uint32_t j = 0; j < n - d; ++j) {
      r[j + d] += static_cast<Int128>(q[j]) * t.value;
      trace.tick();
    }
    for (std::uint32_t j = n - d; j < n; ++j) {
      r[j + d - n] += static_cast<Int128>(q[j]) * t.lam_value;
      trace.tick();
    }
  }
  std::uint64_t low = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    low |= static_cast<std::uint64_t>(r[i]) & prm.mask;
    out[i] = static_cast<std::int64_t>(r[i] >> prm.k);
  }
  return low;
}

/// V = A B mod (X^n - lambda), schoolbook.
template <class Trace>
void mul_mod_e(const std::int64_t* a, const std::int64_t* b, Int128* v, std::uint32_t n,
               std::int64_t lambda, Trace& trace) {
  std::array<Int128, 2 * kMaxN - 1> wide{};
  for (std::uint32_t i = 0; i < n; ++i) {
    const Int128 ai = a[i];
    for (std::uint32_t j = 0; j < n; ++j) {
      wide[i + j] += ai * b[j];
      trace.tick();
    }
  }
  for (std::uint32_t i = 0; i + 1 < n; ++i) v[i] = wide[i] + static_cast<Int128>(lambda) * wide[i + n];
  v[n - 1] = wide[n - 1];
}

template <class Trace>
void add(const std::int64_t* a, const std::int64_t* b, std::int64_t* out, std::uint32_t n, Trace& trace) {
  for (std::uint32_t i = 0; i < n; ++i) {
    out[i] = a[i] + b[i];
    trace.tick();
  }
}

}  // namespace amns::detail
