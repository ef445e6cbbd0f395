#pragma once

// Runtime AMNS arithmetic in the Montgomery-like domain: an element A stands
// for the residue A(gamma) * phi^-1 mod p.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "amns/detail/kernels.hpp"
#include "amns/system.hpp"

namespace amns {

inline constexpr std::size_t kMaxDegree = detail::kMaxN;

/// n signed words plus the number of unreduced additions behind them.
class Element {
 public:
  Element() = default;
  explicit Element(std::uint32_t n) : n_(n) {}

  std::uint32_t size() const noexcept { return n_; }
  std::uint32_t depth() const noexcept { return depth_; }
  void set_depth(std::uint32_t d) noexcept { depth_ = d; }

  std::int64_t& operator[](std::size_t i) noexcept { return c_[i]; }
  std::int64_t operator[](std::size_t i) const noexcept { return c_[i]; }
  std::int64_t* data() noexcept { return c_.data(); }
  const std::int64_t* data() const noexcept { return c_.data(); }
  std::span<const std::int64_t> coeffs() const noexcept { return {c_.data(), n_}; }

  /// max |coefficient|; uses the magnitude as an unsigned value.
  std::uint64_t norm_inf() const noexcept;
  poly::IntPoly to_poly() const;
  /// Throws if a coefficient does not fit in a signed 64-bit word.
  static Element from_poly(const poly::IntPoly& p, std::uint32_t n, std::uint32_t depth = 0);

  friend bool operator==(const Element& a, const Element& b) noexcept {
    if (a.n_ != b.n_) return false;
    for (std::uint32_t i = 0; i < a.n_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }

 private:
  std::array<std::int64_t, kMaxDegree> c_{};
  std::uint32_t n_ = 0;
  std::uint32_t depth_ = 0;
};

/// Pre-reduction accumulator (a product before RedCoeff).
struct WideVector {
  std::array<Int128, kMaxDegree> c{};
  std::uint32_t n = 0;
};

/// Read-only runtime context compiled from a system. Safe to share across
/// threads; every operation is const.
class Arith {
 public:
  /// Builds T and g itself. Tables, when given, supply the rho-power
  /// representatives P needed by conversion method 1.
  explicit Arith(AmnsSystem sys, std::optional<PrecompTables> tables = std::nullopt);

  const AmnsSystem& system() const noexcept { return sys_; }
  const Wideint& T() const noexcept { return T_; }
  const std::vector<Wideint>& gamma_powers() const noexcept { return g_; }
  bool has_rho_powers() const noexcept { return !P_.empty(); }
  std::uint64_t rho() const noexcept { return rho_; }

  /// Algorithm RedCoeff on fixed-width accumulators.
  Element red_coeff(const WideVector& v) const;
  /// RedCoeff in exact arithmetic, for inputs wider than 128 bits.
  poly::IntPoly red_coeff_wide(const poly::IntPoly& v) const;

  Element mul(const Element& a, const Element& b) const;
  /// V = A B mod E without the coefficient reduction.
  WideVector mul_unreduced(const Element& a, const Element& b) const;
  Element add(const Element& a, const Element& b) const;

  Element zero() const { return Element(sys_.n); }
  /// Representative of phi (the residue 1).
  Element one() const;

  Element to_amns_m1(const Wideint& a) const;
  Element to_amns_m2(const Wideint& a) const;
  Wideint from_amns_horner(const Element& a) const;
  Wideint from_amns_powers(const Element& a) const;

  Element dpa_to_amns(const Wideint& a, const Wideint& beta) const;
  Wideint dpa_from_amns(const Element& a, const Wideint& beta) const;

  /// A(gamma) mod p, no phi correction.
  Wideint evaluate(const Element& a) const;

  /// Kernel parameters, exposed for instruction-trace tests.
  detail::ReductionParams reduction_params() const noexcept;

 private:
  Element widen_and_reduce(const Element& a) const;
  void check_residue(const Wideint& a) const;

  AmnsSystem sys_;
  std::vector<Element> P_;  // P_1 .. P_{n-1}
  Wideint T_;
  Wideint phi2_mod_p_;
  std::vector<Wideint> g_;
  std::vector<detail::LowTerm> mprime_terms_;
  std::vector<detail::SignedTerm> m_terms_;
  std::uint64_t mask_ = 0;
  std::uint64_t rho_ = 0;
};

}  // namespace amns
