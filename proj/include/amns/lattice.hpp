#pragma once

// The lattice L = { a in Z[X] : deg a < n, a(gamma) = 0 mod p }, its two
// starting bases, exact LLL reduction and the choice of the internal
// reduction polynomial M.

#include <cstdint>
#include <vector>

#include "amns/poly.hpp"
#include "amns/wideint.hpp"

namespace amns::lattice {

enum class ParityMode { even_lambda, odd_lambda };

struct LatticeBasis {
  std::vector<poly::IntPoly> rows;
  ParityMode parity_mode = ParityMode::even_lambda;

  std::size_t dim() const noexcept { return rows.size(); }
};

struct MCandidate {
  poly::IntPoly poly;
  Wideint norm_inf;
  /// Row index (even case) or the combination bitmask beta (odd case).
  std::uint64_t origin = 0;
};

/// Rows (p, 0, ..., 0) and (t_i, e_i) with t_i = -gamma^i mod p.
LatticeBasis build_basis_even(const Wideint& p, const Wideint& gamma, std::uint32_t n);

/// As build_basis_even, with t_i replaced by s_i = t_i + p (t_i mod 2), all even.
LatticeBasis build_basis_odd(const Wideint& p, const Wideint& gamma, std::uint32_t n);

/// Integral LLL with delta = 3/4. Deterministic; the result spans the same lattice.
LatticeBasis lll_reduce(LatticeBasis basis);

/// Exact check of size reduction (|mu| <= 1/2) and the Lovasz condition.
bool is_lll_reduced(const LatticeBasis& basis);

/// Determinant of the row matrix (fraction-free).
Wideint basis_determinant(const LatticeBasis& basis);

/// Rows with an odd constant term, ordered by (norm, row index).
std::vector<MCandidate> candidates_even(const LatticeBasis& reduced);

/// Binary combinations beta != 0 whose image mod 2 is coprime to X^n + 1,
/// ordered by (norm, beta). Throws Error{search_bound} for n > 24.
std::vector<MCandidate> candidates_odd(const LatticeBasis& reduced);

/// The minimal-norm candidate. A basis without any odd constant term raises
/// Error{invariant_failure}.
MCandidate select_m_even(const LatticeBasis& reduced);
MCandidate select_m_odd(const LatticeBasis& reduced);

inline constexpr std::uint32_t kMaxOddSearchDegree = 24;

}  // namespace amns::lattice
