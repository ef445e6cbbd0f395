#pragma once

// AMNS parameter generation: lambda enumeration, gamma, M, M', rho and the
// feasibility checks on phi, plus the tables used by the conversions.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amns/lattice.hpp"
#include "amns/system.hpp"
#include "amns/zp.hpp"

namespace amns::gen {

struct EnumConfig {
  unsigned k = 64;
  unsigned c = 2;
};

/// Omega = k + log2 k - log2 log2 p - k log2 p / (log2 p + k c + k).
double omega(const EnumConfig& cfg, const Wideint& p);

/// Admissible n: log2(p)/k < n <= log2(p)/k + 1 + c.
bool degree_in_range(const EnumConfig& cfg, const Wideint& p, std::uint32_t n);

enum class LambdaShape { two_term, extended };

struct LambdaCandidate {
  std::int64_t value = 0;
  LambdaShape shape = LambdaShape::two_term;
};

struct LambdaEnumeration {
  double omega = 0;
  unsigned width = 0;                // floor(Omega)
  std::uint64_t nominal_count = 0;   // 4 * C(width, 2)
  std::vector<LambdaCandidate> values;
};

/// {±2^i ± 2^j : i != j < floor(Omega)} plus the singletons ±2^i (flagged
/// extended when not already two-term), sorted by |lambda| then sign (+ first).
LambdaEnumeration enumerate_lambda(const EnumConfig& cfg, const Wideint& p);

const char* to_string(LambdaShape shape) noexcept;

struct GenOptions {
  std::uint64_t seed = 1;
  /// 0 = emit one system per valid M candidate.
  std::size_t max_systems = 0;
  /// Used when neither closed-form route applies.
  zp::RootProvider root_provider = zp::builtin_root_provider();
};

struct GeneratedSystem {
  AmnsSystem system;
  PrecompTables tables;
  std::uint64_t candidate_origin = 0;  // lattice row or binary combination
};

/// Throws Error{gamma_unavailable} or Error{infeasible_bounds} when nothing
/// can be emitted; the message names the failing condition.
std::vector<GeneratedSystem> generate(const Wideint& p, std::uint32_t n, std::int64_t lambda,
                                      unsigned k, unsigned delta, const GenOptions& options = {});

/// Smallest rho exponent with rho >= 2|lambda| n sigma, rho >= ceil(p^(1/n))/2 + 1
/// and rho^n > p.
unsigned choose_rho_exp(const Wideint& p, std::uint32_t n, std::int64_t lambda, const Wideint& sigma);

/// Empty string when the phi/overflow bounds hold, otherwise the failed inequality.
std::string check_bounds(const AmnsSystem& sys);

PrecompTables precompute_tables(const AmnsSystem& sys);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<Check> checks;

  bool all_passed() const;
  const Check* find(const std::string& name) const;
};

VerifyReport verify_system(const AmnsSystem& sys, const PrecompTables* tables = nullptr);

}  // namespace amns::gen
