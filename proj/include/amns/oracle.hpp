#pragma once

// Reference arithmetic used as ground truth, plus the timing harness that
// compares AMNS multiplication with conventional baselines.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "amns/amns.hpp"
#include "amns/wideint.hpp"

namespace amns::oracle {

/// a * b mod p by full multiplication and Euclidean division.
Wideint ref_modmul(const Wideint& a, const Wideint& b, const Wideint& p);

struct MnsTable {
  /// residue -> every polynomial (coefficients, index 0 first) with |v_i| < rho.
  std::map<std::uint32_t, std::vector<std::vector<int>>> reps;
  std::vector<std::uint32_t> uncovered;

  bool is_mns() const { return uncovered.empty(); }
};

/// Exhaustive table for tiny moduli (p < 2^12, (2 rho - 1)^n <= 2^24).
MnsTable exhaustive_mns_table(std::uint32_t p, std::uint32_t n, std::uint32_t gamma, std::uint32_t rho);

/// Word-level Montgomery multiplication (CIOS), R = 2^(64 s).
class MontgomeryBaseline {
 public:
  static constexpr std::size_t kMaxLimbs = 16;
  using Limbs = std::array<std::uint64_t, kMaxLimbs>;

  explicit MontgomeryBaseline(const Wideint& p);

  std::size_t limbs() const noexcept { return s_; }
  Limbs to_mont(const Wideint& a) const;
  Wideint from_mont(const Limbs& a) const;
  /// a b R^-1 mod p for inputs in [0, p).
  void mul(const Limbs& a, const Limbs& b, Limbs& out) const;

 private:
  Limbs p_{};
  std::uint64_t p_inv_neg_ = 0;  // -p^-1 mod 2^64
  std::size_t s_ = 0;
  Wideint modulus_;
  Wideint r_mod_p_;
};

enum class Baseline { naive, montgomery, self };

const char* to_string(Baseline b) noexcept;
Baseline parse_baseline(const std::string& name);

struct BenchReport {
  std::string system_id;
  std::string op = "mul";
  std::uint64_t trials = 0;
  double median_ns = 0;       // per AMNS multiplication
  double baseline_ns = 0;     // per baseline multiplication
  double ratio = 0;           // median_ns / baseline_ns
  std::vector<double> samples;  // per-trial AMNS ns/op
};

/// Each trial times a fixed batch of chained multiplications on both sides;
/// medians are reported. Single-threaded.
BenchReport bench_ratio(const Arith& arith, std::uint64_t trials, Baseline baseline,
                        const std::string& system_id = "system", std::uint64_t seed = 1);

inline constexpr std::uint32_t kBenchBatch = 16;

/// Tab-separated: system_id, op, trials, median_ns, baseline_ns, ratio.
std::string format_bench_header();
std::string format_bench_row(const BenchReport& r);

}  // namespace amns::oracle
