#include "amns/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>

#include "amns/error.hpp"
#include "amns/zp.hpp"

namespace amns::oracle {

Wideint ref_modmul(const Wideint& a, const Wideint& b, const Wideint& p) { return mod_floor(a * b, p); }

MnsTable exhaustive_mns_table(std::uint32_t p, std::uint32_t n, std::uint32_t gamma, std::uint32_t rho) {
  if (p >= (1u << 12) || p < 2) throw Error(Errc::unsupported, "exhaustive table needs 2 <= p < 2^12");
  if (rho == 0 || n == 0) throw Error(Errc::precondition, "rho and n must be positive");
  const std::uint64_t width = 2ull * rho - 1;
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    total *= width;
    if (total > (1ull << 24)) throw Error(Errc::unsupported, "search space too large");
  }
  std::vector<std::uint64_t> gpow(n, 1);
  for (std::uint32_t i = 1; i < n; ++i) gpow[i] = gpow[i - 1] * gamma % p;

  MnsTable table;
  std::vector<int> coeffs(n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    std::int64_t value = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      coeffs[i] = static_cast<int>(rest % width) - static_cast<int>(rho - 1);
      rest /= width;
      value += coeffs[i] * static_cast<std::int64_t>(gpow[i]);
    }
    const auto residue = static_cast<std::uint32_t>(((value % p) + p) % p);
    table.reps[residue].push_back(coeffs);
  }
  for (std::uint32_t r = 0; r < p; ++r)
    if (!table.reps.contains(r)) table.uncovered.push_back(r);
  return table;
}

MontgomeryBaseline::MontgomeryBaseline(const Wideint& p) : modulus_(p) {
  s_ = (bit_length(p) + 63) / 64;
  if (s_ > kMaxLimbs) throw Error(Errc::unsupported, "modulus too large for the Montgomery baseline");
  if (mpz_even_p(p.get_mpz_t())) throw Error(Errc::precondition, "Montgomery needs an odd modulus");
  Wideint rest = p;
  for (std::size_t i = 0; i < s_; ++i) {
    p_[i] = low_u64(rest);
    rest >>= 64;
  }
  // Newton iteration for p0^-1 mod 2^64.
  std::uint64_t inv = 1;
  for (int i = 0; i < 7; ++i) inv *= 2 - p_[0] * inv;
  p_inv_neg_ = std::uint64_t{0} - inv;
  r_mod_p_ = mod_floor(pow2(static_cast<unsigned>(64 * s_)), p);
}

MontgomeryBaseline::Limbs MontgomeryBaseline::to_mont(const Wideint& a) const {
  Wideint v = mod_floor(a * r_mod_p_, modulus_);
  Limbs out{};
  for (std::size_t i = 0; i < s_; ++i) {
    out[i] = low_u64(v);
    v >>= 64;
  }
  return out;
}

Wideint MontgomeryBaseline::from_mont(const Limbs& a) const {
  Wideint v = 0;
  for (std::size_t i = s_; i-- > 0;) {
    v <<= 64;
    v += from_u64(a[i]);
  }
  const Wideint r_inv = zp::mod_inverse(r_mod_p_, zp::PrimeField(modulus_));
  return mod_floor(v * r_inv, modulus_);
}

void MontgomeryBaseline::mul(const Limbs& a, const Limbs& b, Limbs& out) const {
  std::array<std::uint64_t, kMaxLimbs + 2> t{};
  const std::size_t s = s_;
  for (std::size_t i = 0; i < s; ++i) {
    UInt128 carry = 0;
    for (std::size_t j = 0; j < s; ++j) {
      const UInt128 acc = static_cast<UInt128>(a[j]) * b[i] + t[j] + carry;
      t[j] = static_cast<std::uint64_t>(acc);
      carry = acc >> 64;
    }
    UInt128 acc = static_cast<UInt128>(t[s]) + carry;
    t[s] = static_cast<std::uint64_t>(acc);
    t[s + 1] = static_cast<std::uint64_t>(acc >> 64);

    const std::uint64_t m = t[0] * p_inv_neg_;
    acc = static_cast<UInt128>(m) * p_[0] + t[0];
    carry = acc >> 64;
    for (std::size_t j = 1; j < s; ++j) {
      acc = static_cast<UInt128>(m) * p_[j] + t[j] + carry;
      t[j - 1] = static_cast<std::uint64_t>(acc);
      carry = acc >> 64;
    }
    acc = static_cast<UInt128>(t[s]) + carry;
    t[s - 1] = static_cast<std::uint64_t>(acc);
    t[s] = t[s + 1] + static_cast<std::uint64_t>(acc >> 64);
  }
  // Final conditional subtraction, done unconditionally and selected by mask.
  std::array<std::uint64_t, kMaxLimbs> diff{};
  std::uint64_t borrow = 0;
  for (std::size_t j = 0; j < s; ++j) {
    const UInt128 d = static_cast<UInt128>(t[j]) - p_[j] - borrow;
    diff[j] = static_cast<std::uint64_t>(d);
    borrow = static_cast<std::uint64_t>(d >> 64) & 1;
  }
  const std::uint64_t keep_t = std::uint64_t{0} - ((borrow > t[s]) ? 1u : 0u);
  for (std::size_t j = 0; j < s; ++j) out[j] = (t[j] & keep_t) | (diff[j] & ~keep_t);
  for (std::size_t j = s; j < kMaxLimbs; ++j) out[j] = 0;
}

const char* to_string(Baseline b) noexcept {
  switch (b) {
    case Baseline::naive: return "naive";
    case Baseline::montgomery: return "montgomery";
    case Baseline::self: return "self";
  }
  return "?";
}

Baseline parse_baseline(const std::string& name) {
  if (name == "naive") return Baseline::naive;
  if (name == "montgomery") return Baseline::montgomery;
  if (name == "self") return Baseline::self;
  throw Error(Errc::parse, "unknown baseline '" + name + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

template <class Fn>
double time_batch(Fn&& fn) {
  const auto start = Clock::now();
  fn();
  const auto stop = Clock::now();
  return std::chrono::duration<double, std::nano>(stop - start).count() / kBenchBatch;
}

}  // namespace

BenchReport bench_ratio(const Arith& arith, std::uint64_t trials, Baseline baseline,
                        const std::string& system_id, std::uint64_t seed) {
  if (trials == 0) throw Error(Errc::precondition, "trials must be at least 1");
  const Wideint& p = arith.system().p;
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(static_cast<unsigned long>(seed));
  const Wideint a_val = rng.get_z_range(p), b_val = rng.get_z_range(p);

  Element acc = arith.to_amns_m2(a_val);
  const Element factor = arith.to_amns_m2(b_val);
  Element acc_self = acc;
  const MontgomeryBaseline mont(p);
  MontgomeryBaseline::Limbs macc = mont.to_mont(a_val), mfac = mont.to_mont(b_val), mtmp{};
  Wideint nacc = a_val;
  const Wideint nfac = b_val;

  BenchReport rep;
  rep.system_id = system_id;
  rep.trials = trials;
  rep.samples.reserve(trials);
  std::vector<double> base_samples;
  base_samples.reserve(trials);
  volatile std::int64_t sink = 0;

  for (std::uint64_t t = 0; t < trials; ++t) {
    rep.samples.push_back(time_batch([&] {
      for (std::uint32_t i = 0; i < kBenchBatch; ++i) acc = arith.mul(acc, factor);
    }));
    switch (baseline) {
      case Baseline::self:
        base_samples.push_back(time_batch([&] {
          for (std::uint32_t i = 0; i < kBenchBatch; ++i) acc_self = arith.mul(acc_self, factor);
        }));
        break;
      case Baseline::montgomery:
        base_samples.push_back(time_batch([&] {
          for (std::uint32_t i = 0; i < kBenchBatch; ++i) {
            mont.mul(macc, mfac, mtmp);
            macc = mtmp;
          }
        }));
        break;
      case Baseline::naive:
        base_samples.push_back(time_batch([&] {
          for (std::uint32_t i = 0; i < kBenchBatch; ++i) {
            nacc *= nfac;
            mpz_mod(nacc.get_mpz_t(), nacc.get_mpz_t(), p.get_mpz_t());
          }
        }));
        break;
    }
  }
  sink = acc[0] ^ acc_self[0] ^ static_cast<std::int64_t>(macc[0]);
  (void)sink;

  rep.median_ns = median(rep.samples);
  rep.baseline_ns = median(base_samples);
  rep.ratio = rep.baseline_ns > 0 ? rep.median_ns / rep.baseline_ns : 0;
  return rep;
}

std::string format_bench_header() { return "system_id\top\ttrials\tmedian_ns\tbaseline_ns\tratio\n"; }

std::string format_bench_row(const BenchReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s\t%s\t%llu\t%.2f\t%.2f\t%.4f\n", r.system_id.c_str(), r.op.c_str(),
                static_cast<unsigned long long>(r.trials), r.median_ns, r.baseline_ns, r.ratio);
  return buf;
}

}  // namespace amns::oracle
