#pragma once

// Number theory over Z/pZ: exponentiation, Bezout, unit sampling and the
// nth-root computations used to find gamma with gamma^n = lambda (mod p).
//
// Roots are produced by three routes:
//  - gcd(n, p-1) = 1: the unique root lambda^u, u = n^-1 mod (p-1).
//  - lambda = 1, gcd(n, p-1) = d > 1: x^((p-1)/d) for a random unit x.
//  - anything else: a RootProvider. The bundled provider extracts prime-degree
//    roots one factor of n at a time (generalised Tonelli-Shanks).
//
// A full root count through a generator g and the discrete log y of lambda
// (g^y = lambda) is not offered: it needs the factorisation of p-1 and a dlog.

#include <cstdint>
#include <functional>
#include <optional>

#include "amns/wideint.hpp"

namespace amns::zp {

class PrimeField {
 public:
  /// Throws Error{precondition} unless p is an odd probable prime > 3.
  explicit PrimeField(Wideint p);

  const Wideint& p() const noexcept { return p_; }
  Wideint reduce(const Wideint& v) const { return mod_floor(v, p_); }

 private:
  Wideint p_;
};

/// Probabilistic primality, error below 2^-80.
bool is_probable_prime(const Wideint& v);

struct RootRequest {
  std::uint32_t n = 0;
  Wideint lambda;
};

struct Bezout {
  Wideint g, u, v;
};

Wideint mod_pow(const Wideint& base, const Wideint& exp, const PrimeField& field);

/// a*u + b*v = g = gcd(a, b) > 0, with the minimal coefficients of the
/// extended Euclidean algorithm. Throws when a = b = 0.
Bezout bezout(const Wideint& a, const Wideint& b);

Wideint mod_inverse(const Wideint& a, const PrimeField& field);

/// Uniform unit in [1, p) drawn from a seeded generator.
Wideint sample_unit(const PrimeField& field, std::uint64_t seed);

/// Unique root when gcd(n, p-1) = 1. Negative lambda is taken mod p.
Wideint nth_root_gcd1(const RootRequest& req, const PrimeField& field);

/// Non-trivial n-th root of unity; requires gcd(n, p-1) > 1. At most 64 draws.
Wideint nth_root_unity(std::uint32_t n, const PrimeField& field, std::uint64_t seed);

/// Counts x with x^n = lambda by exhaustion; only for p < 2^24.
std::uint64_t count_roots(const RootRequest& req, const PrimeField& field);

using RootProvider =
    std::function<std::optional<Wideint>(const RootRequest&, const PrimeField&)>;

/// Some x with x^q = a for prime q, or nullopt when a is not a q-th power.
std::optional<Wideint> prime_root(const Wideint& a, std::uint32_t q, const PrimeField& field);

/// Any n-th root of lambda, or nullopt when none exists.
std::optional<Wideint> nth_root_any(const RootRequest& req, const PrimeField& field);

/// The bundled general-case provider (nth_root_any).
RootProvider builtin_root_provider();

/// Wraps a caller-supplied gamma; the provider only answers when gamma^n = lambda.
RootProvider fixed_root_provider(Wideint gamma);

/// Resolves gamma for E = X^n - lambda. Route order: gcd(n, p-1) = 1, then
/// lambda = 1, then the provider. Returns nullopt if no route yields a root.
std::optional<Wideint> find_gamma(const RootRequest& req, const PrimeField& field,
                                  const RootProvider& provider, std::uint64_t seed);

}  // namespace amns::zp
