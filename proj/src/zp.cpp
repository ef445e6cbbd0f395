#include "amns/zp.hpp"

#include <numeric>
#include <random>
#include <vector>

#include "amns/error.hpp"

namespace amns::zp {

namespace {

std::vector<std::uint32_t> prime_factors_with_multiplicity(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t q = 2; q * q <= n; ++q) {
    while (n % q == 0) {
      out.push_back(q);
      n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

struct SylowData {
  std::uint32_t s = 0;  // p-1 = q^s * t
  Wideint t;
  Wideint generator;    // generates the q-Sylow subgroup (order q^s)
};

// Generator of the q-Sylow subgroup via a q-th power non-residue z: z^t.
SylowData sylow(std::uint32_t q, const PrimeField& field) {
  SylowData d;
  d.t = field.p() - 1;
  while (mpz_divisible_ui_p(d.t.get_mpz_t(), q) != 0) {
    d.t /= q;
    ++d.s;
  }
  const Wideint cofactor = (field.p() - 1) / q;
  for (unsigned long z = 2;; ++z) {
    if (Wideint(z) >= field.p()) throw Error(Errc::invariant_failure, "no q-th non-residue found");
    if (mod_pow(Wideint(z), cofactor, field) != 1) {
      d.generator = mod_pow(Wideint(z), d.t, field);
      return d;
    }
  }
}

}  // namespace

bool is_probable_prime(const Wideint& v) {
  // 40 Miller-Rabin rounds: error < 4^-40 = 2^-80.
  return mpz_probab_prime_p(v.get_mpz_t(), 40) > 0;
}

PrimeField::PrimeField(Wideint p) : p_(std::move(p)) {
  if (p_ <= 3) throw Error(Errc::precondition, "p must be larger than 3");
  if (mpz_even_p(p_.get_mpz_t())) throw Error(Errc::precondition, "p must be odd");
  if (!is_probable_prime(p_)) throw Error(Errc::precondition, "p is not prime");
}

Wideint mod_pow(const Wideint& base, const Wideint& exp, const PrimeField& field) {
  if (exp < 0) throw Error(Errc::precondition, "negative exponent");
  Wideint r;
  const Wideint b = field.reduce(base);
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), exp.get_mpz_t(), field.p().get_mpz_t());
  return r;
}

Bezout bezout(const Wideint& a, const Wideint& b) {
  if (a == 0 && b == 0) throw Error(Errc::precondition, "bezout(0, 0) is undefined");
  Wideint old_r = a, r = b;
  Wideint old_s = 1, s = 0;
  Wideint old_t = 0, t = 1;
  while (r != 0) {
    Wideint q;
    mpz_fdiv_q(q.get_mpz_t(), old_r.get_mpz_t(), r.get_mpz_t());
    Wideint tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

Wideint mod_inverse(const Wideint& a, const PrimeField& field) {
  const Wideint r = field.reduce(a);
  if (r == 0) throw Error(Errc::precondition, "zero has no inverse");
  return mod_floor(bezout(r, field.p()).u, field.p());
}

Wideint sample_unit(const PrimeField& field, std::uint64_t seed) {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(static_cast<unsigned long>(seed));
  return rng.get_z_range(field.p() - 1) + 1;
}

Wideint nth_root_gcd1(const RootRequest& req, const PrimeField& field) {
  if (req.n == 0) throw Error(Errc::precondition, "n must be positive");
  const Wideint order = field.p() - 1;
  const Bezout bz = bezout(Wideint(req.n), order);
  if (bz.g != 1) throw Error(Errc::precondition, "gcd(n, p-1) != 1");
  const Wideint u = mod_floor(bz.u, order);
  return mod_pow(field.reduce(req.lambda), u, field);
}

Wideint nth_root_unity(std::uint32_t n, const PrimeField& field, std::uint64_t seed) {
  const Wideint d = gcd(Wideint(n), field.p() - 1);
  if (d == 1) throw Error(Errc::precondition, "gcd(n, p-1) = 1 admits only the trivial root of unity");
  const Wideint exponent = (field.p() - 1) / d;
  std::mt19937_64 seeds(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Wideint x = sample_unit(field, seeds());
    Wideint h = mod_pow(x, exponent, field);
    if (h != 1) return h;
  }
  throw Error(Errc::gamma_unavailable, "no non-trivial root of unity after 64 draws");
}

std::uint64_t count_roots(const RootRequest& req, const PrimeField& field) {
  if (field.p() >= (Wideint(1) << 24))
    throw Error(Errc::unsupported, "exhaustive root count requires p < 2^24");
  const std::uint64_t p = mpz_get_ui(field.p().get_mpz_t());
  const std::uint64_t target = mpz_get_ui(field.reduce(req.lambda).get_mpz_t());
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t acc = 1;
    for (std::uint32_t i = 0; i < req.n; ++i) acc = acc * x % p;
    count += acc == target ? 1 : 0;
  }
  return count;
}

std::optional<Wideint> prime_root(const Wideint& a_in, std::uint32_t q, const PrimeField& field) {
  const Wideint a = field.reduce(a_in);
  if (a == 0) return Wideint(0);
  const Wideint order = field.p() - 1;
  if (mpz_divisible_ui_p(order.get_mpz_t(), q) == 0) {
    return nth_root_gcd1({q, a}, field);
  }
  if (mod_pow(a, order / q, field) != 1) return std::nullopt;

  // p-1 = q^s t. With r = q^-1 mod t and q r = 1 + m t, (a^r)^q = a (a^t)^m.
  // a^t = c^L in the Sylow subgroup generated by c, and q | L since a is a
  // q-th power; x = a^r c^(-L m / q) is then a root.
  const SylowData syl = sylow(q, field);
  Wideint r = 0, m = 0;
  if (syl.t > 1) {
    r = mod_floor(bezout(Wideint(q), syl.t).u, syl.t);
    m = (Wideint(q) * r - 1) / syl.t;
  } else {
    // t = 1: a^t lies in the Sylow group already; take r = 0, q*0 = 1 + m*1.
    m = -1;
  }

  // Pohlig-Hellman for L = log_c(a^t) in the cyclic group of order q^s.
  const Wideint h = mod_pow(a, syl.t, field);
  Wideint qpow_top = 1;
  for (std::uint32_t i = 1; i < syl.s; ++i) qpow_top *= q;  // q^(s-1)
  const Wideint base_q = mod_pow(syl.generator, qpow_top, field);  // order q
  const Wideint c_inv = mod_inverse(syl.generator, field);
  Wideint log = 0, qi = 1, exp_down = qpow_top;
  for (std::uint32_t i = 0; i < syl.s; ++i) {
    const Wideint residual = field.reduce(h * mod_pow(c_inv, log, field));
    const Wideint probe = mod_pow(residual, exp_down, field);
    std::uint32_t digit = 0;
    Wideint acc = 1;
    while (acc != probe) {
      acc = field.reduce(acc * base_q);
      if (++digit >= q) throw Error(Errc::invariant_failure, "Pohlig-Hellman digit not found");
    }
    log += qi * digit;
    qi *= q;
    if (i + 1 < syl.s) exp_down /= q;
  }
  if (mpz_divisible_ui_p(log.get_mpz_t(), q) == 0) return std::nullopt;

  const Wideint correction = mod_floor(-(log * m / q), Wideint(qi));
  Wideint x = field.reduce(mod_pow(a, r, field) * mod_pow(syl.generator, correction, field));
  if (mod_pow(x, Wideint(q), field) != a) return std::nullopt;
  return x;
}

namespace {

std::optional<Wideint> root_chain(const Wideint& a, const std::vector<std::uint32_t>& factors,
                                  std::size_t idx, const PrimeField& field) {
  if (idx == factors.size()) return a;
  const std::uint32_t q = factors[idx];
  const auto y = prime_root(a, q, field);
  if (!y) return std::nullopt;
  // Every q-th root of a is y * zeta^i; only some of them may admit the
  // remaining roots, so all are tried.
  Wideint zeta = 1;
  if (mpz_divisible_ui_p(Wideint(field.p() - 1).get_mpz_t(), q) != 0) {
    const SylowData syl = sylow(q, field);
    Wideint qpow_top = 1;
    for (std::uint32_t i = 1; i < syl.s; ++i) qpow_top *= q;
    zeta = mod_pow(syl.generator, qpow_top, field);
  }
  Wideint candidate = *y;
  const std::uint32_t tries = zeta == 1 ? 1 : q;
  for (std::uint32_t i = 0; i < tries; ++i) {
    if (auto r = root_chain(candidate, factors, idx + 1, field)) return r;
    candidate = field.reduce(candidate * zeta);
  }
  return std::nullopt;
}

}  // namespace

std::optional<Wideint> nth_root_any(const RootRequest& req, const PrimeField& field) {
  if (req.n == 0) throw Error(Errc::precondition, "n must be positive");
  const Wideint a = field.reduce(req.lambda);
  const Wideint d = gcd(Wideint(req.n), field.p() - 1);
  if (d == 1) return nth_root_gcd1(req, field);
  if (a != 0 && mod_pow(a, (field.p() - 1) / d, field) != 1) return std::nullopt;
  auto root = root_chain(a, prime_factors_with_multiplicity(req.n), 0, field);
  if (root && mod_pow(*root, Wideint(req.n), field) != a)
    throw Error(Errc::invariant_failure, "nth_root_any produced a non-root");
  return root;
}

RootProvider builtin_root_provider() {
  return [](const RootRequest& req, const PrimeField& field) { return nth_root_any(req, field); };
}

RootProvider fixed_root_provider(Wideint gamma) {
  return [gamma = std::move(gamma)](const RootRequest& req,
                                    const PrimeField& field) -> std::optional<Wideint> {
    if (mod_pow(gamma, Wideint(req.n), field) != field.reduce(req.lambda)) return std::nullopt;
    return field.reduce(gamma);
  };
}

std::optional<Wideint> find_gamma(const RootRequest& req, const PrimeField& field,
                                  const RootProvider& provider, std::uint64_t seed) {
  if (req.lambda == 0) throw Error(Errc::precondition, "lambda must be nonzero");
  const Wideint d = gcd(Wideint(req.n), field.p() - 1);
  if (d == 1) return nth_root_gcd1(req, field);
  if (field.reduce(req.lambda) == 1) return nth_root_unity(req.n, field, seed);
  if (!provider) return std::nullopt;
  auto gamma = provider(req, field);
  if (gamma && mod_pow(*gamma, Wideint(req.n), field) != field.reduce(req.lambda))
    throw Error(Errc::precondition, "supplied gamma is not an n-th root of lambda");
  return gamma;
}

}  // namespace amns::zp
