#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "amns/error.hpp"
#include "amns/zp.hpp"

using namespace amns;
using namespace amns::zp;

namespace {

const Wideint kP521 = pow2(521) - 1;

std::uint64_t brute_count(std::uint64_t n, std::int64_t lambda, std::uint64_t p) {
  std::uint64_t count = 0;
  const std::uint64_t target = ((lambda % static_cast<std::int64_t>(p)) + p) % p;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < n; ++i) v = v * x % p;
    if (v == target) ++count;
  }
  return count;
}

}  // namespace

TEST(Wideint, HexRoundTrip) {
  EXPECT_EQ(to_hex(Wideint(0)), "0x0");
  EXPECT_EQ(to_hex(Wideint(-255)), "-0xff");
  EXPECT_EQ(parse_int("0xFF"), 255);
  EXPECT_EQ(parse_int("-0x10"), -16);
  EXPECT_EQ(parse_int("17"), 17);
  EXPECT_THROW(parse_int("0xzz"), Error);
  EXPECT_THROW(parse_int(""), Error);
}

TEST(PrimeField, RejectsBadModuli) {
  EXPECT_THROW(PrimeField(Wideint(15)), Error);
  EXPECT_THROW(PrimeField(Wideint(3)), Error);
  EXPECT_THROW(PrimeField(Wideint(16)), Error);
  EXPECT_NO_THROW(PrimeField(Wideint(17)));
  EXPECT_NO_THROW(PrimeField{kP521});
}

TEST(ModPow, Examples) {
  const PrimeField f17(Wideint(17));
  EXPECT_EQ(mod_pow(2, 4, f17), 16);
  EXPECT_EQ(mod_pow(5, 0, f17), 1);
  EXPECT_EQ(mod_pow(2, 4690, PrimeField(kP521)), 2);
}

TEST(Bezout, Examples) {
  auto b = bezout(3, 16);
  EXPECT_EQ(b.g, 1);
  EXPECT_EQ(b.u, -5);
  EXPECT_EQ(b.v, 1);
  b = bezout(1, 12345);
  EXPECT_EQ(b.g, 1);
  EXPECT_EQ(b.u, 1);
  EXPECT_EQ(b.v, 0);
  b = bezout(6, 4);
  EXPECT_EQ(b.g, 2);
  EXPECT_EQ(b.u, 1);
  EXPECT_EQ(b.v, -1);
  EXPECT_THROW(bezout(0, 0), Error);
}

TEST(Bezout, MinimalityBoundBruteForce) {
  for (long a = 1; a < 1000; a += 7) {
    for (long b = 1; b < 1000; b += 11) {
      const auto r = bezout(a, b);
      const long g = std::gcd(a, b);
      ASSERT_EQ(r.g, g);
      ASSERT_EQ(a * r.u + b * r.v, r.g);
      // |u| <= b/(2g), |v| <= a/(2g); equality slack for a | b or b | a.
      ASSERT_LE(2 * g * abs(r.u), std::max<long>(b, g)) << a << " " << b;
      ASSERT_LE(2 * g * abs(r.v), std::max<long>(a, 2 * g)) << a << " " << b;
    }
  }
}

TEST(NthRoot, Gcd1Examples) {
  const PrimeField f17(Wideint(17));
  EXPECT_EQ(nth_root_gcd1({3, 2}, f17), 8);
  EXPECT_EQ(nth_root_gcd1({3, 1}, f17), 1);
  // 5 does not divide 22.
  const PrimeField f23(Wideint(23));
  const Wideint g = nth_root_gcd1({5, 2}, f23);
  EXPECT_EQ(mod_pow(g, 5, f23), 2);
  EXPECT_THROW(nth_root_gcd1({4, 2}, f17), Error);
}

TEST(NthRoot, UnityExamples) {
  const PrimeField f13(Wideint(13)), f17(Wideint(17));
  for (std::uint64_t seed = 1; seed < 20; ++seed) {
    const Wideint a = nth_root_unity(3, f13, seed);
    EXPECT_TRUE(a == 3 || a == 9) << a;
    EXPECT_EQ(nth_root_unity(2, f17, seed), 16);
    const Wideint b = nth_root_unity(4, f17, seed);
    EXPECT_TRUE(b == 4 || b == 13 || b == 16) << b;
  }
  EXPECT_THROW(nth_root_unity(3, f17, 1), Error);
}

TEST(NthRoot, CountExamples) {
  EXPECT_EQ(count_roots({3, 1}, PrimeField(Wideint(13))), 3u);
  EXPECT_EQ(count_roots({3, 2}, PrimeField(Wideint(17))), 1u);
  EXPECT_EQ(count_roots({2, 3}, PrimeField(Wideint(5))), 0u);
  EXPECT_THROW(count_roots({2, 3}, PrimeField(kP521)), Error);
}

TEST(NthRoot, CountPropertiesSmallPrimes) {
  for (std::uint64_t p : {5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 97u, 101u}) {
    const PrimeField f{Wideint(p)};
    for (std::uint32_t n = 2; n <= 8; ++n) {
      const std::uint64_t d = std::gcd<std::uint64_t>(n, p - 1);
      EXPECT_EQ(count_roots({n, 1}, f), d);
      for (std::int64_t lambda = -5; lambda <= 5; ++lambda) {
        if (lambda % static_cast<std::int64_t>(p) == 0) continue;
        const auto c = count_roots({n, Wideint(static_cast<long>(lambda))}, f);
        ASSERT_EQ(c, brute_count(n, lambda, p));
        ASSERT_TRUE(c == 0 || c == d);
        if (d == 1) {
          ASSERT_EQ(c, 1u);
          const Wideint g = nth_root_gcd1({n, Wideint(static_cast<long>(lambda))}, f);
          ASSERT_EQ(mod_pow(g, n, f), f.reduce(lambda));
        }
      }
    }
  }
}

TEST(NthRoot, GeneralRootsMatchExhaustiveExistence) {
  for (std::uint64_t p : {13u, 17u, 41u, 73u, 97u, 193u, 257u, 401u}) {
    const PrimeField f{Wideint(p)};
    for (std::uint32_t n = 2; n <= 12; ++n) {
      for (std::int64_t lambda = -9; lambda <= 9; ++lambda) {
        if (lambda == 0) continue;
        const Wideint lam(static_cast<long>(lambda));
        const auto r = nth_root_any({n, lam}, f);
        const bool exists = brute_count(n, lambda, p) > 0;
        ASSERT_EQ(r.has_value(), exists) << p << " " << n << " " << lambda;
        if (r) ASSERT_EQ(mod_pow(*r, n, f), f.reduce(lam));
      }
    }
  }
}

TEST(NthRoot, FindGammaValidatesProvider) {
  const PrimeField f17(Wideint(17));
  // 4th root of -1 mod 17: 2^4 = 16.
  auto g = find_gamma({4, -1}, f17, fixed_root_provider(2), 1);
  ASSERT_TRUE(g);
  EXPECT_EQ(*g, 2);
  EXPECT_FALSE(find_gamma({4, -1}, f17, fixed_root_provider(3), 1));
  g = find_gamma({3, 2}, f17, fixed_root_provider(3), 1);  // gcd route ignores the provider
  ASSERT_TRUE(g);
  EXPECT_EQ(*g, 8);
}

TEST(NthRoot, LargeFieldGeneralRoot) {
  const PrimeField f(parse_int("0xE06F20509A52674228D4F0701A08EB3B08C1714F0A93F719"));
  const auto g = nth_root_any({4, -1}, f);
  ASSERT_TRUE(g);
  EXPECT_EQ(mod_pow(*g, 4, f), f.reduce(-1));
  EXPECT_FALSE(nth_root_any({4, 3}, f).has_value());
}
