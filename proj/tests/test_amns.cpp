#include <gtest/gtest.h>

#include <random>

#include "amns/error.hpp"
#include "amns/zp.hpp"
#include "test_support.hpp"

using namespace amns;
using amns::test::fixture_arith;

namespace {

Wideint random_residue(gmp_randclass& rng, const Wideint& p) { return rng.get_z_range(p); }

Element random_element(std::mt19937_64& rng, const Arith& arith) {
  const auto rho = static_cast<std::int64_t>(arith.rho());
  std::uniform_int_distribution<std::int64_t> coef(-(rho - 1), rho - 1);
  Element e(arith.system().n);
  for (std::uint32_t i = 0; i < e.size(); ++i) e[i] = coef(rng);
  return e;
}

const Wideint kP192 = parse_int("0xE06F20509A52674228D4F0701A08EB3B08C1714F0A93F719");

Wideint phi_inv(const AmnsSystem& sys) { return zp::mod_inverse(sys.phi(), zp::PrimeField(sys.p)); }

Element poly_element(std::initializer_list<const char*> coeffs, std::uint32_t n) {
  poly::IntPoly p;
  for (const char* c : coeffs) p.push_back(parse_int(c));
  return Element::from_poly(p, n);
}

}  // namespace

TEST(RedCoeff, ZeroInput) {
  const Arith arith = fixture_arith("nist_p521_n10");
  WideVector v;
  v.n = 10;
  EXPECT_EQ(arith.red_coeff(v), arith.zero());
}

TEST(RedCoeff, ScaledInputSparseSystem) {
  const Arith arith = fixture_arith("nist_p521_n10");
  const auto& sys = arith.system();
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::int64_t> coef(-(std::int64_t{1} << 56) + 1, (std::int64_t{1} << 56) - 1);
  const Wideint finv = phi_inv(sys);
  for (int t = 0; t < 200; ++t) {
    WideVector v;
    v.n = 10;
    poly::IntPoly vp(10);
    for (std::uint32_t i = 0; i < 10; ++i) {
      const std::int64_t c = coef(rng);
      v.c[i] = static_cast<Int128>(c) << 64;
      vp[i] = from_i64(c) * sys.phi();
    }
    const Element s = arith.red_coeff(v);
    ASSERT_LT(s.norm_inf(), arith.rho());
    ASSERT_EQ(arith.evaluate(s), mod_floor(poly::eval_mod(vp, sys.gamma, sys.p) * finv, sys.p));
  }
}

TEST(RedCoeff, RandomProductDenseSystem) {
  const Arith arith = fixture_arith("p256_n5");
  const auto& sys = arith.system();
  const Wideint finv = phi_inv(sys);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 500; ++t) {
    const Element a = random_element(rng, arith), b = random_element(rng, arith);
    const WideVector v = arith.mul_unreduced(a, b);
    poly::IntPoly vp(sys.n);
    for (std::uint32_t i = 0; i < sys.n; ++i) vp[i] = from_i128(v.c[i]);
    const Element s = arith.red_coeff(v);
    ASSERT_EQ(arith.evaluate(s), mod_floor(poly::eval_mod(vp, sys.gamma, sys.p) * finv, sys.p));
    // Exact-arithmetic path agrees coefficientwise.
    ASSERT_EQ(s.to_poly(), arith.red_coeff_wide(vp));
  }
}

TEST(RedCoeff, CorruptedMprimeDetected) {
  auto pf = test::load_fixture("p192_n4");
  pf.system.Mprime[0] += 1;
  const Arith arith(pf.system);
  std::mt19937_64 rng(3);
  const Element a = random_element(rng, arith);
  EXPECT_THROW(arith.mul(a, a), Error);
}

TEST(Mul, IdentityAndZero) {
  for (const char* name : test::kAllFixtures) {
    const Arith arith = fixture_arith(name);
    std::mt19937_64 rng(4);
    const Element one = arith.one();
    for (int t = 0; t < 50; ++t) {
      const Element a = random_element(rng, arith);
      ASSERT_EQ(arith.from_amns_horner(arith.mul(a, one)), arith.from_amns_horner(a)) << name;
      ASSERT_EQ(arith.mul(arith.zero(), a), arith.zero());
    }
  }
}

TEST(Mul, SquareOfListedRepresentative) {
  const Arith arith = fixture_arith("p255_n5_l2");
  const auto& sys = arith.system();
  const Wideint t = parse_int(test::kSharedPrimeT);
  const Element x3 = poly_element({"0", "0", "0", "1", "0"}, 5);
  ASSERT_EQ(arith.evaluate(x3), t);
  // Each multiplication contributes one factor phi^-1.
  const Element sq = arith.mul(x3, x3);
  EXPECT_EQ(arith.evaluate(sq), mod_floor(t * t * phi_inv(sys), sys.p));
}

TEST(Mul, OracleSoundnessAllFixtures) {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(5);
  for (const char* name : test::kAllFixtures) {
    const Arith arith = fixture_arith(name);
    const Wideint& p = arith.system().p;
    for (int t = 0; t < 300; ++t) {
      const Wideint a = random_residue(rng, p), b = random_residue(rng, p);
      const Element ea = arith.to_amns_m2(a), eb = arith.to_amns_m1(b);
      const Element prod = arith.mul(ea, eb);
      ASSERT_LT(prod.norm_inf(), arith.rho()) << name;
      ASSERT_EQ(arith.from_amns_horner(prod), mod_floor(a * b, p)) << name;
      ASSERT_EQ(arith.from_amns_powers(prod), mod_floor(a * b, p)) << name;
    }
  }
}

TEST(Add, DepthBudget) {
  const auto systems = gen::generate(kP192, 4, 2, 64, 2, {.max_systems = 1});
  const Arith arith(systems.front().system, systems.front().tables);
  std::mt19937_64 rng(6);
  const Element a = random_element(rng, arith);
  const Element s1 = arith.add(a, arith.zero());
  EXPECT_EQ(s1, a);
  EXPECT_EQ(s1.depth(), 1u);
  const Element s2 = arith.add(s1, arith.zero());
  EXPECT_EQ(s2.depth(), 2u);
  EXPECT_THROW(arith.add(s2, arith.zero()), Error);
  EXPECT_NO_THROW(arith.mul(s2, a));
}

TEST(Add, ZeroBudgetRejectsEveryAdd) {
  const Arith arith = fixture_arith("p192_n4");
  ASSERT_EQ(arith.system().delta, 0u);
  EXPECT_THROW(arith.add(arith.zero(), arith.zero()), Error);
}

TEST(Add, ChainsThenMulStayBelowRho) {
  const auto systems = gen::generate(kP192, 4, -2, 64, 2, {.max_systems = 1});
  const Arith arith(systems.front().system, systems.front().tables);
  const Wideint& p = arith.system().p;
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(7);
  std::mt19937_64 erng(7);
  for (int t = 0; t < 500; ++t) {
    const Wideint a = random_residue(rng, p), b = random_residue(rng, p), c = random_residue(rng, p);
    const Element s = arith.add(arith.to_amns_m2(a), arith.to_amns_m2(b));
    const Element r = arith.mul(s, arith.to_amns_m2(c));
    ASSERT_LT(r.norm_inf(), arith.rho());
    ASSERT_EQ(arith.from_amns_horner(r), mod_floor((a + b) * c, p));
    // Worst-case coefficients: three maximal elements summed.
    const Element x = random_element(erng, arith), y = random_element(erng, arith), z = random_element(erng, arith);
    const Element w = arith.add(arith.add(x, y), z);
    ASSERT_LT(arith.mul(w, w).norm_inf(), arith.rho());
  }
}

TEST(Convert, ZeroAndOne) {
  const Arith arith = fixture_arith("nist_p521_n10");
  EXPECT_EQ(arith.to_amns_m1(0), arith.zero());
  EXPECT_EQ(arith.to_amns_m2(0), arith.zero());
  EXPECT_EQ(arith.from_amns_horner(arith.zero()), 0);
  EXPECT_EQ(arith.from_amns_powers(arith.zero()), 0);
  EXPECT_EQ(arith.evaluate(arith.to_amns_m2(1)), mod_floor(pow2(64), arith.system().p));
  EXPECT_THROW(arith.to_amns_m2(arith.system().p), Error);
  EXPECT_THROW(arith.to_amns_m1(-1), Error);
}

TEST(Convert, MethodsAgreeAllFixtures) {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(8);
  std::mt19937_64 erng(8);
  for (const char* name : test::kAllFixtures) {
    const Arith arith = fixture_arith(name);
    const auto& sys = arith.system();
    for (int t = 0; t < 300; ++t) {
      const Wideint a = random_residue(rng, sys.p);
      const Element e1 = arith.to_amns_m1(a), e2 = arith.to_amns_m2(a);
      ASSERT_LT(e1.norm_inf(), arith.rho());
      ASSERT_LT(e2.norm_inf(), arith.rho());
      ASSERT_EQ(arith.evaluate(e1), mod_floor(a * sys.phi(), sys.p)) << name;
      ASSERT_EQ(arith.evaluate(e2), arith.evaluate(e1));
      ASSERT_EQ(arith.from_amns_horner(e1), a);
      ASSERT_EQ(arith.from_amns_powers(e2), a);
      const Element r = random_element(erng, arith);
      ASSERT_EQ(arith.from_amns_horner(r), arith.from_amns_powers(r));
    }
  }
}

TEST(Convert, SharedPrimeRepresentatives) {
  const Wideint t = parse_int(test::kSharedPrimeT);
  const Arith a1 = fixture_arith("p255_n5_l2");
  const Arith a2 = fixture_arith("p255_n5_lm3");
  const Arith a3 = fixture_arith("p255_n6_l2");
  const Element r2 = poly_element({"-0x2DE4B18019BCF", "-0x4B844B52F420E", "0x7BD09DBD01E4", "-0x3F60F0AC55927",
                                   "-0x39CDC4224C412"},
                                  5);
  const Element r3 = poly_element(
      {"0x7DEE4F8F11E", "-0x3E6242D6F01", "0x672A6C1F62E", "-0x225BF4D6DE9", "0x3080218E9FD", "-0x152DDD219CC"}, 6);
  // The listed polynomials evaluate to t itself.
  EXPECT_EQ(a2.evaluate(r2), t);
  EXPECT_EQ(a3.evaluate(r3), t);
  // Fresh conversions evaluate to t * phi.
  for (const Arith* a : {&a1, &a2, &a3}) {
    const auto& sys = a->system();
    EXPECT_EQ(a->evaluate(a->to_amns_m1(t)), mod_floor(t * sys.phi(), sys.p));
    EXPECT_EQ(a->from_amns_powers(a->to_amns_m2(t)), t);
  }
}

TEST(Convert, ToyExhaustive) {
  const auto systems = gen::generate(17, 3, 2, 16, 0);
  ASSERT_FALSE(systems.empty());
  for (const auto& g : systems) {
    const Arith arith(g.system, g.tables);
    for (int a = 0; a < 17; ++a) {
      const Element e1 = arith.to_amns_m1(a), e2 = arith.to_amns_m2(a);
      ASSERT_EQ(arith.from_amns_horner(e1), a);
      ASSERT_EQ(arith.from_amns_powers(e2), a);
      ASSERT_EQ(arith.evaluate(e1), arith.evaluate(e2));
      for (int b = 0; b < 17; ++b) {
        const Element prod = arith.mul(e1, arith.to_amns_m2(b));
        ASSERT_LT(prod.norm_inf(), arith.rho());
        ASSERT_EQ(arith.from_amns_horner(prod), a * b % 17);
      }
    }
  }
}

TEST(Dpa, IdentityMask) {
  const Arith arith = fixture_arith("p256_n5");
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(9);
  for (int t = 0; t < 50; ++t) {
    const Wideint a = random_residue(rng, arith.system().p);
    EXPECT_EQ(arith.dpa_to_amns(a, 1), arith.to_amns_m1(a));
    const Element e = arith.to_amns_m2(a);
    EXPECT_EQ(arith.dpa_from_amns(e, 1), arith.from_amns_horner(e));
  }
  EXPECT_THROW(arith.dpa_to_amns(1, 0), Error);
  EXPECT_THROW(arith.dpa_from_amns(arith.zero(), arith.system().p), Error);
}

TEST(Dpa, MaskRoundTrip) {
  for (const char* name : {"p192_n4", "p521_n10"}) {
    const Arith arith = fixture_arith(name);
    const auto& sys = arith.system();
    const zp::PrimeField field(sys.p);
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(10);
    for (int t = 0; t < 1000; ++t) {
      const Wideint a = random_residue(rng, sys.p);
      const Wideint beta = 1 + random_residue(rng, sys.p - 1);
      const Wideint binv = zp::mod_inverse(beta, field);
      ASSERT_EQ(arith.dpa_from_amns(arith.dpa_to_amns(a, beta), binv), a);
      ASSERT_EQ(arith.dpa_from_amns(arith.zero(), beta), 0);
    }
  }
}

TEST(Dpa, PointCoordinateMasking) {
  const Arith arith = fixture_arith("p255_n5_l2");
  const auto& sys = arith.system();
  const zp::PrimeField field(sys.p);
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(11);
  for (int t = 0; t < 100; ++t) {
    const Wideint x = random_residue(rng, sys.p), y = random_residue(rng, sys.p);
    const Wideint u = 1 + random_residue(rng, sys.p - 1);
    const Wideint u2 = zp::mod_pow(u, 2, field), u3 = zp::mod_pow(u, 3, field);
    const Element mx = arith.dpa_to_amns(x, zp::mod_inverse(u2, field));
    const Element my = arith.dpa_to_amns(y, zp::mod_inverse(u3, field));
    ASSERT_EQ(arith.dpa_from_amns(mx, u2), x);
    ASSERT_EQ(arith.dpa_from_amns(my, u3), y);
  }
}

TEST(Kernels, TraceLengthIndependentOfInputs) {
  for (const char* name : {"nist_p521_n10", "p256_n5", "p384_n7"}) {
    const Arith arith = fixture_arith(name);
    const auto prm = arith.reduction_params();
    const std::uint32_t n = arith.system().n;
    std::mt19937_64 rng(12);
    std::uint64_t mul_steps = 0, red_steps = 0, add_steps = 0;
    for (int t = 0; t < 100; ++t) {
      Element a = random_element(rng, arith), b = random_element(rng, arith);
      if (t == 0) a = arith.zero();  // degenerate inputs take the same path
      std::array<Int128, detail::kMaxN> v{};
      std::array<std::int64_t, detail::kMaxN> out{};
      detail::CountingTrace tm, tr, ta;
      detail::mul_mod_e(a.data(), b.data(), v.data(), n, arith.system().lambda, tm);
      detail::red_coeff(v.data(), out.data(), prm, tr);
      detail::add(a.data(), b.data(), out.data(), n, ta);
      if (t == 0) {
        mul_steps = tm.steps;
        red_steps = tr.steps;
        add_steps = ta.steps;
      }
      ASSERT_EQ(tm.steps, mul_steps);
      ASSERT_EQ(tr.steps, red_steps);
      ASSERT_EQ(ta.steps, add_steps);
    }
  }
}

TEST(Kernels, SparseReductionIsCheaper) {
  const auto sparse = fixture_arith("nist_p521_n10").reduction_params();
  const auto dense = fixture_arith("p521_n10").reduction_params();
  EXPECT_EQ(sparse.m.size(), 2u);
  EXPECT_EQ(sparse.mprime.size(), 2u);
  EXPECT_EQ(dense.m.size(), 10u);
}

TEST(Bounds, UndersizedPhiProducesViolations) {
  // With |lambda| = 1 the product can reach n rho^2 in one coefficient, so the
  // bound phi >= 2 |lambda| n rho has almost no slack.
  const auto systems = gen::generate(kP192, 4, -1, 64, 0);
  ASSERT_FALSE(systems.empty());
  const AmnsSystem sys = systems.front().system;
  unsigned k_min = 1;
  while (pow2(k_min) < 2 * 4 * sys.rho()) ++k_min;

  auto count_violations = [&](unsigned k) {
    AmnsSystem s = sys;
    s.k = k;
    s.Mprime = poly::hensel_inverse_neg(s.M, s.e(), k);
    const Arith arith(s);
    std::mt19937_64 rng(13);
    const auto top = static_cast<std::int64_t>(arith.rho()) - 1;
    std::uniform_int_distribution<std::int64_t> jitter(0, 1 << 20);
    int violations = 0;
    for (int t = 0; t < 2000; ++t) {
      // V_0 = a_0 b_0 - sum a_j b_{n-j}: all terms add up when b_j < 0 for j > 0.
      Element a(4), b(4);
      for (std::uint32_t i = 0; i < 4; ++i) {
        a[i] = top - jitter(rng);
        b[i] = i == 0 ? top - jitter(rng) : -(top - jitter(rng));
      }
      if (arith.mul(a, b).norm_inf() >= arith.rho()) ++violations;
    }
    return violations;
  };
  EXPECT_EQ(count_violations(k_min), 0);
  EXPECT_GT(count_violations(k_min - 1), 100);
}
