#include <gtest/gtest.h>

#include <ordp/equivalence.hpp>
#include <ordp/fibers.hpp>

#include "oracles.hpp"
#include "support.hpp"

using namespace ordp;
using namespace ordp::oracle;
using ordp::testing::Random;

TEST(FpPoly, ExtendedGcd) {
  Integer q = 5;
  auto a = poly({0, 1, 0, 0, 0, 1});  // X^5 + X
  auto b = fp::ext_gcd(a, fp::derivative(a, q), q);
  EXPECT_EQ(b.gcd, fp::Poly{1});
  EXPECT_TRUE(bezout_holds(b, a, q));
  auto c = poly({0, 0, 1});  // X^2 and its derivative 2X share X
  EXPECT_EQ(fp::ext_gcd(c, fp::derivative(c, q), q).gcd, poly({0, 1}));
}

TEST(Classify, UnitLambdaOverZ3) {
  auto r = ordp::testing::z_localized(3);
  auto rep = degeneration_report(CongruenceDatum(3, r.one(), r.constant(3)));
  EXPECT_EQ(rep.generic.tag, FiberTag::Multiplicative);
  EXPECT_EQ(rep.special.tag, FiberTag::Multiplicative);
  ASSERT_TRUE(rep.special.inverse.has_value());
  EXPECT_EQ(*rep.special.inverse * r.one(), r.one());
  EXPECT_EQ(*rep.v_lambda, 0);
  EXPECT_EQ(*rep.v_mu, 1);
}

TEST(Classify, EisensteinEtale) {
  auto r = ordp::testing::eisenstein_local();
  auto z = r.variable("z");
  auto lambda = 1 - z;
  auto mu = -z * z;  // 3 / (1 - z)^2
  CongruenceDatum d(3, lambda, mu);
  auto rep = degeneration_report(d);
  EXPECT_EQ(rep.generic.tag, FiberTag::Multiplicative);
  EXPECT_EQ(rep.special.tag, FiberTag::Etale);
  // zeta reduces to 1, so mu reduces to -1 = 2 and P = X^3 + 2X
  EXPECT_EQ(rep.special_polynomial, poly({0, 2, 0, 1}));
  ASSERT_TRUE(rep.special.separable.has_value());
  EXPECT_TRUE(bezout_holds(*rep.special.separable, rep.special_polynomial, 3));
  EXPECT_EQ(*rep.v_lambda, 1);
  EXPECT_EQ(*rep.v_mu, 0);
  EXPECT_EQ(*rep.v_p, 2);
}

TEST(Classify, RamifiedAlpha) {
  auto r = ordp::testing::pure_ramified_local(3, 3);
  auto pi = r.variable("pi");
  auto rep = degeneration_report(CongruenceDatum(3, pi, pi));
  EXPECT_EQ(rep.generic.tag, FiberTag::Multiplicative);
  EXPECT_EQ(rep.special.tag, FiberTag::Alpha);
  EXPECT_EQ(rep.special_polynomial, poly({0, 0, 0, 1}));
  EXPECT_EQ(*rep.v_p, 3);
}

TEST(Classify, BoundaryCaseP2) {
  auto r = ordp::testing::z_localized(2);
  auto rep = degeneration_report(CongruenceDatum(2, r.constant(2), r.one()));
  EXPECT_EQ(rep.generic.tag, FiberTag::Multiplicative);
  EXPECT_EQ(rep.special.tag, FiberTag::Etale);
  EXPECT_EQ(rep.special_polynomial, poly({0, 1, 1}));
}

TEST(Classify, ResidueCharacteristicOtherThanP) {
  // p = 3 over Z localized at 5: lambda and mu are units
  auto r = ordp::testing::z_localized(5);
  for (long l : {1, 2, 3}) {
    auto lam = r.constant(l);
    auto rep = degeneration_report(CongruenceDatum(3, lam, r.constant(Rational(3, l * l))));
    EXPECT_EQ(rep.generic.tag, FiberTag::Multiplicative);
    if (l % 5 != 0) EXPECT_EQ(rep.special.tag, FiberTag::Multiplicative);
  }
}

TEST(Classify, EqualCharacteristic) {
  auto r = ordp::testing::truncated_series(3, 6);
  auto s = r.variable("s");
  auto rep = degeneration_report(CongruenceDatum(3, r.zero(), s));
  EXPECT_EQ(rep.generic.tag, FiberTag::Etale);
  EXPECT_EQ(rep.special.tag, FiberTag::Alpha);
  EXPECT_FALSE(rep.v_p.has_value());
  EXPECT_FALSE(rep.v_lambda.has_value());
  auto rep2 = degeneration_report(CongruenceDatum(3, r.zero(), 1 + s));
  EXPECT_EQ(rep2.special.tag, FiberTag::Etale);
  auto rep3 = degeneration_report(CongruenceDatum(3, r.zero(), r.zero()));
  EXPECT_EQ(rep3.generic.tag, FiberTag::Alpha);
}

TEST(Classify, TripleRoute) {
  auto z = ordp::testing::z_localized(3);
  TateOortTriple zp(3, z.one(), z.constant(-3));
  EXPECT_EQ(classify_fiber(zp, FiberPoint::Special).tag, FiberTag::Etale);
  EXPECT_EQ(classify_fiber(cartier_dual(zp), FiberPoint::Special).tag, FiberTag::Multiplicative);
  auto f = ordp::testing::truncated_series(3, 4);
  auto s = f.variable("s");
  TateOortTriple alpha(3, s, s.pow(3));
  EXPECT_EQ(classify_fiber(alpha, FiberPoint::Special).tag, FiberTag::Alpha);
}

TEST(Classify, TrichotomyRandom) {
  Random rng(17);
  for (unsigned p : {2u, 3u, 5u}) {
    int counts[3] = {0, 0, 0};
    for (int k = 0; k < 200; ++k) {
      auto d = random_valued_datum(rng, p, k);
      if (!d) continue;
      auto rep = degeneration_report(*d);
      DVRSpec dvr(d->ring());
      bool lam_unit = dvr.is_unit(d->lambda());
      bool mu_unit = dvr.is_unit(d->mu());
      bool mult = lam_unit;
      bool etale = !lam_unit && mu_unit;
      bool alpha = !lam_unit && !mu_unit;
      ASSERT_EQ(mult + etale + alpha, 1);
      FiberTag expect = mult ? FiberTag::Multiplicative : etale ? FiberTag::Etale : FiberTag::Alpha;
      EXPECT_EQ(rep.special.tag, expect) << d->sexpr();
      if (expect == FiberTag::Etale) {
        ASSERT_TRUE(rep.special.separable.has_value());
        EXPECT_TRUE(bezout_holds(*rep.special.separable, rep.special_polynomial, p));
      }
      if (expect == FiberTag::Alpha) {
        fp::Poly xp(p + 1, 0);
        xp[p] = 1;
        EXPECT_EQ(rep.special_polynomial, xp);
      }
      // special fiber is multiplicative exactly when v(lambda) = 0
      EXPECT_EQ(rep.special.tag == FiberTag::Multiplicative, rep.v_lambda && *rep.v_lambda == 0);
      if (rep.special.tag == FiberTag::Multiplicative) EXPECT_EQ(rep.generic.tag, FiberTag::Multiplicative);
      ++counts[static_cast<int>(rep.special.tag)];
    }
    EXPECT_GT(counts[0], 0) << p;
    EXPECT_GT(counts[1], 0) << p;
    EXPECT_GT(counts[2], 0) << p;
  }
}

TEST(Classify, EncodingsAgree) {
  Random rng(23);
  std::vector<std::pair<unsigned, PresentedRing>> rings{
      {2, ordp::testing::pure_ramified_local(2, 2)},
      {3, ordp::testing::pure_ramified_local(3, 2)},
      {3, ordp::testing::eisenstein_local()},
      {5, ordp::testing::truncated_series(5, 4)},
      {3, ordp::testing::truncated_series(3, 5)}};
  for (const auto& [p, r] : rings) {
    DVRSpec dvr(r);
    auto pi = dvr.uniformizer();
    auto vp = dvr.valuation_of_p();
    for (int k = 0; k < 10; ++k) {
      auto u = r.constant(rng.integer(1, p - 1));
      std::optional<CongruenceDatum> d;
      if (vp) {
        // p = pi^v * eps
        unsigned v = static_cast<unsigned>(vp->get_num().get_ui());
        unsigned j = static_cast<unsigned>(rng.integer(0, v / (p - 1)));
        RingElement eps = r.constant(p);
        for (unsigned i = 0; i < (p - 1) * j; ++i) {
          // divide by pi exactly using the norm-free inverse in K
          eps = eps * *dvr.inverse(pi);
        }
        d.emplace(p, u * pi.pow(j), unit_inverse(u)->pow(p - 1) * eps);
      } else {
        // keep lambda^(p-1) above the truncation so b = lambda^(p-1) stays nonzero
        auto lam = rng.integer(0, 1) ? r.zero() : u * pi.pow(rng.integer(0, (dvr.data().truncation - 1) / (p - 1)));
        auto mu = lam.is_zero() ? pi.pow(rng.integer(0, 4)) : r.zero();
        d.emplace(p, lam, mu);
      }
      auto cert = tcg_to_tgc(*d);
      for (auto which : {FiberPoint::Generic, FiberPoint::Special}) {
        EXPECT_EQ(classify_fiber(*d, which).tag, classify_fiber(cert.triple, which).tag) << d->sexpr();
      }
    }
  }
}
