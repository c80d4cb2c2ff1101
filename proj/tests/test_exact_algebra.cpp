#include <gtest/gtest.h>

#include "support.hpp"

using namespace ordp;
using ordp::testing::Random;

namespace {

PresentedRing rewrite_ring_p3() { return ordp::testing::universal_ring(3); }

PresentedRing kummer_kernel_algebra() {
  auto rx = PresentedRing::polynomial(PresentedRing::integers(), {"x"});
  auto x = rx.variable("x");
  return PresentedRing::quotient(rx, {monic_relation("x", x.pow(3) + 3 * x * x + 3 * x)});
}

}  // namespace

TEST(NormalForm, SingleRewriteAppliedOnce) {
  auto O = rewrite_ring_p3();
  auto E = O.variable("E");
  auto F = O.variable("F");
  EXPECT_EQ(E * E * F, O.constant(3));
}

TEST(NormalForm, MonicReduction) {
  auto R = kummer_kernel_algebra();
  auto x = R.variable("x");
  EXPECT_EQ(x.pow(3).sexpr(), "(+ (* -3 (^ x 2)) (* -3 x))");
}

TEST(NormalForm, RepeatedRewriteMatchesBruteForce) {
  // E^3 F^2 = (E^2 F) E F: one rewrite leaves E F, which is irreducible.
  // E^4 F^2 = (E^2 F)^2 needs the rule twice.
  auto O = rewrite_ring_p3();
  auto E = O.variable("E");
  auto F = O.variable("F");
  EXPECT_EQ(E.pow(3) * F.pow(2), 3 * E * F);
  EXPECT_EQ(E.pow(4) * F.pow(2), O.constant(9));
  EXPECT_EQ(E.pow(5) * F.pow(2), 9 * E);
}

TEST(NormalForm, Idempotent) {
  Random rng(1);
  std::vector<PresentedRing> rings{
      rewrite_ring_p3(), ordp::testing::universal_ring(5), kummer_kernel_algebra(),
      ordp::testing::eisenstein_local(), ordp::testing::truncated_series(3, 6),
      PresentedRing::polynomial(PresentedRing::integers_mod(12), {"a", "b"})};
  for (const auto& R : rings) {
    for (int i = 0; i < 1000; ++i) {
      auto e = rng.element(R, 5, 6);
      EXPECT_EQ(R.normal_form(e.terms()), e.terms()) << R.sexpr();
    }
  }
}

TEST(NormalForm, UnknownVariable) {
  auto O = rewrite_ring_p3();
  EXPECT_THROW(O.variable("x"), UnknownVariable);
}

TEST(RingAxioms, RandomTriples) {
  Random rng(2);
  std::vector<PresentedRing> rings{rewrite_ring_p3(), kummer_kernel_algebra(), ordp::testing::eisenstein_local(),
                                   ordp::testing::pure_ramified_local(3, 3), ordp::testing::truncated_series(2, 5),
                                   PresentedRing::padic(5, 6)};
  for (const auto& R : rings) {
    for (int i = 0; i < 100; ++i) {
      auto a = rng.element(R);
      auto b = rng.element(R);
      auto c = rng.element(R);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a - a, R.zero());
    }
  }
}

TEST(Confluence, RejectsConflictingRules) {
  auto zx = PresentedRing::polynomial(PresentedRing::integers(), {"x"});
  auto x = zx.variable("x");
  EXPECT_THROW(PresentedRing::quotient(zx, {rewrite_relation(x * x, x), rewrite_relation(x * x, zx.zero())}),
               NonConfluentPresentation);
}

TEST(Confluence, RejectsNonTerminatingRule) {
  auto zxy = PresentedRing::polynomial(PresentedRing::integers(), {"x", "y"});
  auto x = zxy.variable("x");
  auto y = zxy.variable("y");
  // y is more significant than x, so x^2 -> y does not decrease.
  EXPECT_THROW(PresentedRing::quotient(zxy, {rewrite_relation(x * x, y)}), NonTerminatingPresentation);
}

TEST(Confluence, AcceptsSingleRuleAndTriangularMonic) {
  Random rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto zab = PresentedRing::polynomial(PresentedRing::integers(), {"a", "b"});
    auto a = zab.variable("a");
    auto b = zab.variable("b");
    auto lhs = a.pow(rng.integer(0, 3)) * b.pow(rng.integer(1, 3));
    EXPECT_NO_THROW(PresentedRing::quotient(zab, {rewrite_relation(lhs, zab.constant(rng.integer(-5, 5)))}));
  }
  // Triangular: s monic over Z, t monic over Z[s].
  auto zs = PresentedRing::polynomial(PresentedRing::integers(), {"s"});
  auto s = zs.variable("s");
  auto zs2 = PresentedRing::quotient(zs, {monic_relation("s", s * s - 2)});
  auto zst = PresentedRing::polynomial(zs2, {"t"});
  auto t = zst.variable("t");
  auto sv = zst.variable("s");
  EXPECT_NO_THROW(PresentedRing::quotient(zst, {monic_relation("t", t.pow(3) - sv * t - 1)}));
}

TEST(Confluence, RejectsNonMonic) {
  auto zx = PresentedRing::polynomial(PresentedRing::integers(), {"x"});
  auto x = zx.variable("x");
  EXPECT_THROW(PresentedRing::quotient(zx, {monic_relation("x", 2 * x * x - 1)}), DomainError);
}

TEST(IsUnit, ResidueRing) {
  auto R = PresentedRing::integers_mod(25);
  auto inv = unit_inverse(R.constant(7));
  ASSERT_TRUE(inv);
  EXPECT_EQ(*inv, R.constant(18));
  EXPECT_FALSE(is_unit(R.constant(10)));
}

TEST(IsUnit, UniformizerIsNotAUnit) {
  for (const auto& R : {ordp::testing::z_localized(3), ordp::testing::eisenstein_local(),
                        ordp::testing::pure_ramified_local(3, 3), ordp::testing::truncated_series(5, 4)}) {
    DVRSpec dvr(R);
    EXPECT_FALSE(is_unit(dvr.uniformizer())) << R.sexpr();
    EXPECT_EQ(dvr.valuation(dvr.uniformizer()), 1);
  }
}

TEST(IsUnit, OneEverywhere) {
  for (const auto& R : {rewrite_ring_p3(), kummer_kernel_algebra(), ordp::testing::z_localized(2),
                        PresentedRing::integers(), PresentedRing::padic(7, 3)}) {
    auto inv = unit_inverse(R.one());
    ASSERT_TRUE(inv);
    EXPECT_EQ(*inv, R.one());
  }
}

TEST(IsUnit, FiniteFreeViaNorm) {
  // F_2[s]/(s^2): 1 + s is a unit, s is not.
  auto fs = PresentedRing::polynomial(PresentedRing::integers_mod(2), {"s"});
  auto s0 = fs.variable("s");
  auto R = PresentedRing::quotient(fs, {monic_relation("s", s0 * s0)});
  auto s = R.variable("s");
  auto inv = unit_inverse(1 + s);
  ASSERT_TRUE(inv);
  EXPECT_EQ(*inv * (1 + s), R.one());
  EXPECT_FALSE(is_unit(s));
  // Z[i]: i is a unit, 1 + i is not.
  auto zi = PresentedRing::polynomial(PresentedRing::integers(), {"i"});
  auto i0 = zi.variable("i");
  auto G = PresentedRing::quotient(zi, {monic_relation("i", i0 * i0 + 1)});
  auto i = G.variable("i");
  EXPECT_EQ(*unit_inverse(i), -i);
  EXPECT_FALSE(is_unit(1 + i));
}

TEST(IsUnit, PolynomialOverResidueRing) {
  auto R = PresentedRing::polynomial(PresentedRing::integers_mod(4), {"x"});
  auto x = R.variable("x");
  auto inv = unit_inverse(1 + 2 * x);
  ASSERT_TRUE(inv);
  EXPECT_EQ(*inv * (1 + 2 * x), R.one());
  EXPECT_FALSE(is_unit(1 + x));
}

TEST(IsUnit, UndecidableIsSignalled) {
  auto O = rewrite_ring_p3();
  EXPECT_THROW(unit_inverse(O.constant(3)), Undecidable);
  EXPECT_THROW(unit_inverse(O.variable("E")), Undecidable);
}

TEST(Substitute, UnitSectionOfGroupLaw) {
  auto R = PresentedRing::polynomial(PresentedRing::integers(), {"lambda", "x1", "x2"});
  auto l = R.variable("lambda");
  auto x1 = R.variable("x1");
  auto x2 = R.variable("x2");
  auto f = x1 + x2 + l * x1 * x2;
  EXPECT_EQ(substitute(f, R, {{"x1", R.zero()}}), x2);
}

TEST(Substitute, BinomialExpansion) {
  auto R = PresentedRing::polynomial(PresentedRing::integers(), {"lambda", "X"});
  auto f = (1 + R.variable("lambda") * R.variable("X")).pow(2);
  auto S = PresentedRing::polynomial(PresentedRing::integers(), {"X"});
  auto X = S.variable("X");
  EXPECT_EQ(substitute(f, S, {{"lambda", S.one()}}), 1 + 2 * X + X * X);
}

TEST(Substitute, IsogenyHomomorphismForP2) {
  // P(X) = X^2 + mu X over O = Z[E,F]/(EF - 2), lambda = E, mu = F.
  auto O = ordp::testing::universal_ring(2);
  auto Oxy = PresentedRing::polynomial(O, {"x1", "x2"});
  auto OX = PresentedRing::polynomial(O, {"X"});
  auto X = OX.variable("X");
  auto mu = OX.variable("F");
  auto P = X * X + mu * X;
  auto l = Oxy.variable("E");
  auto x1 = Oxy.variable("x1");
  auto x2 = Oxy.variable("x2");
  auto lhs = substitute(P, Oxy, {{"X", x1 + x2 + l * x1 * x2}});
  auto P1 = substitute(P, Oxy, {{"X", x1}});
  auto P2 = substitute(P, Oxy, {{"X", x2}});
  EXPECT_EQ(lhs, P1 + P2 + l * l * P1 * P2);
}

TEST(Substitute, IsARingHomomorphism) {
  Random rng(4);
  auto src = PresentedRing::polynomial(PresentedRing::integers(), {"u", "v"});
  auto dst = kummer_kernel_algebra();
  for (int i = 0; i < 50; ++i) {
    auto f = rng.element(src);
    auto g = rng.element(src);
    std::map<std::string, RingElement> asg{{"u", rng.element(dst)}, {"v", rng.element(dst)}};
    EXPECT_EQ(substitute(f * g, dst, asg), substitute(f, dst, asg) * substitute(g, dst, asg));
    EXPECT_EQ(substitute(f + g, dst, asg), substitute(f, dst, asg) + substitute(g, dst, asg));
  }
}

TEST(Dvr, ValuationIsAdditiveAndDetectsUnits) {
  Random rng(5);
  for (const auto& R : {ordp::testing::z_localized(3), ordp::testing::eisenstein_local()}) {
    DVRSpec dvr(R);
    int checked = 0;
    while (checked < 200) {
      auto a = rng.element(R, 2, 2, 20);
      auto b = rng.element(R, 2, 2, 20);
      if (a.is_zero() || b.is_zero()) continue;
      EXPECT_EQ(dvr.valuation(a * b), dvr.valuation(a) + dvr.valuation(b));
      EXPECT_EQ(is_unit(a), dvr.valuation(a) == 0);
      ++checked;
    }
  }
}

TEST(Dvr, ZeroHasNoValuation) {
  DVRSpec dvr(ordp::testing::z_localized(5));
  EXPECT_THROW(dvr.valuation(dvr.ring().zero()), ZeroValuation);
}

TEST(Dvr, ResidueMapIsARingMap) {
  Random rng(6);
  DVRSpec dvr(ordp::testing::eisenstein_local());
  int checked = 0;
  while (checked < 100) {
    auto a = rng.element(dvr.ring(), 2, 2, 9);
    auto b = rng.element(dvr.ring(), 2, 2, 9);
    if (!dvr.contains(a) || !dvr.contains(b)) continue;
    bool integral = a.is_integral() && b.is_integral();
    if (!integral) continue;
    EXPECT_EQ(dvr.residue(a * b), dvr.residue(a) * dvr.residue(b));
    EXPECT_EQ(dvr.residue(a + b), dvr.residue(a) + dvr.residue(b));
    ++checked;
  }
  EXPECT_TRUE(dvr.residue(dvr.uniformizer()).is_zero());
}

TEST(Dvr, RejectsNonEisensteinModel) {
  // X^2 - 17 at 2: no shift is Eisenstein, so the norm valuation would be wrong.
  auto zz = PresentedRing::polynomial(PresentedRing::integers(), {"r"});
  auto r = zz.variable("r");
  auto base = PresentedRing::quotient(zz, {monic_relation("r", r * r - 17)});
  EXPECT_THROW(PresentedRing::valued_local(base, base.variable("r") + 1, 2), UnsupportedRing);
}

TEST(Dvr, EisensteinUnitWitness) {
  DVRSpec dvr(ordp::testing::eisenstein_local());
  auto z = dvr.ring().variable("z");
  auto inv = unit_inverse(z + 3);
  ASSERT_TRUE(inv);
  EXPECT_EQ(*inv * (z + 3), dvr.ring().one());
}
