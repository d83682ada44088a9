#include <gtest/gtest.h>

#include "oracles.hpp"
#include "symdef/geometry/density.hpp"

using namespace symdef;

namespace {

Poly x_pow(std::size_t n, long c = 1) { return Poly::monomial(n, Rational(c)); }
SuperPoly sp(const Poly& f0, const Poly& f1 = {}) { return SuperPoly(f0, f1); }

}  // namespace

TEST(Sl2Basis, Generators) {
  auto b = sl2_basis();
  EXPECT_EQ(b[0].g, x_pow(0));
  EXPECT_EQ(b[1].g, x_pow(1));
  EXPECT_EQ(b[2].g, x_pow(2));
}

TEST(OspBasis, XOne) {
  auto b = osp_basis();
  EXPECT_EQ(b[0].a(), sp(x_pow(0)));
  EXPECT_TRUE(b[0].b().is_zero());
}

TEST(OspBasis, XTheta) {
  auto b = osp_basis();
  // F d/dx - 1/2 (-1)^{p(F)} eta_bar(F) eta_bar with F = theta, eta_bar(theta) = 1:
  // theta d/dx + 1/2 (d/dtheta - theta d/dx).
  EXPECT_EQ(b[1].a(), SuperPoly::odd(Poly::constant(Rational(1, 2))));
  EXPECT_EQ(b[1].b(), sp(Poly::constant(Rational(1, 2))));
  EXPECT_EQ(b[1].parity(), Parity::odd);
}

TEST(OspBasis, XxSquared) {
  auto b = osp_basis();
  EXPECT_EQ(b[4].a(), sp(x_pow(2)));
  EXPECT_EQ(b[4].b(), SuperPoly::odd(x_pow(1)));
}

TEST(OspBasis, ContactCondition) {
  for (const auto& x : osp_basis()) EXPECT_TRUE(x.contact_factor().has_value()) << x.to_string();
}

TEST(EtaBar, Examples) {
  EXPECT_EQ(eta_bar(SuperPoly::theta()), sp(Poly::constant(Rational(1))));
  EXPECT_EQ(eta_bar(sp(x_pow(1))), SuperPoly::odd(Poly::constant(Rational(-1))));
  EXPECT_EQ(eta_bar(SuperPoly::odd(x_pow(1))), sp(x_pow(1)));
}

TEST(EtaBar, SquareIsMinusDx) {
  for (std::size_t n = 0; n <= 6; ++n)
    for (int eps = 0; eps <= 1; ++eps) {
      SuperPoly f = SuperPoly::monomial(n, eps, Rational(static_cast<long>(n) + 2));
      EXPECT_EQ(eta_bar(eta_bar(f)), -f.dx());
      EXPECT_EQ(oracle::from(eta_bar(f)), oracle::eta_bar(oracle::from(f)));
    }
}

TEST(VfBracket, Examples) {
  auto b = sl2_basis();
  EXPECT_EQ(vf_bracket(b[0], b[1]).g, x_pow(0));
  EXPECT_EQ(vf_bracket(b[0], b[2]).g, x_pow(1, 2));
  EXPECT_EQ(vf_bracket(b[1], b[2]).g, x_pow(2));
  EXPECT_EQ(vf_bracket(b[2], b[1]).g, x_pow(2, -1));
}

TEST(ContactBracket, OneWithXSquared) {
  auto b = osp_basis();
  EXPECT_EQ(contact_bracket(b[0], b[4]), ContactField::from_generator(sp(x_pow(1, 2))));
}

TEST(ContactBracket, ThetaWithItself) {
  auto b = osp_basis();
  ContactField r = contact_bracket(b[1], b[1]);
  // Oracle: {X_theta, X_theta} = 2 X_theta^2; direct component arithmetic on
  // a = theta/2, b = 1/2 gives a_x-free square 1/2 d/dx.
  EXPECT_TRUE(r.b().is_zero());
  EXPECT_EQ(r.a(), sp(Poly::constant(Rational(1, 2))));
  EXPECT_EQ(r.generator(), sp(Poly::constant(Rational(1, 2))));
}

TEST(ContactBracket, OneWithOne) {
  auto b = osp_basis();
  EXPECT_TRUE(contact_bracket(b[0], b[0]).field().is_zero());
}

TEST(ContactBracket, Closure) {
  auto b = osp_basis();
  for (const auto& x : b)
    for (const auto& y : b) {
      ContactField r = contact_bracket(x, y);
      const SuperPoly& g = r.generator();
      // Span of {1, theta, x, x theta, x^2}: degree at most 2 even, at most 1 odd.
      EXPECT_LE(g.f0().coeffs().size(), 3u);
      EXPECT_LE(g.f1().coeffs().size(), 2u);
      EXPECT_TRUE(r.contact_factor().has_value());
    }
}

TEST(DensityAction, Translation) {
  auto b = sl2_basis();
  for (const Rational& lambda : {Rational(0), Rational(5, 3)})
    EXPECT_EQ(density_action(b[0], Density(lambda, x_pow(2))), Density(lambda, x_pow(1, 2)));
}

TEST(DensityAction, EulerEigenvalue) {
  auto b = sl2_basis();
  const Rational lambda(-1, 2);
  for (std::size_t n = 0; n <= 8; ++n) {
    Density r = density_action(b[1], Density(lambda, x_pow(n)));
    EXPECT_EQ(r.poly(), Poly::monomial(n, Rational(static_cast<long>(n)) + lambda));
  }
}

TEST(DensityAction, WeightZeroConstant) {
  auto b = sl2_basis();
  EXPECT_TRUE(density_action(b[2], Density(Rational(0), x_pow(0))).poly().is_zero());
}

TEST(DensityAction, FlavorMismatch) {
  auto b = sl2_basis();
  EXPECT_THROW(density_action(b[0], Density(Rational(0), SuperPoly::theta())), UsageError);
  EXPECT_THROW(super_density_action(osp_basis()[0], Density(Rational(0), x_pow(1))), UsageError);
}

TEST(SuperDensityAction, XSquaredOnTheta) {
  auto x2 = osp_basis()[4];
  EXPECT_EQ(super_density_action(x2, Density(Rational(1), SuperPoly::theta())).super_poly(),
            SuperPoly::odd(x_pow(1, 3)));
}

TEST(SuperDensityAction, XOneIsDx) {
  auto x1 = osp_basis()[0];
  SuperPoly f(x_pow(3), x_pow(2, 5));
  EXPECT_EQ(super_density_action(x1, Density(Rational(7, 2), f)).super_poly(), f.dx());
}

TEST(SuperDensityAction, XxOnOne) {
  auto xx = osp_basis()[2];
  const Rational lambda(5, 3);
  EXPECT_EQ(super_density_action(xx, Density(lambda, sp(x_pow(0)))).super_poly(), sp(Poly::constant(lambda)));
}
