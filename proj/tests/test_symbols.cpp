// Reference values: tests/oracles/special_values.py and strongfact_values.py (mpmath).

#include <gtest/gtest.h>

#include <cmath>

#include "afact/symbols.hpp"

using afact::cd;
using afact::EntireSymbol;
using afact::ErrorCode;
using afact::Verdict;
using afact::WedgeRegion;

namespace {

void expect_close(cd got, cd want, double tol) {
  EXPECT_LE(std::abs(got - want), tol * std::max(1.0, std::abs(want))) << "got " << got << " want " << want;
}

}  // namespace

TEST(Alpha, ClosedFormOnRealAxis) { expect_close(afact::alpha(0.5, cd(3, 0)), cd(0.44627510771025345, 0), 1e-15); }

TEST(Alpha, EvenInZ) {
  cd z(1.3, 0.7);
  EXPECT_EQ(afact::alpha(0.25, z), afact::alpha(0.25, -z));
}

TEST(Alpha, RejectsNonPositiveEps) {
  try {
    afact::alpha(0.0, cd(1, 0));
    FAIL() << "expected DOMAIN";
  } catch (const afact::Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Domain);
  }
}

TEST(Beta, StableFormMatchesOracle) {
  expect_close(afact::beta(0.25, cd(2, 0.5)), cd(-0.35461178223022072, 0.094713882372131595), 1e-14);
  // 1 - alpha cosh cancels to 1e-18 here; the naive form returns 0 or noise
  cd b = afact::beta(0.5, cd(40, 0));
  EXPECT_NEAR(b.real(), -4.248354255291589e-18, 1e-30);
}

TEST(Identity, ModeratePointsToRounding) {
  for (double eps : {0.1, 0.25, 0.5, 1.0})
    for (cd z : {cd(0.5, 0.2), cd(3, 1), cd(10, 3), cd(-7, 2), cd(2, 1.5)})
      EXPECT_LE(afact::identity_residual(eps, z), 1e-13) << "eps " << eps << " z " << z;
}

TEST(Identity, SweepIsDeterministicInSeed) {
  auto a = afact::identity_sweep(0.5, WedgeRegion{4, 0.8}, 200, 50, 7);
  auto b = afact::identity_sweep(0.5, WedgeRegion{4, 0.8}, 200, 50, 7);
  EXPECT_EQ(a.points, 200);
  EXPECT_EQ(a.max_residual, b.max_residual);
  EXPECT_EQ(a.argmax, b.argmax);
}

// Absolute residual is bounded by rounding of |alpha cosh|, which reaches e^{700} inside
// W(4,0.8) with |z| <= 50; relative to that scale the identity holds to rounding.
TEST(Identity, SweepRelativeResidualAtRounding) {
  for (double eps : {0.1, 0.25, 0.5, 1.0}) {
    auto s = afact::identity_sweep(eps, WedgeRegion{4, 0.8}, 1000, 50, 1);
    EXPECT_LE(s.max_relative, 1e-14) << "eps " << eps;
  }
}

TEST(Identity, SweepAbsoluteResidualAtSmallEps) {
  auto s = afact::identity_sweep(0.1, WedgeRegion{4, 0.8}, 1000, 50, 1);
  EXPECT_EQ(s.overflowed, 0);
  EXPECT_GT(s.max_residual, 1e-12);  // large |alpha cosh| near the wedge edge; see decisions
}

TEST(SmoothedLog, RealAxis) {
  EXPECT_NEAR(afact::smoothed_log(0.0), 0.41325491057046441, 1e-14);
  EXPECT_NEAR(afact::smoothed_log(3.0), 1.3698475116225359, 1e-14);
  EXPECT_NEAR(afact::smoothed_log(100.0), 4.6150960076378917, 1e-14);
}

TEST(SmoothedLog, OffAxis) {
  struct {
    cd z, v;
  } t[] = {{{2, 1}, {1.131253566843172, 0.3413114978497101}},
           {{0, 1.5}, {-0.97620020812971243, 0}},
           {{0.3, 1.5}, {-0.61063577064098202, 0.89500142460255749}},
           {{1, 1.5}, {0.89336906365440112, 0.97684114466451529}},
           {{5, 1.5}, {1.8162329881040443, 0.24816676412044632}},
           {{40, 1.5}, {3.7140926730339699, 0.036579918525193229}},
           {{200, 1.5}, {5.3033265660824142, 0.0074626403860871446}},
           {{2, 0.75}, {1.1032772974244638, 0.26025128873140619}}};
  for (const auto& c : t) expect_close(afact::smoothed_log(c.z), c.v, 1e-13);
}

TEST(SmoothedAbs, NearAbsFarOut) {
  EXPECT_NEAR(afact::smoothed_abs(cd(0, 0)).real(), 1 / std::sqrt(3.14159265358979323846), 1e-15);
  EXPECT_NEAR(afact::smoothed_abs(cd(-9, 0)).real(), 9, 1e-15);
}

TEST(EntireSymbol, ProductEvaluates) {
  auto f = EntireSymbol::heat().times(EntireSymbol::alpha_symbol(0.5));
  cd z(0.4, 0.3);
  expect_close(f(z), std::exp(-z * z) * afact::alpha(0.5, z), 1e-15);
}

TEST(DecayCertificate, AlphaInsideItsClass) {
  auto f = EntireSymbol::alpha_symbol(0.5);
  double c = f.decay_class()->c;
  auto cert = afact::decay_certificate_symbol(f, c, WedgeRegion{1, 0.5});
  EXPECT_EQ(cert.verdict(), Verdict::Finite);
}

TEST(DecayCertificate, AlphaBeyondItsRateIsNotFinite) {
  auto f = EntireSymbol::alpha_symbol(0.5);
  auto cert = afact::decay_certificate_symbol(f, 0.9, WedgeRegion{1, 0.5});
  EXPECT_EQ(cert.verdict(), Verdict::Inconclusive);
}

TEST(DecayCertificate, HeatGaussianDecay) {
  auto cert = afact::decay_certificate_symbol(EntireSymbol::heat(), 5, WedgeRegion{1, 0.5});
  EXPECT_EQ(cert.verdict(), Verdict::Finite);
}

// Algebraic decay only: e^{c|z|}/|z|^2 grows toward the certificate radius.
TEST(DecayCertificate, LorentzianIsNotFinite) {
  auto cert = afact::decay_certificate_symbol(EntireSymbol::lorentzian(), 1, WedgeRegion{1, 0.5});
  EXPECT_EQ(cert.verdict(), Verdict::Inconclusive);
}
