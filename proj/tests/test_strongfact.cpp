// Reference values: tests/oracles/strongfact_values.py and special_values.py (mpmath).

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "afact/strongfact.hpp"

using namespace afact;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Config;
}

}  // namespace

TEST(BumpTransform, Oracle) {
  struct {
    double xi, v;
  } t[] = {{0, 0.44399381616807944},        {1, 0.40985913239034435},       {3, 0.19790303284514257},
           {10, 0.014623086655132709},      {50, -6.6615058862461795e-5},   {200, -2.4663695842509402e-8},
           {1000, 2.2148406672650628e-16}, {3000, -8.71635352256538e-27}};
  for (const auto& c : t) EXPECT_NEAR(bump_transform(c.xi), c.v, 1e-13 * std::abs(c.v)) << "xi = " << c.xi;
}

TEST(BumpTransform, Even) { EXPECT_EQ(bump_transform(-7.5), bump_transform(7.5)); }

TEST(TestFunction, BumpSupport) {
  auto phi = testfn::bump();
  const auto& g = phi.values.group;
  EXPECT_EQ(g.size(), std::size_t{1} << 17);
  EXPECT_NEAR(phi.values[g.zero_index()].real(), std::exp(-1.0), 1e-16);
  for (std::size_t j = 0; j < g.size(); ++j)
    if (g.distance(j) >= 1) ASSERT_EQ(phi.values[j], cd(0));
}

TEST(StrongFactorizeTestfn, BumpReconstructs) {
  auto phi = testfn::bump();
  EXPECT_LE(strong_factorize_testfn(phi, 4).error, 1e-13);
  EXPECT_LE(strong_factorize_testfn(phi, 6).error, 1e-10);
  EXPECT_LE(strong_factorize_testfn(phi, 8).error, 1e-6);
}

TEST(StrongFactorizeTestfn, GaussianReconstructs) {
  EXPECT_LE(strong_factorize_testfn(testfn::gaussian(), 6).error, 1e-12);
}

TEST(StrongFactorizeTestfn, ZeroIsExact) { EXPECT_EQ(strong_factorize_testfn(testfn::zero(), 6).error, 0.0); }

TEST(StrongFactorizeTestfn, SmallMRejected) {
  EXPECT_EQ(code_of([] { strong_factorize_testfn(testfn::bump(), 3); }), ErrorCode::Domain);
}

// Psi phi for a compactly supported phi carries the bump's superexponential decay.
TEST(StrongFactorizeTestfn, BumpPsiPhiCertified) {
  auto f = strong_factorize_testfn(testfn::bump(), 8);
  EXPECT_EQ(f.cert_Psi_phi.verdict(), Verdict::Finite);
}

// psi_m = F^{-1} e^{-m l} has only the decay the grid can resolve; the weighted suprema keep
// climbing toward the radius, so no certificate is issued. See decisions.
TEST(StrongFactorizeTestfn, PsiCertificateInconclusive) {
  auto f = strong_factorize_testfn(testfn::bump(), 8);
  EXPECT_EQ(f.cert_psi.verdict(), Verdict::Inconclusive);
}

TEST(RegularityProbe, BoundaryAtMEqualsKPlusTwo) {
  for (int k = 0; k <= 4; ++k)
    for (int m = std::max(1, k); m <= k + 3; ++m)
      EXPECT_EQ(psi_regularity_probe(m, k).pass, m >= k + 2) << "m = " << m << " k = " << k;
}

TEST(HalfLine, GaussianPlusTransform) {
  OrbitMap gamma(vectors::gaussian(GroupSpec::real_line()));
  cd f = contour_fourier_plus(gamma, cd(0, 2), 0);
  EXPECT_NEAR(f.real(), 0.37893607807065605, 1e-14);
  EXPECT_NEAR(f.imag(), 0, 1e-14);
  EXPECT_NEAR(contour_fourier_spectral(gamma, cd(0, 2), 0).real(), 0.37893607807065605, 1e-12);
}

TEST(StrongFactorizeVector, Lorentzian) {
  auto h = strong_factorize_vector(vectors::lorentzian(GroupSpec::real_line()), 0.25, 0.75);
  EXPECT_LE(h.error, 1e-4);
  EXPECT_LE(h.contour_independence, 1e-8);
  EXPECT_LE(h.inversion_residual, 1e-6);
  EXPECT_LE(h.quadrature_crosscheck, 1e-10);
}

TEST(StrongFactorizeVector, Gaussian) {
  auto h = strong_factorize_vector(vectors::gaussian(GroupSpec::real_line()), 0.25, 0.75);
  EXPECT_LE(h.error, 1e-12);
}

TEST(StrongFactorizeVector, FactorKernelDecaysAtFirstWeight) {
  auto h = strong_factorize_vector(vectors::lorentzian(GroupSpec::real_line()), 0.25, 0.75);
  const auto* e = h.factor_certificate.find(1);
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->verdict, Verdict::Finite);
}

TEST(StrongFactorizeVector, LargeRGrows) {
  auto v = vectors::lorentzian(GroupSpec::real_line());
  EXPECT_EQ(code_of([&] { strong_factorize_vector(v, 0.25, 2.5); }), ErrorCode::Growth);
}

TEST(StrongFactorizeVector, BadParameters) {
  auto v = vectors::lorentzian(GroupSpec::real_line());
  EXPECT_EQ(code_of([&] { strong_factorize_vector(v, 0.25, 0); }), ErrorCode::Domain);
  EXPECT_EQ(code_of([&] { strong_factorize_vector(v, 0, 0.75); }), ErrorCode::Contour);
  EXPECT_EQ(code_of([&] { strong_factorize_vector(vectors::mode(GroupSpec::circle(), 1), 0.25, 0.75); }),
            ErrorCode::Config);
}

TEST(StrongFactorizeScalar, Reconstructs) {
  for (double v : {1.0, 1.7, -0.3}) EXPECT_LE(strong_factorize_scalar(v, 0.25, 0.75).error, 1e-13) << v;
}
