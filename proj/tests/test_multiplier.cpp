// Kernel oracle: tests/oracles/special_values.py (alpha_0.1 cosine transform in mpmath).

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "afact/multiplier.hpp"
#include "afact/representation.hpp"

using namespace afact;

namespace {

const double kPi = std::numbers::pi;

double at(const SampledSignal& s, double x) {
  const auto& g = s.group;
  return s[g.zero_index() + static_cast<std::size_t>(std::llround(x / g.spacing()))].real();
}

double sup_diff(const SampledSignal& a, const SampledSignal& b) {
  double m = 0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Config;  // sentinel, never thrown by these calls
}

}  // namespace

TEST(Kernel, HeatMatchesClosedForm) {
  auto g = GroupSpec::real_line();
  auto K = heat_kernel(g);
  auto exact = SampledSignal::from_function(g, [](double x) { return cd(std::exp(-x * x / 4) / (2 * std::sqrt(kPi))); });
  EXPECT_LE(sup_diff(K.signal, exact), 1e-10);
  EXPECT_TRUE(K.symmetric);
  EXPECT_NEAR(K.mass, 1.0, 1e-12);
}

TEST(Kernel, AlphaPointValues) {
  auto K = kernel_of_symbol(EntireSymbol::alpha_symbol(0.1), GroupSpec::real_line());
  struct {
    double x, v;
  } t[] = {{0, 6.3811045547601543},      {1, 0.07326490917485908},      {2, 0.01780715747865457},
           {4, 0.00085987761407382441}, {6, 1.8127337592428176e-5}, {8, 4.2548592429601101e-7}};
  for (const auto& c : t) EXPECT_NEAR(at(K.signal, c.x), c.v, 1e-12 + 1e-9 * c.v) << "x = " << c.x;
}

TEST(Kernel, OddSymbolRejected) {
  auto odd = EntireSymbol::custom("sin", [](cd z) { return std::sin(z); });
  EXPECT_EQ(code_of([&] { kernel_of_symbol(odd, GroupSpec::real_line()); }), ErrorCode::NotEven);
}

TEST(Kernel, LorentzianUnderresolvedByDefault) {
  EXPECT_EQ(code_of([] { kernel_of_symbol(EntireSymbol::lorentzian(), GroupSpec::real_line()); }),
            ErrorCode::Resolution);
}

TEST(DecayCertificate, AlphaLowWeights) {
  auto K = kernel_of_symbol(EntireSymbol::alpha_symbol(0.1), GroupSpec::real_line());
  auto cert = decay_certificate_kernel(K, {1, 2}, 8);
  EXPECT_EQ(cert.verdict(), Verdict::Finite);
}

TEST(DecayCertificate, LorentzianNegativeControl) {
  KernelOptions o;
  o.allow_underresolved = true;
  auto K = kernel_of_symbol(EntireSymbol::lorentzian(), GroupSpec::real_line(), o);
  auto cert = decay_certificate_kernel(K, {2}, 8);
  EXPECT_EQ(cert.verdict(), Verdict::Inconclusive);
}

TEST(Convolve, GaussianPair) {
  auto g = GroupSpec::real_line();
  auto a = SampledSignal::from_function(g, [](double x) { return cd(std::exp(-x * x)); });
  auto want = SampledSignal::from_function(g, [](double x) { return cd(std::sqrt(kPi / 2) * std::exp(-x * x / 2)); });
  EXPECT_LE(sup_diff(convolve(a, a), want), 1e-10);
}

TEST(Convolve, Commutes) {
  auto g = GroupSpec::real_line();
  auto a = heat_kernel(g).signal;
  auto b = SampledSignal::from_function(g, [](double x) { return cd(std::exp(-(x - 2) * (x - 2))); });
  EXPECT_LE(sup_diff(convolve(a, b), convolve(b, a)), 1e-14);
}

TEST(ApplyMultiplier, HeatOnGaussian) {
  auto g = GroupSpec::real_line();
  auto v = SampledSignal::from_function(g, [](double x) { return cd(std::exp(-x * x)); });
  // e^{-xi^2} times sqrt(pi) e^{-xi^2/4} inverts to e^{-x^2/5}/sqrt(5)
  auto want = SampledSignal::from_function(g, [](double x) { return cd(std::exp(-x * x / 5) / std::sqrt(5.0)); });
  EXPECT_LE(sup_diff(apply_multiplier(EntireSymbol::heat(), v), want), 1e-12);
}

TEST(ApplyMultiplier, TruncatedLorentzianIsUnresolved) {
  auto g = GroupSpec::real_line();
  auto v = SampledSignal::from_function(g, [](double x) { return cd(1 / (1 + x * x)); });
  EXPECT_EQ(code_of([&] { apply_multiplier(EntireSymbol::cosh_symbol(0.5), v); }), ErrorCode::Resolution);
}

TEST(ApplyMultiplier, CoshBeyondStripIsUnbounded) {
  auto g = GroupSpec::real_line();
  auto v = vectors::lorentzian(g).data;
  EXPECT_EQ(code_of([&] { apply_multiplier(EntireSymbol::cosh_symbol(2.0), v); }), ErrorCode::Unbounded);
}

TEST(ApplyMultiplier, CoshInsideStripIsBounded) {
  auto g = GroupSpec::real_line();
  auto v = vectors::lorentzian(g).data;
  EXPECT_NO_THROW(apply_multiplier(EntireSymbol::cosh_symbol(0.5), v));
}

TEST(Wave, HeatAndAlpha) {
  std::vector<int> modes;
  for (int k = 0; k <= 10; ++k) modes.push_back(k);
  for (const auto& f : {EntireSymbol::heat(), EntireSymbol::alpha_symbol(0.5)})
    for (const auto& w : wave_crosscheck(f, modes)) EXPECT_LE(w.residual, 1e-8) << f.name() << " k = " << w.k;
}

TEST(RegularizedDistance, ValueAtOrigin) {
  auto g = GroupSpec::real_line();
  auto d = regularized_distance(g);
  EXPECT_NEAR(d.dtilde[g.zero_index()].real(), 2 / std::sqrt(kPi), 1e-10);
  EXPECT_NEAR(at(d.dtilde, 30), 30, 1e-10);
}

TEST(Cutoff, EqualsOneAtOriginAndDecays) {
  auto g = GroupSpec::real_line();
  auto chi = cutoff_chi(0.01, g);
  EXPECT_NEAR(chi[g.zero_index()].real(), std::exp(-0.01 * 4 / kPi), 1e-12);
  EXPECT_LT(at(chi, 40), 1e-6);
  EXPECT_EQ(code_of([&] { cutoff_chi(0, g); }), ErrorCode::Domain);
}

TEST(Circle, ModeIsEigenvector) {
  auto g = GroupSpec::circle();
  auto v = SampledSignal::from_function(g, [](double x) { return std::polar(1.0, 3 * x); });
  auto u = apply_multiplier(EntireSymbol::heat(), v);
  for (std::size_t j = 0; j < g.size(); j += 97) EXPECT_LE(std::abs(u[j] - std::exp(-9.0) * v[j]), 1e-15);
}
