// Reference values: tests/oracles/special_values.py (mpmath, 40 digits).

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "afact/special.hpp"
#include "afact/quadrature.hpp"

using afact::cd;

namespace {

void expect_rel(cd got, cd want, double tol) {
  double scale = std::max(1.0, std::abs(want));
  EXPECT_LE(std::abs(got - want), tol * scale) << "got " << got << " want " << want;
}

struct ErfCase {
  cd z;
  cd value;
};

const ErfCase kErfTable[] = {
    {{0.3, 0.2}, {0.34123748147213859, 0.20852883788276888}},
    {{2.5, 1.0}, {0.99938268513779985, -0.00084694454339379262}},
    {{3.2, 0.1}, {0.99999522652312348, 3.7721008230875649e-6}},
    {{3.6, 2.9}, {1.0011512831295484, 0.000563557799775932}},
    {{4.5, 3.5}, {0.99997537772089149, 2.2057820156031829e-5}},
    {{1.2, 7.5}, {-4.0390392928102605e+22, 2.5309378442988787e+22}},
    {{0.4, 5.0}, {-4930159140.6343991, -5033238834.4384042}},
    {{6.0, 4.0}, {1.0000000000184957, -1.5957451210396658e-10}},
    {{12.0, 9.0}, {1.0, 2.100276718961106e-30}},
    {{30.0, 20.0}, {1.0, -2.4450429803398673e-45}},
    {{45.0, 5.0}, {1.0, 1.9373199724500153e-46}},
    {{2.0, 0.5}, {1.0035022433130363, 0.0047409030312943361}},
    {{1.45, 1.88}, {0.0013171643700144243, -0.0051607670431302418}},
    {{0.1, 3.2}, {2939.0267313158393, 4255.7064717620292}},
    {{5.5, 0.2}, {1.0000000000000047, 6.0253169257381352e-15}},
    {{3.0, 3.0}, {0.86782649757545114, -0.012152181790312257}},
    {{1.6, 2.6}, {13.4304761717341, 1.7294332233146788}},
    {{20.0, 8.0}, {1.0, -1.3664772357959186e-45}},
};

}  // namespace

TEST(Erf, RealAxisAgainstSeries) {
  expect_rel(afact::erf(cd(1, 0)), cd(0.84270079294971487, 0), 1e-15);
  expect_rel(afact::erf(cd(0, 1)), cd(0, 1.6504257587975429), 1e-15);
}

TEST(Erf, ComplexTable) {
  for (const auto& c : kErfTable) {
    cd got = afact::erf(c.z);
    EXPECT_LE(std::abs(got - c.value), 1e-13 * std::abs(c.value)) << "z = " << c.z;
  }
}

TEST(Erf, OddAndConjugateSymmetric) {
  for (const auto& c : kErfTable) {
    cd a = afact::erf(c.z);
    EXPECT_EQ(afact::erf(-c.z), -a);
    EXPECT_EQ(afact::erf(std::conj(c.z)), std::conj(a));
  }
}

TEST(Erfcx, Table) {
  struct {
    cd z, v;
  } t[] = {{{0.5, 0.1}, {0.6121092712288244, -0.051047510034554587}},
           {{2.0, 0.0}, {0.25539567631050574, 0.0}},
           {{3.0, 2.0}, {0.13075746966984857, -0.081112650477456653}},
           {{8.0, 7.0}, {0.040069618142818868, -0.034752798526701553}},
           {{40.0, 30.0}, {0.0090278263658235421, -0.0067681625754047468}},
           {{2.5, 2.2}, {0.13052412918420362, -0.10533933032640622}},
           {{15.0, 0.0}, {0.037529606388505766, 0.0}},
           {{1.0, 0.0}, {0.427583576155807, 0.0}},
           {{10.0, 0.0}, {0.056140992743822586, 0.0}}};
  for (const auto& c : t) {
    cd got = afact::erfcx_scaled(c.z);
    EXPECT_LE(std::abs(got - c.v), 1e-13 * std::abs(c.v)) << "z = " << c.z;
  }
}

TEST(Expm1, SmallArgumentKeepsDigits) {
  cd z(1e-10, 2e-10);
  cd got = afact::expm1(z);
  cd want = z + z * z / 2.0;
  EXPECT_LE(std::abs(got - want), 1e-25);
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const auto& gl = afact::gauss_legendre<6>();
  double s = 0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * std::pow(gl.nodes[i], 10);
  EXPECT_NEAR(s, 2.0 / 11, 1e-15);
}

TEST(GaussLegendre, CompositePanels) {
  double s = afact::integrate_panels<20>([](double x) { return std::exp(-x * x); }, -8, 8, 16);
  EXPECT_NEAR(s, std::sqrt(3.14159265358979323846), 1e-14);
}
