#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "afact/error.hpp"

namespace afact {

using cd = std::complex<double>;
using cld = std::complex<long double>;

namespace detail {

inline constexpr long double kSqrtPiL = 1.772453850905516027298167483341145182798L;

// Maclaurin region: cancellation stays within long double headroom.
inline bool series_region(cd w) {
  double a = std::abs(w);
  return a <= 2.5 || (w.real() < 1.5 && a <= 12.0);
}

inline cld erf_series(cld z) {
  cld z2 = -z * z;
  cld term = z;  // z (-z^2)^n / n!
  cld sum = term;
  double mag2 = std::norm(std::complex<double>(z));
  for (int n = 1; n < 2000; ++n) {
    term *= z2 / static_cast<long double>(n);
    cld t = term / static_cast<long double>(2 * n + 1);
    sum += t;
    if (n > mag2 && std::abs(t) <= 1e-21L * std::abs(sum)) break;
  }
  return sum * (2.0L / kSqrtPiL);
}

// Faddeeva w(zeta) for Im zeta >= 0 by the Laplace continued fraction (modified Lentz).
inline cld faddeeva_cf(cld zeta) {
  const long double tiny = 1e-300L;
  cld f = zeta;
  if (f == cld(0)) f = tiny;
  cld C = f, D = 0;
  for (int j = 1; j < 20000; ++j) {
    long double a = -0.5L * j;
    D = zeta + a * D;
    if (D == cld(0)) D = tiny;
    C = zeta + a / C;
    if (C == cld(0)) C = tiny;
    D = 1.0L / D;
    cld delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0L) < 1e-19L) break;
  }
  return cld(0, 1) / (kSqrtPiL * f);
}

// erf on the closed first quadrant.
inline cld erf_q1(cld w) {
  cd wd(static_cast<double>(w.real()), static_cast<double>(w.imag()));
  if (series_region(wd)) return erf_series(w);
  return 1.0L - std::exp(-w * w) * faddeeva_cf(cld(0, 1) * w);
}

// 1 - erf(w) for Re w >= 0.
inline cld erfc_right(cld w) {
  cd wd(static_cast<double>(w.real()), static_cast<double>(w.imag()));
  if (series_region(wd)) return 1.0L - erf_series(w);
  return std::exp(-w * w) * faddeeva_cf(cld(0, 1) * w);
}

template <class F>
cld by_symmetry(cd z, F&& q1) {
  bool flip = z.real() < 0;
  cd w = flip ? -z : z;
  bool conj = w.imag() < 0;
  if (conj) w = std::conj(w);
  cld r = q1(cld(w.real(), w.imag()));
  if (conj) r = std::conj(r);
  if (flip) r = -r;
  return r;
}

}  // namespace detail

// Odd entire error function, (2/sqrt(pi)) int_0^z e^{-t^2} dt.
inline cd erf(cd z) {
  if (z == cd(0)) return z;
  cld r = detail::by_symmetry(z, detail::erf_q1);
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

inline double erf(double x) { return std::erf(x); }

// e^{z^2} (1 - erf z) for Re z >= 0.
inline cd erfcx_scaled(cd z) {
  if (!(z.real() >= 0)) throw Error(ErrorCode::Domain, "erfcx_scaled needs Re z >= 0");
  bool conj = z.imag() < 0;
  cd w = conj ? std::conj(z) : z;
  cld wl(w.real(), w.imag());
  cld r = detail::series_region(w) ? std::exp(wl * wl) * (1.0L - detail::erf_series(wl))
                                   : detail::faddeeva_cf(cld(0, 1) * wl);
  cd out(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  return conj ? std::conj(out) : out;
}

// 1 - erf(z) for Re z >= 0, long double.
inline cld erfc_right(cd z) {
  bool conj = z.imag() < 0;
  cd w = conj ? std::conj(z) : z;
  cld r = detail::erfc_right(cld(w.real(), w.imag()));
  return conj ? std::conj(r) : r;
}

inline cd expm1(cd z) {
  double u = z.real(), v = z.imag();
  double s = std::sin(0.5 * v);
  return {std::expm1(u) * std::cos(v) - 2 * s * s, std::exp(u) * std::sin(v)};
}

}  // namespace afact
