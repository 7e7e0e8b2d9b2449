#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

#include "afact/certificate.hpp"
#include "afact/error.hpp"
#include "afact/group.hpp"
#include "afact/multiplier.hpp"
#include "afact/quadrature.hpp"
#include "afact/representation.hpp"
#include "afact/symbols.hpp"

namespace afact {

struct TestFunction {
  SampledSignal values;
  double support_radius = 0;
  std::string id;
  // phihat(xi) = int phi(x) e^{-i x xi} dx to full relative accuracy, when known.
  std::function<double(double)> transform;
};

// Transform of e^{-1/(1-x^2)}. For xi >= 30 the integral over [0, 1] is moved onto the ray
// Re x = a going down from p and the segment p -> 1, with p = 1 - e^{i pi/4} / sqrt(2 xi)
// near the saddle; the piece along the imaginary axis is purely imaginary and drops out.
inline double bump_transform(double xi) {
  xi = std::abs(xi);
  if (xi < 30) {
    return 2 * integrate_panels<20>(
                   [xi](double x) { return std::exp(-1 / (1 - x * x)) * std::cos(x * xi); }, 0, 1, 32);
  }
  auto g = [xi](cd x) { return std::exp(-1.0 / (1.0 - x * x) - cd(0, 1) * x * xi); };
  double s = 1 / (2 * std::sqrt(xi));
  cd p(1 - s, -s);
  const auto& gl = gauss_legendre<20>();
  cld acc = 0;
  auto add = [&acc](cd v) { acc += cld(v.real(), v.imag()); };
  // i int_s^inf g(a - i y) dy with y = s + u / xi
  for (double lo = 0, hi = 1; lo < 64; lo = hi, hi *= 2) {
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < 20; ++i) {
      double y = s + (mid + half * gl.nodes[i]) / xi;
      add(cd(0, 1) * g(cd(p.real(), -y)) * (half * gl.weights[i] / xi));
    }
  }
  cd d = 1.0 - p;
  for (int q = 0; q < 8; ++q) {
    double mid = (q + 0.5) / 8, half = 0.5 / 8;
    for (int i = 0; i < 20; ++i) add(g(p + d * (mid + half * gl.nodes[i])) * d * (half * gl.weights[i]));
  }
  return 2 * static_cast<double>(acc.real());
}

// Grid resolving e^{8 l} phihat for the bump: Nyquist ~ 6400.
inline GroupSpec bump_grid() { return GroupSpec::real_line(32, 1 << 17); }

namespace testfn {

inline TestFunction bump(const GroupSpec& g = bump_grid(), double radius = 1) {
  TestFunction t;
  t.support_radius = radius;
  t.id = "bump";
  t.values = SampledSignal::from_function(g, [radius](double x) {
    double u = x / radius;
    return std::abs(u) < 1 ? cd(std::exp(-1 / (1 - u * u))) : cd(0);
  });
  t.transform = [radius](double xi) { return radius * bump_transform(radius * xi); };
  return t;
}

// Numerical stand-in: below 1e-15 outside |x| <= 6.
inline TestFunction gaussian(const GroupSpec& g = GroupSpec::real_line()) {
  TestFunction t;
  t.support_radius = 6;
  t.id = "gaussian";
  t.values = SampledSignal::from_function(g, [](double x) { return cd(std::exp(-x * x)); });
  t.transform = [](double xi) { return std::sqrt(std::numbers::pi) * std::exp(-xi * xi / 4); };
  return t;
}

inline TestFunction zero(const GroupSpec& g = GroupSpec::real_line()) {
  TestFunction t;
  t.id = "zero";
  t.values = SampledSignal(g, std::vector<cd>(g.size(), 0.0));
  t.transform = [](double) { return 0.0; };
  return t;
}

}  // namespace testfn

// l(k dxi) for k = 0..N/2, computed once per grid and shared read-only afterwards.
inline const std::vector<double>& smoothed_log_table(const GroupSpec& g) {
  static std::mutex m;
  static std::map<std::pair<double, std::size_t>, std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(m);
  auto& t = cache[{g.half_length, g.size()}];
  if (t.empty()) {
    std::size_t top = g.is_circle() ? g.modes : g.size() / 2;
    t.resize(top + 1);
    for (std::size_t k = 0; k <= top; ++k) t[k] = smoothed_log(g.frequency_step() * static_cast<double>(k));
  }
  return t;
}

inline DecayCertificate decay_certificate_signal(const SampledSignal& s, double floor, const std::vector<double>& n_list,
                                                 double radius, std::string subject) {
  Kernel K;
  K.signal = s;
  K.symbol = EntireSymbol::custom(std::move(subject), [](cd) { return cd(0); });
  K.noise_floor.assign(s.size(), floor);
  return decay_certificate_kernel(K, n_list, radius);
}

struct TestFnFactorization {
  SampledSignal Psi_phi;
  Kernel psi;
  double error = 0;
  DecayCertificate cert_Psi_phi;
  DecayCertificate cert_psi;
};

// phi = (e^{m l}(sqrt Delta) phi) * psi_m with psi_m = kernel of e^{-m l}.
inline TestFnFactorization strong_factorize_testfn(const TestFunction& phi, int m,
                                                   const std::vector<double>& n_list = {1, 2, 3},
                                                   double radius = 8) {
  if (m < 4) throw Error(ErrorCode::Domain, "strong factorization of test functions needs m >= 4");
  const auto& g = phi.values.group;
  if (g.is_circle()) throw Error(ErrorCode::Config, "test-function factorization runs on the real line");
  const auto& ell = smoothed_log_table(g);
  std::size_t n = g.size();
  TestFnFactorization r;

  std::vector<double> em(ell.size());
  for (std::size_t k = 0; k < ell.size(); ++k) em[k] = std::exp(-m * ell[k]);
  KernelOptions ko;
  ko.symbol_samples = &em;
  ko.allow_underresolved = true;
  ko.contour = false;  // psi_m decays slower than e^{-|x|} on the window, so no shifted line is admissible
  r.psi = kernel_of_symbol(EntireSymbol::smoothed_log_exp(m, -1), g, ko);

  std::vector<cd> spec(n, 0.0);
  if (phi.transform) {
    std::vector<double> ft(ell.size());
    for (std::size_t k = 0; k < ft.size(); ++k) ft[k] = phi.transform(g.frequency_step() * static_cast<double>(k));
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t a = detail::abs_index(g, k);
      if (a < ft.size()) spec[k] = ft[a] * std::exp(m * ell[a]);
    }
  } else {
    // FFT spectrum: only the band above the noise floor is known, and the product must
    // already be negligible at its edge.
    spec = to_spectrum(phi.values);
    denoise_spectrum(spec);
    for (std::size_t k = 0; k < n; ++k)
      if (spec[k] != cd(0)) spec[k] *= std::exp(m * ell[detail::abs_index(g, k)]);
    double edge = support_edge(g, spec), all = max_abs(spec), outer = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (std::abs(g.frequency(k)) >= 0.9 * edge) outer = std::max(outer, std::abs(spec[k]));
    if (all > 0 && outer > 1e-12 * all)
      throw Error(ErrorCode::Resolution, "e^{m l} phihat is still above 1e-12 where phihat reaches the noise floor");
  }
  if (!std::isfinite(max_abs(spec)) || outer_band_ratio(g, spec) > 1e-12)
    throw Error(ErrorCode::Resolution, "e^{m l} phihat has not decayed below 1e-12 near Nyquist");
  double floor = detail::kRoundFactor * detail::sum_abs_scaled(g, spec);
  r.Psi_phi = signal_from_spectrum(g, std::move(spec));

  auto rec = convolve(r.Psi_phi, r.psi.signal);
  for (std::size_t j = 0; j < n; ++j) r.error = std::max(r.error, std::abs(rec[j] - phi.values[j]));
  r.cert_psi = decay_certificate_kernel(r.psi, n_list, radius);
  r.cert_Psi_phi = decay_certificate_signal(r.Psi_phi, floor, n_list, radius, "Psi_m phi");
  return r;
}

struct RegularityProbe {
  int m = 0;
  int k = 0;
  double integral_short = 0;  // up to Xi
  double integral_long = 0;   // up to 2 Xi
  double relative_change = 0;
  bool pass = false;
};

// Does int_0^Xi xi^k e^{-m l(xi)} dxi stabilize as Xi doubles?
inline RegularityProbe psi_regularity_probe(int m, int k, double Xi = 1e4) {
  RegularityProbe p;
  p.m = m;
  p.k = k;
  // xi = e^u - 1
  auto f = [m, k](double u) {
    double xi = std::expm1(u);
    return std::pow(xi, k) * std::exp(-m * smoothed_log(xi)) * std::exp(u);
  };
  double u1 = std::log1p(Xi), u2 = std::log1p(2 * Xi);
  p.integral_short = integrate_panels<20>(f, 0, u1, static_cast<int>(std::ceil(u1 / 0.25)));
  p.integral_long = p.integral_short + integrate_panels<20>(f, u1, u2, 4);
  p.relative_change = (p.integral_long - p.integral_short) / p.integral_long;
  p.pass = p.relative_change < 1e-3;
  return p;
}

namespace detail {

struct HalfLinePlan {
  std::vector<double> t;
  std::vector<double> w;
};

// Dyadic panels [-1,0], [-2,-1], [-4,-2], ... down to -T, each split for oscillation.
inline HalfLinePlan half_line_plan(double T, double freq) {
  const auto& gl = gauss_legendre<20>();
  HalfLinePlan p;
  double sub = std::min(0.5, 2.0 / std::max(1.0, freq));
  auto panel = [&](double a, double b) {
    int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / sub)));
    double w = (b - a) / pieces;
    for (int q = 0; q < pieces; ++q) {
      double lo = a + q * w, mid = lo + 0.5 * w;
      for (int i = 0; i < 20; ++i) {
        p.t.push_back(mid + 0.5 * w * gl.nodes[i]);
        p.w.push_back(0.5 * w * gl.weights[i]);
      }
    }
  };
  panel(-1, 0);
  for (double a = 1; a < T; a *= 2) panel(-2 * a, -a);
  return p;
}

inline double truncation_length(double C, double margin) {
  double T = std::log(std::max(C, 1e-300) / (margin * 1e-10)) / margin;
  return std::max(T, 1.0);
}

}  // namespace detail

// F_+(gamma_v)(z)(x) = int_{-inf}^0 v(x + t) e^{-itz} dt, for Im z > c.
inline cd contour_fourier_plus(const OrbitMap& gamma, cd z, double x_eval, double c = 0) {
  c = std::max(c, gamma.growth_c());
  if (!(z.imag() > c)) throw Error(ErrorCode::Contour, "F_+ needs Im z > c");
  double margin = z.imag() - c;
  double C = gamma.growth_C();
  if (C == 0) return 0;
  double T = detail::truncation_length(C, margin);
  if (T > 1e4) throw Error(ErrorCode::Truncation, "tail bound needs T > 1e4");
  auto plan = detail::half_line_plan(T, std::abs(z.real()));
  cld s = 0;
  for (std::size_t i = 0; i < plan.t.size(); ++i) {
    double t = plan.t[i];
    cd term = gamma.evaluate(t, x_eval) * std::exp(cd(0, -1) * t * z) * plan.w[i];
    s += cld(term.real(), term.imag());
  }
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

// F_-(gamma_v)(z)(x) = -int_0^inf v(x + t) e^{-itz} dt, for Im z < -c.
inline cd contour_fourier_minus(const OrbitMap& gamma, cd z, double x_eval, double c = 0) {
  c = std::max(c, gamma.growth_c());
  if (!(z.imag() < -c)) throw Error(ErrorCode::Contour, "F_- needs Im z < -c");
  double margin = -z.imag() - c;
  double C = gamma.growth_C();
  if (C == 0) return 0;
  double T = detail::truncation_length(C, margin);
  if (T > 1e4) throw Error(ErrorCode::Truncation, "tail bound needs T > 1e4");
  auto plan = detail::half_line_plan(T, std::abs(z.real()));
  cld s = 0;
  for (std::size_t i = 0; i < plan.t.size(); ++i) {
    double t = -plan.t[i];
    cd term = gamma.evaluate(t, x_eval) * std::exp(cd(0, -1) * t * z) * plan.w[i];
    s += cld(term.real(), term.imag());
  }
  return {-static_cast<double>(s.real()), -static_cast<double>(s.imag())};
}

// Spectral (Cauchy) form of F_+ and F_-: (2 pi)^{-1} sum_eta vhat(eta) e^{i eta x} (-i)/(eta - z) deta.
inline cd contour_fourier_spectral(const OrbitMap& gamma, cd z, double x_eval) {
  const auto& g = gamma.vector().group();
  const auto& s = gamma.spectrum();
  double deta = g.is_circle() ? 1.0 : g.frequency_step();
  cld acc = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == cd(0)) continue;
    double eta = g.frequency(k);
    cd term = s[k] * std::polar(1.0, eta * x_eval) * cd(0, -1) / (eta - z);
    acc += cld(term.real(), term.imag());
  }
  cd r(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  return r * deta / (2 * std::numbers::pi);
}

namespace detail {

// Closed clockwise rectangle |Re t| <= X, |Im t| <= h: the two lines of the inverse
// transform joined by vertical sides. Nodes carry dt already.
struct Rectangle {
  std::vector<cd> t;
  std::vector<cd> dt;
};

inline Rectangle rectangle(double X, double h) {
  const auto& gl = gauss_legendre<20>();
  Rectangle r;
  auto seg = [&](cd a, cd b, double width) {
    int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / width)));
    cd step = (b - a) / static_cast<double>(pieces);
    for (int q = 0; q < pieces; ++q) {
      cd lo = a + step * static_cast<double>(q), mid = lo + 0.5 * step;
      for (int i = 0; i < 20; ++i) {
        r.t.push_back(mid + 0.5 * step * gl.nodes[i]);
        r.dt.push_back(0.5 * step * gl.weights[i]);
      }
    }
  };
  seg({-X, h}, {X, h}, 0.25);
  seg({X, h}, {X, -h}, 0.25);
  seg({X, -h}, {-X, -h}, 0.25);
  seg({-X, -h}, {-X, h}, 0.25);
  return r;
}

// I(eta) = oint weight(t) (-i)/(eta - t) dt ; equals 2 pi weight(eta) by Cauchy.
inline std::vector<cd> rectangle_modes(const Rectangle& rect, const std::vector<cd>& weight,
                                       const std::vector<double>& etas) {
  std::vector<cd> out(etas.size());
  for (std::size_t e = 0; e < etas.size(); ++e) {
    cld s = 0;
    for (std::size_t i = 0; i < rect.t.size(); ++i) {
      cd term = weight[i] * rect.dt[i] / (etas[e] - rect.t[i]);
      s += cld(term.real(), term.imag());
    }
    out[e] = cd(0, -1) * cd(static_cast<double>(s.real()), static_cast<double>(s.imag()));
  }
  return out;
}

}  // namespace detail

struct HyperFactorization {
  double c = 0;
  double R = 0;
  SampledSignal factor_kernel;  // F^{-1}(e^{-g})
  DecayCertificate factor_certificate;
  RepVector partner;            // F^{-1}(e^{g} F(gamma_v))(0)
  double error = 0;             // full grid
  double probe_error = 0;       // 17-point evaluation grid
  double inversion_residual = 0;
  double contour_independence = 0;
  double quadrature_crosscheck = 0;
  double rectangle_half_width = 0;
};

struct HyperOptions {
  std::vector<double> n_list = {1, 2, 3};
  double radius = 8;
  bool diagnostics = true;
};

// v = (2 pi)^{-2} Pi(F^{-1}(e^{-g})) F^{-1}(e^{g} F(gamma_v))(0), g(z) = (R z/2) erf z.
// The vector-valued transforms act diagonally on the Fourier modes of v, so the contour
// integrals are evaluated per mode eta.
inline HyperFactorization strong_factorize_vector(const RepVector& v, double c, double R,
                                                  const HyperOptions& opts = {}) {
  if (!(R > 0)) throw Error(ErrorCode::Domain, "R must be positive");
  if (!(c > v.rep.weight_c)) throw Error(ErrorCode::Contour, "c must exceed the growth rate of the representation");
  const auto& g = v.group();
  if (g.is_circle()) throw Error(ErrorCode::Config, "hyperfunction factorization is for the real line");
  HyperFactorization out;
  out.c = c;
  out.R = R;
  OrbitMap gamma(v);
  const auto& spec = gamma.spectrum();
  std::size_t n = g.size();
  std::vector<std::size_t> idx;
  std::vector<double> etas;
  for (std::size_t k = 0; k < n; ++k)
    if (spec[k] != cd(0)) idx.push_back(k), etas.push_back(g.frequency(k));

  auto gfun = [R](cd t) { return 0.5 * R * t * erf(t); };
  double edge = 0;
  for (double e : etas) edge = std::max(edge, std::abs(e));
  double X = edge + 4 + 8 * c;
  out.rectangle_half_width = X;

  auto partner_modes = [&](double h) {
    auto rect = detail::rectangle(X, h);
    std::vector<cd> w(rect.t.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(gfun(rect.t[i]));
    return detail::rectangle_modes(rect, w, etas);
  };

  auto I = partner_modes(2 * c);
  std::vector<cd> wspec(n, 0.0);
  for (std::size_t e = 0; e < idx.size(); ++e) wspec[idx[e]] = spec[idx[e]] * I[e];

  if (!idx.empty()) {
    double wmax = max_abs(wspec), outer = 0;
    for (std::size_t e = 0; e < idx.size(); ++e)
      if (std::abs(etas[e]) >= 0.8 * edge) outer = std::max(outer, std::abs(wspec[idx[e]]));
    if (!std::isfinite(wmax) || (idx.size() > 8 && outer > 1e-6 * wmax))
      throw Error(ErrorCode::Growth, "e^{g} F(gamma_v) does not decay on the frequency grid");
  }

  out.partner = with_data(v, signal_from_spectrum(g, wspec), "partner(" + v.id + ")");

  Kernel phi = kernel_of_symbol(EntireSymbol::erf_linear(R), g);
  out.factor_kernel = phi.signal;
  for (auto& x : out.factor_kernel.values) x *= 2 * std::numbers::pi;
  auto fk = phi;
  fk.signal = out.factor_kernel;
  for (auto& x : fk.noise_floor) x *= 2 * std::numbers::pi;
  out.factor_certificate = decay_certificate_kernel(fk, opts.n_list, opts.radius);
  out.factor_certificate.subject = "F^{-1}(e^{-g})";

  // Pi(phi) acts on mode eta by phihat(-eta) = 2 pi e^{-g(eta)}
  std::vector<cd> rec(n, 0.0);
  double scale = 1 / std::pow(2 * std::numbers::pi, 2);
  for (std::size_t k = 0; k < n; ++k) rec[k] = wspec[k] * (2 * std::numbers::pi) * phi.spectrum[(n - k) % n] * scale;
  auto vr = from_spectrum(g, std::move(rec));
  for (std::size_t j = 0; j < n; ++j) {
    double d = std::abs(vr[j] - v.data[j]);
    out.error = std::max(out.error, d);
    double x = g.signed_point(j);
    if (std::abs(x) <= 8 && std::abs(x - std::round(x)) < 0.5 * g.spacing()) out.probe_error = std::max(out.probe_error, d);
  }

  if (opts.diagnostics && !idx.empty()) {
    // Cauchy: heights 2c and 3c give the same inverse transform
    auto I3 = partner_modes(3 * c);
    double num = 0, den = 0;
    for (std::size_t e = 0; e < idx.size(); ++e) {
      num = std::max(num, std::abs(spec[idx[e]] * (I[e] - I3[e])));
      den = std::max(den, std::abs(spec[idx[e]] * I[e]));
    }
    out.contour_independence = num / den;

    // F^{-1}(F(gamma_v))(x) = 2 pi gamma_v(x) at probe points
    auto rect = detail::rectangle(X, 2 * c);
    double worst = 0, vnorm = v.norm();
    for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      std::vector<cd> w(rect.t.size());
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(cd(0, 1) * rect.t[i] * x);
      auto J = detail::rectangle_modes(rect, w, etas);
      std::vector<cd> s2(n, 0.0);
      for (std::size_t e = 0; e < idx.size(); ++e) s2[idx[e]] = spec[idx[e]] * J[e];
      auto inv = from_spectrum(g, std::move(s2));
      auto shifted = gamma.at(x);
      for (std::size_t j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(inv[j] - 2 * std::numbers::pi * shifted.data[j]));
    }
    out.inversion_residual = worst / (2 * std::numbers::pi * vnorm);

    // half-line quadrature against the spectral Cauchy form
    double q = 0;
    for (double xi : {-1.5, 0.0, 2.0})
      for (double x : {0.0, 1.0}) {
        cd zp(xi, 2 * c), zm(xi, -2 * c);
        q = std::max(q, std::abs(contour_fourier_plus(gamma, zp, x, c) - contour_fourier_spectral(gamma, zp, x)));
        q = std::max(q, std::abs(contour_fourier_minus(gamma, zm, x, c) - contour_fourier_spectral(gamma, zm, x)));
      }
    out.quadrature_crosscheck = q;
  }
  return out;
}

struct ScalarHyperCheck {
  double value = 0;
  double reconstructed = 0;
  double error = 0;
};

// Trivial one-dimensional representation: gamma_v(t) = v, a single mode at eta = 0.
inline ScalarHyperCheck strong_factorize_scalar(double v, double c, double R,
                                                const GroupSpec& g = GroupSpec::real_line()) {
  if (!(c > 0)) throw Error(ErrorCode::Contour, "c must be positive");
  auto gfun = [R](cd t) { return 0.5 * R * t * erf(t); };
  auto rect = detail::rectangle(4 + 8 * c, 2 * c);
  std::vector<cd> w(rect.t.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(gfun(rect.t[i]));
  cd partner = v * detail::rectangle_modes(rect, w, {0.0})[0];
  Kernel phi = kernel_of_symbol(EntireSymbol::erf_linear(R), g);
  double mass = 2 * std::numbers::pi * phi.mass;  // the trivial representation integrates phi
  ScalarHyperCheck r;
  r.value = v;
  r.reconstructed = (partner * mass).real() / std::pow(2 * std::numbers::pi, 2);
  r.error = std::abs(r.reconstructed - v);
  return r;
}

}  // namespace afact
