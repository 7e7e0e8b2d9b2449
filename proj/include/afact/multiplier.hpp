#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "afact/certificate.hpp"
#include "afact/error.hpp"
#include "afact/group.hpp"
#include "afact/symbols.hpp"

namespace afact {

struct KernelOptions {
  double x_switch = 12;
  bool contour = true;
  bool allow_underresolved = false;
  // f(k * dxi) for k = 0..N/2 (R) or k = 0..M (circle), when the caller already has them.
  const std::vector<double>* symbol_samples = nullptr;
};

struct Kernel {
  SampledSignal signal;
  EntireSymbol symbol = EntireSymbol::constant(0);
  std::vector<DecayCertificate> certificates;
  bool symmetric = false;
  bool resolved = true;
  double mass = 0;
  double x_switch = 0;
  std::vector<double> contour_levels;
  std::vector<double> noise_floor;  // per grid point absolute accuracy estimate
  std::vector<cd> spectrum;         // symbol samples on the grid frequencies (the kernel's transform)

  const GroupSpec& group() const { return signal.group; }
};

namespace detail {

inline void check_even(const EntireSymbol& f) {
  const cd probes[] = {{0.3, 0}, {1.7, 0.4}, {5.2, -0.9}, {11.0, 0.2}};
  for (cd z : probes) {
    cd a = f(z), b = f(-z);
    if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
      throw Error(ErrorCode::NotEven, f.name() + " is not even");
  }
}

inline std::vector<double> symbol_samples(const EntireSymbol& f, const GroupSpec& g, std::size_t count) {
  std::vector<double> s(count + 1);
  double dxi = g.frequency_step();
  for (std::size_t k = 0; k <= count; ++k) s[k] = f.at_real(dxi * static_cast<double>(k));
  return s;
}

inline std::size_t abs_index(const GroupSpec& g, std::size_t k) {
  std::size_t n = g.size();
  return k <= n / 2 ? k : n - k;
}

inline double sum_abs_scaled(const GroupSpec& g, const std::vector<cd>& spec) {
  long double s = 0;
  for (const auto& x : spec) s += std::abs(x);
  double dxi = g.is_circle() ? 1.0 : g.frequency_step();
  return static_cast<double>(s) * dxi / (2 * std::numbers::pi);
}

inline constexpr double kRoundFactor = 4 * std::numeric_limits<double>::epsilon();

}  // namespace detail

// Shifted-contour values e^{-sigma|x|} (2pi)^{-1} sum_k f(xi_k + i sigma) e^{i|x| xi_k} dxi at arbitrary x.
inline std::vector<double> contour_kernel_values(const EntireSymbol& f, const GroupSpec& g, double sigma,
                                                 const std::vector<double>& xs) {
  std::size_t n = g.size();
  std::vector<cd> sh(n);
  for (std::size_t k = 0; k < n; ++k) sh[k] = f(cd(g.frequency(k), sigma));
  double dxi = g.frequency_step();
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) {
    double ax = std::abs(x);
    long double s = 0;
    for (std::size_t k = 0; k < n; ++k) {
      double ph = g.frequency(k) * ax;
      s += static_cast<long double>(sh[k].real()) * std::cos(ph) - static_cast<long double>(sh[k].imag()) * std::sin(ph);
    }
    out.push_back(std::exp(-sigma * ax) * static_cast<double>(s) * dxi / (2 * std::numbers::pi));
  }
  return out;
}

inline Kernel kernel_of_symbol(const EntireSymbol& f, const GroupSpec& g, const KernelOptions& opts = {}) {
  detail::check_even(f);
  Kernel K;
  K.symbol = f;
  K.x_switch = opts.x_switch;
  std::size_t n = g.size();
  std::size_t top = g.is_circle() ? g.modes : n / 2;
  std::vector<double> s = opts.symbol_samples ? *opts.symbol_samples : detail::symbol_samples(f, g, top);
  if (s.size() < top + 1) throw Error(ErrorCode::Config, "too few symbol samples");

  std::vector<cd> spec(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t a = detail::abs_index(g, k);
    if (a <= top) spec[k] = s[a];
  }
  double smax = 0;
  for (std::size_t k = 0; k <= top; ++k) smax = std::max(smax, std::abs(s[k]));
  double edge = std::abs(s[top]);
  K.resolved = edge <= 1e-14 * smax;
  if (!K.resolved && !opts.allow_underresolved)
    throw Error(ErrorCode::Resolution, f.name() + " has not decayed below 1e-14 at the band edge");

  double floor = detail::kRoundFactor * detail::sum_abs_scaled(g, spec);
  if (!K.resolved) floor += edge * g.nyquist() / std::numbers::pi;
  auto vals = from_spectrum(g, spec);
  K.spectrum = std::move(spec);
  K.noise_floor.assign(n, floor);

  if (!g.is_circle() && opts.contour && f.analytic_wedge() && K.resolved) {
    const auto& W = *f.analytic_wedge();
    double smax_level = W.N - 0.5;
    // sigma(x) = min(N - 0.5, theta x / 2), quantized down to multiples of 1/4
    std::vector<double> sigma_of(n, -1);
    for (std::size_t j = 0; j < n; ++j) {
      double x = g.signed_point(j);
      if (x <= opts.x_switch) continue;
      double sg = std::min(smax_level, std::floor(W.theta * x / 2 * 4) / 4);
      sigma_of[j] = sg;
    }
    std::vector<double> levels;
    for (double v : sigma_of)
      if (v > 0 && std::find(levels.begin(), levels.end(), v) == levels.end()) levels.push_back(v);
    for (double sg : levels) {
      std::vector<cd> sh(n);
      for (std::size_t k = 0; k < n; ++k) sh[k] = f(cd(g.frequency(k), sg));
      double shmax = max_abs(sh);
      double shedge = std::abs(sh[n / 2]);
      if (!(shedge <= 1e-14 * shmax)) continue;
      double sfloor = detail::kRoundFactor * detail::sum_abs_scaled(g, sh);
      auto H = from_spectrum(g, sh);
      // H is the periodization of e^{sg y} kappa(y); unless it has died out at the window
      // edge, the image from x + 2L leaks in.
      double hmax = 0, hedge = 0;
      for (std::size_t j = 0; j < n; ++j) {
        hmax = std::max(hmax, std::abs(H[j]));
        if (std::abs(g.signed_point(j)) >= 0.9 * g.half_length) hedge = std::max(hedge, std::abs(H[j]));
      }
      if (!(hedge <= 1e-14 * hmax)) continue;
      K.contour_levels.push_back(sg);
      for (std::size_t j = 0; j < n; ++j) {
        if (sigma_of[j] != sg) continue;
        double x = g.signed_point(j);
        double damp = std::exp(-sg * x);
        double v = damp * H[j].real();
        std::size_t m = (2 * g.zero_index() + n - j) % n;
        vals[j] = v;
        vals[m] = v;
        K.noise_floor[j] = K.noise_floor[m] = damp * sfloor;
      }
    }
  }

  K.signal = SampledSignal(g, std::move(vals));
  K.symmetric = K.signal.even_real_defect() <= 1e-12 * std::max(1.0, K.signal.sup_norm());
  long double mass = 0;
  for (const auto& v : K.signal.values) mass += v.real();
  K.mass = static_cast<double>(mass) * g.spacing();
  return K;
}

inline Kernel heat_kernel(const GroupSpec& g, const KernelOptions& opts = {}) {
  Kernel K = kernel_of_symbol(EntireSymbol::heat(), g, opts);
  if (std::abs(K.mass - 1) > 1e-12) throw Error(ErrorCode::Normalization, "heat kernel mass deviates from 1");
  return K;
}

struct MultiplierOptions {
  bool check_resolution = true;
};

inline SampledSignal apply_multiplier(const EntireSymbol& f, const SampledSignal& v,
                                      const MultiplierOptions& opts = {}) {
  const auto& g = v.group;
  auto spec = to_spectrum(v);
  denoise_spectrum(spec);
  if (max_abs(spec) == 0) return SampledSignal(g, std::vector<cd>(g.size(), 0.0));
  if (opts.check_resolution && outer_band_ratio(g, spec) > 1e-12)
    throw Error(ErrorCode::Resolution, "input spectrum not concentrated below 0.9 Nyquist");
  std::size_t n = g.size();
  // share of the band [0.8 edge, edge] relative to the peak, before and after multiplication
  double edge = support_edge(g, spec);
  auto outer_share = [&](const std::vector<cd>& s, std::size_t& count) {
    double all = max_abs(s), outer = 0;
    count = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (spec[k] == cd(0) || std::abs(g.frequency(k)) < 0.8 * edge) continue;
      outer = std::max(outer, std::abs(s[k]));
      ++count;
    }
    return outer / all;
  };
  std::size_t outer_count = 0;
  double share_in = outer_share(spec, outer_count);
  std::vector<double> fk(n / 2 + 1, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t k = 0; k < n; ++k) {
    if (spec[k] == cd(0)) continue;
    std::size_t a = detail::abs_index(g, k);
    if (std::isnan(fk[a])) fk[a] = f.at_real(g.frequency_step() * static_cast<double>(a));
    spec[k] *= fk[a];
  }
  // Domain check: a continuous spectrum must keep most of its decay after multiplication.
  double share_out = outer_share(spec, outer_count);
  if (!std::isfinite(max_abs(spec)) ||
      (outer_count > 2 && share_out > std::max(1e-6, std::pow(share_in, 0.25))))
    throw Error(ErrorCode::Unbounded, f.name() + " grows faster than the input spectrum decays");
  return signal_from_spectrum(g, std::move(spec));
}

inline SampledSignal convolve(const SampledSignal& phi, const SampledSignal& psi) {
  if (!(phi.group == psi.group)) throw Error(ErrorCode::Config, "convolution operands on different grids");
  if (window_edge_ratio(phi) > 1e-13 || window_edge_ratio(psi) > 1e-13)
    throw Error(ErrorCode::Wraparound, "operand not negligible on the outer 10% of the window");
  auto a = to_spectrum(phi), b = to_spectrum(psi);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] *= b[k];
  return signal_from_spectrum(phi.group, std::move(a));
}

inline DecayCertificate decay_certificate_kernel(const Kernel& K, const std::vector<double>& n_list, double radius) {
  DecayCertificate cert;
  cert.subject = "kernel(" + K.symbol.name() + ")";
  cert.radius = radius;
  const auto& g = K.group();
  for (double n : n_list) {
    ShellAccumulator acc(radius, n);
    double worst_floor = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < g.size(); ++j) {
      double r = g.distance(j);
      if (r > radius) continue;
      acc.add(r, n * r + std::log(std::abs(K.signal[j])), r);
      worst_floor = std::max(worst_floor, n * r + std::log(K.noise_floor[j]));
    }
    WeightedSupremum e = acc.finish();
    if (worst_floor > e.log_supremum + std::log(1e-3)) {
      e.verdict = Verdict::Inconclusive;
      e.reason = "precision-limited: e^{n|x|} times the evaluation floor reaches the measured sup";
    }
    cert.entries.push_back(e);
  }
  return cert;
}

struct WaveResidual {
  int k = 0;
  double lhs = 0;
  double rhs = 0;
  double residual = 0;
};

// int fhat(l) cos(l k) dl = f(k), with fhat = kappa_f computed on the real-line grid.
inline std::vector<WaveResidual> wave_crosscheck(const EntireSymbol& f, const std::vector<int>& modes,
                                                 const GroupSpec& g = GroupSpec::real_line()) {
  if (g.is_circle()) throw Error(ErrorCode::Config, "wave cross-check integrates over the real line");
  Kernel K = kernel_of_symbol(f, g);
  double tail = 0;
  for (std::size_t j = 0; j < g.size(); ++j)
    if (g.distance(j) >= 0.9 * g.half_length) tail = std::max(tail, std::abs(K.signal[j]));
  tail *= 0.2 * g.half_length;
  if (tail > 1e-12) throw Error(ErrorCode::Quadrature, "kernel tail truncation exceeds 1e-12");
  std::vector<WaveResidual> out;
  for (int k : modes) {
    long double s = 0;
    for (std::size_t j = 0; j < g.size(); ++j)
      s += static_cast<long double>(K.signal[j].real()) * std::cos(g.signed_point(j) * std::abs(k));
    WaveResidual r;
    r.k = k;
    r.lhs = static_cast<double>(s) * g.spacing();
    r.rhs = f.at_real(std::abs(k));
    r.residual = std::abs(r.lhs - r.rhs);
    out.push_back(r);
  }
  return out;
}

struct RegularizedDistance {
  SampledSignal dtilde;
  double sup_deviation = 0;
  double argmax = 0;
  double window = 0;  // deviation measured on |x| <= window
};

// d~ = rho * d by the periodic trapezoid rule plus the Euler-Maclaurin correction at the kinks of d.
inline RegularizedDistance regularized_distance(const GroupSpec& g) {
  Kernel rho = heat_kernel(g);
  std::size_t n = g.size();
  std::vector<cd> d(n);
  for (std::size_t j = 0; j < n; ++j) d[j] = g.distance(j);
  auto a = to_spectrum(g, rho.signal.values), b = to_spectrum(g, d);
  for (std::size_t k = 0; k < n; ++k) a[k] *= b[k];
  auto t = from_spectrum(g, std::move(a));
  double h = g.spacing(), c = h * h / 12;
  std::size_t z = g.zero_index(), far = (z + n / 2) % n;  // kinks: 0 (jump +2) and the antipode (jump -2)
  auto rho_at = [&](std::size_t j, std::size_t y) { return rho.signal[(j + z + n - y) % n].real(); };
  RegularizedDistance out;
  out.window = g.is_circle() ? std::numbers::pi : g.half_length - 10;
  for (std::size_t j = 0; j < n; ++j) {
    t[j] = t[j].real() + c * (2 * rho_at(j, z) - 2 * rho_at(j, far));
    double x = g.signed_point(j);
    if (std::abs(x) > out.window) continue;
    double dev = std::abs(t[j].real() - g.distance(j));
    if (dev > out.sup_deviation) {
      out.sup_deviation = dev;
      out.argmax = x;
    }
  }
  out.dtilde = SampledSignal(g, std::move(t));
  return out;
}

inline SampledSignal cutoff_chi(double delta, const GroupSpec& g) {
  if (!(delta > 0)) throw Error(ErrorCode::Domain, "cutoff needs delta > 0");
  auto d = regularized_distance(g).dtilde;
  for (auto& x : d.values) x = std::exp(-delta * x.real() * x.real());
  return d;
}

}  // namespace afact
