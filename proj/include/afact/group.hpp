#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "afact/error.hpp"
#include "afact/fft.hpp"
#include "afact/special.hpp"

namespace afact {

// Relative level below which spectral coefficients are treated as transform noise.
inline constexpr double kSpectralFloor = 1e-14;

struct GroupSpec {
  enum class Kind { RealLine, Circle };

  Kind kind = Kind::RealLine;
  double half_length = 64;  // RealLine
  std::size_t samples = 65536;
  std::size_t modes = 256;  // Circle: grid has 4M points

  static GroupSpec real_line(double L = 64, std::size_t N = 65536) {
    if (!(L > 0) || N < 8 || (N & (N - 1)) != 0)
      throw Error(ErrorCode::Config, "real line grid needs L > 0 and N a power of two");
    GroupSpec g;
    g.kind = Kind::RealLine;
    g.half_length = L;
    g.samples = N;
    return g;
  }

  static GroupSpec circle(std::size_t M = 256) {
    if (M < 1) throw Error(ErrorCode::Config, "circle needs M >= 1");
    GroupSpec g;
    g.kind = Kind::Circle;
    g.modes = M;
    g.samples = 4 * M;
    g.half_length = std::numbers::pi;
    return g;
  }

  bool is_circle() const { return kind == Kind::Circle; }
  std::size_t size() const { return samples; }
  double spacing() const { return 2 * half_length / static_cast<double>(samples); }
  double origin() const { return is_circle() ? 0.0 : -half_length; }
  std::size_t zero_index() const { return is_circle() ? 0 : samples / 2; }

  double point(std::size_t j) const { return origin() + spacing() * static_cast<double>(j); }

  // Signed coordinate in [-L, L): the representative of the grid point nearest the identity.
  double signed_point(std::size_t j) const {
    double x = point(j);
    if (is_circle() && x >= std::numbers::pi) x -= 2 * std::numbers::pi;
    return x;
  }

  // d(x) = |x| on R, geodesic distance on the circle.
  double distance(std::size_t j) const { return std::abs(signed_point(j)); }

  double frequency_step() const { return std::numbers::pi / half_length; }

  // Signed frequency for FFT index k.
  double frequency(std::size_t k) const {
    auto n = static_cast<long long>(samples);
    auto kk = static_cast<long long>(k);
    if (kk >= n / 2) kk -= n;
    return frequency_step() * static_cast<double>(kk);
  }

  double nyquist() const { return frequency_step() * static_cast<double>(samples / 2); }

  std::string describe() const {
    if (is_circle()) return "circle(M=" + std::to_string(modes) + ")";
    char buf[96];
    std::snprintf(buf, sizeof buf, "real_line(L=%g,N=%zu)", half_length, samples);
    return buf;
  }

  bool operator==(const GroupSpec& o) const {
    return kind == o.kind && samples == o.samples && half_length == o.half_length;
  }
};

struct SampledSignal {
  GroupSpec group;
  std::vector<cd> values;
  std::optional<double> analyticity_radius;

  SampledSignal() = default;
  SampledSignal(GroupSpec g, std::vector<cd> v) : group(g), values(std::move(v)) {
    if (values.size() != group.size()) throw Error(ErrorCode::Config, "signal length does not match grid");
  }

  template <class F>
  static SampledSignal from_function(const GroupSpec& g, F&& f) {
    std::vector<cd> v(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) v[j] = f(g.signed_point(j));
    return SampledSignal(g, std::move(v));
  }

  std::size_t size() const { return values.size(); }
  const cd& operator[](std::size_t j) const { return values[j]; }
  cd& operator[](std::size_t j) { return values[j]; }

  double sup_norm() const {
    double m = 0;
    for (const auto& x : values) m = std::max(m, std::abs(x));
    return m;
  }

  // Index of the reflected point -x.
  std::size_t mirror(std::size_t j) const {
    std::size_t n = size(), z = group.zero_index();
    return (2 * z + n - j) % n;
  }

  // max over the grid of |v(-x) - v(x)| and |Im v|
  double even_real_defect() const {
    double d = 0;
    for (std::size_t j = 0; j < size(); ++j) {
      d = std::max(d, std::abs(values[mirror(j)] - values[j]));
      d = std::max(d, std::abs(values[j].imag()));
    }
    return d;
  }
};

// Continuous-normalized transform: vhat(xi_k) = int v(x) e^{-i x xi_k} dx (R) or
// int_0^{2pi} v e^{-ik theta} d theta (circle), by the trapezoid rule.
inline std::vector<cd> to_spectrum(const GroupSpec& g, const std::vector<cd>& values) {
  auto out = fft_of_size(g.size())->forward(values);
  double h = g.spacing();
  bool alt = !g.is_circle();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] *= (alt && (k & 1)) ? -h : h;
  return out;
}

// Inverse: v(x_j) = (2 pi)^{-1} sum_k vhat_k e^{i x_j xi_k} dxi (R) or (2 pi)^{-1} sum_k vhat_k e^{ik theta_j}.
inline std::vector<cd> from_spectrum(const GroupSpec& g, std::vector<cd> spec) {
  double s = 1.0 / (static_cast<double>(g.size()) * g.spacing());
  bool alt = !g.is_circle();
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= (alt && (k & 1)) ? -s : s;
  return fft_of_size(g.size())->backward(spec);
}

inline std::vector<cd> to_spectrum(const SampledSignal& v) { return to_spectrum(v.group, v.values); }

inline SampledSignal signal_from_spectrum(const GroupSpec& g, std::vector<cd> spec) {
  return SampledSignal(g, from_spectrum(g, std::move(spec)));
}

inline double max_abs(const std::vector<cd>& v) {
  double m = 0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

// Zeroes coefficients below rel * max|vhat|; returns the threshold used.
inline double denoise_spectrum(std::vector<cd>& spec, double rel = kSpectralFloor) {
  double t = rel * max_abs(spec);
  for (auto& x : spec)
    if (std::abs(x) <= t) x = 0;
  return t;
}

// Largest |xi| carrying a nonzero coefficient.
inline double support_edge(const GroupSpec& g, const std::vector<cd>& spec) {
  double e = 0;
  for (std::size_t k = 0; k < spec.size(); ++k)
    if (spec[k] != cd(0)) e = std::max(e, std::abs(g.frequency(k)));
  return e;
}

// max |vhat| over |xi| >= frac * Nyquist, relative to max |vhat|.
inline double outer_band_ratio(const GroupSpec& g, const std::vector<cd>& spec, double frac = 0.9) {
  double all = max_abs(spec), outer = 0;
  if (all == 0) return 0;
  double cut = frac * g.nyquist();
  for (std::size_t k = 0; k < spec.size(); ++k)
    if (std::abs(g.frequency(k)) >= cut) outer = std::max(outer, std::abs(spec[k]));
  return outer / all;
}

// max |v| over the outer 10% of the R window, relative to max |v|; 0 on the circle.
inline double window_edge_ratio(const SampledSignal& v) {
  if (v.group.is_circle()) return 0;
  double all = v.sup_norm(), outer = 0;
  if (all == 0) return 0;
  double cut = 0.9 * v.group.half_length;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (std::abs(v.group.signed_point(j)) >= cut) outer = std::max(outer, std::abs(v[j]));
  return outer / all;
}

// Band-limited interpolation v(x) = (2 pi)^{-1} sum_k vhat_k e^{i x xi_k} dxi from a spectrum.
inline cd spectral_interpolate(const GroupSpec& g, const std::vector<cd>& spec, double x) {
  double dxi = g.is_circle() ? 1.0 : g.frequency_step();
  cld s = 0;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    if (spec[k] == cd(0)) continue;
    double ph = g.frequency(k) * x;
    s += cld(spec[k].real(), spec[k].imag()) * cld(std::cos(ph), std::sin(ph));
  }
  cd r(static_cast<double>(s.real()), static_cast<double>(s.imag()));
  return r * dxi / (2 * std::numbers::pi);
}

}  // namespace afact
