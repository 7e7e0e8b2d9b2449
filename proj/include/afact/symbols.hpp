#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "afact/certificate.hpp"
#include "afact/error.hpp"
#include "afact/quadrature.hpp"
#include "afact/special.hpp"

namespace afact {

struct WedgeRegion {
  double N = 1;
  double theta = 0.5;

  bool contains(cd z) const {
    double y = std::abs(z.imag());
    return y < N || y < theta * std::abs(z.real());
  }
};

namespace detail {

inline cd right_half(cd z) { return z.real() < 0 ? -z : z; }

// eps * z * erf(z) on the right half plane, even in z.
inline cd eps_z_erf(double eps, cd z) {
  cd w = right_half(z);
  return eps * w * erf(w);
}

}  // namespace detail

// 2 exp(-eps z erf z)
inline cd alpha(double eps, cd z) {
  if (!(eps > 0)) throw Error(ErrorCode::Domain, "alpha needs eps > 0");
  cd a = detail::eps_z_erf(eps, z);
  if (a.real() < -700) throw Error(ErrorCode::Overflow, "Re(eps z erf z) < -700");
  return 2.0 * std::exp(-a);
}

// 1 - alpha cosh, as -expm1(eps w erfc w) - exp(-eps w (1 + erf w)), w = +-z with Re w >= 0.
inline cd beta(double eps, cd z) {
  if (!(eps > 0)) throw Error(ErrorCode::Domain, "beta needs eps > 0");
  cd w = detail::right_half(z);
  cld ec = erfc_right(w);
  cd erfcw(static_cast<double>(ec.real()), static_cast<double>(ec.imag()));
  cd a = eps * w * erfcw;
  cd b = -eps * w * (2.0 - erfcw);
  if (a.real() > 700 || b.real() > 700) throw Error(ErrorCode::Overflow, "Re(eps z erf z) < -700");
  return -expm1(a) - std::exp(b);
}

// |alpha cosh + beta - 1| with alpha cosh in the stable exponential-sum form.
// Returns +inf where the exponential sum exceeds the double range.
inline double identity_residual(double eps, cd z) {
  cd w = detail::right_half(z);
  cld ec = erfc_right(w);
  cd erfcw(static_cast<double>(ec.real()), static_cast<double>(ec.imag()));
  cd a = eps * w * erfcw;
  cd b = -eps * w * (2.0 - erfcw);
  if (a.real() > 700 || b.real() > 700) return std::numeric_limits<double>::infinity();
  cd sum = std::exp(a) + std::exp(b);
  cd bt = -expm1(a) - std::exp(b);
  return std::abs(sum + bt - 1.0);
}

// Magnitude scale of alpha cosh at z, for rounding-relative residuals.
inline double identity_scale(double eps, cd z) {
  cd w = detail::right_half(z);
  cld ec = erfc_right(w);
  cd erfcw(static_cast<double>(ec.real()), static_cast<double>(ec.imag()));
  double ra = (eps * w * erfcw).real(), rb = (-eps * w * (2.0 - erfcw)).real();
  return std::max(1.0, std::exp(std::max(ra, rb)));
}

struct IdentitySweep {
  double eps = 0;
  int points = 0;
  int overflowed = 0;  // points where the exponential sum leaves the double range
  double max_residual = 0;
  double max_relative = 0;  // residual / max(1, |alpha cosh|)
  cd argmax{};
};

// identity_residual at `count` points drawn uniformly from W with |z| <= radius.
inline IdentitySweep identity_sweep(double eps, const WedgeRegion& W, int count = 1000, double radius = 50,
                                    std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  IdentitySweep s;
  s.eps = eps;
  while (s.points < count) {
    cd z(u(rng), u(rng));
    if (std::abs(z) > radius || !W.contains(z)) continue;
    ++s.points;
    double r = identity_residual(eps, z);
    if (!std::isfinite(r)) {
      ++s.overflowed;
      s.max_residual = r;
      s.argmax = z;
      continue;
    }
    if (r > s.max_residual) s.max_residual = r, s.argmax = z;
    s.max_relative = std::max(s.max_relative, r / identity_scale(eps, z));
  }
  return s;
}

// z erf z + e^{-z^2}/sqrt(pi), the Gaussian-smoothed |t|.
inline cd smoothed_abs(cd z) {
  cd w = detail::right_half(z);
  return w * erf(w) + std::exp(-w * w) / std::sqrt(std::numbers::pi);
}

namespace detail {

inline constexpr double kLogWindow = 9.0;

template <class T, class Kernel>
T smoothed_log_sum(double x, Kernel&& gauss) {
  double a = x - kLogWindow, b = x + kLogWindow;
  double cuts[3] = {a, b, b};
  int nc = 2;
  if (a < 0 && b > 0) cuts[1] = 0, cuts[2] = b, nc = 3;
  T sum{};
  for (int s = 0; s + 1 < nc; ++s) {
    double lo = cuts[s], hi = cuts[s + 1];
    int panels = std::max(1, static_cast<int>(std::ceil(hi - lo)));
    sum += integrate_panels<20>([&](double t) { return gauss(t) * std::log1p(std::abs(t)); }, lo, hi, panels);
  }
  return sum / std::sqrt(std::numbers::pi);
}

}  // namespace detail

// l(x) = pi^{-1/2} int e^{-(x-t)^2} log(1+|t|) dt on the real axis.
inline double smoothed_log(double x) {
  x = std::abs(x);
  return detail::smoothed_log_sum<double>(x, [x](double t) { return std::exp(-(x - t) * (x - t)); });
}

inline cd smoothed_log(cd z) {
  if (std::abs(z.imag()) > 4) throw Error(ErrorCode::Domain, "smoothed_log needs |Im z| <= 4");
  cd w = detail::right_half(z);
  if (w.imag() == 0) return smoothed_log(w.real());
  return detail::smoothed_log_sum<cd>(w.real(), [w](double t) { return std::exp(-(w - t) * (w - t)); });
}

struct DecayClass {
  double c = 0;
  double theta = 0.5;
};

class EntireSymbol {
 public:
  enum class Kind { Alpha, Beta, Heat, SmoothedLogExp, ErfLinear, Custom };
  using Fn = std::function<cd(cd)>;

  static EntireSymbol alpha_symbol(double eps) {
    EntireSymbol s(Kind::Alpha, "alpha", {eps});
    s.fn_ = [eps](cd z) { return afact::alpha(eps, z); };
    s.log_abs_ = [eps](cd z) { return std::log(2.0) - detail::eps_z_erf(eps, z).real(); };
    s.decay_ = DecayClass{0.9 * eps / std::sqrt(1.25), 0.5};
    s.wedge_ = WedgeRegion{2, 0.9};
    return s;
  }

  static EntireSymbol beta_symbol(double eps) {
    EntireSymbol s(Kind::Beta, "beta", {eps});
    s.fn_ = [eps](cd z) { return afact::beta(eps, z); };
    s.log_abs_ = [eps](cd z) {
      cd a = detail::eps_z_erf(eps, z);
      if (a.real() < -600) {
        cd w = detail::right_half(z);
        return std::log(2.0) - a.real() + std::log(std::abs(std::cosh(eps * w)));
      }
      return std::log(std::abs(afact::beta(eps, z)));
    };
    s.decay_ = DecayClass{1.8 * eps / std::sqrt(1.25), 0.5};
    s.wedge_ = WedgeRegion{2, 0.9};
    return s;
  }

  static EntireSymbol heat() {
    EntireSymbol s(Kind::Heat, "heat", {});
    s.fn_ = [](cd z) { return std::exp(-z * z); };
    s.log_abs_ = [](cd z) { return -(z * z).real(); };
    s.decay_ = DecayClass{5, 0.5};
    s.wedge_ = WedgeRegion{4, 0.9};
    return s;
  }

  // exp(sign * m * l(z)); polynomially decaying for sign < 0, so no decay class.
  static EntireSymbol smoothed_log_exp(int m, int sign) {
    EntireSymbol s(Kind::SmoothedLogExp, sign < 0 ? "exp(-m l)" : "exp(m l)",
                   {static_cast<double>(m), static_cast<double>(sign)});
    double k = static_cast<double>(sign) * m;
    s.fn_ = [k](cd z) { return std::exp(k * smoothed_log(z)); };
    s.real_fn_ = [k](double x) { return std::exp(k * smoothed_log(x)); };
    s.wedge_ = WedgeRegion{2, 0.9};
    return s;
  }

  // exp(-(R/2) z erf z) = alpha_{R/2} / 2
  static EntireSymbol erf_linear(double R) {
    EntireSymbol s(Kind::ErfLinear, "erf_linear", {R});
    s.fn_ = [R](cd z) { return std::exp(-detail::eps_z_erf(0.5 * R, z)); };
    s.log_abs_ = [R](cd z) { return -detail::eps_z_erf(0.5 * R, z).real(); };
    s.decay_ = DecayClass{0.45 * R / std::sqrt(1.25), 0.5};
    s.wedge_ = WedgeRegion{2, 0.9};
    return s;
  }

  static EntireSymbol custom(std::string name, Fn fn, std::vector<double> params = {},
                             std::optional<DecayClass> decay = std::nullopt,
                             std::optional<WedgeRegion> wedge = std::nullopt) {
    EntireSymbol s(Kind::Custom, std::move(name), std::move(params));
    s.fn_ = std::move(fn);
    s.decay_ = decay;
    s.wedge_ = wedge;
    return s;
  }

  static EntireSymbol cosh_symbol(double eps) {
    return custom("cosh", [eps](cd z) { return std::cosh(eps * z); }, {eps});
  }

  // 1/(1+z^2): poles at +-i, deliberately outside every decay class.
  static EntireSymbol lorentzian() {
    return custom("lorentzian", [](cd z) { return 1.0 / (1.0 + z * z); });
  }

  static EntireSymbol constant(double value) {
    return custom("constant", [value](cd) { return cd(value); }, {value});
  }

  EntireSymbol times(const EntireSymbol& o) const {
    Fn f = fn_, g = o.fn_;
    std::optional<WedgeRegion> w;
    if (wedge_ && o.wedge_)
      w = WedgeRegion{std::min(wedge_->N, o.wedge_->N), std::min(wedge_->theta, o.wedge_->theta)};
    std::vector<double> p = params_;
    p.insert(p.end(), o.params_.begin(), o.params_.end());
    auto s = custom(name_ + "*" + o.name_, [f, g](cd z) { return f(z) * g(z); }, p, std::nullopt, w);
    if (real_fn_ || o.real_fn_) {
      auto fa = *this, fb = o;
      s.real_fn_ = [fa, fb](double x) { return fa.at_real(x) * fb.at_real(x); };
    }
    return s;
  }

  cd operator()(cd z) const { return fn_(z); }

  // Real-axis evaluation (fast path for symbols with a real quadrature).
  double at_real(double x) const { return real_fn_ ? real_fn_(x) : fn_(cd(x, 0)).real(); }

  double log_abs(cd z) const { return log_abs_ ? log_abs_(z) : std::log(std::abs(fn_(z))); }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<double>& params() const { return params_; }
  const std::optional<DecayClass>& decay_class() const { return decay_; }
  // Region where contour shifts of the kernel integral are admissible.
  const std::optional<WedgeRegion>& analytic_wedge() const { return wedge_; }

  EntireSymbol with_wedge(std::optional<WedgeRegion> w) const {
    EntireSymbol s = *this;
    s.wedge_ = w;
    return s;
  }

 private:
  EntireSymbol(Kind k, std::string name, std::vector<double> params)
      : kind_(k), name_(std::move(name)), params_(std::move(params)) {}

  Kind kind_;
  std::string name_;
  std::vector<double> params_;
  Fn fn_;
  std::function<double(double)> real_fn_;
  std::function<double(cd)> log_abs_;
  std::optional<DecayClass> decay_;
  std::optional<WedgeRegion> wedge_;
};

struct SymbolGrid {
  double radius = 40;
  double radial_step = 0.25;
  int angles = 256;  // over the closed upper half plane
};

// Sup of |f(z)| e^{c|z|} over W with |z| <= radius, using evenness to cover the lower half.
inline DecayCertificate decay_certificate_symbol(const EntireSymbol& f, double c, const WedgeRegion& W,
                                                 const SymbolGrid& grid = {}) {
  DecayCertificate cert;
  cert.subject = f.name();
  cert.radius = grid.radius;
  ShellAccumulator acc(grid.radius, c);
  int nr = static_cast<int>(std::ceil(grid.radius / grid.radial_step));
  for (int i = 0; i <= nr; ++i) {
    double r = std::min(grid.radius, i * grid.radial_step);
    for (int a = 0; a <= grid.angles; ++a) {
      double phi = std::numbers::pi * a / grid.angles;
      cd z = std::polar(r, phi);
      if (!W.contains(z)) continue;
      double lv;
      try {
        lv = f.log_abs(z) + c * r;
      } catch (const Error&) {
        lv = std::numeric_limits<double>::infinity();
      }
      acc.add(r, lv, z.real(), z.imag());
    }
  }
  cert.entries.push_back(acc.finish());
  return cert;
}

}  // namespace afact
