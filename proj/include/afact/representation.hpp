#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "afact/error.hpp"
#include "afact/group.hpp"
#include "afact/multiplier.hpp"
#include "afact/symbols.hpp"

namespace afact {

struct BanachRepSpec {
  enum class Space { BoundedContinuousLine, ContinuousCircle };

  GroupSpec group;
  Space space = Space::BoundedContinuousLine;
  double weight_c = 0;  // ||pi(g)|| <= C e^{c d(g)}
  double weight_C = 1;

  static BanachRepSpec translation(const GroupSpec& g = GroupSpec::real_line()) {
    if (g.is_circle()) throw Error(ErrorCode::Config, "translation representation lives on the real line");
    return {g, Space::BoundedContinuousLine, 0, 1};
  }
  static BanachRepSpec rotation(const GroupSpec& g = GroupSpec::circle()) {
    if (!g.is_circle()) throw Error(ErrorCode::Config, "rotation representation lives on the circle");
    return {g, Space::ContinuousCircle, 0, 1};
  }
  static BanachRepSpec natural(const GroupSpec& g) { return g.is_circle() ? rotation(g) : translation(g); }
};

struct RepVector {
  BanachRepSpec rep;
  SampledSignal data;
  std::optional<double> analyticity;
  std::string id;
  std::function<cd(double)> exact;  // closed form, when known

  const GroupSpec& group() const { return data.group; }
  double norm() const { return data.sup_norm(); }

  // v(x) off the grid: closed form if available, else band-limited interpolation.
  cd evaluate(double x) const {
    if (exact) return exact(x);
    auto spec = to_spectrum(data);
    denoise_spectrum(spec);
    return spectral_interpolate(group(), spec, x);
  }
};

inline RepVector make_vector(const GroupSpec& g, std::string id, std::function<cd(double)> f) {
  RepVector v;
  v.rep = BanachRepSpec::natural(g);
  v.data = SampledSignal::from_function(g, f);
  v.id = std::move(id);
  v.exact = std::move(f);
  return v;
}

inline RepVector with_data(const RepVector& like, SampledSignal data, std::string id) {
  RepVector v;
  v.rep = like.rep;
  v.data = std::move(data);
  v.id = std::move(id);
  return v;
}

namespace vectors {

inline RepVector zero(const GroupSpec& g) {
  return make_vector(g, "zero", [](double) { return cd(0); });
}

inline RepVector constant(const GroupSpec& g, double c = 1) {
  return make_vector(g, "constant", [c](double) { return cd(c); });
}

inline RepVector mode(const GroupSpec& g, int k) {
  return make_vector(g, "mode:" + std::to_string(k), [k](double x) { return std::polar(1.0, k * x); });
}

inline RepVector gaussian(const GroupSpec& g, double center = 0, double width = 1) {
  return make_vector(g, "gaussian", [=](double x) {
    double t = (x - center) / width;
    return cd(std::exp(-t * t));
  });
}

// a^2/(a^2 + (x-c)^2), periodized over the window so the sampled spectrum carries no edge kink.
inline RepVector lorentzian(const GroupSpec& g, double center = 0, double scale = 1) {
  double T = 2 * g.half_length, pi = std::numbers::pi;
  return make_vector(g, "lorentzian", [=](double x) {
    double u = 2 * pi * scale / T;
    return cd(pi * scale / T * std::sinh(u) / (std::cosh(u) - std::cos(2 * pi * (x - center) / T)));
  });
}

inline RepVector abs_gaussian(const GroupSpec& g) {
  return make_vector(g, "abs_gaussian", [](double x) { return cd(std::abs(x) * std::exp(-x * x)); });
}

}  // namespace vectors

class OrbitMap {
 public:
  explicit OrbitMap(RepVector v) : v_(std::move(v)) {
    spec_ = to_spectrum(v_.data);
    denoise_spectrum(spec_);
  }

  const RepVector& vector() const { return v_; }

  // gamma_v(g) = pi(g) v, i.e. x -> v(x + g), by a spectral shift.
  RepVector at(double g) const {
    if (g == 0) return v_;
    const auto& G = v_.group();
    auto s = spec_;
    for (std::size_t k = 0; k < s.size(); ++k) s[k] *= std::polar(1.0, G.frequency(k) * g);
    RepVector out = with_data(v_, signal_from_spectrum(G, std::move(s)), v_.id + "@shift");
    if (v_.exact) {
      auto f = v_.exact;
      out.exact = [f, g](double x) { return f(x + g); };
    }
    return out;
  }

  // gamma_v(t)(x) = v(x + t)
  cd evaluate(double t, double x) const {
    if (v_.exact) return v_.exact(x + t);
    return spectral_interpolate(v_.group(), spec_, x + t);
  }

  // Growth bound ||gamma_v(t)|| <= C e^{c|t|} ||v||.
  double growth_c() const { return v_.rep.weight_c; }
  double growth_C() const { return v_.rep.weight_C * v_.norm(); }

  const std::vector<cd>& spectrum() const { return spec_; }

 private:
  RepVector v_;
  std::vector<cd> spec_;
};

// Pi(phi) v (x) = int phi(g) v(x + g) dg, by FFT correlation.
inline RepVector pi_apply(const SampledSignal& phi, const RepVector& v) {
  const auto& g = v.group();
  if (!(phi.group == g)) throw Error(ErrorCode::Config, "pi_apply operands on different grids");
  if (window_edge_ratio(phi) > 1e-13)
    throw Error(ErrorCode::Decay, "phi is not negligible on the outer 10% of the window");
  auto a = to_spectrum(phi), b = to_spectrum(v.data);
  denoise_spectrum(b);
  std::size_t n = g.size();
  std::vector<cd> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = b[k] * a[(n - k) % n];
  return with_data(v, signal_from_spectrum(g, std::move(out)), "Pi(phi)" + v.id);
}

// Kernels act through their stored transform (the symbol samples), avoiding a second round trip.
inline RepVector pi_apply(const Kernel& K, const RepVector& v) {
  const auto& g = v.group();
  if (!(K.group() == g)) throw Error(ErrorCode::Config, "pi_apply operands on different grids");
  if (window_edge_ratio(K.signal) > 1e-13)
    throw Error(ErrorCode::Decay, "kernel is not negligible on the outer 10% of the window");
  auto b = to_spectrum(v.data);
  denoise_spectrum(b);
  std::size_t n = g.size();
  std::vector<cd> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = b[k] * K.spectrum[(n - k) % n];
  return with_data(v, signal_from_spectrum(g, std::move(out)), "Pi(kappa)" + v.id);
}

// ||v|| int |phi| e^{c d}, the continuity bound for Pi(phi) v.
inline double pi_continuity_bound(const SampledSignal& phi, const RepVector& v) {
  long double s = 0;
  for (std::size_t j = 0; j < phi.size(); ++j)
    s += std::abs(phi[j]) * std::exp(v.rep.weight_c * phi.group.distance(j));
  return v.rep.weight_C * v.norm() * static_cast<double>(s) * phi.group.spacing();
}

inline RepVector add(const RepVector& a, const RepVector& b, std::string id = "sum") {
  auto d = a.data;
  for (std::size_t j = 0; j < d.size(); ++j) d[j] += b.data[j];
  return with_data(a, std::move(d), std::move(id));
}

inline double sup_distance(const RepVector& a, const RepVector& b) {
  double m = 0;
  for (std::size_t j = 0; j < a.data.size(); ++j) m = std::max(m, std::abs(a.data[j] - b.data[j]));
  return m;
}

namespace detail {

inline double log_factorial(int n) { return std::lgamma(n + 1.0); }

// max_k log(|xi_k|^p |vhat_k|) over the nonzero spectrum
inline double log_moment_sup(const GroupSpec& g, const std::vector<cd>& spec, int p) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < spec.size(); ++k) {
    if (spec[k] == cd(0)) continue;
    double xi = std::abs(g.frequency(k));
    double lx = p == 0 ? 0.0 : (xi == 0 ? -std::numeric_limits<double>::infinity() : p * std::log(xi));
    m = std::max(m, lx + std::log(std::abs(spec[k])));
  }
  return m;
}

inline std::size_t support_count(const std::vector<cd>& spec) {
  return static_cast<std::size_t>(std::count_if(spec.begin(), spec.end(), [](cd x) { return x != cd(0); }));
}

}  // namespace detail

struct CoshSeriesResult {
  RepVector u;
  int terms = 0;  // J
  double tail_bound = 0;
  std::vector<double> log_envelope;  // log of eps^{2j}/(2j)! sup |xi^{2j} vhat|
};

inline constexpr int kSeriesCap = 60;

// sum_{j<=J} eps^{2j}/(2j)! Delta^j v, J from the spectral envelope tail bound.
inline CoshSeriesResult cosh_series_apply(double eps, const RepVector& v, double budget = 1e-15) {
  if (!(eps > 0)) throw Error(ErrorCode::Domain, "cosh series needs eps > 0");
  const auto& g = v.group();
  auto spec = to_spectrum(v.data);
  denoise_spectrum(spec);
  CoshSeriesResult r;
  double vmax = max_abs(spec);
  if (vmax == 0) {
    r.u = with_data(v, SampledSignal(g, std::vector<cd>(g.size(), 0.0)), "C_eps(" + v.id + ")");
    return r;
  }
  double xmax = support_edge(g, spec);
  std::size_t n = g.size();
  std::vector<double> term(n, 1.0), sum(n, 1.0), ex2(n);
  for (std::size_t k = 0; k < n; ++k) ex2[k] = std::pow(eps * g.frequency(k), 2);
  double log_budget = std::log(budget * vmax);
  bool done = false;
  for (int J = 0; J <= kSeriesCap; ++J) {
    if (J > 0) {
      double d = (2.0 * J - 1) * (2.0 * J);
      for (std::size_t k = 0; k < n; ++k) {
        if (spec[k] == cd(0)) continue;
        term[k] *= ex2[k] / d;
        sum[k] += term[k];
      }
    }
    r.log_envelope.push_back(2 * J * std::log(eps) - detail::log_factorial(2 * J) +
                             detail::log_moment_sup(g, spec, 2 * J));
    double q = std::pow(eps * xmax, 2) / ((2.0 * J + 3) * (2.0 * J + 4));
    double next = 2 * (J + 1) * std::log(eps) - detail::log_factorial(2 * J + 2) +
                  detail::log_moment_sup(g, spec, 2 * J + 2);
    r.terms = J;
    if (q < 1) {
      double log_tail = next - std::log1p(-q);
      r.tail_bound = std::exp(log_tail);
      if (log_tail <= log_budget) {
        done = true;
        break;
      }
    } else {
      r.tail_bound = std::numeric_limits<double>::infinity();
    }
  }
  if (!done)
    throw Error(ErrorCode::Divergent, "cosh series tail bound above budget after J = " + std::to_string(kSeriesCap) +
                                          " (eps too large for the strip of " + v.id + ")");
  for (std::size_t k = 0; k < n; ++k) spec[k] *= sum[k];
  r.u = with_data(v, signal_from_spectrum(g, std::move(spec)), "C_eps(" + v.id + ")");
  return r;
}

// Delta^j v computed spectrally (multiplier xi^{2j}).
inline SampledSignal laplacian_power(const SampledSignal& v, int j) {
  auto spec = to_spectrum(v);
  denoise_spectrum(spec);
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= std::pow(v.group.frequency(k), 2 * j);
  return signal_from_spectrum(v.group, std::move(spec));
}

// -v'' by the periodic 4th-order central difference.
inline SampledSignal laplacian_fd(const SampledSignal& v) {
  std::size_t n = v.size();
  double h = v.group.spacing();
  std::vector<cd> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto at = [&](long d) { return v[(j + n + static_cast<std::size_t>(d + 2) - 2) % n]; };
    out[j] = -(-at(2) + 16.0 * at(1) - 30.0 * at(0) + 16.0 * at(-1) - at(-2)) / (12 * h * h);
  }
  return SampledSignal(v.group, std::move(out));
}

enum class SeriesVerdict { Convergent, Divergent, Inconclusive };

inline const char* to_string(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::Convergent: return "CONVERGENT";
    case SeriesVerdict::Divergent: return "DIVERGENT";
    default: return "INCONCLUSIVE";
  }
}

struct DeltaAnalyticReport {
  double eps = 0;
  std::vector<double> log10_terms;   // eps^j/(2j)! ||Delta^j v||
  std::vector<double> log10_bounds;  // eps^j/(2j)! (2pi)^{-1} int xi^{2j}|vhat|
  std::vector<double> partial_sums;
  int valid_terms = 0;  // terms whose spectral mass sits inside the resolved band
  bool bound_consistent = true;
  SeriesVerdict verdict = SeriesVerdict::Inconclusive;
};

// Ratio trend of sum eps^j/(2j)! ||Delta^j v||. A term is only trusted while the peak of
// |xi|^{2j}|vhat| stays inside 0.9 of the resolved band; beyond that the grid cut-off,
// not v, controls the norms.
inline DeltaAnalyticReport delta_analytic_check(const RepVector& v, double eps, int J_max = kSeriesCap) {
  const auto& g = v.group();
  auto spec = to_spectrum(v.data);
  denoise_spectrum(spec);
  DeltaAnalyticReport r;
  r.eps = eps;
  double vmax = max_abs(spec);
  if (vmax == 0) {
    r.verdict = SeriesVerdict::Convergent;
    r.partial_sums.assign(1, 0.0);
    return r;
  }
  double edge = support_edge(g, spec);
  double scale = std::max(1.0, edge);
  bool discrete = detail::support_count(spec) <= 8;
  double dxi = g.is_circle() ? 1.0 : g.frequency_step();
  const double ln10 = std::log(10.0);
  long double S = 0;
  r.valid_terms = 0;
  bool still_valid = true;
  for (int j = 0; j <= J_max; ++j) {
    std::vector<cd> s(spec.size());
    double peak_xi = 0, peak = -std::numeric_limits<double>::infinity();
    long double moment = 0;
    for (std::size_t k = 0; k < spec.size(); ++k) {
      if (spec[k] == cd(0)) continue;
      double xi = std::abs(g.frequency(k));
      s[k] = spec[k] * std::pow(xi / scale, 2 * j);
      moment += std::abs(s[k]);
      double lv = (j == 0 ? 0.0 : (xi == 0 ? -1e300 : 2 * j * std::log(xi))) + std::log(std::abs(spec[k]));
      if (lv > peak) peak = lv, peak_xi = xi;
    }
    double norm = max_abs(from_spectrum(g, std::move(s)));
    double pre = j * std::log(eps) - detail::log_factorial(2 * j) + 2 * j * std::log(scale);
    double lt = (pre + std::log(norm)) / ln10;
    double lb = (pre + std::log(static_cast<double>(moment) * dxi / (2 * std::numbers::pi))) / ln10;
    r.log10_terms.push_back(lt);
    r.log10_bounds.push_back(lb);
    if (lt > lb + 1e-6) r.bound_consistent = false;
    if (still_valid && (discrete || peak_xi < 0.9 * edge || j == 0)) {
      r.valid_terms = j + 1;
    } else {
      still_valid = false;
    }
    if (std::isfinite(lt)) S += std::pow(10.0L, static_cast<long double>(lt));
    r.partial_sums.push_back(static_cast<double>(S));
  }
  int m = r.valid_terms;
  if (m < 4) {
    r.verdict = SeriesVerdict::Inconclusive;
    return r;
  }
  // trend over the last trusted terms
  int w = std::min(6, m - 1);
  double mean_ratio = (r.log10_terms[m - 1] - r.log10_terms[m - 1 - w]) / w;
  if (mean_ratio < -0.02)
    r.verdict = SeriesVerdict::Convergent;
  else if (mean_ratio > 0.02)
    r.verdict = SeriesVerdict::Divergent;
  else
    r.verdict = SeriesVerdict::Inconclusive;
  return r;
}

inline constexpr double kRadiusLadder[] = {1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2, 1, 2, 4};

// Largest ladder r such that |vhat| e^{r|xi|} over the support is still maximized inside
// 0.9 of the support band (Paley-Wiener decay test); capped at the ladder maximum.
inline double analyticity_radius(const RepVector& v) {
  const auto& g = v.group();
  auto spec = to_spectrum(v.data);
  denoise_spectrum(spec, 1e-12);
  double cap = kRadiusLadder[std::size(kRadiusLadder) - 1];
  if (max_abs(spec) == 0 || detail::support_count(spec) <= 8) return cap;
  double edge = support_edge(g, spec);
  double best = 0;
  for (double r : kRadiusLadder) {
    double full = -std::numeric_limits<double>::infinity(), inner = full;
    for (std::size_t k = 0; k < spec.size(); ++k) {
      if (spec[k] == cd(0)) continue;
      double xi = std::abs(g.frequency(k));
      double lv = std::log(std::abs(spec[k])) + r * xi;
      full = std::max(full, lv);
      if (xi <= 0.9 * edge) inner = std::max(inner, lv);
    }
    if (full <= inner + std::log(1.01))
      best = r;
    else
      break;
  }
  return best;
}

struct FactorizationResult {
  double eps = 0;
  RepVector u;
  Kernel kappa_alpha;
  Kernel kappa_beta;
  RepVector reconstruction;
  double error = 0;
  int terms = 0;
  double tail_bound = 0;
  double analyticity = 0;
};

// v = Pi(kappa_alpha) C_eps v + Pi(kappa_beta) v
inline FactorizationResult factorize(const RepVector& v, double eps) {
  FactorizationResult r;
  r.eps = eps;
  r.analyticity = analyticity_radius(v);
  auto series = cosh_series_apply(eps, v);
  r.u = series.u;
  r.terms = series.terms;
  r.tail_bound = series.tail_bound;
  r.kappa_alpha = kernel_of_symbol(EntireSymbol::alpha_symbol(eps), v.group());
  r.kappa_beta = kernel_of_symbol(EntireSymbol::beta_symbol(eps), v.group());
  r.reconstruction = add(pi_apply(r.kappa_alpha, r.u), pi_apply(r.kappa_beta, v), "reconstruction(" + v.id + ")");
  r.error = sup_distance(r.reconstruction, v);
  return r;
}

struct DerivativeGrowth {
  double C_p = 0;
  double R = 0;
  double max_residual = 0;  // in natural-log units
  bool pass = false;
  std::vector<double> log_norms;  // log ||d^k v||
};

// Least-squares fit log(||d^k v|| / k!) = log C + k log R over k = 0..k_max.
inline DerivativeGrowth derivative_growth_probe(const RepVector& v, int k_max = 20) {
  const auto& g = v.group();
  auto spec = to_spectrum(v.data);
  denoise_spectrum(spec);
  DerivativeGrowth out;
  if (max_abs(spec) == 0) {
    out.pass = true;
    return out;
  }
  double scale = std::max(1.0, support_edge(g, spec));
  std::vector<double> ks, ys;
  for (int k = 0; k <= k_max; ++k) {
    std::vector<cd> s(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i)
      s[i] = spec[i] * std::pow(cd(0, g.frequency(i) / scale), k);
    double ln = std::log(max_abs(from_spectrum(g, std::move(s)))) + k * std::log(scale);
    out.log_norms.push_back(ln);
    ks.push_back(k);
    ys.push_back(ln - detail::log_factorial(k));
  }
  double n = static_cast<double>(ks.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) sx += ks[i], sy += ys[i], sxx += ks[i] * ks[i], sxy += ks[i] * ys[i];
  double b = (n * sxy - sx * sy) / (n * sxx - sx * sx), a = (sy - b * sx) / n;
  double worst = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) worst = std::max(worst, ys[i] - (a + b * ks[i]));
  out.R = std::exp(b);
  out.C_p = std::exp(a + worst);
  for (std::size_t i = 0; i < ks.size(); ++i) out.max_residual = std::max(out.max_residual, std::abs(ys[i] - (a + b * ks[i])));
  out.pass = std::isfinite(out.R) && out.R <= g.nyquist() / 32;
  return out;
}

struct CutoffProbeEntry {
  double delta = 0;
  std::vector<double> cut_errors;  // ||chi v - v|| on each compact
  double pipeline_residual = 0;
  std::string failure;
};

struct CutoffProbeReport {
  std::vector<double> compacta;
  std::vector<CutoffProbeEntry> entries;  // in the order given
  bool monotone = true;                   // errors do not increase as delta decreases
};

inline CutoffProbeReport cutoff_convergence_probe(const RepVector& v, const std::vector<double>& deltas,
                                                  double eps = 0.25,
                                                  std::vector<double> compacta = {4, 8, 16}) {
  const auto& g = v.group();
  CutoffProbeReport rep;
  rep.compacta = compacta;
  for (double d : deltas) {
    CutoffProbeEntry e;
    e.delta = d;
    SampledSignal w = v.data;
    if (d > 0) {
      auto chi = cutoff_chi(d, g);
      for (std::size_t j = 0; j < w.size(); ++j) w[j] *= chi[j];
    }
    for (double K : compacta) {
      double m = 0;
      for (std::size_t j = 0; j < w.size(); ++j)
        if (g.distance(j) <= K) m = std::max(m, std::abs(w[j] - v.data[j]));
      e.cut_errors.push_back(m);
    }
    try {
      e.pipeline_residual = factorize(with_data(v, w, v.id + "*chi"), eps).error;
    } catch (const Error& err) {
      e.pipeline_residual = std::numeric_limits<double>::quiet_NaN();
      e.failure = err.what();
    }
    rep.entries.push_back(e);
  }
  std::vector<const CutoffProbeEntry*> by_delta;
  for (const auto& e : rep.entries) by_delta.push_back(&e);
  std::sort(by_delta.begin(), by_delta.end(), [](auto a, auto b) { return a->delta > b->delta; });
  for (std::size_t i = 1; i < by_delta.size(); ++i)
    for (std::size_t c = 0; c < compacta.size(); ++c)
      if (by_delta[i]->cut_errors[c] > by_delta[i - 1]->cut_errors[c] * (1 + 1e-12) + 1e-15) rep.monotone = false;
  return rep;
}

}  // namespace afact
