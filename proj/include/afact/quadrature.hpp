#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace afact {

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

namespace detail {

inline GaussLegendre make_gauss_legendre(int n) {
  GaussLegendre r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
    long double dp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1);
      long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    long double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    double w = static_cast<double>(2 / ((1 - x * x) * dp * dp));
    r.nodes[i] = -static_cast<double>(x);
    r.nodes[n - 1 - i] = static_cast<double>(x);
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

}  // namespace detail

// Cached rule; initialization of function statics is thread safe.
template <int N>
const GaussLegendre& gauss_legendre() {
  static const GaussLegendre rule = detail::make_gauss_legendre(N);
  return rule;
}

// Composite rule over [a, b] split into `panels` equal pieces.
template <int N, class F>
auto integrate_panels(F&& f, double a, double b, int panels) {
  const auto& gl = gauss_legendre<N>();
  using R = decltype(f(a));
  R sum{};
  double w = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * w, mid = lo + 0.5 * w;
    R s{};
    for (int i = 0; i < N; ++i) s += gl.weights[i] * f(mid + 0.5 * w * gl.nodes[i]);
    sum += 0.5 * w * s;
  }
  return sum;
}

}  // namespace afact
