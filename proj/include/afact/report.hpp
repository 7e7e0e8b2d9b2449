#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "json.hpp"

#include "afact/certificate.hpp"
#include "afact/group.hpp"
#include "afact/multiplier.hpp"
#include "afact/representation.hpp"
#include "afact/strongfact.hpp"
#include "afact/symbols.hpp"

namespace afact {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "afact-report/1";
inline constexpr const char* kKernelCsvHeader = "# afact-kernel-csv/1\nx,re,im,noise_floor";

// JSON has no inf/nan; those go out as strings.
inline json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

inline json to_json(const GroupSpec& g) {
  if (g.is_circle()) return {{"kind", "circle"}, {"M", g.modes}, {"points", g.size()}};
  return {{"kind", "real_line"}, {"L", g.half_length}, {"N", g.size()}};
}

inline json to_json(const WeightedSupremum& e) {
  return {{"weight", e.weight},
          {"verdict", to_string(e.verdict)},
          {"log_supremum", num(e.log_supremum)},
          {"log_sup_half_radius", num(e.log_shell_half)},
          {"log_sup_quarter_radius", num(e.log_shell_quarter)},
          {"argmax", e.argmax},
          {"reason", e.reason}};
}

inline json to_json(const DecayCertificate& c) {
  json entries = json::array();
  for (const auto& e : c.entries) entries.push_back(to_json(e));
  return {{"subject", c.subject}, {"radius", c.radius}, {"verdict", to_string(c.verdict())}, {"entries", entries}};
}

inline json to_json(const IdentitySweep& s) {
  return {{"eps", s.eps},
          {"points", s.points},
          {"overflowed", s.overflowed},
          {"max_residual", num(s.max_residual)},
          {"max_relative_residual", num(s.max_relative)},
          {"argmax", {s.argmax.real(), s.argmax.imag()}}};
}

inline json to_json(const DeltaAnalyticReport& r) {
  return {{"eps", r.eps}, {"valid_terms", r.valid_terms}, {"verdict", to_string(r.verdict)}};
}

inline json to_json(const RegularityProbe& p) {
  return {{"m", p.m}, {"k", p.k}, {"relative_change", num(p.relative_change)}, {"verdict", p.pass ? "PASS" : "FAIL"}};
}

inline json error_json(const Error& e) { return {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}; }

// One row per grid point, ordered by x.
inline void write_kernel_csv(std::ostream& os, const SampledSignal& s, const std::vector<double>* floor = nullptr) {
  os << kKernelCsvHeader << '\n';
  const auto& g = s.group;
  std::size_t n = g.size(), start = g.is_circle() ? (n / 2) : 0;
  char buf[128];
  for (std::size_t q = 0; q < n; ++q) {
    std::size_t j = (start + q) % n;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g", g.signed_point(j), s[j].real(), s[j].imag(),
                  floor ? (*floor)[j] : 0.0);
    os << buf << '\n';
  }
}

}  // namespace afact
