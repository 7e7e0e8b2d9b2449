#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace afact {

enum class Verdict { Finite, Inconclusive };

inline const char* to_string(Verdict v) { return v == Verdict::Finite ? "FINITE" : "INCONCLUSIVE"; }

// Suprema are tracked as natural logs so that symbols like alpha inside wide strips
// (|alpha| ~ e^{1e6}) can be certified without overflow.
struct WeightedSupremum {
  double weight = 0;  // n for kernels, c for symbols
  double log_supremum = -std::numeric_limits<double>::infinity();
  double log_shell_half = -std::numeric_limits<double>::infinity();
  double log_shell_quarter = -std::numeric_limits<double>::infinity();
  double argmax = 0;     // |g|, or Re z for symbols
  double argmax_im = 0;  // Im z for symbols
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;

  double supremum() const { return std::exp(log_supremum); }
};

struct DecayCertificate {
  std::string subject;
  double radius = 0;
  std::vector<WeightedSupremum> entries;

  Verdict verdict() const {
    if (entries.empty()) return Verdict::Inconclusive;
    for (const auto& e : entries)
      if (e.verdict != Verdict::Finite) return Verdict::Inconclusive;
    return Verdict::Finite;
  }
  const WeightedSupremum* find(double weight) const {
    for (const auto& e : entries)
      if (e.weight == weight) return &e;
    return nullptr;
  }
};

// FINITE iff the running sup grows by < 1% over each of the two outermost dyadic shells.
class ShellAccumulator {
 public:
  ShellAccumulator(double radius, double weight) : R_(radius) { e_.weight = weight; }

  void add(double r, double log_value, double re = 0, double im = 0) {
    if (r > R_) return;
    if (std::isnan(log_value)) log_value = std::numeric_limits<double>::infinity();
    if (log_value > e_.log_supremum) {
      e_.log_supremum = log_value;
      e_.argmax = re;
      e_.argmax_im = im;
    }
    if (r <= 0.5 * R_) e_.log_shell_half = std::max(e_.log_shell_half, log_value);
    if (r <= 0.25 * R_) e_.log_shell_quarter = std::max(e_.log_shell_quarter, log_value);
  }

  WeightedSupremum finish() {
    const double g = std::log(1.01);
    bool ok = std::isfinite(e_.log_supremum) && e_.log_supremum <= e_.log_shell_half + g &&
              e_.log_shell_half <= e_.log_shell_quarter + g;
    if (ok) {
      e_.verdict = Verdict::Finite;
    } else {
      e_.verdict = Verdict::Inconclusive;
      if (e_.reason.empty()) e_.reason = "running sup still growing at the boundary";
    }
    return e_;
  }

  WeightedSupremum& entry() { return e_; }

 private:
  double R_;
  WeightedSupremum e_;
};

}  // namespace afact
