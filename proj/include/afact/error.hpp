#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace afact {

enum class ErrorCode {
  Domain,
  Overflow,
  NotEven,
  Resolution,
  Unbounded,
  Wraparound,
  Decay,
  Divergent,
  Contour,
  Truncation,
  Growth,
  Quadrature,
  Normalization,
  Config,
};

inline std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::Domain: return "DOMAIN";
    case ErrorCode::Overflow: return "OVERFLOW";
    case ErrorCode::NotEven: return "NOT_EVEN";
    case ErrorCode::Resolution: return "RESOLUTION";
    case ErrorCode::Unbounded: return "UNBOUNDED";
    case ErrorCode::Wraparound: return "WRAPAROUND";
    case ErrorCode::Decay: return "DECAY";
    case ErrorCode::Divergent: return "DIVERGENT";
    case ErrorCode::Contour: return "CONTOUR";
    case ErrorCode::Truncation: return "TRUNCATION";
    case ErrorCode::Growth: return "GROWTH";
    case ErrorCode::Quadrature: return "QUADRATURE";
    case ErrorCode::Normalization: return "NORMALIZATION";
    case ErrorCode::Config: return "CONFIG";
  }
  return "UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace afact
