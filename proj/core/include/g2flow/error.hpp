#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace g2flow {

enum class ErrorCode {
  invalid_input,
  vanishing_curvature,
  non_unit_speed,
  division_by_small,
  blow_up,
  degenerate_rotation,
  cfl_violation,
  io,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::vanishing_curvature: return "vanishing-curvature";
    case ErrorCode::non_unit_speed: return "non-unit-speed";
    case ErrorCode::division_by_small: return "division-by-small";
    case ErrorCode::blow_up: return "blow-up";
    case ErrorCode::degenerate_rotation: return "degenerate-rotation";
    case ErrorCode::cfl_violation: return "cfl-violation";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto a distinct exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace g2flow
