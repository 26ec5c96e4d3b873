#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mzv {

enum class ErrorKind {
  domain,
  overflow,
  pole,
  cancellation,
  convergence,
  ill_conditioned,
  division_by_zero,
  non_finite,
  depth_unsupported,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base of every numerical failure raised by the library. The kind lets
/// callers (the identity checkers, the CLI) branch without RTTI chains.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define MZV_DEFINE_ERROR(Name, Kind)                          \
  class Name : public Error {                                 \
   public:                                                    \
    explicit Name(const std::string& what) : Error(Kind, what) {} \
  };

MZV_DEFINE_ERROR(DomainError, ErrorKind::domain)
MZV_DEFINE_ERROR(OverflowError, ErrorKind::overflow)
MZV_DEFINE_ERROR(PoleError, ErrorKind::pole)
MZV_DEFINE_ERROR(CancellationError, ErrorKind::cancellation)
MZV_DEFINE_ERROR(ConvergenceError, ErrorKind::convergence)
MZV_DEFINE_ERROR(IllConditioned, ErrorKind::ill_conditioned)
MZV_DEFINE_ERROR(DivisionByZero, ErrorKind::division_by_zero)
MZV_DEFINE_ERROR(NonFinite, ErrorKind::non_finite)
MZV_DEFINE_ERROR(DepthUnsupported, ErrorKind::depth_unsupported)

#undef MZV_DEFINE_ERROR

}  // namespace mzv
