#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace hsum {

/// Failure categories. The CLI maps each one to a fixed exit code.
enum class ErrorKind { usage, capability, resource, pole };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

class UsageError : public Error {
public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class CapabilityError : public Error {
public:
  explicit CapabilityError(const std::string& what) : Error(ErrorKind::capability, what) {}
};

class ResourceError : public Error {
public:
  explicit ResourceError(const std::string& what) : Error(ErrorKind::resource, what) {}
};

/// Raised when an argument lands on a pole; carries the pole location.
class PoleError : public Error {
public:
  PoleError(std::complex<double> location, const std::string& what)
      : Error(ErrorKind::pole, what), location_(location) {}
  std::complex<double> location() const noexcept { return location_; }

private:
  std::complex<double> location_;
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::usage: return "usage-error";
    case ErrorKind::capability: return "capability-error";
    case ErrorKind::resource: return "resource-error";
    case ErrorKind::pole: return "pole-error";
  }
  return "error";
}

}  // namespace hsum
