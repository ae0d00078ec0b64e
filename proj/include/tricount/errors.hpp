#pragma once

#include <stdexcept>
#include <string>

namespace tricount {

// Bad parameter values or misuse of an interface (CLI exit code 2).
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable or malformed external input (CLI exit code 3).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parameters that are syntactically fine but cannot be satisfied
// (CLI exit code 4).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tricount
