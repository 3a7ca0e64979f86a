#pragma once

#include <stdexcept>
#include <string>

namespace metastab {

// Bad input: malformed documents, invalid landscapes, unmet preconditions.
// The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  InputError(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// A computed object violates a property that valid input guarantees.
// The CLI maps this to exit code 3.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace metastab
