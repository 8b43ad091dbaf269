#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace eqfg {

// Every failure raised by the library carries a stable code ("NotAssociative",
// "DanglingReference", ...) so the CLI and the tests can match on it.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace eqfg
