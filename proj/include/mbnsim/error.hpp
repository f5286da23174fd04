#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mbnsim {

/// Raised when user-supplied parameters violate a documented invariant.
/// Carries one message per offending field so callers can report them all.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& message)
      : std::invalid_argument(message), field_errors_{message} {}

  explicit ConfigError(std::vector<std::string> field_errors)
      : std::invalid_argument(join(field_errors)), field_errors_(std::move(field_errors)) {}

  const std::vector<std::string>& field_errors() const noexcept { return field_errors_; }

 private:
  static std::string join(const std::vector<std::string>& errors) {
    std::string out;
    for (const auto& e : errors) {
      if (!out.empty()) out += "; ";
      out += e;
    }
    return out;
  }

  std::vector<std::string> field_errors_;
};

/// Raised when an operation is called outside its mathematical domain
/// (empty candidate list, empty record stream).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace mbnsim
