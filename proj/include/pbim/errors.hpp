#pragma once

#include <stdexcept>
#include <string>

namespace pbim {

// Stepping a finished episode, shaping past an episode end, and similar
// misuse of a stateful object's call sequence.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Index arguments outside their valid range.
class IndexDomainError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A search or enumeration would exceed its configured budget.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Invalid experiment configuration. `key()` names the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace pbim
