#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pxca {

// Malformed input, incompatible lattices, bad rule specs. Maps to exit code 2.
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured bound was exceeded. Carries the last completed step when known.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what, std::int64_t last_completed = -1)
      : std::runtime_error(what), last_completed_(last_completed) {}
  std::int64_t last_completed() const { return last_completed_; }

 private:
  std::int64_t last_completed_;
};

}  // namespace pxca
