#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace pxca {

// Human readable check list followed by a key=value summary block.
class RunReport {
 public:
  explicit RunReport(std::string command) : command_(std::move(command)) {}

  bool check(const std::string& anchor, bool ok, const std::string& detail = "");
  void note(const std::string& text);
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, const char* value) { set(key, std::string(value)); }
  template <class T>
  void set(const std::string& key, const T& value) {
    set(key, std::to_string(value));
  }

  bool passed() const { return failures_ == 0; }
  int failures() const { return failures_; }
  int checks() const { return checks_; }
  void print(std::ostream& out) const;

 private:
  std::string command_;
  std::vector<std::string> lines_;
  std::vector<std::pair<std::string, std::string>> summary_;
  int checks_ = 0;
  int failures_ = 0;
};

}  // namespace pxca
