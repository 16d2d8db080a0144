#include "pxca/report.hpp"

namespace pxca {

bool RunReport::check(const std::string& anchor, bool ok, const std::string& detail) {
  ++checks_;
  if (!ok) ++failures_;
  lines_.push_back(std::string(ok ? "[PASS] " : "[FAIL] ") + anchor + (detail.empty() ? "" : ": " + detail));
  return ok;
}

void RunReport::note(const std::string& text) { lines_.push_back("  " + text); }

void RunReport::set(const std::string& key, const std::string& value) {
  for (auto& kv : summary_)
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  summary_.emplace_back(key, value);
}

void RunReport::print(std::ostream& out) const {
  for (const auto& l : lines_) out << l << "\n";
  out << "--- summary\n";
  out << "command=" << command_ << "\n";
  out << "status=" << (passed() ? "pass" : "fail") << "\n";
  out << "checks=" << checks_ << "\n";
  out << "failures=" << failures_ << "\n";
  for (const auto& [k, v] : summary_) out << k << "=" << v << "\n";
}

}  // namespace pxca
