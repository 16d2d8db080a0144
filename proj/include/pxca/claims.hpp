#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pxca/report.hpp"

namespace pxca {

struct ClaimOptions {
  std::uint64_t seed = 20240611;
  int threads = 1;
};

struct ClaimInfo {
  std::string name;
  std::string summary;
};

// The verification suite, in acceptance order.
const std::vector<ClaimInfo>& claim_list();

// Appends this claim's check lines to rep. Returns true when every line passed.
// Unknown names raise usage_error.
bool run_claim(const std::string& name, RunReport& rep, const ClaimOptions& opt = {});

}  // namespace pxca
