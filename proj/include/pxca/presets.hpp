#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pxca/rule.hpp"

namespace pxca {

LinearRuleZm f3_linear();   // c(z+1) + c(z-1) mod 3
LinearRuleZm f2_linear();   // c(z+1) + c(z-1) mod 2
LinearRuleZm vn2_linear();  // von Neumann neighborhood with the center, mod 2
LinearRuleZm tri2_linear(); // (-1,1), (1,1), (0,0), (0,-1) mod 2

Rule psi();      // second order of f3
Rule upsilon();  // second order of f2

// psi, upsilon, f3, f2, vn2, tri2, mult:k,k', lambda:n, layered:k, or
// "linear m=<int> [lattice=z|z2|free:n] coeffs=<site>:<coef>;..." (',' also separates on Z)
Rule make_rule(std::string_view spec);
std::vector<std::string> preset_names();

}  // namespace pxca
