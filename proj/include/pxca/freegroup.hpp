#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pxca/configuration.hpp"
#include "pxca/rule.hpp"

namespace pxca {

// Lambda_n(c)(i) = c(i) + sum over the 2n generators and inverses s of c(i s), mod 2.
Rule lambda_rule(int n);

// Orbit of the single spot at the identity, observed on B_L.
struct LayerProfile {
  int n = 2;
  int L = 0;
  std::int64_t t_max = 0;
  std::vector<std::vector<State>> profile;  // [t][layer]
  bool equivariant = true;                  // every cell of a layer carries the same state
  std::string first_violation;
  bool diagonal_ones = true;                // profile[l][l] == 1
  bool recurrence_agrees = true;
  std::uint64_t cells_checked = 0;
};

LayerProfile layer_profile(int n, int L, std::int64_t t_max);

// Layer recurrence for the spot orbit (radial states only), layers 0..max_layer.
std::vector<std::vector<State>> layer_recurrence(int n, int max_layer, std::int64_t t_max);

struct FreeWitnessReport {
  Site x, y;
  Configuration witness;  // spot(x) + spot(y)
  int m = 0;
  std::int64_t t_max = 0;
  bool equidistant = false;     // |x^-1 w| == |y^-1 w| on B_m
  bool totalistic = false;      // neighbor coefficients all equal
  bool radial_null = false;     // layer profile route through t_max
  bool quotient_null = false;   // path quotient route through t_max
  std::int64_t direct_horizon = 0;
  bool direct_null = false;     // plain simulation through direct_horizon
  bool ok() const { return equidistant && totalistic && radial_null && quotient_null && direct_null; }
};

// x = z s', y = z s'^-1. direct_horizon < 0 picks the largest horizon within the cell budget.
FreeWitnessReport fg_non2exp_witness(int n, const Site& z, const Site& sprime, int m, std::int64_t t_max,
                                     std::int64_t direct_horizon = -1, std::size_t cell_budget = 3'000'000);

struct OddKReport {
  std::uint64_t subsets = 0;
  std::uint64_t confirmed = 0;
  bool sampled = false;
  std::string first_failure;
  bool ok() const { return confirmed == subsets && first_failure.empty(); }
};

// Every k-subset of B_R (k odd) has a nonzero radius-0 trace at its first odd layer.
OddKReport fg_oddk_check(int n, int k, std::int64_t R, std::int64_t t_max, std::uint64_t max_subsets = 2'000'000,
                         std::uint64_t seed = 1);

// all non-quiescent cells lie in the branch starting with `letter`
bool branch_confined(const Configuration& c, int letter);

}  // namespace pxca
