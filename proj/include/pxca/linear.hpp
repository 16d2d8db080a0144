#pragma once

#include <cstdint>
#include <vector>

#include "pxca/configuration.hpp"
#include "pxca/rule.hpp"

namespace pxca {

bool is_prime(std::int64_t n);
// (prime, exponent) pairs in increasing order
std::vector<std::pair<int, int>> factorize(int n);

// One step of a linear rule computed by scattering the sparse support.
Configuration apply_linear(const LinearRuleZm& f, const Configuration& c);

// Coefficients of F^{p^k} over a prime modulus p: a_v moved to p^k v.
LinearRuleZm lucas_power_coeffs(const LinearRuleZm& f, int k);

// F^t(c) through the base-p digits of t, one spread rule per digit.
Configuration fast_iterate(const LinearRuleZm& f, const Configuration& c, std::int64_t t);

Rule second_order(const Rule& f);
Rule second_order_inverse(const Rule& so);

struct PrimePowerPart {
  int prime = 2;
  int exponent = 1;
  int modulus = 2;
  LinearRuleZm rule;
};

std::vector<PrimePowerPart> crt_decompose(const LinearRuleZm& f);
// reduce every state mod `modulus`
Configuration crt_project(const Configuration& c, int modulus);
// inverse of the projection onto all prime power parts
Configuration crt_combine(const std::vector<PrimePowerPart>& parts, const std::vector<Configuration>& images,
                          int modulus);

struct Amplified {
  Configuration config;
  int k = 1;
  std::int64_t scale = 2;  // p^k
};

// c'(p^k x) = c(x) with the least k >= 1 such that m_target <= p^k - 1.
Amplified amplify(const LinearRuleZm& f, const Configuration& c, std::int64_t m_target);

// Layers 1..k evolve under f, each flipped by layer k+1 read 3i cells to the left; layer k+1 is erased.
Rule layered_flip(const Rule& f, int k);

}  // namespace pxca
