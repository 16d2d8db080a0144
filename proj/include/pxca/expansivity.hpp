#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pxca/configuration.hpp"
#include "pxca/engine.hpp"
#include "pxca/rule.hpp"

namespace pxca {

struct SearchBounds {
  int k = 1;
  std::int64_t support_radius = 0;  // supports inside box(lattice, support_radius)
  int window = 0;
  std::int64_t t_max = 0;
};

// Either no witness inside the bounds, or a pair (witness, partner) with equal
// radius-`window` traces through t_max. Linear searches use the quiescent partner.
struct ExpansivityVerdict {
  SearchBounds bounds;
  bool found = false;
  Configuration witness;
  Configuration partner;
  std::uint64_t examined = 0;   // candidates up to and including the witness, or all of them
  long double search_space = 0;
  bool reverified = false;      // witness re-checked by a plain simulation
};

struct SearchOptions {
  int threads = 1;
  std::uint64_t max_candidates = 4'000'000'000ULL;
};

// Null-trace search over configurations with exactly k non-zero cells, for a
// linear rule on Z or Z^2. The least witness in lexicographic order is reported.
ExpansivityVerdict kexp_search(const LinearRuleZm& f, int k, std::int64_t R, int m, std::int64_t t_max,
                               const SearchOptions& opt = {});

// Pairs c, d supported in the box that differ in exactly k cells and share the
// radius-m trace. Bases d are visited by support size, so d = quiescent comes first.
ExpansivityVerdict pair_preexp_probe(const Rule& rule, int k, std::int64_t R, int m, std::int64_t t_max,
                                     const SearchOptions& opt = {});

struct DirectionalFronts {
  std::int64_t alpha_num = 0, alpha_den = 1;
  std::vector<std::optional<std::int64_t>> left, right;  // fronts minus ceil(alpha t)
  std::int64_t threshold = 0;
  bool left_escapes_below = false;   // some adjusted left front < -threshold
  bool right_escapes_above = false;  // some adjusted right front > threshold
};

// threshold < 0 selects t_max * radius / 2
DirectionalFronts directional_fronts(const Rule& rule, const Configuration& c, const Configuration& d,
                                     std::int64_t alpha_num, std::int64_t alpha_den, std::int64_t t_max,
                                     std::int64_t threshold = -1);

// psi^{2 3^k + t}_z = psi^t_z + psi^{3^k+t}_{z-3^k} + psi^{3^k+t}_{z+3^k}, with psi^t_z = sigma_z o psi^t
bool psi_relation_check(const Configuration& c, int k, std::int64_t t, std::int64_t z);

struct PsiRelationSweep {
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
  std::string first_failure;
};
// every k in [0,k_max], t in [0,t_max], z in [z_lo,z_hi] for each configuration
PsiRelationSweep psi_relation_sweep(const std::vector<Configuration>& configs, int k_max, std::int64_t t_max,
                                    std::int64_t z_lo, std::int64_t z_hi);

struct LandmarkReport {
  std::int64_t position = 0;  // M 3^{k+1} - 2 3^k
  State expected = 0;         // (a, 2b)
  State left = 0, right = 0;
  bool band_zero = true;
  bool ok() const { return left == expected && right == expected && band_zero; }
};

// Spot (a,b) at the origin after M 3^{k+1} steps of psi.
LandmarkReport psi_landmarks(int a, int b, int M, int k);

// (0,1) at z, (1,1) on (z, z+k-2], (1,0) at z+k-1, for upsilon.
Configuration upsilon_glider(std::int64_t z, int k);

struct MultParams {
  int q = 1;  // least n in 1..m-1 with k' | k^p n for some p
  int p = 0;  // least p with k' | k^p q
};
MultParams mult_params(int k, int kp);

struct MultFrontReport {
  int k = 2, kp = 3;
  MultParams params;
  std::uint64_t pairs = 0;
  bool g_recurrence = true;
  bool left_bound = true;    // l_t < r_0 + 1 - t log k / log m
  bool right_bound = true;   // l_0 - 1 - t log k / log m < r_t
  bool decay_applies = false;
  bool decay = true;         // q = 1: r_t <= r_0 - t/(p+1)
  bool decay_floor = true;   // q = 1: r_t <= r_0 - floor(t/(p+1))
  std::uint64_t decay_violations = 0;
  bool settle_applies = false;
  bool settle = true;        // q > 1, k' > k^p: r_t constant on the last half of the run
  std::int64_t latest_settle = 0;
  std::string first_failure;
  bool ok() const { return g_recurrence && left_bound && right_bound && decay && settle; }
};

MultFrontReport mult_front_checks(int k, int kp, int samples, std::int64_t t_max, std::uint64_t seed);

// F_{k,k'}(F_{k',k}(c)) == sigma_1(c)
bool mult_inverse_check(int k, int kp, const Configuration& c);

struct CoprimeFronts {
  int prime = 2, exponent = 1;
  std::vector<std::optional<std::int64_t>> left, right;  // extreme cells coprime to p, spot orbit
  bool matches_socle = true;  // equals the plain fronts of the spot p^{e-1}
  std::int64_t threshold = 0;
  bool left_escapes = false, right_escapes = false;
};

CoprimeFronts coprime_fronts(const LinearRuleZm& f, std::int64_t t_max, std::int64_t threshold = -1);

}  // namespace pxca
