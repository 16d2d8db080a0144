#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "pxca/configuration.hpp"
#include "pxca/lattice.hpp"
#include "pxca/rule.hpp"

namespace pxca {

// Binary word, bit t at position t.
class BitWord {
 public:
  BitWord() = default;
  explicit BitWord(std::size_t length);
  static BitWord from_string(const std::string& s);

  std::size_t size() const { return len_; }
  bool get(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }
  void set(std::size_t i, bool v);
  bool is_zero() const;
  // index of the first 1, or size() when zero
  std::size_t first_one() const;
  bool is_square() const;
  BitWord concat(const BitWord& o) const;
  BitWord& operator^=(const BitWord& o);
  std::string str() const;
  bool operator==(const BitWord&) const = default;

 private:
  std::size_t len_ = 0;
  std::vector<std::uint64_t> w_;
};

struct UVPair {
  BitWord u, v;
  bool operator==(const UVPair&) const = default;
};

// Memoized substitution words for the von Neumann rule mod 2. Not thread safe
// until seal(); afterwards get() only reads and misses throw.
class UVOracle {
 public:
  const UVPair& get(const Site& z, int k);
  const UVPair& get(const Site& z, int k) const;
  void seal() { sealed_ = true; }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  std::map<std::tuple<std::int64_t, std::int64_t, int>, UVPair> memo_;
  bool sealed_ = false;
};

// z must lie in B_{2^k - 1}.
UVPair uv_words(const Site& z, int k);

struct UVSimReport {
  int k_max = 0;
  std::uint64_t cells = 0;
  std::uint64_t mismatches = 0;
  std::string first_mismatch;
  bool ok() const { return mismatches == 0; }
};
UVSimReport uv_vs_simulation(int k_max);

// Total decision: does every cell of B_m(0) keep state 0 forever under the von Neumann rule?
bool exact_trace_null(const Configuration& c, int m, int k_cap = 12);
bool exact_trace_null(const Configuration& c, int m, UVOracle& oracle, int k_cap = 12);

struct UVStructureReport {
  int k_max = 0;
  std::uint64_t cells = 0;
  bool v_square = true;
  bool u_not_square = true;
  bool odd_first_index = true;
  bool even_first_index = true;
  bool diagonal_zero = true;
  bool refinement = true;
  bool symmetric = true;
  std::string first_failure;
  bool ok() const {
    return v_square && u_not_square && odd_first_index && even_first_index && diagonal_zero && refinement && symmetric;
  }
};
UVStructureReport uv_structure_checks(int k_max);

struct ThreeTraceReport {
  std::int64_t R = 0;
  int scale = 0;
  std::uint64_t triples = 0;
  std::uint64_t u_sum_zero = 0;          // triples whose u-words cancel
  std::uint64_t u_sum_zero_bad = 0;      // ... without a null member
  std::uint64_t null_t1 = 0;             // triples with a null radius-1 trace
  std::string first_failure;
  bool ok() const { return u_sum_zero_bad == 0 && null_t1 == 0; }
};
ThreeTraceReport three_trace_check(std::int64_t R, int threads = 1);

// spots (-2^k, 2^{k-1}) and (2^k, 2^{k-1})
Configuration vn2_two_spot_witness(int k);

// Can a spot at p reach B_m(0) within s steps? Exact for neighborhoods with up
// to four non-zero vectors on Z^2.
bool reaches_ball(const std::vector<Site>& neighborhood, const Site& p, std::int64_t s, std::int64_t m);

struct TriClaimReport {
  std::int64_t t_sim = 0;
  int k_max = 0;
  bool simulated_null = false;
  bool base_case = false;      // no influence on B_2 before t = 32
  bool supports = true;        // F^{2^k}(spot) support is the four listed points
  bool far_points = true;      // the three far points cannot reach B_2 in 2^k steps
  bool supports_vs_simulation = true;
  std::string first_failure;
  bool ok() const { return simulated_null && base_case && supports && far_points && supports_vs_simulation; }
  std::int64_t certified_until() const { return ok() ? (std::int64_t{2} << k_max) : 0; }
};
TriClaimReport tri_claim_check(std::int64_t t_sim, int k_max);

}  // namespace pxca
