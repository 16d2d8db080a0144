#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pxca/configuration.hpp"
#include "pxca/rule.hpp"

namespace pxca {

struct Limits {
  std::size_t max_cells = std::size_t{1} << 28;
};

// Only cells that can still influence B_window(0) by time `horizon` are kept.
// Values inside that cone stay exact; snapshot() is partial outside it.
struct ObservationCone {
  std::int64_t horizon = 0;
  std::int64_t window = 0;
};

struct EvolutionOptions {
  std::optional<ObservationCone> cone;
  Limits limits;
};

struct Box {
  std::int64_t x0 = 0, x1 = -1, y0 = 0, y1 = -1;
};

// Stateful orbit iterator. Picks a dense byte grid on Z / Z^2, a bit-packed
// grid for linear rules mod 2 on Z^2, and a sparse hash map on F_n.
class Evolution {
 public:
  Evolution(const Rule& rule, const Configuration& init, EvolutionOptions opts = {});
  ~Evolution();
  Evolution(Evolution&&) noexcept;
  Evolution& operator=(Evolution&&) noexcept;

  std::int64_t time() const { return t_; }
  void advance();
  void advance(std::int64_t steps);

  State at(const Site& s) const;
  Configuration snapshot() const;
  bool is_quiescent() const;
  std::size_t cells() const;
  // bounding box of the stored non-quiescent cells (Z uses x only); nullopt when empty or on F_n
  std::optional<Box> bounds() const;
  std::string backend() const;
  const Rule& rule() const { return rule_; }

  struct Backend;

 private:
  Rule rule_;
  EvolutionOptions opts_;
  std::int64_t t_ = 0;
  std::unique_ptr<Backend> impl_;
};

Configuration step(const Rule& rule, const Configuration& c);
Configuration iterate(const Rule& rule, const Configuration& c, std::int64_t t, const Limits& limits = {});

struct TracePrefix {
  int window = 0;
  std::vector<Site> sites;                // B_window(0), sorted
  std::vector<std::vector<State>> rows;   // rows[t][i] = state at sites[i] at time t

  bool operator==(const TracePrefix&) const = default;
  // every row quiescent
  bool is_null(State quiescent = 0) const;
};

TracePrefix trace(const Rule& rule, const Configuration& c, int m, std::int64_t t_max, const Limits& limits = {});

// Leftmost / rightmost differing positions of F^t(c) and F^t(d) on Z.
struct FrontSeries {
  std::vector<std::optional<std::int64_t>> left, right;  // nullopt once equal
};

FrontSeries fronts(const Rule& rule, const Configuration& c, const Configuration& d, std::int64_t t_max);

}  // namespace pxca
