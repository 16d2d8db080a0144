#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "pxca/lattice.hpp"

namespace pxca {

using State = int;

// A finite product of cyclic groups Z_{m1} x ... x Z_{mj}, encoded mixed-radix
// with the first component most significant. A pair (a,b) over Z_q is a*q + b.
class Alphabet {
 public:
  Alphabet() : Alphabet(std::vector<int>{2}) {}
  explicit Alphabet(std::vector<int> moduli);
  static Alphabet cyclic(int m) { return Alphabet(std::vector<int>{m}); }
  static Alphabet product(const Alphabet& a, const Alphabet& b);

  int size() const { return size_; }
  const std::vector<int>& moduli() const { return moduli_; }
  std::vector<int> digits(State s) const;
  State compose(const std::vector<int>& digits) const;

  State add(State a, State b) const;
  State neg(State a) const;
  State scale(std::int64_t k, State a) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<int> moduli_;
  int size_ = 1;
};

// Finitely supported configuration. Only non-quiescent cells are stored.
class Configuration {
 public:
  Configuration() = default;
  Configuration(Lattice lattice, int states, State quiescent = 0);
  static Configuration spot(Lattice lattice, int states, const Site& at, State value, State quiescent = 0);

  const Lattice& lattice() const { return lattice_; }
  int states() const { return states_; }
  State quiescent() const { return quiescent_; }

  State at(const Site& s) const;
  void set(const Site& s, State v);
  const std::map<Site, State>& cells() const { return cells_; }
  std::size_t count() const { return cells_.size(); }
  bool is_quiescent() const { return cells_.empty(); }
  // max sup_norm over the support, -1 when empty
  std::int64_t size() const;

  // sigma_z: result(x) = this(z + x)
  Configuration shifted(const Site& z) const;

  bool operator==(const Configuration&) const = default;

 private:
  Lattice lattice_;
  int states_ = 2;
  State quiescent_ = 0;
  std::map<Site, State> cells_;
};

Configuration add(const Configuration& a, const Configuration& b, const Alphabet& law);
Configuration negate(const Configuration& a, const Alphabet& law);
Configuration scale(std::int64_t k, const Configuration& a, const Alphabet& law);
// number of cells where the two configurations differ
std::size_t difference_count(const Configuration& a, const Configuration& b);

// Uniform states on box(lat, radius) (ball on F_n), each cell non-quiescent
// with probability `density`.
Configuration random_configuration(const Lattice& lat, int states, std::int64_t radius, double density,
                                   std::mt19937_64& rng);

// File format: header line "lattice=<z|z2|free:n> q=<int> quiescent=<int>",
// then one "site<TAB>state" line per non-quiescent cell.
Configuration read_configuration(std::istream& in);
void write_configuration(std::ostream& out, const Configuration& c);
Configuration load_configuration(const std::string& path);
void save_configuration(const std::string& path, const Configuration& c);

}  // namespace pxca
