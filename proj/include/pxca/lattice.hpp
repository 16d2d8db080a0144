#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pxca {

enum class LatticeKind : std::uint8_t { z, z2, free };

// Z, Z^2 or the free group on `rank` generators.
struct Lattice {
  LatticeKind kind = LatticeKind::z;
  int rank = 1;

  static Lattice integers() { return {LatticeKind::z, 1}; }
  static Lattice plane() { return {LatticeKind::z2, 2}; }
  static Lattice free_group(int n);

  bool operator==(const Lattice&) const = default;
};

// Generator g (1-based) is +g, its inverse is -g. Always stored reduced.
using Word = std::vector<int>;

struct Point2 {
  std::int64_t x = 0;
  std::int64_t y = 0;
  auto operator<=>(const Point2&) const = default;
};

class Site {
 public:
  Site() : v_(std::int64_t{0}) {}
  static Site z(std::int64_t x) { return Site(Rep(x)); }
  static Site z2(std::int64_t x, std::int64_t y) { return Site(Rep(Point2{x, y})); }
  static Site free(Word w);  // reduces w

  LatticeKind kind() const { return static_cast<LatticeKind>(v_.index()); }
  std::int64_t x() const;
  std::int64_t y() const;
  const Word& word() const;

  bool operator==(const Site&) const = default;
  // Z numeric, Z^2 lexicographic (x then y), free shortlex over a < A < b < B ...
  std::strong_ordering operator<=>(const Site& o) const;

 private:
  using Rep = std::variant<std::int64_t, Point2, Word>;
  explicit Site(Rep v) : v_(std::move(v)) {}
  Rep v_;
};

Site identity(const Lattice& lat);
Site add(const Site& a, const Site& b);  // group law; on F_n this is concatenation
Site negate(const Site& a);
inline Site operator+(const Site& a, const Site& b) { return add(a, b); }
inline Site operator-(const Site& a) { return negate(a); }
inline Site operator-(const Site& a, const Site& b) { return add(a, negate(b)); }

// L1 on Z^2, word length on F_n.
std::int64_t norm(const Site& s);
// Max-coordinate size used for support radii (equals norm on Z and F_n).
std::int64_t sup_norm(const Site& s);

// Sorted list of sites at distance <= r from center.
std::vector<Site> ball(const Lattice& lat, const Site& center, std::int64_t r);
std::vector<Site> ball(const Lattice& lat, std::int64_t r);
// Sites with sup_norm <= r (square boxes on Z^2).
std::vector<Site> box(const Lattice& lat, std::int64_t r);
std::uint64_t ball_size(const Lattice& lat, std::int64_t r);

// Generators of the lattice (positive directions only).
std::vector<Site> generators(const Lattice& lat);

// Free group: the first letter of a non-identity word, nullopt for the root.
std::optional<int> branch_of(const Site& s);

bool belongs_to(const Site& s, const Lattice& lat);

// Textual forms: "7", "3,-2", "a b A" (uppercase is the inverse; "" is the identity).
Site parse_site(const Lattice& lat, std::string_view text);
std::string format_site(const Site& s);
Lattice parse_lattice(std::string_view text);  // z | z2 | free:n
std::string format_lattice(const Lattice& lat);

}  // namespace pxca
