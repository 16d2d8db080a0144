#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pxca/configuration.hpp"
#include "pxca/lattice.hpp"
#include "pxca/rule.hpp"

// Seeded generators and naive oracles shared by the unit tests.
namespace testing {

// splitmix64
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [lo, hi]
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }

  pxca::Site site(const pxca::Lattice& lat, std::int64_t r) {
    switch (lat.kind) {
      case pxca::LatticeKind::z:
        return pxca::Site::z(range(-r, r));
      case pxca::LatticeKind::z2:
        return pxca::Site::z2(range(-r, r), range(-r, r));
      default: {
        pxca::Word w;
        std::int64_t len = range(0, r);
        for (std::int64_t i = 0; i < len; ++i) {
          int g = static_cast<int>(range(1, lat.rank));
          w.push_back(coin(0.5) ? g : -g);
        }
        return pxca::Site::free(w);
      }
    }
  }

  pxca::Configuration config(const pxca::Lattice& lat, int q, std::int64_t r, int cells) {
    pxca::Configuration c(lat, q);
    for (int i = 0; i < cells; ++i) c.set(site(lat, r), static_cast<pxca::State>(range(1, q - 1)));
    return c;
  }

 private:
  std::uint64_t s_;
};

using Cells2 = std::map<std::pair<std::int64_t, std::int64_t>, int>;

// F(c)(z) = sum_v a_v c(z + v) mod m, by scattering each cell to z - v
inline Cells2 naive_linear_step(const Cells2& c, const std::map<std::pair<std::int64_t, std::int64_t>, int>& coeffs,
                                int m) {
  Cells2 out;
  for (const auto& [z, s] : c)
    for (const auto& [v, a] : coeffs) {
      auto key = std::make_pair(z.first - v.first, z.second - v.second);
      out[key] = (out[key] + a * s) % m;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second ? std::next(it) : out.erase(it);
  return out;
}

inline Cells2 to_cells(const pxca::Configuration& c) {
  Cells2 out;
  for (const auto& [z, s] : c.cells())
    out[{z.x(), z.kind() == pxca::LatticeKind::z2 ? z.y() : 0}] = s;
  return out;
}

// Free group words as strings over "aAbB..." by breadth first search.
inline std::set<std::string> naive_free_ball(int n, int r) {
  std::set<std::string> all{""};
  std::vector<std::string> frontier{""};
  for (int d = 0; d < r; ++d) {
    std::vector<std::string> next;
    for (const std::string& w : frontier)
      for (int g = 0; g < n; ++g)
        for (char ch : {static_cast<char>('a' + g), static_cast<char>('A' + g)}) {
          if (!w.empty() && w.back() != ch && std::tolower(w.back()) == std::tolower(ch)) continue;
          std::string x = w + ch;
          if (all.insert(x).second) next.push_back(x);
        }
    frontier = next;
  }
  return all;
}

}  // namespace testing
