#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pxca/configuration.hpp"
#include "pxca/rule.hpp"

namespace pxca {

struct PgmImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, top row first
};

// Gray value of a state: floor(255 * state / (q - 1)).
std::uint8_t gray_level(State s, int q);

// Z: one space-time image over [-window, window], time running bottom to top.
// Z^2: one frame per time step over [-window, window]^2, largest y on top.
std::vector<PgmImage> render_spacetime(const Rule& rule, const Configuration& c, std::int64_t window,
                                       std::int64_t t_max);
// Same layout as plain text, one character per cell (0-9 then a-z).
std::string render_text(const Rule& rule, const Configuration& c, std::int64_t window, std::int64_t t_max);

std::string encode_pgm(const PgmImage& img);  // binary P5
void write_pgm(const std::string& path, const PgmImage& img);

}  // namespace pxca
