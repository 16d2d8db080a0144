#include "pxca/render.hpp"

#include <fstream>

#include "pxca/engine.hpp"
#include "pxca/errors.hpp"

namespace pxca {

namespace {

void require_planar(const Rule& rule) {
  if (rule.lattice().kind == LatticeKind::free)
    throw usage_error("free group orbits have no planar layout; dump configurations as text instead");
}

char state_char(State s) { return s < 10 ? static_cast<char>('0' + s) : static_cast<char>('a' + s - 10); }

// rows[t] holds the cells of frame t in display order
template <class Cell>
void sweep(const Rule& rule, const Configuration& c, std::int64_t window, std::int64_t t_max, Cell&& cell) {
  if (window < 0 || t_max < 0) throw usage_error("window and t_max must be non-negative");
  EvolutionOptions o;
  o.cone = ObservationCone{t_max, window};
  Evolution ev(rule, c, o);
  for (std::int64_t t = 0; t <= t_max; ++t) {
    cell(t, ev);
    if (t < t_max) ev.advance();
  }
}

}  // namespace

std::uint8_t gray_level(State s, int q) {
  if (q <= 1) return 0;
  return static_cast<std::uint8_t>(255 * static_cast<std::int64_t>(s) / (q - 1));
}

std::vector<PgmImage> render_spacetime(const Rule& rule, const Configuration& c, std::int64_t window,
                                       std::int64_t t_max) {
  require_planar(rule);
  int q = rule.states();
  auto side = static_cast<int>(2 * window + 1);
  std::vector<PgmImage> out;
  if (rule.lattice().kind == LatticeKind::z) {
    PgmImage img{side, static_cast<int>(t_max + 1), {}};
    img.pixels.resize(static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height));
    sweep(rule, c, window, t_max, [&](std::int64_t t, const Evolution& ev) {
      auto row = static_cast<std::size_t>(t_max - t);
      for (std::int64_t x = -window; x <= window; ++x)
        img.pixels[row * static_cast<std::size_t>(side) + static_cast<std::size_t>(x + window)] =
            gray_level(ev.at(Site::z(x)), q);
    });
    out.push_back(std::move(img));
    return out;
  }
  sweep(rule, c, window, t_max, [&](std::int64_t, const Evolution& ev) {
    PgmImage img{side, side, {}};
    for (std::int64_t y = window; y >= -window; --y)
      for (std::int64_t x = -window; x <= window; ++x) img.pixels.push_back(gray_level(ev.at(Site::z2(x, y)), q));
    out.push_back(std::move(img));
  });
  return out;
}

std::string render_text(const Rule& rule, const Configuration& c, std::int64_t window, std::int64_t t_max) {
  require_planar(rule);
  std::vector<std::string> frames;
  bool line = rule.lattice().kind == LatticeKind::z;
  sweep(rule, c, window, t_max, [&](std::int64_t t, const Evolution& ev) {
    std::string f;
    if (line) {
      for (std::int64_t x = -window; x <= window; ++x) f += state_char(ev.at(Site::z(x)));
    } else {
      f = "t=" + std::to_string(t) + "\n";
      for (std::int64_t y = window; y >= -window; --y) {
        for (std::int64_t x = -window; x <= window; ++x) f += state_char(ev.at(Site::z2(x, y)));
        f += '\n';
      }
    }
    frames.push_back(std::move(f));
  });
  std::string out;
  if (line) {
    for (auto it = frames.rbegin(); it != frames.rend(); ++it) out += *it + "\n";
  } else {
    for (std::size_t i = 0; i < frames.size(); ++i) out += (i ? "\n" : "") + frames[i];
  }
  return out;
}

std::string encode_pgm(const PgmImage& img) {
  std::string s = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  s.append(img.pixels.begin(), img.pixels.end());
  return s;
}

void write_pgm(const std::string& path, const PgmImage& img) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw usage_error("cannot write " + path);
  f << encode_pgm(img);
}

}  // namespace pxca
