#include "pxca/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "pxca/errors.hpp"

namespace pxca {

namespace {

int letter_rank(int g) { return 2 * (std::abs(g) - 1) + (g < 0 ? 1 : 0); }

std::int64_t parse_int(std::string_view t) {
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || p != t.data() + t.size())
    throw usage_error("bad integer '" + std::string(t) + "'");
  return v;
}

void require_same(const Site& a, const Site& b) {
  if (a.kind() != b.kind()) throw usage_error("sites from different lattices");
}

}  // namespace

Lattice Lattice::free_group(int n) {
  if (n < 1 || n > 26) throw usage_error("free group rank must be in 1..26");
  return {LatticeKind::free, n};
}

Site Site::free(Word w) {
  Word r;
  r.reserve(w.size());
  for (int g : w) {
    if (g == 0) throw usage_error("generator index 0 is not valid");
    if (!r.empty() && r.back() == -g)
      r.pop_back();
    else
      r.push_back(g);
  }
  return Site(Rep(std::move(r)));
}

std::int64_t Site::x() const {
  if (auto p = std::get_if<std::int64_t>(&v_)) return *p;
  if (auto p = std::get_if<Point2>(&v_)) return p->x;
  throw usage_error("free group site has no coordinates");
}

std::int64_t Site::y() const {
  if (auto p = std::get_if<Point2>(&v_)) return p->y;
  throw usage_error("site has no y coordinate");
}

const Word& Site::word() const {
  if (auto p = std::get_if<Word>(&v_)) return *p;
  throw usage_error("site is not a free group word");
}

std::strong_ordering Site::operator<=>(const Site& o) const {
  if (v_.index() != o.v_.index()) return v_.index() <=> o.v_.index();
  switch (kind()) {
    case LatticeKind::z:
      return std::get<0>(v_) <=> std::get<0>(o.v_);
    case LatticeKind::z2:
      return std::get<1>(v_) <=> std::get<1>(o.v_);
    case LatticeKind::free: {
      const Word& a = std::get<2>(v_);
      const Word& b = std::get<2>(o.v_);
      if (a.size() != b.size()) return a.size() <=> b.size();
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return letter_rank(a[i]) <=> letter_rank(b[i]);
      return std::strong_ordering::equal;
    }
  }
  return std::strong_ordering::equal;
}

Site identity(const Lattice& lat) {
  switch (lat.kind) {
    case LatticeKind::z:
      return Site::z(0);
    case LatticeKind::z2:
      return Site::z2(0, 0);
    case LatticeKind::free:
      return Site::free({});
  }
  return {};
}

Site add(const Site& a, const Site& b) {
  require_same(a, b);
  switch (a.kind()) {
    case LatticeKind::z:
      return Site::z(a.x() + b.x());
    case LatticeKind::z2:
      return Site::z2(a.x() + b.x(), a.y() + b.y());
    case LatticeKind::free: {
      Word w = a.word();
      w.insert(w.end(), b.word().begin(), b.word().end());
      return Site::free(std::move(w));
    }
  }
  return {};
}

Site negate(const Site& a) {
  switch (a.kind()) {
    case LatticeKind::z:
      return Site::z(-a.x());
    case LatticeKind::z2:
      return Site::z2(-a.x(), -a.y());
    case LatticeKind::free: {
      Word w(a.word().rbegin(), a.word().rend());
      for (int& g : w) g = -g;
      return Site::free(std::move(w));
    }
  }
  return {};
}

std::int64_t norm(const Site& s) {
  switch (s.kind()) {
    case LatticeKind::z:
      return std::abs(s.x());
    case LatticeKind::z2:
      return std::abs(s.x()) + std::abs(s.y());
    case LatticeKind::free:
      return static_cast<std::int64_t>(s.word().size());
  }
  return 0;
}

std::int64_t sup_norm(const Site& s) {
  if (s.kind() == LatticeKind::z2) return std::max(std::abs(s.x()), std::abs(s.y()));
  return norm(s);
}

std::vector<Site> ball(const Lattice& lat, std::int64_t r) { return ball(lat, identity(lat), r); }

std::vector<Site> ball(const Lattice& lat, const Site& center, std::int64_t r) {
  std::vector<Site> out;
  if (r < 0) return out;
  switch (lat.kind) {
    case LatticeKind::z:
      for (std::int64_t x = -r; x <= r; ++x) out.push_back(Site::z(x));
      break;
    case LatticeKind::z2:
      for (std::int64_t x = -r; x <= r; ++x) {
        std::int64_t h = r - std::abs(x);
        for (std::int64_t y = -h; y <= h; ++y) out.push_back(Site::z2(x, y));
      }
      break;
    case LatticeKind::free: {
      // breadth first over reduced words
      std::vector<Word> layer{Word{}};
      out.push_back(Site::free({}));
      for (std::int64_t d = 1; d <= r; ++d) {
        std::vector<Word> next;
        for (const Word& w : layer)
          for (int g = 1; g <= lat.rank; ++g)
            for (int s : {g, -g}) {
              if (!w.empty() && w.back() == -s) continue;
              Word n = w;
              n.push_back(s);
              next.push_back(n);
            }
        for (const Word& w : next) out.push_back(Site::free(w));
        layer = std::move(next);
      }
      break;
    }
  }
  if (!(center == identity(lat)))
    for (Site& s : out) s = add(center, s);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Site> box(const Lattice& lat, std::int64_t r) {
  if (lat.kind != LatticeKind::z2) return ball(lat, r);
  std::vector<Site> out;
  for (std::int64_t x = -r; x <= r; ++x)
    for (std::int64_t y = -r; y <= r; ++y) out.push_back(Site::z2(x, y));
  return out;
}

std::uint64_t ball_size(const Lattice& lat, std::int64_t r) {
  if (r < 0) return 0;
  auto ur = static_cast<std::uint64_t>(r);
  switch (lat.kind) {
    case LatticeKind::z:
      return 2 * ur + 1;
    case LatticeKind::z2:
      return 2 * ur * ur + 2 * ur + 1;
    case LatticeKind::free: {
      std::uint64_t n = static_cast<std::uint64_t>(lat.rank);
      if (n == 1) return 2 * ur + 1;
      std::uint64_t p = 1;
      for (std::uint64_t i = 0; i < ur; ++i) p *= (2 * n - 1);
      return 1 + 2 * n * (p - 1) / (2 * n - 2);
    }
  }
  return 0;
}

std::vector<Site> generators(const Lattice& lat) {
  switch (lat.kind) {
    case LatticeKind::z:
      return {Site::z(1)};
    case LatticeKind::z2:
      return {Site::z2(1, 0), Site::z2(0, 1)};
    case LatticeKind::free: {
      std::vector<Site> g;
      for (int i = 1; i <= lat.rank; ++i) g.push_back(Site::free({i}));
      return g;
    }
  }
  return {};
}

std::optional<int> branch_of(const Site& s) {
  const Word& w = s.word();
  if (w.empty()) return std::nullopt;
  return w.front();
}

bool belongs_to(const Site& s, const Lattice& lat) {
  if (s.kind() != lat.kind) return false;
  if (lat.kind != LatticeKind::free) return true;
  return std::all_of(s.word().begin(), s.word().end(),
                     [&](int g) { return std::abs(g) <= lat.rank; });
}

Site parse_site(const Lattice& lat, std::string_view text) {
  switch (lat.kind) {
    case LatticeKind::z:
      return Site::z(parse_int(text));
    case LatticeKind::z2: {
      auto comma = text.find(',');
      if (comma == std::string_view::npos) throw usage_error("Z^2 site needs 'x,y': " + std::string(text));
      return Site::z2(parse_int(text.substr(0, comma)), parse_int(text.substr(comma + 1)));
    }
    case LatticeKind::free: {
      Word w;
      for (char ch : text) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (!std::isalpha(static_cast<unsigned char>(ch)))
          throw usage_error("bad free group letter '" + std::string(1, ch) + "'");
        int g = std::tolower(static_cast<unsigned char>(ch)) - 'a' + 1;
        if (g > lat.rank) throw usage_error("generator '" + std::string(1, ch) + "' outside F_" + std::to_string(lat.rank));
        w.push_back(std::isupper(static_cast<unsigned char>(ch)) ? -g : g);
      }
      return Site::free(std::move(w));
    }
  }
  return {};
}

std::string format_site(const Site& s) {
  switch (s.kind()) {
    case LatticeKind::z:
      return std::to_string(s.x());
    case LatticeKind::z2:
      return std::to_string(s.x()) + "," + std::to_string(s.y());
    case LatticeKind::free: {
      std::string out;
      for (int g : s.word()) {
        if (!out.empty()) out += ' ';
        char c = static_cast<char>('a' + std::abs(g) - 1);
        out += g < 0 ? static_cast<char>(std::toupper(c)) : c;
      }
      return out;
    }
  }
  return {};
}

Lattice parse_lattice(std::string_view text) {
  if (text == "z") return Lattice::integers();
  if (text == "z2") return Lattice::plane();
  if (text.starts_with("free:")) return Lattice::free_group(static_cast<int>(parse_int(text.substr(5))));
  throw usage_error("unknown lattice '" + std::string(text) + "'");
}

std::string format_lattice(const Lattice& lat) {
  switch (lat.kind) {
    case LatticeKind::z:
      return "z";
    case LatticeKind::z2:
      return "z2";
    case LatticeKind::free:
      return "free:" + std::to_string(lat.rank);
  }
  return {};
}

}  // namespace pxca
