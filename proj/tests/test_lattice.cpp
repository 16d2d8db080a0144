#include <doctest.h>

#include <algorithm>

#include "pxca/errors.hpp"
#include "pxca/lattice.hpp"
#include "support.hpp"

using namespace pxca;

TEST_CASE("group law examples") {
  CHECK(Site::z2(3, -2) + Site::z2(-1, 5) == Site::z2(2, 3));
  Lattice f2 = Lattice::free_group(2);
  CHECK(parse_site(f2, "a b") + parse_site(f2, "B a") == parse_site(f2, "a a"));
  CHECK(norm(Site::z2(3, -2)) == 5);
  CHECK(sup_norm(Site::z2(3, -2)) == 3);
  CHECK(norm(parse_site(f2, "a a b A")) == 4);
  CHECK(norm(identity(f2)) == 0);
  CHECK(norm(identity(Lattice::plane())) == 0);
}

TEST_CASE("balls") {
  std::vector<Site> z = ball(Lattice::integers(), 2);
  CHECK(z == std::vector<Site>{Site::z(-2), Site::z(-1), Site::z(0), Site::z(1), Site::z(2)});
  CHECK(ball(Lattice::plane(), 1).size() == 5);
  CHECK(ball(Lattice::plane(), 7).size() == 113);
  CHECK(box(Lattice::plane(), 2).size() == 25);
  CHECK(ball(Lattice::free_group(2), 2).size() == 17);
  CHECK(ball(Lattice::plane(), Site::z2(5, 5), 1).front() == Site::z2(4, 5));
}

TEST_CASE("free balls match breadth first enumeration") {
  for (int n = 1; n <= 3; ++n)
    for (int r = 0; r <= 4; ++r) {
      Lattice lat = Lattice::free_group(n);
      std::set<std::string> want = testing::naive_free_ball(n, r);
      std::vector<Site> got = ball(lat, r);
      REQUIRE(got.size() == want.size());
      CHECK(ball_size(lat, r) == want.size());
      std::set<std::string> got_text;
      for (const Site& s : got) {
        std::string t = format_site(s);
        t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
        got_text.insert(t);
      }
      CHECK(got_text == want);
      CHECK(std::is_sorted(got.begin(), got.end()));
    }
}

TEST_CASE("ball sizes match closed forms") {
  for (std::int64_t r = 0; r <= 12; ++r) {
    CHECK(ball_size(Lattice::integers(), r) == static_cast<std::uint64_t>(2 * r + 1));
    CHECK(ball_size(Lattice::plane(), r) == static_cast<std::uint64_t>(2 * r * r + 2 * r + 1));
    CHECK(ball(Lattice::plane(), r).size() == ball_size(Lattice::plane(), r));
  }
}

TEST_CASE("shortlex order on free words") {
  Lattice f2 = Lattice::free_group(2);
  std::vector<Site> b = ball(f2, 1);
  std::vector<std::string> text;
  for (const Site& s : b) text.push_back(format_site(s));
  CHECK(text == std::vector<std::string>{"", "a", "A", "b", "B"});
}

TEST_CASE("branches") {
  Lattice f2 = Lattice::free_group(2);
  CHECK(branch_of(parse_site(f2, "a b a")) == 1);
  CHECK(!branch_of(identity(f2)).has_value());
  CHECK(branch_of(parse_site(f2, "B a")) == -2);
}

TEST_CASE("parse and format round trip") {
  testing::Gen gen(11);
  for (Lattice lat : {Lattice::integers(), Lattice::plane(), Lattice::free_group(3)})
    for (int i = 0; i < 200; ++i) {
      Site s = gen.site(lat, 6);
      CHECK(parse_site(lat, format_site(s)) == s);
    }
  CHECK(parse_lattice("free:4") == Lattice::free_group(4));
  CHECK(format_lattice(Lattice::plane()) == "z2");
  CHECK_THROWS_AS(parse_site(Lattice::plane(), "1"), usage_error);
  CHECK_THROWS_AS(parse_site(Lattice::free_group(2), "c"), usage_error);
  CHECK_THROWS_AS(parse_lattice("z3"), usage_error);
}

TEST_CASE("mixed lattice operands are rejected") {
  CHECK_THROWS_AS(Site::z(1) + Site::z2(1, 1), usage_error);
}

TEST_CASE("group axioms on random sites") {
  testing::Gen gen(12);
  for (Lattice lat : {Lattice::integers(), Lattice::plane(), Lattice::free_group(2), Lattice::free_group(3)})
    for (int i = 0; i < 300; ++i) {
      Site a = gen.site(lat, 5), b = gen.site(lat, 5), c = gen.site(lat, 5);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a + identity(lat) == a);
      CHECK(identity(lat) + a == a);
      CHECK(a - a == identity(lat));
      CHECK(-a + a == identity(lat));
      CHECK(norm(a + b) <= norm(a) + norm(b));
      CHECK(norm(-a) == norm(a));
      CHECK(belongs_to(a, lat));
    }
}

TEST_CASE("free reduction is confluent") {
  testing::Gen gen(13);
  for (int i = 0; i < 200; ++i) {
    Word w;
    for (int j = 0; j < 12; ++j) {
      int g = static_cast<int>(gen.range(1, 2));
      w.push_back(gen.coin(0.5) ? g : -g);
    }
    // reduce the halves first, then the whole
    std::size_t cut = static_cast<std::size_t>(gen.range(0, 12));
    Word l(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(cut)), r(w.begin() + static_cast<std::ptrdiff_t>(cut), w.end());
    CHECK(Site::free(w) == Site::free(l) + Site::free(r));
    Word red = Site::free(w).word();
    for (std::size_t j = 0; j + 1 < red.size(); ++j) CHECK(red[j] != -red[j + 1]);
  }
}
