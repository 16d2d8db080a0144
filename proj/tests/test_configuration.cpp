#include <doctest.h>

#include <sstream>

#include "pxca/configuration.hpp"
#include "pxca/errors.hpp"
#include "support.hpp"

using namespace pxca;

TEST_CASE("alphabet encoding") {
  Alphabet a(std::vector<int>{3, 3});
  CHECK(a.size() == 9);
  CHECK(a.compose({1, 2}) == 5);
  CHECK(a.digits(5) == std::vector<int>{1, 2});
  CHECK(a.add(a.compose({2, 1}), a.compose({2, 2})) == a.compose({1, 0}));
  CHECK(a.neg(a.compose({1, 2})) == a.compose({2, 1}));
  CHECK(a.scale(2, a.compose({1, 1})) == a.compose({2, 2}));
  Alphabet p = Alphabet::product(Alphabet::cyclic(2), Alphabet::cyclic(5));
  CHECK(p.moduli() == std::vector<int>{2, 5});
  for (State s = 0; s < p.size(); ++s) CHECK(p.compose(p.digits(s)) == s);
}

TEST_CASE("alphabet group laws") {
  testing::Gen gen(21);
  Alphabet a(std::vector<int>{4, 3, 2});
  for (int i = 0; i < 500; ++i) {
    State x = static_cast<State>(gen.range(0, 23)), y = static_cast<State>(gen.range(0, 23)),
          z = static_cast<State>(gen.range(0, 23));
    CHECK(a.add(x, y) == a.add(y, x));
    CHECK(a.add(a.add(x, y), z) == a.add(x, a.add(y, z)));
    CHECK(a.add(x, a.neg(x)) == 0);
    CHECK(a.scale(3, x) == a.add(x, a.add(x, x)));
  }
}

TEST_CASE("configurations store only non-quiescent cells") {
  Configuration c(Lattice::plane(), 3);
  c.set(Site::z2(1, 1), 2);
  c.set(Site::z2(0, 0), 0);
  CHECK(c.count() == 1);
  c.set(Site::z2(1, 1), 0);
  CHECK(c.is_quiescent());
  CHECK(c.size() == -1);
  CHECK_THROWS_AS(c.set(Site::z2(0, 0), 3), usage_error);
  CHECK_THROWS_AS(c.set(Site::z(0), 1), usage_error);
  Configuration q(Lattice::integers(), 3, 1);
  q.set(Site::z(4), 1);
  CHECK(q.is_quiescent());
  CHECK(q.at(Site::z(9)) == 1);
}

TEST_CASE("shifts compose") {
  testing::Gen gen(22);
  for (Lattice lat : {Lattice::integers(), Lattice::plane(), Lattice::free_group(2)})
    for (int i = 0; i < 100; ++i) {
      Configuration c = gen.config(lat, 3, 4, 6);
      Site a = gen.site(lat, 3), b = gen.site(lat, 3);
      // sigma_a(sigma_b c)(x) = (sigma_b c)(a + x) = c(b + a + x)
      CHECK(c.shifted(b).shifted(a) == c.shifted(b + a));
      CHECK(c.shifted(identity(lat)) == c);
      Site x = gen.site(lat, 3);
      CHECK(c.shifted(a).at(x) == c.at(a + x));
    }
}

TEST_CASE("size is the sup norm radius") {
  Configuration c(Lattice::plane(), 2);
  c.set(Site::z2(3, -5), 1);
  c.set(Site::z2(4, 4), 1);
  CHECK(c.size() == 5);
}

TEST_CASE("pointwise arithmetic") {
  testing::Gen gen(23);
  Alphabet law = Alphabet::cyclic(5);
  for (int i = 0; i < 100; ++i) {
    Configuration a = gen.config(Lattice::plane(), 5, 3, 8), b = gen.config(Lattice::plane(), 5, 3, 8);
    CHECK(add(a, negate(a, law), law).is_quiescent());
    CHECK(add(a, b, law) == add(b, a, law));
    CHECK(scale(2, a, law) == add(a, a, law));
    CHECK(difference_count(a, b) == difference_count(add(a, negate(b, law), law), Configuration(a.lattice(), 5)));
  }
}

TEST_CASE("text format round trip") {
  testing::Gen gen(24);
  for (Lattice lat : {Lattice::integers(), Lattice::plane(), Lattice::free_group(3)})
    for (int i = 0; i < 30; ++i) {
      Configuration c = gen.config(lat, 7, 5, 10);
      std::stringstream ss;
      write_configuration(ss, c);
      CHECK(read_configuration(ss) == c);
    }
  std::istringstream in("# comment\nlattice=z2 q=2 quiescent=0\n3,-2\t1\n");
  Configuration c = read_configuration(in);
  CHECK(c.at(Site::z2(3, -2)) == 1);
  std::istringstream bad("lattice=z2 q=2 quiescent=0\n3\t1\n");
  CHECK_THROWS_AS(read_configuration(bad), usage_error);
}

TEST_CASE("random configurations are reproducible") {
  std::mt19937_64 a(5), b(5);
  Configuration x = random_configuration(Lattice::plane(), 4, 6, 0.3, a);
  Configuration y = random_configuration(Lattice::plane(), 4, 6, 0.3, b);
  CHECK(x == y);
  CHECK(x.size() <= 6);
  CHECK(!x.is_quiescent());
}
