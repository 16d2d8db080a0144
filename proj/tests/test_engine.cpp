#include <doctest.h>

#include <set>

#include "pxca/engine.hpp"
#include "pxca/errors.hpp"
#include "pxca/expansivity.hpp"
#include "pxca/presets.hpp"
#include "pxca/render.hpp"
#include "support.hpp"

using namespace pxca;

namespace {

Configuration spot_z(int q, std::int64_t x, State s) { return Configuration::spot(Lattice::integers(), q, Site::z(x), s); }

std::set<Site> support(const Configuration& c) {
  std::set<Site> s;
  for (const auto& [z, v] : c.cells()) s.insert(z);
  return s;
}

}  // namespace

TEST_CASE("shift convention: a spot at s and offset v contribute at s - v") {
  LinearRuleZm right(Lattice::integers(), 2, {{Site::z(1), 1}});
  Configuration img = step(Rule::linear(right), spot_z(2, 0, 1));
  CHECK(support(img) == std::set<Site>{Site::z(-1)});
  // the same rule is the shift sigma_1
  testing::Gen gen(31);
  for (int i = 0; i < 50; ++i) {
    Configuration c = gen.config(Lattice::integers(), 2, 8, 5);
    CHECK(step(Rule::linear(right), c) == c.shifted(Site::z(1)));
  }
}

TEST_CASE("step examples") {
  Configuration img = step(make_rule("f3"), spot_z(3, 0, 1));
  CHECK(img.cells() == std::map<Site, State>{{Site::z(-1), 1}, {Site::z(1), 1}});
  for (const char* r : {"psi", "upsilon", "f3", "f2", "vn2", "tri2", "mult:3,2", "lambda:2", "layered:2"}) {
    Rule rule = make_rule(r);
    Configuration zero(rule.lattice(), rule.states(), rule.quiescent());
    CHECK(step(rule, zero).is_quiescent());
    CHECK(iterate(rule, zero, 7).is_quiescent());
  }
  Configuration vn = iterate(make_rule("vn2"), Configuration::spot(Lattice::plane(), 2, Site::z2(0, 0), 1), 2);
  CHECK(support(vn) == std::set<Site>{Site::z2(0, 0), Site::z2(0, 2), Site::z2(0, -2), Site::z2(2, 0), Site::z2(-2, 0)});
}

TEST_CASE("psi is the second order of f3") {
  // (c,d) -> (d, F(d) + c): (1,0) at the origin becomes (0,1)
  Configuration c = spot_z(9, 0, 3);
  CHECK(step(psi(), c) == spot_z(9, 0, 1));
}

TEST_CASE("iterate moves the upsilon glider") {
  for (int k = 2; k <= 6; ++k)
    for (std::int64_t z = -3; z <= 3; ++z) CHECK(iterate(upsilon(), upsilon_glider(z, k), 5) == upsilon_glider(z - 5, k));
  CHECK(iterate(psi(), spot_z(9, 4, 5), 0) == spot_z(9, 4, 5));
}

TEST_CASE("linear steps agree with a naive scatter on Z and Z^2") {
  testing::Gen gen(32);
  for (int i = 0; i < 200; ++i) {
    bool plane = gen.coin(0.5);
    Lattice lat = plane ? Lattice::plane() : Lattice::integers();
    int m = static_cast<int>(gen.range(2, 7));
    std::map<Site, int> coeffs;
    std::map<std::pair<std::int64_t, std::int64_t>, int> naive;
    for (int j = 0; j < 4; ++j) {
      Site v = gen.site(lat, 2);
      int a = static_cast<int>(gen.range(1, m - 1));
      coeffs[v] = a;
    }
    for (const auto& [v, a] : coeffs) naive[{v.x(), plane ? v.y() : 0}] = a;
    Rule rule = Rule::linear(LinearRuleZm(lat, m, coeffs));
    Configuration c = gen.config(lat, m, 6, 6);
    testing::Cells2 want = testing::to_cells(c);
    Evolution ev(rule, c);
    for (int t = 1; t <= 6; ++t) {
      want = testing::naive_linear_step(want, naive, m);
      ev.advance();
      CHECK(testing::to_cells(ev.snapshot()) == want);
    }
  }
}

TEST_CASE("the packed backend agrees with the generic one") {
  testing::Gen gen(33);
  LinearRuleZm vn = vn2_linear();
  // an equivalent table rule forces the byte grid
  std::vector<Site> nb;
  for (const auto& [v, a] : vn.coeffs) nb.push_back(v);
  Rule table = Rule::table(Lattice::plane(), 2, nb, [](std::span<const State> x) {
    State s = 0;
    for (State v : x) s ^= v;
    return s;
  });
  Rule packed = make_rule("vn2");
  for (int i = 0; i < 40; ++i) {
    Configuration c = gen.config(Lattice::plane(), 2, 70, 12);
    Evolution a(packed, c), b(table, c);
    CHECK(a.backend() != b.backend());
    for (int t = 0; t < 20; ++t) {
      a.advance();
      b.advance();
    }
    CHECK(a.snapshot() == b.snapshot());
  }
}

TEST_CASE("free group evolution agrees with plain stepping") {
  testing::Gen gen(34);
  Rule lam = make_rule("lambda:2");
  for (int i = 0; i < 30; ++i) {
    Configuration c = gen.config(lam.lattice(), 2, 3, 4);
    Evolution ev(lam, c);
    Configuration x = c;
    for (int t = 0; t < 5; ++t) {
      ev.advance();
      // naive: F(c)(w) = c(w) + sum over letters s of c(w s), mod 2
      Configuration y(lam.lattice(), 2);
      std::set<Site> cand;
      for (const auto& [w, v] : x.cells())
        for (const Site& n : ball(lam.lattice(), w, 1)) cand.insert(n);
      for (const Site& w : cand) {
        int s = 0;
        for (const Site& n : ball(lam.lattice(), w, 1)) s ^= x.at(n);
        y.set(w, s);
      }
      x = y;
      CHECK(ev.snapshot() == x);
    }
  }
}

TEST_CASE("traces") {
  Rule vn = make_rule("vn2");
  TracePrefix tp = trace(vn, Configuration::spot(Lattice::plane(), 2, Site::z2(0, 0), 1), 0, 1);
  REQUIRE(tp.rows.size() == 2);
  CHECK(tp.rows[0] == std::vector<State>{1});
  CHECK(tp.rows[1] == std::vector<State>{1});
  CHECK(trace(vn, Configuration(Lattice::plane(), 2), 3, 20).is_null());
  Rule tri = make_rule("tri2");
  CHECK(trace(tri, Configuration::spot(Lattice::plane(), 2, Site::z2(0, 36), 1), 2, 64).is_null());
  CHECK(trace(tri, Configuration::spot(Lattice::plane(), 2, Site::z2(0, 36), 1), 2, 64).sites.size() == 13);
}

TEST_CASE("cone cropping is exact on the observation window") {
  testing::Gen gen(35);
  for (const char* name : {"f3", "psi", "vn2", "tri2", "lambda:2", "mult:3,2"}) {
    Rule r = make_rule(name);
    for (int i = 0; i < 20; ++i) {
      Configuration c = gen.config(r.lattice(), r.states(), 5, 8);
      std::int64_t T = gen.range(0, r.lattice().kind == LatticeKind::free ? 6 : 15);
      int m = static_cast<int>(gen.range(0, 3));
      TracePrefix tp = trace(r, c, m, T);
      Configuration x = c;
      for (std::int64_t t = 0; t <= T; ++t) {
        for (std::size_t s = 0; s < tp.sites.size(); ++s) CHECK(tp.rows[static_cast<std::size_t>(t)][s] == x.at(tp.sites[s]));
        x = step(r, x);
      }
    }
  }
}

TEST_CASE("fronts") {
  FrontSeries fs = fronts(make_rule("f3"), spot_z(3, 0, 1), Configuration(Lattice::integers(), 3), 30);
  for (std::int64_t t = 0; t <= 30; ++t) {
    CHECK(*fs.left[static_cast<std::size_t>(t)] == -t);
    CHECK(*fs.right[static_cast<std::size_t>(t)] == t);
  }
  FrontSeries g = fronts(upsilon(), upsilon_glider(0, 3), Configuration(Lattice::integers(), 4), 20);
  for (std::int64_t t = 0; t <= 20; ++t) {
    CHECK(*g.left[static_cast<std::size_t>(t)] == -t);
    CHECK(*g.right[static_cast<std::size_t>(t)] == 2 - t);
  }
  CHECK_THROWS_AS(fronts(make_rule("f3"), spot_z(3, 0, 1), spot_z(3, 0, 1), 5), usage_error);
  // the eraser merges every pair after one step; the sentinel then persists
  Rule eraser = Rule::table(Lattice::integers(), 2, {Site::z(0)}, [](std::span<const State>) { return 0; });
  FrontSeries gone = fronts(eraser, spot_z(2, 3, 1), Configuration(Lattice::integers(), 2), 4);
  CHECK(*gone.left[0] == 3);
  for (std::size_t t = 1; t <= 4; ++t) CHECK(!gone.left[t].has_value());
  // mult:2,4 moves a difference to the left without killing it
  FrontSeries moving = fronts(make_rule("mult:2,4"), spot_z(8, 0, 4), Configuration(Lattice::integers(), 8), 10);
  CHECK(*moving.right.back() < 0);
}

TEST_CASE("front steps are bounded by the neighborhood") {
  testing::Gen gen(36);
  for (const char* name : {"f3", "psi", "upsilon", "mult:3,2", "mult:2,4", "layered:2"}) {
    Rule r = make_rule(name);
    std::int64_t vmin = 0, vmax = 0;
    for (const Site& v : r.neighborhood()) {
      vmin = std::min(vmin, v.x());
      vmax = std::max(vmax, v.x());
    }
    for (int i = 0; i < 40; ++i) {
      Configuration c = gen.config(r.lattice(), r.states(), 6, 5), d = c;
      d.set(Site::z(gen.range(-6, 6)), static_cast<State>(gen.range(0, r.states() - 1)));
      if (c == d) continue;
      FrontSeries fs = fronts(r, c, d, 25);
      for (std::size_t t = 0; t + 1 < fs.left.size(); ++t) {
        if (!fs.left[t]) {
          CHECK(!fs.left[t + 1]);
          continue;
        }
        CHECK(*fs.left[t] <= *fs.right[t]);
        if (!fs.left[t + 1]) continue;
        CHECK(*fs.left[t + 1] >= *fs.left[t] - vmax);
        CHECK(*fs.right[t + 1] <= *fs.right[t] - vmin);
      }
    }
  }
}

TEST_CASE("support stays within support - V") {
  testing::Gen gen(37);
  for (const char* name : {"f3", "psi", "vn2", "tri2", "mult:3,2", "layered:3"}) {
    Rule r = make_rule(name);
    for (int i = 0; i < 30; ++i) {
      Configuration c = gen.config(r.lattice(), r.states(), 5, 6);
      std::set<Site> reach;
      for (const auto& [z, v] : c.cells())
        for (const Site& n : r.neighborhood()) reach.insert(z - n);
      Configuration img = step(r, c);
      for (const auto& [z, v] : img.cells()) CHECK(reach.count(z) == 1);
    }
  }
}

TEST_CASE("products act componentwise") {
  testing::Gen gen(38);
  Rule f = make_rule("f3");
  Rule ident = Rule::linear(LinearRuleZm(Lattice::integers(), 3, {{Site::z(0), 1}}));
  Rule ff = product(f, f), idf = product(ident, f);
  CHECK(ff.radius() == 1);
  for (int i = 0; i < 50; ++i) {
    Configuration c = gen.config(Lattice::integers(), 3, 6, 5), d = gen.config(Lattice::integers(), 3, 6, 5);
    Configuration pair(Lattice::integers(), 9), cf = step(f, c), df = step(f, d);
    for (std::int64_t x = -8; x <= 8; ++x) pair.set(Site::z(x), 3 * c.at(Site::z(x)) + d.at(Site::z(x)));
    Configuration got = step(idf, pair);
    for (std::int64_t x = -9; x <= 9; ++x) CHECK(got.at(Site::z(x)) == 3 * c.at(Site::z(x)) + df.at(Site::z(x)));
    Configuration left(Lattice::integers(), 9);
    for (const auto& [z, v] : c.cells()) left.set(z, 3 * v);
    Configuration img = step(ff, left);
    for (std::int64_t x = -9; x <= 9; ++x) CHECK(img.at(Site::z(x)) == 3 * cf.at(Site::z(x)));
  }
  CHECK_THROWS_AS(product(f, make_rule("vn2")), usage_error);
}

TEST_CASE("table rules must fix the quiescent state") {
  CHECK_THROWS_AS(Rule::table(Lattice::integers(), 2, {Site::z(0)}, [](std::span<const State>) { return 1; }),
                  usage_error);
}

TEST_CASE("resource limits carry the last completed step") {
  Limits lim;
  lim.max_cells = 200;
  try {
    iterate(make_rule("vn2"), Configuration::spot(Lattice::plane(), 2, Site::z2(0, 0), 1), 50, lim);
    FAIL("expected a resource error");
  } catch (const resource_error& e) {
    CHECK(e.last_completed() >= 0);
    CHECK(e.last_completed() < 50);
  }
}

TEST_CASE("rendering") {
  CHECK(gray_level(0, 3) == 0);
  CHECK(gray_level(1, 3) == 127);
  CHECK(gray_level(2, 3) == 255);
  Rule f = make_rule("f3");
  std::vector<PgmImage> blank = render_spacetime(f, Configuration(Lattice::integers(), 3), 4, 3);
  REQUIRE(blank.size() == 1);
  CHECK(blank[0].width == 9);
  CHECK(blank[0].height == 4);
  for (auto p : blank[0].pixels) CHECK(p == 0);
  std::vector<PgmImage> img = render_spacetime(f, spot_z(3, 0, 1), 3, 2);
  // top row is t = 2: cells -2, 0, 2 hold 1, 2, 1
  std::vector<std::uint8_t> top(img[0].pixels.begin(), img[0].pixels.begin() + 7);
  CHECK(top == std::vector<std::uint8_t>{0, 127, 0, 255, 0, 127, 0});
  CHECK(encode_pgm(img[0]) == encode_pgm(render_spacetime(f, spot_z(3, 0, 1), 3, 2)[0]));
  CHECK(encode_pgm(img[0]).rfind("P5\n7 3\n255\n", 0) == 0);
  std::vector<PgmImage> frames = render_spacetime(make_rule("vn2"), Configuration::spot(Lattice::plane(), 2, Site::z2(0, 0), 1), 2, 3);
  CHECK(frames.size() == 4);
  CHECK_THROWS_AS(render_spacetime(make_rule("lambda:2"), Configuration(Lattice::free_group(2), 2), 2, 2), usage_error);
  CHECK(render_text(f, spot_z(3, 0, 1), 2, 1) == "01010\n00100\n");
}
