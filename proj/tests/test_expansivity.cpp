#include <doctest.h>

#include "pxca/engine.hpp"
#include "pxca/errors.hpp"
#include "pxca/expansivity.hpp"
#include "pxca/linear.hpp"
#include "pxca/presets.hpp"
#include "pxca/z2subst.hpp"
#include "support.hpp"

using namespace pxca;

namespace {

using Key = std::pair<std::int64_t, std::int64_t>;

std::map<Key, int> coeff_keys(const LinearRuleZm& f) {
  std::map<Key, int> out;
  for (const auto& [v, a] : f.coeffs) out[{v.x(), v.kind() == LatticeKind::z2 ? v.y() : 0}] = a;
  return out;
}

bool naive_null(const LinearRuleZm& f, testing::Cells2 c, int m, std::int64_t t_max) {
  std::map<Key, int> a = coeff_keys(f);
  bool plane = f.lattice.kind == LatticeKind::z2;
  for (std::int64_t t = 0; t <= t_max; ++t) {
    for (const auto& [z, s] : c) {
      std::int64_t n = std::abs(z.first) + (plane ? std::abs(z.second) : 0);
      if (n <= m) return false;
    }
    c = testing::naive_linear_step(c, a, f.modulus);
  }
  return true;
}

// every k-subset of the box with every nonzero value assignment
bool brute_force_exists(const LinearRuleZm& f, int k, std::int64_t R, int m, std::int64_t t_max) {
  std::vector<Key> region;
  bool plane = f.lattice.kind == LatticeKind::z2;
  for (std::int64_t x = -R; x <= R; ++x)
    for (std::int64_t y = plane ? -R : 0; y <= (plane ? R : 0); ++y) region.push_back({x, y});
  std::vector<std::size_t> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
  int q = f.modulus;
  while (true) {
    std::vector<int> vals(static_cast<std::size_t>(k), 1);
    while (true) {
      testing::Cells2 c;
      for (int i = 0; i < k; ++i) c[region[idx[static_cast<std::size_t>(i)]]] = vals[static_cast<std::size_t>(i)];
      if (naive_null(f, c, m, t_max)) return true;
      int j = 0;
      while (j < k && vals[static_cast<std::size_t>(j)] == q - 1) vals[static_cast<std::size_t>(j++)] = 1;
      if (j == k) break;
      ++vals[static_cast<std::size_t>(j)];
    }
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == region.size() - static_cast<std::size_t>(k - i)) --i;
    if (i < 0) return false;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

LinearRuleZm shift_right() { return LinearRuleZm(Lattice::integers(), 2, {{Site::z(-1), 1}}); }

}  // namespace

TEST_CASE("null trace search examples") {
  ExpansivityVerdict none = kexp_search(vn2_linear(), 1, 6, 1, 128);
  CHECK(!none.found);
  CHECK(none.examined == 169);

  ExpansivityVerdict two = kexp_search(vn2_linear(), 2, 8, 3, 256);
  REQUIRE(two.found);
  CHECK(two.witness.count() == 2);
  CHECK(two.reverified);
  CHECK(two.partner.is_quiescent());
  CHECK(exact_trace_null(two.witness, 3));

  ExpansivityVerdict tri = kexp_search(tri2_linear(), 1, 40, 2, 512);
  REQUIRE(tri.found);
  CHECK(tri.reverified);
  CHECK(tri.witness.cells() == std::map<Site, State>{{Site::z2(-40, 1), 1}});
  CHECK(trace(Rule::linear(tri2_linear()), tri.witness, 2, 512).is_null());

  CHECK_THROWS_AS(kexp_search(vn2_linear(), 0, 3, 1, 8), usage_error);
}

TEST_CASE("null trace search agrees with brute force") {
  struct Case {
    LinearRuleZm f;
    int k;
    std::int64_t R;
    int m;
    std::int64_t t;
  };
  LinearRuleZm mod3(Lattice::integers(), 3, {{Site::z(1), 1}, {Site::z(-1), 2}, {Site::z(0), 1}});
  LinearRuleZm z2_mod3(Lattice::plane(), 3, {{Site::z2(1, 0), 1}, {Site::z2(0, 1), 2}});
  std::vector<Case> cases = {
      {f2_linear(), 1, 6, 0, 20},  {f2_linear(), 2, 5, 0, 20},  {f2_linear(), 2, 5, 1, 20},
      {f3_linear(), 2, 4, 0, 20},  {f3_linear(), 3, 3, 1, 16},  {mod3, 2, 4, 0, 16},
      {vn2_linear(), 2, 3, 1, 24}, {vn2_linear(), 1, 4, 0, 24}, {vn2_linear(), 2, 2, 0, 16},
      {z2_mod3, 2, 2, 0, 12},      {tri2_linear(), 1, 4, 0, 24}, {shift_right(), 1, 4, 0, 10},
  };
  int found = 0;
  for (const Case& c : cases) {
    CAPTURE(c.k);
    CAPTURE(c.R);
    CAPTURE(c.m);
    ExpansivityVerdict v = kexp_search(c.f, c.k, c.R, c.m, c.t);
    CHECK(v.found == brute_force_exists(c.f, c.k, c.R, c.m, c.t));
    if (v.found) {
      ++found;
      CHECK(naive_null(c.f, testing::to_cells(v.witness), c.m, c.t));
      CHECK(v.witness.count() == static_cast<std::size_t>(c.k));
    }
  }
  // both outcomes are exercised
  CHECK(found > 0);
  CHECK(found < static_cast<int>(cases.size()));
}

TEST_CASE("pair probe agrees with the linear search") {
  for (auto [k, R, m] : std::vector<std::tuple<int, std::int64_t, int>>{{1, 4, 0}, {2, 3, 0}, {2, 3, 1}}) {
    ExpansivityVerdict a = kexp_search(f2_linear(), k, R, m, 16);
    ExpansivityVerdict b = pair_preexp_probe(make_rule("f2"), k, R, m, 16);
    CHECK(a.found == b.found);
    if (b.found) {
      CHECK(difference_count(b.witness, b.partner) == static_cast<std::size_t>(k));
      CHECK(trace(make_rule("f2"), b.witness, m, 16) == trace(make_rule("f2"), b.partner, m, 16));
    }
  }
  ExpansivityVerdict empty = pair_preexp_probe(make_rule("f2"), 20, 2, 0, 8);
  CHECK(!empty.found);
  CHECK(empty.examined == 0);
}

TEST_CASE("directional fronts") {
  Rule f3 = make_rule("f3");
  Configuration c = Configuration::spot(Lattice::integers(), 3, Site::z(0), 1);
  Configuration zero(Lattice::integers(), 3);
  DirectionalFronts d0 = directional_fronts(f3, c, zero, 0, 1, 30);
  FrontSeries plain = fronts(f3, c, zero, 30);
  CHECK(d0.left == plain.left);
  CHECK(d0.right == plain.right);

  Rule shift = Rule::linear(shift_right());
  Configuration s = Configuration::spot(Lattice::integers(), 2, Site::z(3), 1);
  DirectionalFronts d1 = directional_fronts(shift, s, Configuration(Lattice::integers(), 2), 1, 1, 40);
  for (std::size_t t = 0; t < d1.left.size(); ++t) {
    CHECK(d1.left[t] == std::optional<std::int64_t>(3));
    CHECK(d1.right[t] == std::optional<std::int64_t>(3));
  }
  CHECK(!d1.left_escapes_below);
  CHECK(!d1.right_escapes_above);

  Rule p = psi();
  Configuration spot = Configuration::spot(Lattice::integers(), 9, Site::z(0), 3);
  Configuration q(Lattice::integers(), 9);
  DirectionalFronts half = directional_fronts(p, spot, q, 1, 2, 100, 10);
  CHECK(half.right_escapes_above);
  CHECK(half.left_escapes_below);
  DirectionalFronts boundary = directional_fronts(p, spot, q, 1, 2, 100);
  CHECK(boundary.threshold == 50);
}

TEST_CASE("psi relation on small inputs") {
  testing::Gen gen(51);
  for (int i = 0; i < 50; ++i) {
    Configuration c = gen.config(Lattice::integers(), 9, 6, 5);
    CHECK(psi_relation_check(c, 0, 0, 0));
  }
  for (State s = 1; s < 9; ++s) {
    Configuration c = Configuration::spot(Lattice::integers(), 9, Site::z(0), s);
    PsiRelationSweep sw = psi_relation_sweep({c}, 2, 10, -20, 20);
    CHECK(sw.failed == 0);
    CHECK(sw.checked == 3u * 11u * 41u);
  }
  CHECK(psi_relation_check(Configuration(Lattice::integers(), 9), 3, 5, 7));
}

TEST_CASE("psi relation matches direct evaluation") {
  // psi^{2 3^k + t}(c)(z) against the three shifted orbits, read off plain iterates
  testing::Gen gen(52);
  Rule p = psi();
  Alphabet law = p.alphabet();
  for (int i = 0; i < 20; ++i) {
    Configuration c = gen.config(Lattice::integers(), 9, 4, 4);
    int k = static_cast<int>(gen.range(0, 2));
    std::int64_t t = gen.range(0, 6), z = gen.range(-8, 8), e = 1;
    for (int j = 0; j < k; ++j) e *= 3;
    Configuration lhs = iterate(p, c, 2 * e + t).shifted(Site::z(z));
    Configuration rhs = add(iterate(p, c, t).shifted(Site::z(z)),
                            add(iterate(p, c, e + t).shifted(Site::z(z - e)), iterate(p, c, e + t).shifted(Site::z(z + e)), law),
                            law);
    CHECK((lhs == rhs) == psi_relation_check(c, k, t, z));
  }
}

TEST_CASE("psi landmarks and upsilon gliders") {
  LandmarkReport zero = psi_landmarks(0, 0, 1, 0);
  CHECK(zero.ok());
  CHECK(zero.expected == 0);
  LandmarkReport ex = psi_landmarks(1, 1, 1, 1);
  CHECK(ex.position == 3);
  CHECK(ex.expected == 5);
  CHECK(ex.ok());

  Configuration g = upsilon_glider(4, 2);
  CHECK(g.cells() == std::map<Site, State>{{Site::z(4), 1}, {Site::z(5), 2}});
  Configuration g4 = upsilon_glider(0, 4);
  CHECK(g4.cells() == std::map<Site, State>{{Site::z(0), 1}, {Site::z(1), 3}, {Site::z(2), 3}, {Site::z(3), 2}});
  CHECK_THROWS_AS(upsilon_glider(0, 1), usage_error);
}

TEST_CASE("multiplication automata") {
  MultParams a = mult_params(2, 4);
  CHECK(a.q == 1);
  CHECK(a.p == 2);
  MultParams b = mult_params(3, 2);
  CHECK(b.q == 2);
  CHECK(b.p == 0);
  MultParams c = mult_params(2, 3);
  CHECK(c.q == 3);
  CHECK(c.p == 0);

  testing::Gen gen(53);
  for (int i = 0; i < 100; ++i) {
    Configuration x = gen.config(Lattice::integers(), 6, 8, 6);
    CHECK(mult_inverse_check(3, 2, x));
    CHECK(mult_inverse_check(2, 3, x));
  }
  MultFrontReport r = mult_front_checks(3, 2, 40, 60, 7);
  CHECK(r.g_recurrence);
  CHECK(r.left_bound);
  CHECK(r.right_bound);
  CHECK(r.settle_applies);
  MultFrontReport d = mult_front_checks(2, 4, 40, 60, 7);
  CHECK(d.decay_applies);
  CHECK(d.decay_floor);
}

TEST_CASE("coprime fronts on prime powers") {
  LinearRuleZm sym(Lattice::integers(), 4, {{Site::z(1), 1}, {Site::z(-1), 1}});
  CoprimeFronts cf = coprime_fronts(sym, 30);
  CHECK(cf.prime == 2);
  CHECK(cf.exponent == 2);
  for (std::size_t t = 0; t < cf.left.size(); ++t) {
    CHECK(cf.left[t] == std::optional<std::int64_t>(-static_cast<std::int64_t>(t)));
    CHECK(cf.right[t] == std::optional<std::int64_t>(static_cast<std::int64_t>(t)));
  }
  CHECK(cf.matches_socle);

  LinearRuleZm twice(Lattice::integers(), 4, {{Site::z(1), 2}});
  CoprimeFronts tw = coprime_fronts(twice, 10);
  CHECK(tw.left[0] == std::optional<std::int64_t>(0));
  for (std::size_t t = 1; t < tw.left.size(); ++t) {
    CHECK(!tw.left[t].has_value());
    CHECK(!tw.right[t].has_value());
  }
  CHECK_THROWS_AS(coprime_fronts(LinearRuleZm(Lattice::integers(), 6, {{Site::z(1), 1}}), 10), usage_error);
}
