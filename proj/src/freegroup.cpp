#include "pxca/freegroup.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "pxca/engine.hpp"
#include "pxca/errors.hpp"

namespace pxca {

namespace {

std::int64_t dist(const Site& a, const Site& b) { return norm(negate(a) + b); }

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  long double r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
  return r > 1e19L ? UINT64_MAX : static_cast<std::uint64_t>(r + 0.5L);
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

Rule lambda_rule(int n) {
  Lattice lat = Lattice::free_group(n);
  std::map<Site, int> a{{identity(lat), 1}};
  for (int g = 1; g <= n; ++g) {
    a[Site::free({g})] = 1;
    a[Site::free({-g})] = 1;
  }
  return Rule::linear(LinearRuleZm(lat, 2, a), "lambda:" + std::to_string(n));
}

std::vector<std::vector<State>> layer_recurrence(int n, int max_layer, std::int64_t t_max) {
  auto width = static_cast<std::size_t>(max_layer + t_max + 2);
  std::vector<State> cur(width, 0), next(width, 0);
  cur[0] = 1;
  std::vector<std::vector<State>> out;
  int up = (2 * n - 1) & 1, root = (2 * n) & 1;
  for (std::int64_t t = 0; t <= t_max; ++t) {
    out.emplace_back(cur.begin(), cur.begin() + max_layer + 1);
    next[0] = (cur[0] + root * cur[1]) & 1;
    for (std::size_t l = 1; l + 1 < width; ++l) next[l] = (cur[l] + cur[l - 1] + up * cur[l + 1]) & 1;
    next[width - 1] = 0;
    std::swap(cur, next);
  }
  return out;
}

LayerProfile layer_profile(int n, int L, std::int64_t t_max) {
  if (L < 0 || t_max < 0) throw usage_error("layer profile needs L >= 0 and t_max >= 0");
  Rule rule = lambda_rule(n);
  Lattice lat = rule.lattice();
  LayerProfile lp;
  lp.n = n;
  lp.L = L;
  lp.t_max = t_max;
  EvolutionOptions o;
  o.cone = ObservationCone{t_max, L};
  Evolution ev(rule, Configuration::spot(lat, 2, identity(lat), 1), o);
  std::vector<Site> cells = ball(lat, L);
  for (std::int64_t t = 0; t <= t_max; ++t) {
    std::vector<State> row(static_cast<std::size_t>(L) + 1, -1);
    for (const Site& s : cells) {
      State v = ev.at(s);
      auto l = static_cast<std::size_t>(norm(s));
      if (row[l] < 0) {
        row[l] = v;
      } else if (row[l] != v && lp.equivariant) {
        lp.equivariant = false;
        lp.first_violation = "t=" + std::to_string(t) + " site=" + format_site(s);
      }
      ++lp.cells_checked;
    }
    lp.profile.push_back(row);
    if (t < t_max) ev.advance();
  }
  for (std::int64_t l = 0; l <= std::min<std::int64_t>(L, t_max); ++l)
    if (lp.profile[static_cast<std::size_t>(l)][static_cast<std::size_t>(l)] != 1) lp.diagonal_ones = false;
  lp.recurrence_agrees = layer_recurrence(n, L, t_max) == lp.profile;
  return lp;
}

FreeWitnessReport fg_non2exp_witness(int n, const Site& z, const Site& sprime, int m, std::int64_t t_max,
                                     std::int64_t direct_horizon, std::size_t cell_budget) {
  Lattice lat = Lattice::free_group(n);
  if (!belongs_to(z, lat) || !belongs_to(sprime, lat)) throw usage_error("witness sites are not in F_n");
  if (norm(sprime) != 1) throw usage_error("s' must be a generator or an inverse");
  if (m < 0 || t_max < 0) throw usage_error("window and horizon must be non-negative");
  FreeWitnessReport r;
  r.x = z + sprime;
  r.y = z - sprime;
  r.m = m;
  r.t_max = t_max;
  if (norm(r.x) != norm(z) + 1 || norm(r.y) != norm(z) + 1)
    throw usage_error("z s' and z s'^-1 must both extend z");
  Rule rule = lambda_rule(n);
  r.witness = Configuration(lat, 2);
  r.witness.set(r.x, 1);
  r.witness.set(r.y, 1);

  std::vector<Site> window = ball(lat, m);
  r.equidistant = std::all_of(window.begin(), window.end(), [&](const Site& w) { return dist(r.x, w) == dist(r.y, w); });

  auto lin = rule.as_linear();
  std::set<int> neighbor_coeffs;
  for (const auto& [s, a] : lin->coeffs)
    if (norm(s) == 1) neighbor_coeffs.insert(a);
  r.totalistic = neighbor_coeffs.size() == 1 && lin->coeffs.size() == static_cast<std::size_t>(2 * n + 1);

  // radial route: spot(x) seen from w is the spot orbit at |x^-1 w|
  std::int64_t far = 0;
  for (const Site& w : window) far = std::max({far, dist(r.x, w), dist(r.y, w)});
  auto prof = layer_recurrence(n, static_cast<int>(far), t_max);
  r.radial_null = true;
  for (std::int64_t t = 0; t <= t_max && r.radial_null; ++t)
    for (const Site& w : window) {
      auto& row = prof[static_cast<std::size_t>(t)];
      if ((row[static_cast<std::size_t>(dist(r.x, w))] ^ row[static_cast<std::size_t>(dist(r.y, w))]) != 0) {
        r.radial_null = false;
        break;
      }
    }

  // path quotient route: states depend on (attachment on x-z-y, distance to the path)
  {
    auto width = static_cast<std::size_t>(t_max + m + 4);
    std::vector<std::vector<State>> s(3, std::vector<State>(width, 0)), nx = s;
    s[0][0] = 1;  // x
    s[2][0] = 1;  // y
    int odd_out = (2 * n - 1) & 1, mid_out = (2 * n - 2) & 1;
    std::vector<std::pair<int, std::size_t>> cls;
    for (const Site& w : window) {
      std::int64_t dx = dist(r.x, w), dz = dist(z, w), dy = dist(r.y, w);
      std::int64_t d = std::min({dx, dz, dy});
      int a = d == dz ? 1 : (d == dx ? 0 : 2);
      cls.emplace_back(a, static_cast<std::size_t>(d));
    }
    r.quotient_null = true;
    for (std::int64_t t = 0; t <= t_max && r.quotient_null; ++t) {
      for (auto [a, d] : cls)
        if (s[static_cast<std::size_t>(a)][d] != 0) r.quotient_null = false;
      for (int a = 0; a < 3; ++a) {
        auto& cur = s[static_cast<std::size_t>(a)];
        auto& out = nx[static_cast<std::size_t>(a)];
        for (std::size_t d = 1; d + 1 < width; ++d) out[d] = (cur[d] + cur[d - 1] + odd_out * cur[d + 1]) & 1;
        out[width - 1] = 0;
      }
      nx[0][0] = (s[0][0] + s[1][0] + odd_out * s[0][1]) & 1;
      nx[2][0] = (s[2][0] + s[1][0] + odd_out * s[2][1]) & 1;
      nx[1][0] = (s[1][0] + s[0][0] + s[2][0] + mid_out * s[1][1]) & 1;
      std::swap(s, nx);
    }
  }

  // direct route: plain simulation, horizon bounded by the cell budget
  if (direct_horizon < 0) {
    direct_horizon = 0;
    for (std::int64_t T = 1; T <= t_max; ++T) {
      std::uint64_t peak = 0;
      for (std::int64_t t = 0; t <= T; ++t) {
        std::uint64_t a = 2 * ball_size(lat, t);
        std::uint64_t b = ball_size(lat, m + T - t);
        peak = std::max(peak, std::min(a, b));
      }
      if (peak > cell_budget) break;
      direct_horizon = T;
    }
  }
  r.direct_horizon = std::min(direct_horizon, t_max);
  r.direct_null = trace(rule, r.witness, m, r.direct_horizon).is_null();
  return r;
}

OddKReport fg_oddk_check(int n, int k, std::int64_t R, std::int64_t t_max, std::uint64_t max_subsets,
                         std::uint64_t seed) {
  if (k < 1 || k % 2 == 0) throw usage_error("odd k >= 1 expected; even k is refuted by fg_non2exp_witness");
  if (t_max < R) throw usage_error("t_max must reach the outermost layer R");
  Rule rule = lambda_rule(n);
  Lattice lat = rule.lattice();
  std::vector<Site> cells = ball(lat, R);
  OddKReport rep;
  auto examine = [&](const std::vector<std::size_t>& idx) {
    std::map<std::int64_t, int> layers;
    Configuration c(lat, 2);
    for (std::size_t i : idx) {
      ++layers[norm(cells[i])];
      c.set(cells[i], 1);
    }
    std::int64_t first_odd = -1;
    for (auto [l, cnt] : layers)
      if (cnt % 2) {
        first_odd = l;
        break;
      }
    ++rep.subsets;
    TracePrefix tp = trace(rule, c, 0, first_odd);
    if (first_odd >= 0 && tp.rows[static_cast<std::size_t>(first_odd)][0] == 1) {
      ++rep.confirmed;
    } else if (rep.first_failure.empty()) {
      std::string s;
      for (std::size_t i : idx) s += "[" + format_site(cells[i]) + "]";
      rep.first_failure = s;
    }
  };
  std::uint64_t total = choose(cells.size(), static_cast<std::uint64_t>(k));
  if (static_cast<std::size_t>(k) > cells.size()) return rep;
  if (total <= max_subsets) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    do examine(idx);
    while (next_combination(idx, cells.size()));
  } else {
    rep.sampled = true;
    std::mt19937_64 rng(seed);
    for (std::uint64_t s = 0; s < max_subsets; ++s) {
      std::vector<std::size_t> all(cells.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      std::vector<std::size_t> idx;
      std::sample(all.begin(), all.end(), std::back_inserter(idx), k, rng);
      examine(idx);
    }
  }
  return rep;
}

bool branch_confined(const Configuration& c, int letter) {
  for (const auto& [s, v] : c.cells()) {
    auto b = branch_of(s);
    if (!b || *b != letter) return false;
  }
  return true;
}

}  // namespace pxca
