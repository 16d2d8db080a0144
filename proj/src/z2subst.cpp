#include "pxca/z2subst.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <set>
#include <thread>

#include "pxca/engine.hpp"
#include "pxca/errors.hpp"
#include "pxca/linear.hpp"
#include "pxca/presets.hpp"

namespace pxca {

BitWord::BitWord(std::size_t length) : len_(length), w_((length + 63) / 64, 0) {}

BitWord BitWord::from_string(const std::string& s) {
  BitWord b(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) b.set(i, s[i] == '1');
  return b;
}

void BitWord::set(std::size_t i, bool v) {
  if (v)
    w_[i / 64] |= std::uint64_t{1} << (i % 64);
  else
    w_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
}

bool BitWord::is_zero() const {
  return std::all_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x == 0; });
}

std::size_t BitWord::first_one() const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i]));
  return len_;
}

bool BitWord::is_square() const {
  if (len_ % 2) return false;
  std::size_t h = len_ / 2;
  for (std::size_t i = 0; i < h; ++i)
    if (get(i) != get(i + h)) return false;
  return true;
}

BitWord BitWord::concat(const BitWord& o) const {
  BitWord r(len_ + o.len_);
  r.w_ = w_;
  r.w_.resize((r.len_ + 63) / 64, 0);
  for (std::size_t i = 0; i < o.len_; ++i)
    if (o.get(i)) r.set(len_ + i, true);
  return r;
}

BitWord& BitWord::operator^=(const BitWord& o) {
  if (o.len_ != len_) throw usage_error("xor of words with different lengths");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

std::string BitWord::str() const {
  std::string s;
  for (std::size_t i = 0; i < len_; ++i) s += get(i) ? '1' : '0';
  return s;
}

namespace {

std::int64_t l1(std::int64_t x, std::int64_t y) { return std::abs(x) + std::abs(y); }

std::vector<Point2> s_points(int k) {
  std::int64_t d = std::int64_t{1} << k;
  return {{0, 0}, {0, d}, {d, 0}, {0, -d}, {-d, 0}};
}

UVPair compute_uv(UVOracle& o, std::int64_t x, std::int64_t y, int k) {
  UVPair p;
  if (k == 0) {
    p.u = BitWord(1);
    p.v = BitWord(1);
    p.u.set(0, x == 0 && y == 0);
    p.v.set(0, l1(x, y) <= 1);
    return p;
  }
  std::size_t h = std::size_t{1} << (k - 1);
  std::int64_t r = static_cast<std::int64_t>(h) - 1;
  if (l1(x, y) <= r) {
    const UVPair& a = o.get(Site::z2(x, y), k - 1);
    p.u = a.u.concat(a.v);
    p.v = a.u.concat(a.u);
    return p;
  }
  p.u = BitWord(2 * h);
  for (const Point2& s : s_points(k - 1))
    if (l1(x - s.x, y - s.y) <= r) {
      p.u = BitWord(h).concat(o.get(Site::z2(x - s.x, y - s.y), k - 1).u);
      break;
    }
  p.v = BitWord(2 * h);
  for (const Point2& s : s_points(k))
    if (l1(x - s.x, y - s.y) <= r) {
      const BitWord& ud = o.get(Site::z2(x - s.x, y - s.y), k - 1).u;
      p.v = ud.concat(ud);
      break;
    }
  return p;
}

}  // namespace

const UVPair& UVOracle::get(const Site& z, int k) {
  auto key = std::make_tuple(z.x(), z.y(), k);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  if (sealed_) throw std::logic_error("sealed oracle queried outside its table");
  UVPair p = compute_uv(*this, z.x(), z.y(), k);
  return memo_.emplace(key, std::move(p)).first->second;
}

const UVPair& UVOracle::get(const Site& z, int k) const {
  auto it = memo_.find(std::make_tuple(z.x(), z.y(), k));
  if (it == memo_.end()) throw std::logic_error("oracle entry missing");
  return it->second;
}

UVPair uv_words(const Site& z, int k) {
  if (z.kind() != LatticeKind::z2) throw usage_error("u/v words live on Z^2");
  if (k < 0 || k > 20) throw usage_error("scale out of range");
  if (norm(z) > (std::int64_t{1} << k) - 1)
    throw usage_error("site " + format_site(z) + " outside B_{2^k-1} for k=" + std::to_string(k));
  UVOracle o;
  return o.get(z, k);
}

UVSimReport uv_vs_simulation(int k_max) {
  if (k_max < 0 || k_max > 10) throw usage_error("k_max out of range");
  UVSimReport rep;
  rep.k_max = k_max;
  std::int64_t T = std::int64_t{2} << k_max;
  std::int64_t R = (std::int64_t{1} << k_max) - 1;
  Lattice lat = Lattice::plane();
  std::vector<Site> cells = ball(lat, R);
  std::map<Site, BitWord> series;
  for (const Site& z : cells) series.emplace(z, BitWord(static_cast<std::size_t>(T)));
  Evolution ev(make_rule("vn2"), Configuration::spot(lat, 2, identity(lat), 1));
  for (std::int64_t t = 0; t < T; ++t) {
    for (auto& [z, w] : series)
      if (ev.at(z)) w.set(static_cast<std::size_t>(t), true);
    ev.advance();
  }
  UVOracle o;
  for (int k = 0; k <= k_max; ++k) {
    std::int64_t r = (std::int64_t{1} << k) - 1;
    std::size_t len = std::size_t{2} << k;
    for (const Site& z : ball(lat, r)) {
      ++rep.cells;
      const UVPair& p = o.get(z, k);
      BitWord uv = p.u.concat(p.v);
      const BitWord& sim = series.at(z);
      bool same = true;
      for (std::size_t i = 0; i < len && same; ++i) same = uv.get(i) == sim.get(i);
      if (!same) {
        if (!rep.mismatches) rep.first_mismatch = "k=" + std::to_string(k) + " z=" + format_site(z);
        ++rep.mismatches;
      }
    }
  }
  return rep;
}

bool exact_trace_null(const Configuration& c, int m, int k_cap) {
  UVOracle o;
  return exact_trace_null(c, m, o, k_cap);
}

bool exact_trace_null(const Configuration& c, int m, UVOracle& oracle, int k_cap) {
  if (c.lattice().kind != LatticeKind::z2 || c.states() != 2 || c.quiescent() != 0)
    throw usage_error("exact oracle needs a binary configuration on Z^2");
  if (m < 0) throw usage_error("negative window");
  if (c.is_quiescent()) return true;
  std::vector<Site> window = ball(c.lattice(), m);
  std::int64_t far = 0;
  for (const Site& w : window)
    for (const auto& [z, v] : c.cells()) far = std::max(far, norm(w - z));
  int k0 = 0;
  while ((std::int64_t{1} << k0) - 1 < far) ++k0;
  if (k0 > k_cap)
    throw resource_error("support and window need scale 2^" + std::to_string(k0) + " beyond the cap 2^" +
                         std::to_string(k_cap));
  std::size_t len = std::size_t{1} << k0;
  for (const Site& w : window) {
    BitWord su(len), sv(len);
    for (const auto& [z, v] : c.cells()) {
      const UVPair& p = oracle.get(w - z, k0);
      su ^= p.u;
      sv ^= p.v;
    }
    if (!su.is_zero() || !sv.is_zero()) return false;
  }
  return true;
}

UVStructureReport uv_structure_checks(int k_max) {
  if (k_max < 1 || k_max > 10) throw usage_error("k_max out of range");
  UVStructureReport rep;
  rep.k_max = k_max;
  UVOracle o;
  Lattice lat = Lattice::plane();
  auto fail = [&](bool& flag, const std::string& what) {
    flag = false;
    if (rep.first_failure.empty()) rep.first_failure = what;
  };
  for (int k = 1; k <= k_max; ++k) {
    std::int64_t r = (std::int64_t{1} << k) - 1;
    for (const Site& z : ball(lat, r)) {
      ++rep.cells;
      std::string tag = " k=" + std::to_string(k) + " z=" + format_site(z);
      const UVPair p = o.get(z, k);
      BitWord full = p.u.concat(p.v);
      std::int64_t x = z.x(), y = z.y();
      if (!p.v.is_square()) fail(rep.v_square, "v not a square" + tag);
      if (!(x == 0 && y == 0) && !p.u.is_zero() && p.u.is_square()) fail(rep.u_not_square, "u is a square" + tag);
      if ((x + y) % 2 != 0) {
        if (p.u.is_zero() || p.u.first_one() % 2 != 1) fail(rep.odd_first_index, "odd cell first index" + tag);
      } else if (!full.is_zero() && full.first_one() % 2 != 0) {
        fail(rep.even_first_index, "even cell first index" + tag);
      }
      if (std::abs(x) == std::abs(y) && x != 0 && !full.is_zero()) fail(rep.diagonal_zero, "diagonal cell not null" + tag);
      // refinement: the next scale starts with u_k v_k inside, with zeros outside
      const UVPair& next = o.get(z, k + 1);
      BitWord head(full.size());
      for (std::size_t i = 0; i < full.size(); ++i) head.set(i, next.u.get(i));
      if (!(head == full)) fail(rep.refinement, "u_{k+1} does not start with u_k v_k" + tag);
      for (auto [a, b] : std::vector<std::pair<std::int64_t, std::int64_t>>{
               {-x, y}, {x, -y}, {-x, -y}, {y, x}, {-y, x}, {y, -x}, {-y, -x}})
        if (!(o.get(Site::z2(a, b), k) == p)) fail(rep.symmetric, "symmetry" + tag);
    }
    // cells outside the inner ball are silent during the first half of u_{k+1}
    std::int64_t r2 = (std::int64_t{2} << k) - 1;
    for (const Site& z : ball(lat, r2)) {
      if (norm(z) <= r) continue;
      const UVPair& next = o.get(z, k + 1);
      for (std::size_t i = 0; i < (std::size_t{1} << k); ++i)
        if (next.u.get(i)) {
          fail(rep.refinement, "outer cell active early k=" + std::to_string(k) + " z=" + format_site(z));
          break;
        }
    }
  }
  return rep;
}

ThreeTraceReport three_trace_check(std::int64_t R, int threads) {
  if (R < 1 || R > 30) throw usage_error("R out of range");
  ThreeTraceReport rep;
  rep.R = R;
  Lattice lat = Lattice::plane();
  std::vector<Site> cells = ball(lat, R);
  int k = 0;
  while ((std::int64_t{1} << k) - 1 < R) ++k;
  rep.scale = k;
  // build phase: every word the sweep can touch, then read only
  UVOracle o;
  std::vector<Site> window = ball(lat, 1);
  int k1 = 0;
  while ((std::int64_t{1} << k1) - 1 < R + 1) ++k1;
  for (const Site& z : cells) o.get(z, k);
  for (int j = 0; j <= k1; ++j)
    for (const Site& z : ball(lat, std::min(R + 1, (std::int64_t{1} << j) - 1))) o.get(z, j);
  o.seal();
  const UVOracle& ro = o;

  std::size_t n = cells.size();
  std::vector<UVPair> at_scale(n);
  for (std::size_t i = 0; i < n; ++i) at_scale[i] = ro.get(cells[i], k);

  struct Part {
    std::uint64_t triples = 0, u_zero = 0, u_bad = 0, null_t1 = 0;
    std::string first;
  };
  auto sweep = [&](std::size_t first_i, std::size_t stride, Part& part) {
    for (std::size_t i = first_i; i < n; i += stride)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t l = j + 1; l < n; ++l) {
          ++part.triples;
          BitWord su = at_scale[i].u;
          su ^= at_scale[j].u;
          su ^= at_scale[l].u;
          if (su.is_zero()) {
            ++part.u_zero;
            auto null_member = [&](std::size_t a) { return at_scale[a].u.is_zero() && at_scale[a].v.is_zero(); };
            if (!null_member(i) && !null_member(j) && !null_member(l)) {
              ++part.u_bad;
              if (part.first.empty())
                part.first = "u-sum zero without null member: " + format_site(cells[i]) + " " + format_site(cells[j]) +
                             " " + format_site(cells[l]);
            }
          }
          Configuration c(lat, 2);
          c.set(cells[i], 1);
          c.set(cells[j], 1);
          c.set(cells[l], 1);
          if (exact_trace_null(c, 1, o, k1)) {
            ++part.null_t1;
            if (part.first.empty())
              part.first = "null T_1: " + format_site(cells[i]) + " " + format_site(cells[j]) + " " + format_site(cells[l]);
          }
        }
  };
  threads = std::max(1, threads);
  std::vector<Part> parts(static_cast<std::size_t>(threads));
  if (threads == 1) {
    sweep(0, 1, parts[0]);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(sweep, static_cast<std::size_t>(t), static_cast<std::size_t>(threads), std::ref(parts[static_cast<std::size_t>(t)]));
    for (auto& th : pool) th.join();
  }
  for (const Part& p : parts) {
    rep.triples += p.triples;
    rep.u_sum_zero += p.u_zero;
    rep.u_sum_zero_bad += p.u_bad;
    rep.null_t1 += p.null_t1;
    if (rep.first_failure.empty()) rep.first_failure = p.first;
  }
  return rep;
}

Configuration vn2_two_spot_witness(int k) {
  if (k < 1 || k > 30) throw usage_error("scale out of range");
  std::int64_t a = std::int64_t{1} << k, b = std::int64_t{1} << (k - 1);
  Configuration c(Lattice::plane(), 2);
  c.set(Site::z2(-a, b), 1);
  c.set(Site::z2(a, b), 1);
  return c;
}

bool reaches_ball(const std::vector<Site>& neighborhood, const Site& p, std::int64_t s, std::int64_t m) {
  std::vector<Point2> vs;
  for (const Site& v : neighborhood)
    if (!(v.x() == 0 && v.y() == 0)) vs.push_back({v.x(), v.y()});
  if (vs.size() > 4) throw usage_error("reachability supports at most four non-zero neighbors");
  // pick an independent pair
  std::size_t ia = 0, ib = 0;
  bool found = false;
  for (std::size_t i = 0; i < vs.size() && !found; ++i)
    for (std::size_t j = i + 1; j < vs.size() && !found; ++j)
      if (vs[i].x * vs[j].y - vs[i].y * vs[j].x != 0) {
        ia = i;
        ib = j;
        found = true;
      }
  for (const Site& w : ball(Lattice::plane(), m)) {
    std::int64_t dx = p.x() - w.x(), dy = p.y() - w.y();
    if (!found) {
      // collinear (or empty) neighborhood: at most one direction matters
      if (dx == 0 && dy == 0) return true;
      for (const Point2& v : vs)
        for (std::int64_t c = 1; c <= s; ++c)
          if (c * v.x == dx && c * v.y == dy) return true;
      continue;
    }
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (i != ia && i != ib) others.push_back(i);
    const Point2 a = vs[ia], b = vs[ib];
    std::int64_t det = a.x * b.y - a.y * b.x;
    auto solve = [&](std::int64_t rx, std::int64_t ry, std::int64_t used) {
      std::int64_t na = rx * b.y - ry * b.x, nb = a.x * ry - a.y * rx;
      if (na % det || nb % det) return false;
      na /= det;
      nb /= det;
      return na >= 0 && nb >= 0 && na + nb + used <= s;
    };
    if (others.empty()) {
      if (solve(dx, dy, 0)) return true;
    } else if (others.size() == 1) {
      const Point2 c = vs[others[0]];
      for (std::int64_t n = 0; n <= s; ++n)
        if (solve(dx - n * c.x, dy - n * c.y, n)) return true;
    } else {
      const Point2 c = vs[others[0]], d = vs[others[1]];
      for (std::int64_t n = 0; n <= s; ++n)
        for (std::int64_t n2 = 0; n + n2 <= s; ++n2)
          if (solve(dx - n * c.x - n2 * d.x, dy - n * c.y - n2 * d.y, n + n2)) return true;
    }
  }
  return false;
}

TriClaimReport tri_claim_check(std::int64_t t_sim, int k_max) {
  if (t_sim < 0 || k_max < 0 || k_max > 30) throw usage_error("bad tri claim bounds");
  TriClaimReport rep;
  rep.t_sim = t_sim;
  rep.k_max = k_max;
  LinearRuleZm f = tri2_linear();
  Rule rule = Rule::linear(f, "tri2");
  Lattice lat = Lattice::plane();
  const Site origin_spot = Site::z2(0, 36);
  Configuration spot = Configuration::spot(lat, 2, origin_spot, 1);
  rep.simulated_null = trace(rule, spot, 2, t_sim).is_null();
  rep.base_case = !reaches_ball(rule.neighborhood(), origin_spot, 32, 2);
  auto fail = [&](bool& flag, const std::string& what) {
    flag = false;
    if (rep.first_failure.empty()) rep.first_failure = what;
  };
  for (int k = 0; k <= k_max; ++k) {
    std::int64_t s = std::int64_t{1} << k;
    Configuration img = apply_linear(lucas_power_coeffs(f, k), spot);
    std::set<Site> got, want{origin_spot, Site::z2(-s, 36 - s), Site::z2(s, 36 - s), Site::z2(0, 36 + s)};
    for (const auto& [z, v] : img.cells()) got.insert(z);
    if (got != want) fail(rep.supports, "support of F^{2^k} differs, k=" + std::to_string(k));
    if (k <= 8 && !(iterate(rule, spot, s) == img))
      fail(rep.supports_vs_simulation, "Lucas support differs from simulation, k=" + std::to_string(k));
    if (k >= 5)
      for (const Site& p : want)
        if (!(p == origin_spot) && reaches_ball(rule.neighborhood(), p, s, 2))
          fail(rep.far_points, "far point " + format_site(p) + " reaches B_2, k=" + std::to_string(k));
  }
  return rep;
}

}  // namespace pxca
