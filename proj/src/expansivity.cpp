#include "pxca/expansivity.hpp"

#include <algorithm>
#include <atomic>
#include <boost/multiprecision/cpp_int.hpp>
#include <mutex>
#include <random>
#include <thread>

#include "pxca/errors.hpp"
#include "pxca/linear.hpp"
#include "pxca/presets.hpp"

namespace pxca {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

long double choose_ld(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  long double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
  return r;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n, std::size_t from = 0) {
  std::size_t k = idx.size();
  for (std::size_t i = k; i-- > from;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Time series of the spot orbit at every offset with sup norm <= B.
struct SpotSeries {
  std::int64_t B = 0;
  std::size_t T = 0, words = 0;
  bool binary = false;
  int modulus = 2;
  bool plane = false;
  std::vector<std::uint64_t> bits;
  std::vector<std::uint8_t> bytes;

  std::size_t index(const Site& y) const {
    auto side = static_cast<std::size_t>(2 * B + 1);
    if (!plane) return static_cast<std::size_t>(y.x() + B);
    return static_cast<std::size_t>(y.x() + B) * side + static_cast<std::size_t>(y.y() + B);
  }
};

SpotSeries spot_series(const LinearRuleZm& f, std::int64_t B, std::int64_t t_max) {
  SpotSeries s;
  s.B = B;
  s.T = static_cast<std::size_t>(t_max + 1);
  s.words = (s.T + 63) / 64;
  s.binary = f.modulus == 2;
  s.modulus = f.modulus;
  s.plane = f.lattice.kind == LatticeKind::z2;
  std::vector<Site> offs = box(f.lattice, B);
  if (s.binary)
    s.bits.assign(offs.size() * s.words, 0);
  else
    s.bytes.assign(offs.size() * s.T, 0);
  EvolutionOptions o;
  o.cone = ObservationCone{t_max, B};
  Rule rule = Rule::linear(f);
  Evolution ev(rule, Configuration::spot(f.lattice, f.modulus, identity(f.lattice), 1), o);
  for (std::int64_t t = 0; t <= t_max; ++t) {
    auto tt = static_cast<std::size_t>(t);
    for (const Site& y : offs) {
      State v = ev.at(y);
      if (!v) continue;
      std::size_t j = s.index(y);
      if (s.binary)
        s.bits[j * s.words + tt / 64] |= std::uint64_t{1} << (tt % 64);
      else
        s.bytes[j * s.T + tt] = static_cast<std::uint8_t>(v);
    }
    if (t < t_max) ev.advance();
  }
  return s;
}

}  // namespace

ExpansivityVerdict kexp_search(const LinearRuleZm& f, int k, std::int64_t R, int m, std::int64_t t_max,
                               const SearchOptions& opt) {
  if (f.lattice.kind == LatticeKind::free) throw usage_error("kexp_search runs on Z or Z^2");
  if (k < 1 || R < 0 || m < 0 || t_max < 0) throw usage_error("bad search bounds");
  ExpansivityVerdict v;
  v.bounds = {k, R, m, t_max};
  v.partner = Configuration(f.lattice, f.modulus, 0);
  std::vector<Site> region = box(f.lattice, R);
  std::vector<Site> window = ball(f.lattice, m);
  const std::size_t n = region.size(), ku = static_cast<std::size_t>(k);
  const bool prime = is_prime(f.modulus);
  // nonzero value patterns; over a prime field the first value is normalised to 1
  const std::size_t free_vals = prime ? ku - 1 : ku;
  long double per_set = 1;
  for (std::size_t i = 0; i < free_vals; ++i) per_set *= (f.modulus - 1);
  v.search_space = choose_ld(n, ku) * per_set;
  if (ku > n) return v;
  if (v.search_space > static_cast<long double>(opt.max_candidates))
    throw resource_error("search space of " + std::to_string(static_cast<double>(v.search_space)) +
                         " candidates exceeds the budget");

  SpotSeries s = spot_series(f, R + m, t_max);
  // rel[i * |W| + w] = series index of (window[w] - region[i])
  std::vector<std::size_t> rel(n * window.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t w = 0; w < window.size(); ++w) rel[i * window.size() + w] = s.index(window[w] - region[i]);

  auto is_null = [&](const std::vector<std::size_t>& idx, const std::vector<int>& vals) {
    for (std::size_t w = 0; w < window.size(); ++w) {
      if (s.binary) {
        for (std::size_t wd = 0; wd < s.words; ++wd) {
          std::uint64_t acc = 0;
          for (std::size_t j = 0; j < ku; ++j) acc ^= s.bits[rel[idx[j] * window.size() + w] * s.words + wd];
          if (acc) return false;
        }
      } else {
        for (std::size_t t = 0; t < s.T; ++t) {
          int acc = 0;
          for (std::size_t j = 0; j < ku; ++j) acc += vals[j] * s.bytes[rel[idx[j] * window.size() + w] * s.T + t];
          if (acc % s.modulus) return false;
        }
      }
    }
    return true;
  };

  // one block per first index; blocks are scanned in increasing order
  auto block_size = [&](std::size_t first) { return choose_ld(n - 1 - first, ku - 1) * per_set; };
  struct Hit {
    std::size_t first = SIZE_MAX;
    std::uint64_t pos = 0;
    std::vector<std::size_t> idx;
    std::vector<int> vals;
  };
  std::mutex mu;
  Hit best;
  std::atomic<std::size_t> best_first{SIZE_MAX};

  auto scan_block = [&](std::size_t first) -> bool {
    std::vector<std::size_t> idx(ku);
    for (std::size_t j = 0; j < ku; ++j) idx[j] = first + j;
    std::uint64_t pos = 0;
    do {
      std::vector<int> vals(ku, 1);
      while (true) {
        if (is_null(idx, vals)) {
          std::lock_guard<std::mutex> lock(mu);
          if (first < best.first) best = Hit{first, pos, idx, vals};
          if (first < best_first) best_first = first;
          return true;
        }
        ++pos;
        // odometer over values, last position fastest
        std::size_t j = ku;
        bool carried = true;
        while (j-- > (prime ? 1u : 0u)) {
          if (vals[j] < f.modulus - 1) {
            ++vals[j];
            carried = false;
            break;
          }
          vals[j] = 1;
        }
        if (carried) break;
      }
    } while (next_combination(idx, n, 1));
    return false;
  };

  int threads = std::max(1, opt.threads);
  std::size_t firsts = n - ku + 1;
  if (threads == 1) {
    for (std::size_t a = 0; a < firsts; ++a)
      if (scan_block(a)) break;
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t a = static_cast<std::size_t>(t); a < firsts; a += static_cast<std::size_t>(threads)) {
          if (a > best_first.load()) return;
          if (scan_block(a)) return;
        }
      });
    for (auto& th : pool) th.join();
  }

  if (best.first == SIZE_MAX) {
    v.examined = static_cast<std::uint64_t>(v.search_space);
    return v;
  }
  long double before = 0;
  for (std::size_t a = 0; a < best.first; ++a) before += block_size(a);
  v.examined = static_cast<std::uint64_t>(before) + best.pos + 1;
  v.found = true;
  v.witness = Configuration(f.lattice, f.modulus, 0);
  for (std::size_t j = 0; j < ku; ++j) v.witness.set(region[best.idx[j]], best.vals[j]);
  v.reverified = trace(Rule::linear(f), v.witness, m, t_max).is_null();
  return v;
}

ExpansivityVerdict pair_preexp_probe(const Rule& rule, int k, std::int64_t R, int m, std::int64_t t_max,
                                     const SearchOptions& opt) {
  if (k < 1 || R < 0 || m < 0 || t_max < 0) throw usage_error("bad search bounds");
  ExpansivityVerdict v;
  v.bounds = {k, R, m, t_max};
  const Lattice& lat = rule.lattice();
  std::vector<Site> region = box(lat, R);
  const std::size_t n = region.size(), ku = static_cast<std::size_t>(k);
  const int q = rule.states();
  const State q0 = rule.quiescent();
  long double total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= q;
  long double alt = 1;
  for (std::size_t i = 0; i < ku; ++i) alt *= (q - 1);
  v.search_space = total * choose_ld(n, ku) * alt / 2;
  if (ku > n || q < 2) return v;

  // configurations on the region as state vectors; order: support size, support, values
  auto support = [&](const std::vector<State>& c) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (c[i] != q0) s.push_back(i);
    return s;
  };
  auto less = [&](const std::vector<State>& a, const std::vector<State>& b) {
    auto sa = support(a), sb = support(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
    for (std::size_t i : sa)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  };
  auto to_config = [&](const std::vector<State>& c) {
    Configuration out(lat, q, q0);
    for (std::size_t i = 0; i < n; ++i)
      if (c[i] != q0) out.set(region[i], c[i]);
    return out;
  };
  // non-quiescent values in increasing order
  std::vector<State> nonq;
  for (State s = 0; s < q; ++s)
    if (s != q0) nonq.push_back(s);

  std::uint64_t examined = 0;
  for (std::size_t size = 0; size <= n; ++size) {
    std::vector<std::size_t> sup(size);
    for (std::size_t i = 0; i < size; ++i) sup[i] = i;
    do {
      std::vector<std::size_t> val(size, 0);
      while (true) {
        std::vector<State> d(n, q0);
        for (std::size_t i = 0; i < size; ++i) d[sup[i]] = nonq[val[i]];
        Configuration dc = to_config(d);
        TracePrefix td = trace(rule, dc, m, t_max);
        std::vector<std::size_t> pos(ku);
        for (std::size_t i = 0; i < ku; ++i) pos[i] = i;
        do {
          // alternatives at the k chosen cells
          std::vector<int> alt_idx(ku, 0);
          while (true) {
            std::vector<State> c = d;
            for (std::size_t j = 0; j < ku; ++j) {
              State a = static_cast<State>(alt_idx[j]);
              if (a >= d[pos[j]]) ++a;
              c[pos[j]] = a;
            }
            if (!less(c, d)) {
              if (++examined > opt.max_candidates)
                throw resource_error("pair search space of " + std::to_string(static_cast<double>(v.search_space)) +
                                     " pairs exceeds the budget of " + std::to_string(opt.max_candidates));
              Configuration cc = to_config(c);
              if (trace(rule, cc, m, t_max) == td) {
                v.found = true;
                v.witness = cc;
                v.partner = dc;
                v.examined = examined;
                // independent recheck through the iterate path
                bool same = true;
                Configuration a = cc, b = dc;
                std::vector<Site> w = ball(lat, m);
                for (std::int64_t t = 0; t <= t_max && same; ++t) {
                  for (const Site& s : w) same = same && a.at(s) == b.at(s);
                  a = step(rule, a);
                  b = step(rule, b);
                }
                v.reverified = same;
                return v;
              }
            }
            std::size_t j = ku;
            bool carried = true;
            while (j-- > 0) {
              if (alt_idx[j] < q - 2) {
                ++alt_idx[j];
                carried = false;
                break;
              }
              alt_idx[j] = 0;
            }
            if (carried) break;
          }
        } while (next_combination(pos, n));
        std::size_t j = size;
        bool carried = true;
        while (j-- > 0) {
          if (val[j] + 1 < nonq.size()) {
            ++val[j];
            carried = false;
            break;
          }
          val[j] = 0;
        }
        if (carried) break;
      }
    } while (size > 0 && next_combination(sup, n));
  }
  v.examined = examined;
  return v;
}

DirectionalFronts directional_fronts(const Rule& rule, const Configuration& c, const Configuration& d,
                                     std::int64_t alpha_num, std::int64_t alpha_den, std::int64_t t_max,
                                     std::int64_t threshold) {
  if (alpha_den <= 0) throw usage_error("direction denominator must be positive");
  DirectionalFronts df;
  df.alpha_num = alpha_num;
  df.alpha_den = alpha_den;
  df.threshold = threshold >= 0 ? threshold : t_max * rule.radius() / 2;
  FrontSeries fs = fronts(rule, c, d, t_max);
  for (std::size_t t = 0; t < fs.left.size(); ++t) {
    std::int64_t shift = ceil_div(alpha_num * static_cast<std::int64_t>(t), alpha_den);
    auto adj = [&](const std::optional<std::int64_t>& x) -> std::optional<std::int64_t> {
      if (!x) return std::nullopt;
      return *x - shift;
    };
    df.left.push_back(adj(fs.left[t]));
    df.right.push_back(adj(fs.right[t]));
    if (df.left.back() && *df.left.back() < -df.threshold) df.left_escapes_below = true;
    if (df.right.back() && *df.right.back() > df.threshold) df.right_escapes_above = true;
  }
  return df;
}

namespace {

Configuration psi_combine(const Configuration& base, const Configuration& lo, const Configuration& hi, std::int64_t z,
                          std::int64_t h, const Alphabet& law) {
  Configuration sum = add(base.shifted(Site::z(z)), lo.shifted(Site::z(z - h)), law);
  return add(sum, hi.shifted(Site::z(z + h)), law);
}

}  // namespace

bool psi_relation_check(const Configuration& c, int k, std::int64_t t, std::int64_t z) {
  Rule r = psi();
  std::int64_t h = ipow(3, k);
  Configuration a = iterate(r, c, t);
  Configuration b = iterate(r, a, h);
  Configuration lhs = iterate(r, b, h).shifted(Site::z(z));
  return lhs == psi_combine(a, b, b, z, h, r.alphabet());
}

PsiRelationSweep psi_relation_sweep(const std::vector<Configuration>& configs, int k_max, std::int64_t t_max,
                                    std::int64_t z_lo, std::int64_t z_hi) {
  Rule r = psi();
  PsiRelationSweep out;
  std::int64_t horizon = 2 * ipow(3, k_max) + t_max;
  for (std::size_t ci = 0; ci < configs.size(); ++ci) {
    std::vector<Configuration> orbit{configs[ci]};
    Evolution ev(r, configs[ci]);
    for (std::int64_t t = 1; t <= horizon; ++t) {
      ev.advance();
      orbit.push_back(ev.snapshot());
    }
    for (int k = 0; k <= k_max; ++k) {
      std::int64_t h = ipow(3, k);
      for (std::int64_t t = 0; t <= t_max; ++t) {
        const auto& base = orbit[static_cast<std::size_t>(t)];
        const auto& mid = orbit[static_cast<std::size_t>(h + t)];
        const auto& top = orbit[static_cast<std::size_t>(2 * h + t)];
        for (std::int64_t z = z_lo; z <= z_hi; ++z) {
          ++out.checked;
          if (top.shifted(Site::z(z)) != psi_combine(base, mid, mid, z, h, r.alphabet())) {
            if (!out.failed)
              out.first_failure = "config=" + std::to_string(ci) + " k=" + std::to_string(k) + " t=" +
                                  std::to_string(t) + " z=" + std::to_string(z);
            ++out.failed;
          }
        }
      }
    }
  }
  return out;
}

LandmarkReport psi_landmarks(int a, int b, int M, int k) {
  if (a < 0 || a > 2 || b < 0 || b > 2 || M < 1 || k < 0) throw usage_error("bad landmark parameters");
  Rule r = psi();
  std::int64_t big = ipow(3, k + 1), small = ipow(3, k);
  Configuration c = Configuration::spot(Lattice::integers(), 9, Site::z(0), a * 3 + b);
  Configuration img = iterate(r, c, M * big);
  LandmarkReport rep;
  rep.position = M * big - 2 * small;
  rep.expected = a * 3 + (2 * b) % 3;
  rep.left = img.at(Site::z(-rep.position));
  rep.right = img.at(Site::z(rep.position));
  std::int64_t lo = (M - 1) * big;
  for (std::int64_t i = lo; i < lo + small; ++i)
    if (img.at(Site::z(i)) != 0 || img.at(Site::z(-i)) != 0) rep.band_zero = false;
  return rep;
}

Configuration upsilon_glider(std::int64_t z, int k) {
  if (k < 2) throw usage_error("glider needs k >= 2");
  Configuration c(Lattice::integers(), 4, 0);
  c.set(Site::z(z), 1);  // (0,1)
  for (std::int64_t i = z + 1; i <= z + k - 2; ++i) c.set(Site::z(i), 3);  // (1,1)
  c.set(Site::z(z + k - 1), 2);  // (1,0)
  return c;
}

MultParams mult_params(int k, int kp) {
  int m = k * kp;
  auto divides_some_power = [&](int n, int& p_out) {
    std::int64_t v = n % kp;
    for (int p = 0; p <= 64; ++p) {
      if (v % kp == 0) {
        p_out = p;
        return true;
      }
      v = (v * k) % kp;
    }
    return false;
  };
  MultParams mp;
  for (int n = 1; n < m; ++n) {
    int p = 0;
    if (divides_some_power(n, p)) {
      mp.q = n;
      mp.p = p;
      return mp;
    }
  }
  throw usage_error("no admissible q for mult parameters");
}

bool mult_inverse_check(int k, int kp, const Configuration& c) {
  Rule fwd = Rule::mult(kp, k), back = Rule::mult(k, kp);
  return step(back, step(fwd, c)) == c.shifted(Site::z(1));
}

MultFrontReport mult_front_checks(int k, int kp, int samples, std::int64_t t_max, std::uint64_t seed) {
  MultFrontReport rep;
  rep.k = k;
  rep.kp = kp;
  rep.params = mult_params(k, kp);
  const int m = k * kp;
  Rule rule = Rule::mult(k, kp);
  rep.decay_applies = rep.params.q == 1;
  cpp_int kpow_p = 1;
  for (int i = 0; i < rep.params.p; ++i) kpow_p *= k;
  rep.settle_applies = rep.params.q > 1 && cpp_int(kp) > kpow_p;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(1, 12), val(0, m - 1);

  auto g_of = [&](const Configuration& c) {
    cpp_rational g = 0, w = 1;
    std::int64_t hi = c.is_quiescent() ? -1 : c.cells().rbegin()->first.x();
    for (std::int64_t i = 0; i <= hi; ++i) {
      g += w * c.at(Site::z(i));
      w /= m;
    }
    return g;
  };
  auto fail = [&](const std::string& what) {
    if (rep.first_failure.empty()) rep.first_failure = what;
  };

  std::vector<cpp_int> mpow{1}, kpow{1};
  auto mp = [&](std::int64_t e) -> const cpp_int& {
    while (static_cast<std::int64_t>(mpow.size()) <= e) mpow.push_back(mpow.back() * m);
    return mpow[static_cast<std::size_t>(e)];
  };
  auto kpw = [&](std::int64_t e) -> const cpp_int& {
    while (static_cast<std::int64_t>(kpow.size()) <= e) kpow.push_back(kpow.back() * k);
    return kpow[static_cast<std::size_t>(e)];
  };

  for (int s = 0; s < samples; ++s) {
    Configuration c(Lattice::integers(), m, 0), d(Lattice::integers(), m, 0);
    int lc = len(rng), ld = len(rng);
    for (int i = 0; i < lc; ++i) c.set(Site::z(i), val(rng));
    for (int i = 0; i < ld; ++i) d.set(Site::z(i), val(rng));
    if (c == d) d.set(Site::z(0), (d.at(Site::z(0)) + 1) % m);
    ++rep.pairs;
    for (const Configuration* x : {&c, &d}) {
      Configuration fx = step(rule, *x);
      cpp_rational lhs = g_of(fx);
      cpp_rational rhs = cpp_rational(k) * g_of(*x) - cpp_rational(m * ((k * x->at(Site::z(0))) / m));
      if (lhs != rhs) {
        rep.g_recurrence = false;
        fail("g recurrence, sample " + std::to_string(s));
      }
    }
    FrontSeries fs = fronts(rule, c, d, t_max);
    if (!fs.left[0]) continue;
    std::int64_t l0 = *fs.left[0], r0 = *fs.right[0];
    std::int64_t last_change = 0;
    for (std::int64_t t = 0; t <= t_max; ++t) {
      auto ti = static_cast<std::size_t>(t);
      if (!fs.left[ti]) {
        rep.left_bound = rep.right_bound = false;
        fail("fronts vanished, sample " + std::to_string(s));
        break;
      }
      std::int64_t lt = *fs.left[ti], rt = *fs.right[ti];
      // t log k / log m < r_0 + 1 - l_t  <=>  k^t < m^(r_0 + 1 - l_t)
      std::int64_t e1 = r0 + 1 - lt;
      if (!(e1 > 0 && kpw(t) < mp(e1))) {
        rep.left_bound = false;
        fail("left bound, sample " + std::to_string(s) + " t=" + std::to_string(t));
      }
      // l_0 - 1 - r_t < t log k / log m
      std::int64_t e2 = l0 - 1 - rt;
      bool ok2 = e2 < 0 || (e2 == 0 && t > 0) || (e2 > 0 && mp(e2) < kpw(t));
      if (!ok2) {
        rep.right_bound = false;
        fail("right bound, sample " + std::to_string(s) + " t=" + std::to_string(t));
      }
      if (rep.decay_applies && (rep.params.p + 1) * (r0 - rt) < t) {
        rep.decay = false;
        ++rep.decay_violations;
        fail("decay, sample " + std::to_string(s) + " t=" + std::to_string(t) + " r_0=" + std::to_string(r0) +
             " r_t=" + std::to_string(rt));
      }
      if (rep.decay_applies && r0 - rt < t / (rep.params.p + 1)) {
        rep.decay_floor = false;
        fail("floor decay, sample " + std::to_string(s) + " t=" + std::to_string(t));
      }
      if (t > 0 && rt != *fs.right[ti - 1]) last_change = t;
    }
    if (rep.settle_applies) {
      rep.latest_settle = std::max(rep.latest_settle, last_change);
      if (last_change > t_max / 2) {
        rep.settle = false;
        fail("right front still moving at t=" + std::to_string(last_change) + ", sample " + std::to_string(s));
      }
    }
  }
  return rep;
}

CoprimeFronts coprime_fronts(const LinearRuleZm& f, std::int64_t t_max, std::int64_t threshold) {
  if (f.lattice.kind != LatticeKind::z) throw usage_error("coprime fronts are defined on Z");
  auto fac = factorize(f.modulus);
  if (fac.size() != 1) throw usage_error("modulus must be a prime power");
  CoprimeFronts cf;
  cf.prime = fac[0].first;
  cf.exponent = fac[0].second;
  cf.threshold = threshold >= 0 ? threshold : t_max * f.radius() / 2;
  Rule rule = Rule::linear(f);
  Lattice lat = f.lattice;
  Evolution unit(rule, Configuration::spot(lat, f.modulus, Site::z(0), 1));
  Evolution socle(rule, Configuration::spot(lat, f.modulus, Site::z(0), ipow(cf.prime, cf.exponent - 1)));
  for (std::int64_t t = 0; t <= t_max; ++t) {
    std::optional<std::int64_t> l, r, ls, rs;
    if (auto b = unit.bounds())
      for (std::int64_t x = b->x0; x <= b->x1; ++x)
        if (unit.at(Site::z(x)) % cf.prime) {
          if (!l) l = x;
          r = x;
        }
    if (auto b = socle.bounds()) {
      ls = b->x0;
      rs = b->x1;
    }
    if (l != ls || r != rs) cf.matches_socle = false;
    if (l && *l <= -cf.threshold) cf.left_escapes = true;
    if (r && *r >= cf.threshold) cf.right_escapes = true;
    cf.left.push_back(l);
    cf.right.push_back(r);
    if (t < t_max) {
      unit.advance();
      socle.advance();
    }
  }
  return cf;
}

}  // namespace pxca
