#include "pxca/linear.hpp"

#include "pxca/errors.hpp"

namespace pxca {

namespace {

Site scaled(const Site& s, std::int64_t f) {
  switch (s.kind()) {
    case LatticeKind::z:
      return Site::z(s.x() * f);
    case LatticeKind::z2:
      return Site::z2(s.x() * f, s.y() * f);
    case LatticeKind::free:
      break;
  }
  throw usage_error("scaling is only defined on Z and Z^2");
}

void require_abelian(const LinearRuleZm& f) {
  if (f.lattice.kind == LatticeKind::free) throw usage_error("power identities need a commutative lattice");
}

void require_prime(const LinearRuleZm& f) {
  if (!is_prime(f.modulus))
    throw usage_error("modulus " + std::to_string(f.modulus) + " is not prime; decompose with crt_decompose first");
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<int, int>> factorize(int n) {
  std::vector<std::pair<int, int>> out;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

Configuration apply_linear(const LinearRuleZm& f, const Configuration& c) {
  if (!(c.lattice() == f.lattice) || c.states() != f.modulus || c.quiescent() != 0)
    throw usage_error("configuration does not match the linear rule");
  std::map<Site, std::int64_t> acc;
  for (const auto& [s, v] : c.cells())
    for (const auto& [o, a] : f.coeffs) {
      auto& slot = acc[s - o];
      slot = (slot + static_cast<std::int64_t>(a) * v) % f.modulus;
    }
  Configuration out(c.lattice(), c.states(), 0);
  for (const auto& [s, v] : acc)
    if (v) out.set(s, static_cast<State>(v));
  return out;
}

LinearRuleZm lucas_power_coeffs(const LinearRuleZm& f, int k) {
  require_prime(f);
  require_abelian(f);
  if (k < 0) throw usage_error("negative exponent");
  std::int64_t scale = 1;
  for (int i = 0; i < k; ++i) {
    scale *= f.modulus;
    if (scale > (std::int64_t{1} << 40)) throw resource_error("p^k too large");
  }
  std::map<Site, int> a;
  for (const auto& [s, v] : f.coeffs) a[scaled(s, scale)] = v;
  return LinearRuleZm(f.lattice, f.modulus, a);
}

Configuration fast_iterate(const LinearRuleZm& f, const Configuration& c, std::int64_t t) {
  require_prime(f);
  require_abelian(f);
  if (t < 0) throw usage_error("negative step count");
  Configuration out = c;
  for (int j = 0; t > 0; ++j, t /= f.modulus) {
    auto digit = t % f.modulus;
    if (digit == 0) continue;
    LinearRuleZm spread = lucas_power_coeffs(f, j);
    for (std::int64_t i = 0; i < digit; ++i) out = apply_linear(spread, out);
  }
  return out;
}

Rule second_order(const Rule& f) { return Rule::second_order(f, false); }

Rule second_order_inverse(const Rule& so) {
  auto p = std::get_if<Rule::SecondOrder>(&so.node());
  if (!p) throw usage_error("rule " + so.name() + " is not a second order construction");
  return Rule::second_order(*p->inner, !p->inverse);
}

std::vector<PrimePowerPart> crt_decompose(const LinearRuleZm& f) {
  std::vector<PrimePowerPart> out;
  for (auto [p, e] : factorize(f.modulus)) {
    int pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    std::map<Site, int> a;
    for (const auto& [s, v] : f.coeffs) a[s] = v % pe;
    out.push_back({p, e, pe, LinearRuleZm(f.lattice, pe, a)});
  }
  return out;
}

Configuration crt_project(const Configuration& c, int modulus) {
  if (c.quiescent() != 0) throw usage_error("projection needs quiescent 0");
  Configuration out(c.lattice(), modulus, 0);
  for (const auto& [s, v] : c.cells()) out.set(s, v % modulus);
  return out;
}

Configuration crt_combine(const std::vector<PrimePowerPart>& parts, const std::vector<Configuration>& images,
                          int modulus) {
  if (parts.size() != images.size() || parts.empty()) throw usage_error("one image per prime power part expected");
  Configuration out(images[0].lattice(), modulus, 0);
  std::map<Site, bool> sites;
  for (const auto& img : images)
    for (const auto& [s, v] : img.cells()) sites[s] = true;
  for (const auto& [s, unused] : sites) {
    // brute force CRT; moduli here are small
    for (int x = 0; x < modulus; ++x) {
      bool ok = true;
      for (std::size_t i = 0; i < parts.size() && ok; ++i) ok = x % parts[i].modulus == images[i].at(s);
      if (ok) {
        out.set(s, x);
        break;
      }
    }
  }
  return out;
}

Amplified amplify(const LinearRuleZm& f, const Configuration& c, std::int64_t m_target) {
  require_prime(f);
  require_abelian(f);
  if (m_target < 0) throw usage_error("negative target radius");
  Amplified a;
  a.k = 1;
  a.scale = f.modulus;
  while (m_target > a.scale - 1) {
    ++a.k;
    a.scale *= f.modulus;
    if (a.scale > (std::int64_t{1} << 40)) throw resource_error("amplification factor too large");
  }
  a.config = Configuration(c.lattice(), c.states(), c.quiescent());
  for (const auto& [s, v] : c.cells()) a.config.set(scaled(s, a.scale), v);
  return a;
}

Rule layered_flip(const Rule& f, int k) { return Rule::layered_flip(f, k); }

}  // namespace pxca
