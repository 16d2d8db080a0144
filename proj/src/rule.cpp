#include "pxca/rule.hpp"

#include <algorithm>
#include <array>

#include "pxca/errors.hpp"

namespace pxca {

namespace detail {

struct RuleData {
  Rule::Node node;
  Lattice lattice;
  Alphabet alphabet;
  State quiescent = 0;
  std::vector<Site> neighborhood;
  std::int64_t radius = 0;
  std::string name;
  // positions of sub-rule neighborhoods inside `neighborhood`
  std::vector<std::size_t> idx_a, idx_b;
  std::size_t idx_center = 0;
  std::vector<std::size_t> idx_flip;  // layered: position of offset -3i, i = 1..layers
};

}  // namespace detail

namespace {

std::int64_t radius_of(const std::vector<Site>& v) {
  std::int64_t r = 0;
  for (const Site& s : v) r = std::max(r, norm(s));
  return r;
}

std::vector<std::size_t> positions(const std::vector<Site>& all, const std::vector<Site>& part) {
  std::vector<std::size_t> out;
  for (const Site& s : part) out.push_back(static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), s) - all.begin()));
  return out;
}

std::vector<Site> merged(std::vector<Site> a, const std::vector<Site>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

// small scratch buffer for gathering sub-neighborhood values
struct Scratch {
  std::array<State, 64> fixed{};
  std::vector<State> heap;
  std::span<State> get(std::size_t n) {
    if (n <= fixed.size()) return {fixed.data(), n};
    heap.resize(n);
    return {heap.data(), n};
  }
};

}  // namespace

LinearRuleZm::LinearRuleZm(Lattice lat, int m, const std::map<Site, int>& a) : lattice(lat), modulus(m) {
  if (m < 2) throw usage_error("linear rule modulus must be >= 2");
  for (const auto& [s, v] : a) {
    if (!belongs_to(s, lat)) throw usage_error("coefficient site " + format_site(s) + " not in lattice");
    int r = static_cast<int>(((static_cast<std::int64_t>(v) % m) + m) % m);
    if (r != 0) coeffs[s] = r;
  }
}

std::int64_t LinearRuleZm::radius() const {
  std::int64_t r = 0;
  for (const auto& [s, v] : coeffs) r = std::max(r, norm(s));
  return r;
}

Rule Rule::table(Lattice lat, int q, std::vector<Site> nbhd, const LocalFunction& f, State quiescent,
                 std::string name) {
  if (q < 1) throw usage_error("alphabet must be non-empty");
  if (quiescent < 0 || quiescent >= q) throw usage_error("quiescent state outside alphabet");
  std::vector<std::pair<Site, std::size_t>> order;
  for (std::size_t i = 0; i < nbhd.size(); ++i) {
    if (!belongs_to(nbhd[i], lat)) throw usage_error("neighbor " + format_site(nbhd[i]) + " not in lattice");
    order.emplace_back(nbhd[i], i);
  }
  std::sort(order.begin(), order.end());
  for (std::size_t i = 1; i < order.size(); ++i)
    if (order[i].first == order[i - 1].first) throw usage_error("duplicate neighbor");
  double total = 1;
  for (std::size_t i = 0; i < nbhd.size(); ++i) total *= q;
  if (total > double(1 << 22)) throw resource_error("rule table too large");
  auto n = static_cast<std::size_t>(total);
  Table t;
  t.lut.resize(n);
  // enumerate in the caller's neighbor order, store in sorted order
  std::vector<State> vals(nbhd.size(), 0);
  for (std::size_t code = 0; code < n; ++code) {
    std::size_t c = code;
    for (std::size_t i = nbhd.size(); i-- > 0;) {
      vals[i] = static_cast<State>(c % q);
      c /= q;
    }
    State out = f(vals);
    if (out < 0 || out >= q) throw usage_error("local function leaves the alphabet");
    std::size_t idx = 0;
    for (const auto& [s, i] : order) idx = idx * q + vals[i];
    t.lut[idx] = out;
  }
  std::size_t quiet = 0;
  for (std::size_t i = 0; i < nbhd.size(); ++i) quiet = quiet * q + quiescent;
  if (t.lut[quiet] != quiescent) throw usage_error("quiescent state is not a fixed point of the local rule");
  auto d = std::make_shared<detail::RuleData>();
  d->node = std::move(t);
  d->lattice = lat;
  d->alphabet = Alphabet::cyclic(q);
  d->quiescent = quiescent;
  for (const auto& [s, i] : order) d->neighborhood.push_back(s);
  d->radius = radius_of(d->neighborhood);
  d->name = std::move(name);
  return Rule(d);
}

Rule Rule::linear(const LinearRuleZm& f, std::string name) {
  auto d = std::make_shared<detail::RuleData>();
  d->node = Linear{f};
  d->lattice = f.lattice;
  d->alphabet = Alphabet::cyclic(f.modulus);
  for (const auto& [s, v] : f.coeffs) d->neighborhood.push_back(s);
  d->radius = radius_of(d->neighborhood);
  d->name = name.empty() ? "linear" : std::move(name);
  return Rule(d);
}

Rule Rule::second_order(const Rule& inner, bool inverse) {
  if (inner.quiescent() != 0) throw usage_error("second order construction needs quiescent 0 as group identity");
  auto d = std::make_shared<detail::RuleData>();
  d->node = SecondOrder{std::make_shared<const Rule>(inner), inverse};
  d->lattice = inner.lattice();
  d->alphabet = Alphabet::product(inner.alphabet(), inner.alphabet());
  Site o = identity(inner.lattice());
  d->neighborhood = merged(inner.neighborhood(), {o});
  d->idx_a = positions(d->neighborhood, inner.neighborhood());
  d->idx_center = positions(d->neighborhood, {o})[0];
  d->radius = radius_of(d->neighborhood);
  d->name = (inverse ? "so_inv(" : "so(") + inner.name() + ")";
  return Rule(d);
}

Rule Rule::mult(int k, int kp) {
  if (k < 2 || kp < 2) throw usage_error("mult rule needs k, k' >= 2");
  if (static_cast<std::int64_t>(k) * kp > 4096) throw usage_error("mult rule alphabet too large");
  auto d = std::make_shared<detail::RuleData>();
  d->node = Mult{k, kp};
  d->lattice = Lattice::integers();
  d->alphabet = Alphabet::cyclic(k * kp);
  d->neighborhood = {Site::z(0), Site::z(1)};
  d->radius = 1;
  d->name = "mult:" + std::to_string(k) + "," + std::to_string(kp);
  return Rule(d);
}

Rule Rule::product(const Rule& a, const Rule& b) {
  if (!(a.lattice() == b.lattice())) throw usage_error("product of rules on different lattices");
  auto d = std::make_shared<detail::RuleData>();
  d->node = Product{std::make_shared<const Rule>(a), std::make_shared<const Rule>(b)};
  d->lattice = a.lattice();
  d->alphabet = Alphabet::product(a.alphabet(), b.alphabet());
  d->quiescent = a.quiescent() * b.states() + b.quiescent();
  d->neighborhood = merged(a.neighborhood(), b.neighborhood());
  d->idx_a = positions(d->neighborhood, a.neighborhood());
  d->idx_b = positions(d->neighborhood, b.neighborhood());
  d->radius = radius_of(d->neighborhood);
  d->name = a.name() + "x" + b.name();
  return Rule(d);
}

Rule Rule::layered_flip(const Rule& inner, int layers) {
  if (layers < 1 || layers > 16) throw usage_error("layered flip needs 1..16 layers");
  if (inner.lattice().kind != LatticeKind::z || inner.states() != 2 || inner.radius() > 1 || inner.quiescent() != 0)
    throw usage_error("layered flip needs a binary radius-1 rule on Z with quiescent 0");
  auto d = std::make_shared<detail::RuleData>();
  d->node = LayeredFlip{std::make_shared<const Rule>(inner), layers};
  d->lattice = inner.lattice();
  d->alphabet = Alphabet(std::vector<int>(static_cast<std::size_t>(layers) + 1, 2));
  std::vector<Site> flips;
  for (int i = 1; i <= layers; ++i) flips.push_back(Site::z(-3 * i));
  d->neighborhood = merged(inner.neighborhood(), flips);
  d->idx_a = positions(d->neighborhood, inner.neighborhood());
  d->idx_flip = positions(d->neighborhood, flips);
  d->radius = radius_of(d->neighborhood);
  d->name = "layered:" + std::to_string(layers) + "(" + inner.name() + ")";
  return Rule(d);
}

const Lattice& Rule::lattice() const { return d_->lattice; }
int Rule::states() const { return d_->alphabet.size(); }
const Alphabet& Rule::alphabet() const { return d_->alphabet; }
State Rule::quiescent() const { return d_->quiescent; }
const std::vector<Site>& Rule::neighborhood() const { return d_->neighborhood; }
std::int64_t Rule::radius() const { return d_->radius; }
const std::string& Rule::name() const { return d_->name; }
const Rule::Node& Rule::node() const { return d_->node; }

std::optional<LinearRuleZm> Rule::as_linear() const {
  if (auto p = std::get_if<Linear>(&d_->node)) return p->f;
  return std::nullopt;
}

bool Rule::is_group_linear() const {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Linear>)
          return true;
        else if constexpr (std::is_same_v<T, SecondOrder> || std::is_same_v<T, LayeredFlip>)
          return n.inner->is_group_linear();
        else if constexpr (std::is_same_v<T, Product>)
          return n.a->is_group_linear() && n.b->is_group_linear();
        else
          return false;
      },
      d_->node);
}

Rule Rule::with_name(std::string name) const {
  auto d = std::make_shared<detail::RuleData>(*d_);
  d->name = std::move(name);
  return Rule(d);
}

State Rule::apply(std::span<const State> values) const {
  const detail::RuleData& d = *d_;
  return std::visit(
      [&](const auto& n) -> State {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Table>) {
          std::size_t idx = 0;
          auto q = static_cast<std::size_t>(d.alphabet.size());
          for (State v : values) idx = idx * q + static_cast<std::size_t>(v);
          return n.lut[idx];
        } else if constexpr (std::is_same_v<T, Linear>) {
          std::int64_t acc = 0;
          std::size_t i = 0;
          for (const auto& [s, a] : n.f.coeffs) acc += static_cast<std::int64_t>(a) * values[i++];
          return static_cast<State>(acc % n.f.modulus);
        } else if constexpr (std::is_same_v<T, SecondOrder>) {
          const Alphabet& A = n.inner->alphabet();
          int s = A.size();
          Scratch buf;
          auto sub = buf.get(d.idx_a.size());
          State a0 = values[d.idx_center] / s, b0 = values[d.idx_center] % s;
          if (!n.inverse) {
            for (std::size_t i = 0; i < sub.size(); ++i) sub[i] = values[d.idx_a[i]] % s;
            return b0 * s + A.add(n.inner->apply(sub), a0);
          }
          for (std::size_t i = 0; i < sub.size(); ++i) sub[i] = values[d.idx_a[i]] / s;
          return A.add(A.neg(n.inner->apply(sub)), b0) * s + a0;
        } else if constexpr (std::is_same_v<T, Mult>) {
          int m = n.k * n.kp;
          return (n.k * values[0]) % m + (n.k * values[1]) / m;
        } else if constexpr (std::is_same_v<T, Product>) {
          int sb = n.b->states();
          Scratch ba, bb;
          auto va = ba.get(d.idx_a.size());
          auto vb = bb.get(d.idx_b.size());
          for (std::size_t i = 0; i < va.size(); ++i) va[i] = values[d.idx_a[i]] / sb;
          for (std::size_t i = 0; i < vb.size(); ++i) vb[i] = values[d.idx_b[i]] % sb;
          return n.a->apply(va) * sb + n.b->apply(vb);
        } else {
          // layer j (1-based) of a state is bit (layers + 1 - j)
          int L = n.layers;
          Scratch buf;
          auto sub = buf.get(d.idx_a.size());
          State out = 0;
          for (int j = 1; j <= L; ++j) {
            int shift = L + 1 - j;
            for (std::size_t i = 0; i < sub.size(); ++i) sub[i] = (values[d.idx_a[i]] >> shift) & 1;
            State top = values[d.idx_flip[static_cast<std::size_t>(j - 1)]] & 1;
            out |= ((n.inner->apply(sub) ^ top) & 1) << shift;
          }
          return out;
        }
      },
      d.node);
}

Rule product(const Rule& a, const Rule& b) { return Rule::product(a, b); }

}  // namespace pxca
