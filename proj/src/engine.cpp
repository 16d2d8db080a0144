#include "pxca/engine.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>
#include <unordered_set>

#include "packed_word.hpp"
#include "pxca/errors.hpp"

namespace pxca {

namespace {

// Local rule compiled for the hot loop.
struct Local {
  std::size_t arity = 0;
  int q = 2;
  bool linear = false;
  int modulus = 2;
  std::vector<int> coeffs;
  std::vector<State> lut;
  Rule rule;

  explicit Local(const Rule& r) : rule(r) {
    arity = r.neighborhood().size();
    q = r.states();
    if (auto lin = r.as_linear()) {
      linear = true;
      modulus = lin->modulus;
      for (const auto& [s, a] : lin->coeffs) coeffs.push_back(a);
      return;
    }
    double total = 1;
    for (std::size_t i = 0; i < arity; ++i) total *= q;
    if (total <= double(1 << 20)) {
      auto n = static_cast<std::size_t>(total);
      lut.resize(n);
      std::vector<State> v(arity, 0);
      for (std::size_t code = 0; code < n; ++code) {
        std::size_t c = code;
        for (std::size_t i = arity; i-- > 0;) {
          v[i] = static_cast<State>(c % static_cast<std::size_t>(q));
          c /= static_cast<std::size_t>(q);
        }
        lut[code] = r.apply(v);
      }
    }
  }

  State eval(const State* v) const {
    if (linear) {
      std::int64_t acc = 0;
      for (std::size_t i = 0; i < arity; ++i) acc += static_cast<std::int64_t>(coeffs[i]) * v[i];
      return static_cast<State>(acc % modulus);
    }
    if (!lut.empty()) {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < arity; ++i) idx = idx * static_cast<std::size_t>(q) + static_cast<std::size_t>(v[i]);
      return lut[idx];
    }
    return rule.apply({v, arity});
  }
};

void check_budget(std::size_t cells, const Limits& lim) {
  if (cells > lim.max_cells)
    throw resource_error("cell budget exceeded (" + std::to_string(cells) + " > " + std::to_string(lim.max_cells) + ")");
}

}  // namespace

struct Evolution::Backend {
  virtual ~Backend() = default;
  // keep < 0: no cropping
  virtual void step(std::int64_t keep, const Limits& lim) = 0;
  virtual State at(const Site& s) const = 0;
  virtual Configuration snapshot() const = 0;
  virtual bool empty() const = 0;
  virtual std::size_t cells() const = 0;
  virtual std::optional<Box> bounds() const = 0;
  virtual const char* name() const = 0;
};

namespace {

using Backend = Evolution::Backend;

class Dense1D final : public Backend {
 public:
  Dense1D(const Rule& r, const Configuration& c) : local_(r), q0_(r.quiescent()), cfg_(c.lattice(), c.states(), c.quiescent()) {
    for (const Site& s : r.neighborhood()) off_.push_back(s.x());
    if (!off_.empty()) {
      min_off_ = *std::min_element(off_.begin(), off_.end());
      max_off_ = *std::max_element(off_.begin(), off_.end());
    }
    if (c.is_quiescent()) return;
    lo_ = c.cells().begin()->first.x();
    std::int64_t hi = c.cells().rbegin()->first.x();
    cells_.assign(static_cast<std::size_t>(hi - lo_ + 1), q0_);
    for (const auto& [s, v] : c.cells()) cells_[static_cast<std::size_t>(s.x() - lo_)] = v;
  }

  State get(std::int64_t x) const {
    std::int64_t i = x - lo_;
    return (i >= 0 && i < static_cast<std::int64_t>(cells_.size())) ? cells_[static_cast<std::size_t>(i)] : q0_;
  }

  void step(std::int64_t keep, const Limits& lim) override {
    if (cells_.empty()) return;
    std::int64_t hi = lo_ + static_cast<std::int64_t>(cells_.size()) - 1;
    std::int64_t nlo = lo_ - max_off_, nhi = hi - min_off_;
    if (keep >= 0) {
      nlo = std::max(nlo, -keep);
      nhi = std::min(nhi, keep);
    }
    if (nlo > nhi) {
      cells_.clear();
      return;
    }
    check_budget(static_cast<std::size_t>(nhi - nlo + 1), lim);
    std::vector<State> out(static_cast<std::size_t>(nhi - nlo + 1));
    std::vector<State> v(off_.size());
    for (std::int64_t z = nlo; z <= nhi; ++z) {
      for (std::size_t i = 0; i < off_.size(); ++i) v[i] = get(z + off_[i]);
      out[static_cast<std::size_t>(z - nlo)] = local_.eval(v.data());
    }
    std::size_t a = 0, b = out.size();
    while (a < b && out[a] == q0_) ++a;
    while (b > a && out[b - 1] == q0_) --b;
    cells_.assign(out.begin() + static_cast<std::ptrdiff_t>(a), out.begin() + static_cast<std::ptrdiff_t>(b));
    lo_ = nlo + static_cast<std::int64_t>(a);
  }

  State at(const Site& s) const override { return get(s.x()); }

  Configuration snapshot() const override {
    Configuration c = cfg_;
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (cells_[i] != q0_) c.set(Site::z(lo_ + static_cast<std::int64_t>(i)), cells_[i]);
    return c;
  }
  bool empty() const override { return cells_.empty(); }
  std::size_t cells() const override { return cells_.size(); }
  std::optional<Box> bounds() const override {
    if (cells_.empty()) return std::nullopt;
    return Box{lo_, lo_ + static_cast<std::int64_t>(cells_.size()) - 1, 0, 0};
  }
  const char* name() const override { return "dense1d"; }

 private:
  Local local_;
  State q0_;
  Configuration cfg_;
  std::vector<std::int64_t> off_;
  std::int64_t min_off_ = 0, max_off_ = 0;
  std::int64_t lo_ = 0;
  std::vector<State> cells_;
};

class Dense2D final : public Backend {
 public:
  Dense2D(const Rule& r, const Configuration& c) : local_(r), q0_(r.quiescent()), cfg_(c.lattice(), c.states(), c.quiescent()) {
    for (const Site& s : r.neighborhood()) off_.push_back({s.x(), s.y()});
    for (const auto& o : off_) {
      ext_.x0 = std::min(ext_.x0, o.x);
      ext_.x1 = std::max(ext_.x1, o.x);
      ext_.y0 = std::min(ext_.y0, o.y);
      ext_.y1 = std::max(ext_.y1, o.y);
    }
    if (c.is_quiescent()) return;
    Box b{INT64_MAX, INT64_MIN, INT64_MAX, INT64_MIN};
    for (const auto& [s, v] : c.cells()) {
      b.x0 = std::min(b.x0, s.x());
      b.x1 = std::max(b.x1, s.x());
      b.y0 = std::min(b.y0, s.y());
      b.y1 = std::max(b.y1, s.y());
    }
    alloc(b);
    for (const auto& [s, v] : c.cells()) cells_[index(s.x(), s.y())] = v;
  }

  State get(std::int64_t x, std::int64_t y) const {
    if (x < box_.x0 || x > box_.x1 || y < box_.y0 || y > box_.y1 || cells_.empty()) return q0_;
    return cells_[index(x, y)];
  }

  void step(std::int64_t keep, const Limits& lim) override {
    if (cells_.empty()) return;
    Box nb{box_.x0 - ext_.x1, box_.x1 - ext_.x0, box_.y0 - ext_.y1, box_.y1 - ext_.y0};
    if (keep >= 0) {
      nb.x0 = std::max(nb.x0, -keep);
      nb.x1 = std::min(nb.x1, keep);
      nb.y0 = std::max(nb.y0, -keep);
      nb.y1 = std::min(nb.y1, keep);
    }
    if (nb.x0 > nb.x1 || nb.y0 > nb.y1) {
      cells_.clear();
      return;
    }
    check_budget(static_cast<std::size_t>((nb.x1 - nb.x0 + 1) * (nb.y1 - nb.y0 + 1)), lim);
    auto nwid = nb.x1 - nb.x0 + 1;
    std::vector<State> next(static_cast<std::size_t>(nwid * (nb.y1 - nb.y0 + 1)), q0_);
    auto nidx = [&](std::int64_t x, std::int64_t y) { return static_cast<std::size_t>((y - nb.y0) * nwid + (x - nb.x0)); };
    std::vector<State> v(off_.size());
    Box tight{INT64_MAX, INT64_MIN, INT64_MAX, INT64_MIN};
    for (std::int64_t y = nb.y0; y <= nb.y1; ++y)
      for (std::int64_t x = nb.x0; x <= nb.x1; ++x) {
        for (std::size_t i = 0; i < off_.size(); ++i) v[i] = get(x + off_[i].x, y + off_[i].y);
        State s = local_.eval(v.data());
        next[nidx(x, y)] = s;
        if (s != q0_) {
          tight.x0 = std::min(tight.x0, x);
          tight.x1 = std::max(tight.x1, x);
          tight.y0 = std::min(tight.y0, y);
          tight.y1 = std::max(tight.y1, y);
        }
      }
    if (tight.x0 > tight.x1) {
      cells_.clear();
      return;
    }
    alloc(tight);
    for (std::int64_t y = tight.y0; y <= tight.y1; ++y)
      for (std::int64_t x = tight.x0; x <= tight.x1; ++x) cells_[index(x, y)] = next[nidx(x, y)];
  }

  State at(const Site& s) const override { return get(s.x(), s.y()); }
  Configuration snapshot() const override {
    Configuration c = cfg_;
    if (cells_.empty()) return c;
    for (std::int64_t y = box_.y0; y <= box_.y1; ++y)
      for (std::int64_t x = box_.x0; x <= box_.x1; ++x)
        if (State s = cells_[index(x, y)]; s != q0_) c.set(Site::z2(x, y), s);
    return c;
  }
  bool empty() const override { return cells_.empty(); }
  std::size_t cells() const override { return cells_.size(); }
  std::optional<Box> bounds() const override {
    if (cells_.empty()) return std::nullopt;
    return box_;
  }
  const char* name() const override { return "dense2d"; }

 private:
  std::size_t index(std::int64_t x, std::int64_t y) const {
    return static_cast<std::size_t>((y - box_.y0) * (box_.x1 - box_.x0 + 1) + (x - box_.x0));
  }
  void alloc(const Box& b) {
    box_ = b;
    cells_.assign(static_cast<std::size_t>((b.x1 - b.x0 + 1) * (b.y1 - b.y0 + 1)), q0_);
  }

  Local local_;
  State q0_;
  Configuration cfg_;
  std::vector<Point2> off_;
  Box ext_{0, 0, 0, 0};
  Box box_;
  std::vector<State> cells_;
};

// XOR of shifted bit planes; valid for linear rules mod 2 on Z^2.
class Bits2D final : public Backend {
 public:
  Bits2D(const Rule& r, const Configuration& c) : cfg_(c.lattice(), c.states(), c.quiescent()) {
    for (const Site& s : r.neighborhood()) off_.push_back({s.x(), s.y()});
    for (const auto& o : off_) {
      ext_.x0 = std::min(ext_.x0, o.x);
      ext_.x1 = std::max(ext_.x1, o.x);
      ext_.y0 = std::min(ext_.y0, o.y);
      ext_.y1 = std::max(ext_.y1, o.y);
    }
    if (c.is_quiescent()) return;
    Box b{INT64_MAX, INT64_MIN, INT64_MAX, INT64_MIN};
    for (const auto& [s, v] : c.cells()) {
      b.x0 = std::min(b.x0, s.x());
      b.x1 = std::max(b.x1, s.x());
      b.y0 = std::min(b.y0, s.y());
      b.y1 = std::max(b.y1, s.y());
    }
    alloc(b);
    for (const auto& [s, v] : c.cells()) set_bit(s.x(), s.y());
  }

  bool get(std::int64_t x, std::int64_t y) const {
    if (bits_.empty() || x < box_.x0 || x > box_.x1 || y < box_.y0 || y > box_.y1) return false;
    auto bx = static_cast<std::size_t>(x - box_.x0);
    return (bits_[row_offset(y) + bx / 64] >> (bx % 64)) & 1;
  }

  void step(std::int64_t keep, const Limits& lim) override {
    if (bits_.empty()) return;
    Box nb{box_.x0 - ext_.x1, box_.x1 - ext_.x0, box_.y0 - ext_.y1, box_.y1 - ext_.y0};
    if (keep >= 0) {
      nb.x0 = std::max(nb.x0, -keep);
      nb.x1 = std::min(nb.x1, keep);
      nb.y0 = std::max(nb.y0, -keep);
      nb.y1 = std::min(nb.y1, keep);
    }
    if (nb.x0 > nb.x1 || nb.y0 > nb.y1) {
      bits_.clear();
      return;
    }
    check_budget(static_cast<std::size_t>((nb.x1 - nb.x0 + 1) * (nb.y1 - nb.y0 + 1)), lim);
    std::size_t nw = static_cast<std::size_t>((nb.x1 - nb.x0 + 1 + 63) / 64);
    std::size_t nh = static_cast<std::size_t>(nb.y1 - nb.y0 + 1);
    std::vector<std::uint64_t> out(nw * nh, 0);
    for (std::size_t r = 0; r < nh; ++r) {
      std::int64_t y = nb.y0 + static_cast<std::int64_t>(r);
      std::uint64_t* dst = out.data() + r * nw;
      for (const auto& o : off_) {
        std::int64_t ys = y + o.y;
        if (ys < box_.y0 || ys > box_.y1) continue;
        const std::uint64_t* src = bits_.data() + row_offset(ys);
        std::int64_t delta = nb.x0 + o.x - box_.x0;
        for (std::size_t w = 0; w < nw; ++w) dst[w] ^= extract(src, delta + 64 * static_cast<std::int64_t>(w));
      }
      std::int64_t tail = (nb.x1 - nb.x0 + 1) % 64;
      if (tail) dst[nw - 1] &= (std::uint64_t{1} << tail) - 1;
    }
    // tighten
    Box tight{INT64_MAX, INT64_MIN, INT64_MAX, INT64_MIN};
    for (std::size_t r = 0; r < nh; ++r) {
      const std::uint64_t* row = out.data() + r * nw;
      for (std::size_t w = 0; w < nw; ++w)
        if (row[w]) {
          std::int64_t y = nb.y0 + static_cast<std::int64_t>(r);
          tight.y0 = std::min(tight.y0, y);
          tight.y1 = std::max(tight.y1, y);
          tight.x0 = std::min(tight.x0, nb.x0 + static_cast<std::int64_t>(64 * w + std::countr_zero(row[w])));
          break;
        }
      for (std::size_t w = nw; w-- > 0;)
        if (row[w]) {
          tight.x1 = std::max(tight.x1, nb.x0 + static_cast<std::int64_t>(64 * w + 63 - std::countl_zero(row[w])));
          break;
        }
    }
    if (tight.y0 > tight.y1) {
      bits_.clear();
      return;
    }
    std::vector<std::uint64_t> old = std::move(out);
    Box ob = nb;
    std::size_t onw = nw;
    alloc(tight);
    std::size_t tw = words_;
    for (std::int64_t y = tight.y0; y <= tight.y1; ++y) {
      const std::uint64_t* src = old.data() + static_cast<std::size_t>(y - ob.y0) * onw;
      std::uint64_t* dst = bits_.data() + row_offset(y);
      std::int64_t delta = tight.x0 - ob.x0;
      for (std::size_t w = 0; w < tw; ++w) {
        std::int64_t pos = delta + 64 * static_cast<std::int64_t>(w);
        dst[w] = extract_n(src, onw, pos);
      }
      std::int64_t tail = (tight.x1 - tight.x0 + 1) % 64;
      if (tail) dst[tw - 1] &= (std::uint64_t{1} << tail) - 1;
    }
  }

  State at(const Site& s) const override { return get(s.x(), s.y()) ? 1 : 0; }
  Configuration snapshot() const override {
    Configuration c = cfg_;
    if (bits_.empty()) return c;
    for (std::int64_t y = box_.y0; y <= box_.y1; ++y)
      for (std::int64_t x = box_.x0; x <= box_.x1; ++x)
        if (get(x, y)) c.set(Site::z2(x, y), 1);
    return c;
  }
  bool empty() const override { return bits_.empty(); }
  std::size_t cells() const override { return bits_.size() * 64; }
  std::optional<Box> bounds() const override {
    if (bits_.empty()) return std::nullopt;
    return box_;
  }
  const char* name() const override { return "bits2d-u64"; }

 private:
  std::size_t row_offset(std::int64_t y) const { return static_cast<std::size_t>(y - box_.y0) * words_; }
  void alloc(const Box& b) {
    box_ = b;
    words_ = static_cast<std::size_t>((b.x1 - b.x0 + 1 + 63) / 64);
    bits_.assign(words_ * static_cast<std::size_t>(b.y1 - b.y0 + 1), 0);
  }
  void set_bit(std::int64_t x, std::int64_t y) {
    auto bx = static_cast<std::size_t>(x - box_.x0);
    bits_[row_offset(y) + bx / 64] |= std::uint64_t{1} << (bx % 64);
  }
  std::uint64_t extract(const std::uint64_t* row, std::int64_t pos) const { return extract_n(row, words_, pos); }
  static std::uint64_t extract_n(const std::uint64_t* row, std::size_t nw, std::int64_t pos) {
    auto total = static_cast<std::int64_t>(nw) * 64;
    if (pos >= total || pos <= -64) return 0;
    std::int64_t wi = pos >= 0 ? pos / 64 : -((-pos + 63) / 64);
    int sh = static_cast<int>(pos - wi * 64);
    auto word = [&](std::int64_t i) -> std::uint64_t {
      return (i >= 0 && i < static_cast<std::int64_t>(nw)) ? row[i] : 0;
    };
    std::uint64_t lo = word(wi);
    if (sh == 0) return lo;
    return (lo >> sh) | (word(wi + 1) << (64 - sh));
  }

  Configuration cfg_;
  std::vector<Point2> off_;
  Box ext_{0, 0, 0, 0};
  Box box_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

class SparseFree final : public Backend {
 public:
  SparseFree(const Rule& r, const Configuration& c)
      : local_(r), q0_(r.quiescent()), codec_(r.lattice().rank), cfg_(c.lattice(), c.states(), c.quiescent()) {
    for (const Site& s : r.neighborhood()) {
      std::vector<int> codes, inv;
      for (int g : s.word()) codes.push_back(detail::PackedCodec::code_of(g));
      for (auto it = s.word().rbegin(); it != s.word().rend(); ++it) inv.push_back(detail::PackedCodec::code_of(-*it));
      off_.push_back(codes);
      inv_.push_back(inv);
    }
    for (const auto& [s, v] : c.cells()) cells_[codec_.encode(s.word())] = v;
  }

  std::uint64_t mul(std::uint64_t w, const std::vector<int>& codes) const {
    for (int c : codes) w = codec_.append(w, c);
    return w;
  }
  State get(std::uint64_t w) const {
    auto it = cells_.find(w);
    return it == cells_.end() ? q0_ : it->second;
  }

  void step(std::int64_t keep, const Limits& lim) override {
    std::unordered_map<std::uint64_t, State, detail::Mix64> out;
    out.reserve(cells_.size() * 2);
    if (local_.linear) {
      for (const auto& [s, v] : cells_)
        for (std::size_t i = 0; i < inv_.size(); ++i) {
          std::uint64_t t = mul(s, inv_[i]);
          if (keep >= 0 && detail::PackedCodec::length(t) > keep) continue;
          State& o = out[t];
          o = static_cast<State>((o + static_cast<std::int64_t>(local_.coeffs[i]) * v) % local_.modulus);
        }
      std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    } else {
      std::unordered_set<std::uint64_t, detail::Mix64> cand;
      for (const auto& [s, v] : cells_)
        for (const auto& inv : inv_) {
          std::uint64_t t = mul(s, inv);
          if (keep >= 0 && detail::PackedCodec::length(t) > keep) continue;
          cand.insert(t);
        }
      std::vector<State> vals(off_.size());
      for (std::uint64_t z : cand) {
        for (std::size_t i = 0; i < off_.size(); ++i) vals[i] = get(mul(z, off_[i]));
        State s = local_.eval(vals.data());
        if (s != q0_) out[z] = s;
      }
    }
    check_budget(out.size(), lim);
    cells_ = std::move(out);
  }

  State at(const Site& s) const override {
    if (static_cast<int>(s.word().size()) > codec_.max_length()) return q0_;
    return get(codec_.encode(s.word()));
  }
  Configuration snapshot() const override {
    Configuration c = cfg_;
    for (const auto& [w, v] : cells_) c.set(Site::free(codec_.decode(w)), v);
    return c;
  }
  bool empty() const override { return cells_.empty(); }
  std::size_t cells() const override { return cells_.size(); }
  std::optional<Box> bounds() const override { return std::nullopt; }
  const char* name() const override { return "sparse-free"; }

 private:
  Local local_;
  State q0_;
  detail::PackedCodec codec_;
  Configuration cfg_;
  std::vector<std::vector<int>> off_, inv_;
  std::unordered_map<std::uint64_t, State, detail::Mix64> cells_;
};

void check_compatible(const Rule& r, const Configuration& c) {
  if (!(r.lattice() == c.lattice())) throw usage_error("configuration lattice does not match the rule");
  if (r.states() != c.states()) throw usage_error("configuration alphabet size does not match the rule");
  if (r.quiescent() != c.quiescent()) throw usage_error("configuration quiescent state does not match the rule");
}

}  // namespace

Evolution::Evolution(const Rule& rule, const Configuration& init, EvolutionOptions opts) : rule_(rule), opts_(opts) {
  check_compatible(rule, init);
  switch (rule.lattice().kind) {
    case LatticeKind::z:
      impl_ = std::make_unique<Dense1D>(rule, init);
      break;
    case LatticeKind::z2: {
      auto lin = rule.as_linear();
      if (lin && lin->modulus == 2)
        impl_ = std::make_unique<Bits2D>(rule, init);
      else
        impl_ = std::make_unique<Dense2D>(rule, init);
      break;
    }
    case LatticeKind::free:
      impl_ = std::make_unique<SparseFree>(rule, init);
      break;
  }
}

Evolution::~Evolution() = default;
Evolution::Evolution(Evolution&&) noexcept = default;
Evolution& Evolution::operator=(Evolution&&) noexcept = default;

void Evolution::advance() {
  std::int64_t keep = -1;
  if (opts_.cone) {
    std::int64_t left = std::max<std::int64_t>(0, opts_.cone->horizon - (t_ + 1));
    keep = opts_.cone->window + left * rule_.radius();
  }
  try {
    impl_->step(keep, opts_.limits);
  } catch (const resource_error& e) {
    throw resource_error(e.what(), t_);
  }
  ++t_;
}

void Evolution::advance(std::int64_t steps) {
  for (std::int64_t i = 0; i < steps; ++i) {
    if (impl_->empty()) {
      // quiescent configurations are fixed points
      t_ += steps - i;
      return;
    }
    advance();
  }
}

State Evolution::at(const Site& s) const { return impl_->at(s); }
Configuration Evolution::snapshot() const { return impl_->snapshot(); }
bool Evolution::is_quiescent() const { return impl_->empty(); }
std::size_t Evolution::cells() const { return impl_->cells(); }
std::optional<Box> Evolution::bounds() const { return impl_->bounds(); }
std::string Evolution::backend() const { return impl_->name(); }

Configuration step(const Rule& rule, const Configuration& c) { return iterate(rule, c, 1); }

Configuration iterate(const Rule& rule, const Configuration& c, std::int64_t t, const Limits& limits) {
  if (t < 0) throw usage_error("negative step count");
  EvolutionOptions o;
  o.limits = limits;
  Evolution ev(rule, c, o);
  ev.advance(t);
  return ev.snapshot();
}

bool TracePrefix::is_null(State quiescent) const {
  for (const auto& row : rows)
    for (State s : row)
      if (s != quiescent) return false;
  return true;
}

TracePrefix trace(const Rule& rule, const Configuration& c, int m, std::int64_t t_max, const Limits& limits) {
  if (m < 0 || t_max < 0) throw usage_error("trace needs m >= 0 and t_max >= 0");
  EvolutionOptions o;
  o.cone = ObservationCone{t_max, m};
  o.limits = limits;
  Evolution ev(rule, c, o);
  TracePrefix tp;
  tp.window = m;
  tp.sites = ball(rule.lattice(), m);
  tp.rows.reserve(static_cast<std::size_t>(t_max + 1));
  for (std::int64_t t = 0; t <= t_max; ++t) {
    std::vector<State> row;
    row.reserve(tp.sites.size());
    for (const Site& s : tp.sites) row.push_back(ev.at(s));
    tp.rows.push_back(std::move(row));
    if (t < t_max) ev.advance();
  }
  return tp;
}

FrontSeries fronts(const Rule& rule, const Configuration& c, const Configuration& d, std::int64_t t_max) {
  if (rule.lattice().kind != LatticeKind::z) throw usage_error("fronts are defined on Z only");
  if (c == d) throw usage_error("fronts undefined for equal configurations");
  Evolution a(rule, c), b(rule, d);
  FrontSeries fs;
  for (std::int64_t t = 0; t <= t_max; ++t) {
    auto ba = a.bounds(), bb = b.bounds();
    std::optional<std::int64_t> l, r;
    if (ba || bb) {
      std::int64_t lo = std::min(ba ? ba->x0 : INT64_MAX, bb ? bb->x0 : INT64_MAX);
      std::int64_t hi = std::max(ba ? ba->x1 : INT64_MIN, bb ? bb->x1 : INT64_MIN);
      for (std::int64_t x = lo; x <= hi; ++x)
        if (a.at(Site::z(x)) != b.at(Site::z(x))) {
          l = x;
          break;
        }
      if (l)
        for (std::int64_t x = hi; x >= *l; --x)
          if (a.at(Site::z(x)) != b.at(Site::z(x))) {
            r = x;
            break;
          }
    }
    fs.left.push_back(l);
    fs.right.push_back(r);
    if (t < t_max) {
      a.advance();
      b.advance();
    }
  }
  return fs;
}

}  // namespace pxca
