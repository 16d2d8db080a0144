#include "pxca/configuration.hpp"

#include <fstream>
#include <sstream>

#include "pxca/errors.hpp"

namespace pxca {

namespace {

int mod(std::int64_t a, int m) {
  auto r = static_cast<int>(a % m);
  return r < 0 ? r + m : r;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

void check_compatible(const Configuration& a, const Configuration& b) {
  if (!(a.lattice() == b.lattice()) || a.states() != b.states() || a.quiescent() != b.quiescent())
    throw usage_error("configurations live on different lattices or alphabets");
}

}  // namespace

Alphabet::Alphabet(std::vector<int> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw usage_error("empty alphabet");
  std::int64_t s = 1;
  for (int m : moduli_) {
    if (m < 1) throw usage_error("alphabet modulus must be positive");
    s *= m;
    if (s > (1 << 24)) throw usage_error("alphabet too large");
  }
  size_ = static_cast<int>(s);
}

Alphabet Alphabet::product(const Alphabet& a, const Alphabet& b) {
  std::vector<int> m = a.moduli_;
  m.insert(m.end(), b.moduli_.begin(), b.moduli_.end());
  return Alphabet(std::move(m));
}

std::vector<int> Alphabet::digits(State s) const {
  std::vector<int> d(moduli_.size());
  for (std::size_t i = moduli_.size(); i-- > 0;) {
    d[i] = s % moduli_[i];
    s /= moduli_[i];
  }
  return d;
}

State Alphabet::compose(const std::vector<int>& digits) const {
  State s = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) s = s * moduli_[i] + mod(digits[i], moduli_[i]);
  return s;
}

State Alphabet::add(State a, State b) const {
  if (moduli_.size() == 1) return (a + b) % size_;
  auto da = digits(a), db = digits(b);
  for (std::size_t i = 0; i < da.size(); ++i) da[i] += db[i];
  return compose(da);
}

State Alphabet::neg(State a) const {
  if (moduli_.size() == 1) return (size_ - a) % size_;
  auto d = digits(a);
  for (int& x : d) x = -x;
  return compose(d);
}

State Alphabet::scale(std::int64_t k, State a) const {
  auto d = digits(a);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = mod(k % moduli_[i] * d[i], moduli_[i]);
  return compose(d);
}

Configuration::Configuration(Lattice lattice, int states, State quiescent)
    : lattice_(lattice), states_(states), quiescent_(quiescent) {
  if (states < 1) throw usage_error("alphabet must be non-empty");
  if (quiescent < 0 || quiescent >= states) throw usage_error("quiescent state outside alphabet");
}

Configuration Configuration::spot(Lattice lattice, int states, const Site& at, State value, State quiescent) {
  Configuration c(lattice, states, quiescent);
  c.set(at, value);
  return c;
}

State Configuration::at(const Site& s) const {
  auto it = cells_.find(s);
  return it == cells_.end() ? quiescent_ : it->second;
}

void Configuration::set(const Site& s, State v) {
  if (!belongs_to(s, lattice_)) throw usage_error("site " + format_site(s) + " not in lattice " + format_lattice(lattice_));
  if (v < 0 || v >= states_) throw usage_error("state " + std::to_string(v) + " outside alphabet of size " + std::to_string(states_));
  if (v == quiescent_)
    cells_.erase(s);
  else
    cells_[s] = v;
}

std::int64_t Configuration::size() const {
  std::int64_t r = -1;
  for (const auto& [s, v] : cells_) r = std::max(r, sup_norm(s));
  return r;
}

Configuration Configuration::shifted(const Site& z) const {
  Configuration out(lattice_, states_, quiescent_);
  Site nz = negate(z);
  for (const auto& [s, v] : cells_) out.cells_.emplace(add(nz, s), v);
  return out;
}

Configuration add(const Configuration& a, const Configuration& b, const Alphabet& law) {
  check_compatible(a, b);
  Configuration out = a;
  for (const auto& [s, v] : b.cells()) out.set(s, law.add(out.at(s), v));
  return out;
}

Configuration negate(const Configuration& a, const Alphabet& law) {
  Configuration out(a.lattice(), a.states(), a.quiescent());
  for (const auto& [s, v] : a.cells()) out.set(s, law.neg(v));
  return out;
}

Configuration scale(std::int64_t k, const Configuration& a, const Alphabet& law) {
  Configuration out(a.lattice(), a.states(), a.quiescent());
  for (const auto& [s, v] : a.cells()) out.set(s, law.scale(k, v));
  return out;
}

std::size_t difference_count(const Configuration& a, const Configuration& b) {
  check_compatible(a, b);
  std::size_t n = 0;
  for (const auto& [s, v] : a.cells())
    if (b.at(s) != v) ++n;
  for (const auto& [s, v] : b.cells())
    if (a.at(s) == a.quiescent()) ++n;
  return n;
}

Configuration random_configuration(const Lattice& lat, int states, std::int64_t radius, double density,
                                   std::mt19937_64& rng) {
  Configuration c(lat, states, 0);
  if (states < 2) return c;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> value(1, states - 1);
  for (const Site& s : box(lat, radius))
    if (coin(rng) < density) c.set(s, value(rng));
  return c;
}

Configuration read_configuration(std::istream& in) {
  std::string line;
  do {
    if (!std::getline(in, line)) throw usage_error("empty configuration file");
  } while (trim(line).empty() || trim(line)[0] == '#');
  std::istringstream head(trim(line));
  std::string tok;
  std::optional<Lattice> lat;
  int q = -1;
  State q0 = 0;
  while (head >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw usage_error("bad header token '" + tok + "'");
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    try {
      if (key == "lattice")
        lat = parse_lattice(val);
      else if (key == "q")
        q = std::stoi(val);
      else if (key == "quiescent")
        q0 = std::stoi(val);
      else
        throw usage_error("unknown header key '" + key + "'");
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const usage_error*>(&e)) throw;
      throw usage_error("bad header value '" + tok + "'");
    }
  }
  if (!lat || q < 1) throw usage_error("configuration header needs lattice= and q=");
  Configuration c(*lat, q, q0);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.rfind('\t');
    if (tab == std::string::npos) throw usage_error("line " + std::to_string(lineno) + ": expected site<TAB>state");
    State v = 0;
    try {
      v = std::stoi(line.substr(tab + 1));
    } catch (const std::logic_error&) {
      throw usage_error("line " + std::to_string(lineno) + ": bad state");
    }
    c.set(parse_site(*lat, line.substr(0, tab)), v);
  }
  return c;
}

void write_configuration(std::ostream& out, const Configuration& c) {
  out << "lattice=" << format_lattice(c.lattice()) << " q=" << c.states() << " quiescent=" << c.quiescent()
      << "\n";
  for (const auto& [s, v] : c.cells()) out << format_site(s) << '\t' << v << "\n";
}

Configuration load_configuration(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw usage_error("cannot open " + path);
  return read_configuration(f);
}

void save_configuration(const std::string& path, const Configuration& c) {
  std::ofstream f(path);
  if (!f) throw usage_error("cannot write " + path);
  write_configuration(f, c);
}

}  // namespace pxca
