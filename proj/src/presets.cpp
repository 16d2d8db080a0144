#include "pxca/presets.hpp"

#include <sstream>

#include "pxca/errors.hpp"
#include "pxca/freegroup.hpp"
#include "pxca/linear.hpp"

namespace pxca {

namespace {

int to_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw usage_error("bad " + what + " '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (seps.find(ch) != std::string::npos) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

Rule parse_linear(const std::string& spec) {
  std::istringstream in(spec);
  std::string tok;
  in >> tok;  // "linear"
  int m = -1;
  Lattice lat = Lattice::integers();
  std::string coeffs;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw usage_error("bad linear rule token '" + tok + "'");
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "m")
      m = to_int(val, "modulus");
    else if (key == "lattice")
      lat = parse_lattice(val);
    else if (key == "coeffs")
      coeffs = val;
    else
      throw usage_error("unknown linear rule key '" + key + "'");
  }
  if (m < 2) throw usage_error("linear rule needs m=<modulus >= 2>");
  std::map<Site, int> a;
  std::string seps = lat.kind == LatticeKind::z2 ? ";" : ";,";
  for (const std::string& item : split(coeffs, seps)) {
    if (item.empty()) continue;
    auto colon = item.rfind(':');
    if (colon == std::string::npos) throw usage_error("coefficient '" + item + "' needs site:value");
    Site s = parse_site(lat, item.substr(0, colon));
    if (a.count(s)) throw usage_error("duplicate coefficient site " + item.substr(0, colon));
    a[s] = to_int(item.substr(colon + 1), "coefficient");
  }
  return Rule::linear(LinearRuleZm(lat, m, a), spec);
}

}  // namespace

LinearRuleZm f3_linear() { return LinearRuleZm(Lattice::integers(), 3, {{Site::z(-1), 1}, {Site::z(1), 1}}); }
LinearRuleZm f2_linear() { return LinearRuleZm(Lattice::integers(), 2, {{Site::z(-1), 1}, {Site::z(1), 1}}); }

LinearRuleZm vn2_linear() {
  return LinearRuleZm(Lattice::plane(), 2,
                      {{Site::z2(0, 0), 1}, {Site::z2(1, 0), 1}, {Site::z2(-1, 0), 1}, {Site::z2(0, 1), 1},
                       {Site::z2(0, -1), 1}});
}

LinearRuleZm tri2_linear() {
  return LinearRuleZm(Lattice::plane(), 2,
                      {{Site::z2(-1, 1), 1}, {Site::z2(1, 1), 1}, {Site::z2(0, 0), 1}, {Site::z2(0, -1), 1}});
}

Rule psi() { return Rule::second_order(Rule::linear(f3_linear(), "f3")).with_name("psi"); }
Rule upsilon() { return Rule::second_order(Rule::linear(f2_linear(), "f2")).with_name("upsilon"); }

Rule make_rule(std::string_view spec_view) {
  std::string spec(spec_view);
  if (spec == "psi") return psi();
  if (spec == "upsilon") return upsilon();
  if (spec == "f3") return Rule::linear(f3_linear(), "f3");
  if (spec == "f2") return Rule::linear(f2_linear(), "f2");
  if (spec == "vn2") return Rule::linear(vn2_linear(), "vn2");
  if (spec == "tri2") return Rule::linear(tri2_linear(), "tri2");
  if (spec.starts_with("mult:")) {
    auto parts = split(spec.substr(5), ",");
    if (parts.size() != 2) throw usage_error("mult preset is mult:k,k'");
    return Rule::mult(to_int(parts[0], "k"), to_int(parts[1], "k'"));
  }
  if (spec.starts_with("lambda:")) return lambda_rule(to_int(spec.substr(7), "rank"));
  if (spec.starts_with("layered:"))
    return layered_flip(Rule::linear(f2_linear(), "f2"), to_int(spec.substr(8), "layer count"));
  if (spec.starts_with("linear ") || spec == "linear") return parse_linear(spec);
  throw usage_error("unknown rule '" + spec + "' (presets: psi, upsilon, f3, f2, vn2, tri2, mult:k,k', lambda:n, layered:k, linear ...)");
}

std::vector<std::string> preset_names() {
  return {"psi", "upsilon", "f3", "f2", "vn2", "tri2", "mult:k,k'", "lambda:n", "layered:k", "linear m=.. coeffs=.."};
}

}  // namespace pxca
