#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pxca/configuration.hpp"
#include "pxca/lattice.hpp"

namespace pxca {

// F(c)(z) = sum_v a_v c(z+v) mod m, with every stored a_v nonzero mod m.
struct LinearRuleZm {
  Lattice lattice;
  int modulus = 2;
  std::map<Site, int> coeffs;

  LinearRuleZm() = default;
  LinearRuleZm(Lattice lat, int m, const std::map<Site, int>& a);
  std::int64_t radius() const;
};

using LocalFunction = std::function<State(std::span<const State>)>;

class Rule;

namespace detail {
struct RuleData;
}

// Immutable cellular automaton handle; copies share the same data.
class Rule {
 public:
  struct Table {
    std::vector<State> lut;  // mixed radix over neighborhood values, first neighbor most significant
  };
  struct Linear {
    LinearRuleZm f;
  };
  struct SecondOrder {
    std::shared_ptr<const Rule> inner;
    bool inverse = false;
  };
  struct Mult {
    int k = 2, kp = 3;
  };
  struct Product {
    std::shared_ptr<const Rule> a, b;
  };
  struct LayeredFlip {
    std::shared_ptr<const Rule> inner;
    int layers = 1;
  };
  using Node = std::variant<Table, Linear, SecondOrder, Mult, Product, LayeredFlip>;

  static Rule table(Lattice lat, int q, std::vector<Site> neighborhood, const LocalFunction& f, State quiescent = 0,
                    std::string name = "table");
  static Rule linear(const LinearRuleZm& f, std::string name = "");
  // (c,d) -> (d, F(d)+c); the inverse flag gives (c,d) -> (-F(c)+d, c)
  static Rule second_order(const Rule& inner, bool inverse = false);
  static Rule mult(int k, int kp);
  static Rule product(const Rule& a, const Rule& b);
  static Rule layered_flip(const Rule& inner, int layers);

  const Lattice& lattice() const;
  int states() const;
  const Alphabet& alphabet() const;
  State quiescent() const;
  const std::vector<Site>& neighborhood() const;
  std::int64_t radius() const;  // max norm over the neighborhood
  const std::string& name() const;
  const Node& node() const;
  std::optional<LinearRuleZm> as_linear() const;
  // linear over the alphabet's group law (linear, and second order / product / layered of linear)
  bool is_group_linear() const;

  // values are the states at neighborhood() in order
  State apply(std::span<const State> values) const;

  Rule with_name(std::string name) const;

 private:
  explicit Rule(std::shared_ptr<const detail::RuleData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::RuleData> d_;
};

Rule product(const Rule& a, const Rule& b);

}  // namespace pxca
