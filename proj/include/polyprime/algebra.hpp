#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyprime/grid.hpp"

namespace polyprime {

/// Names a polynomial-ring variable: x_r for a vertex r, or one of the
/// target variables v_i / h_j (maximal vertical / horizontal edge interval
/// i / j) and w.
struct VariableId {
  enum class Kind { Vertex, VEdge, HEdge, W };
  Kind kind = Kind::Vertex;
  Point point{};  // Vertex only
  int index = 0;  // VEdge / HEdge only
  auto operator<=>(const VariableId&) const = default;

  static VariableId vertex(Point p) { return {Kind::Vertex, p, 0}; }
  static VariableId v_edge(int i) { return {Kind::VEdge, {}, i}; }
  static VariableId h_edge(int j) { return {Kind::HEdge, {}, j}; }
  static VariableId w() { return {Kind::W, {}, 0}; }
  std::string name() const;
};

/// Ordered variable list; exponent vectors index into it.
class Ring {
 public:
  Ring() = default;
  explicit Ring(std::vector<VariableId> vars);
  /// Anonymous ring with generic names x0, x1, ...
  static Ring generic(std::size_t n, const std::string& prefix = "x");

  std::size_t size() const { return vars_.size(); }
  const VariableId& var(std::size_t i) const { return vars_[i]; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  std::size_t index_of(const VariableId& v) const;  // throws if absent
  bool operator==(const Ring& o) const { return names_ == o.names_; }

 private:
  std::vector<VariableId> vars_;
  std::vector<std::string> names_;
  std::map<VariableId, std::size_t> index_;
};

using Exponent = std::uint32_t;

/// Dense exponent vector over a ring. Arithmetic is overflow-checked.
struct Monomial {
  std::vector<Exponent> exps;

  Monomial() = default;
  explicit Monomial(std::size_t n) : exps(n, 0) {}
  explicit Monomial(std::vector<Exponent> e) : exps(std::move(e)) {}

  std::size_t size() const { return exps.size(); }
  Exponent operator[](std::size_t i) const { return exps[i]; }
  std::uint64_t degree() const;
  bool is_one() const;
  bool operator==(const Monomial&) const = default;
  auto operator<=>(const Monomial&) const = default;  // plain lexicographic, for containers
};

Monomial operator*(const Monomial& a, const Monomial& b);
/// a / b; requires divides(b, a).
Monomial operator/(const Monomial& a, const Monomial& b);
bool divides(const Monomial& d, const Monomial& m);
Monomial lcm(const Monomial& a, const Monomial& b);
Monomial gcd(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);
std::string format(const Ring& ring, const Monomial& m);

/// f = x^plus - x^minus with unit coefficients. plus == minus is zero.
struct Binomial {
  Monomial plus;
  Monomial minus;
  bool is_zero() const { return plus == minus; }
  bool operator==(const Binomial&) const = default;
};

std::string format(const Ring& ring, const Binomial& f);

/// Vertex sets V_f^+ and V_f^- of a binomial over a vertex ring.
std::vector<Point> positive_vertices(const Ring& ring, const Binomial& f);
std::vector<Point> negative_vertices(const Ring& ring, const Binomial& f);

/// Multiplicative monomial order. `priority[0]` is the most significant
/// variable. Degree-based kinds use `weights` (all ones when empty).
struct MonomialOrder {
  enum class Kind { DegRevLex, Lex, Elimination };
  Kind kind = Kind::DegRevLex;
  std::vector<std::size_t> priority;
  std::vector<std::uint64_t> weights;
  std::size_t eliminate = 0;  // Elimination: first `eliminate` variables of `priority` form the block

  static MonomialOrder degrevlex(std::size_t n);
  static MonomialOrder lex(std::size_t n);
  /// Block order: the first k variables are eliminated, ties broken by degrevlex.
  static MonomialOrder elimination(std::size_t n, std::size_t k);
  /// Same order with variable `var` moved to the least significant position.
  MonomialOrder with_last(std::size_t var) const;

  std::uint64_t weighted_degree(const Monomial& m) const;
  std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
  std::string describe() const;
};

/// Orients f so that plus is the leading monomial.
Binomial oriented(const Binomial& f, const MonomialOrder& order);

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace polyprime
