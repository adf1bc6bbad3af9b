#include "polyprime/algebra.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace polyprime {

std::string VariableId::name() const {
  switch (kind) {
    case Kind::Vertex:
      return "x[" + std::to_string(point.x) + "," + std::to_string(point.y) + "]";
    case Kind::VEdge:
      return "v" + std::to_string(index);
    case Kind::HEdge:
      return "h" + std::to_string(index);
    case Kind::W:
      return "w";
  }
  return "?";
}

Ring::Ring(std::vector<VariableId> vars) : vars_(std::move(vars)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    names_.push_back(vars_[i].name());
    if (!index_.emplace(vars_[i], i).second) throw std::invalid_argument("duplicate ring variable " + names_.back());
  }
}

Ring Ring::generic(std::size_t n, const std::string& prefix) {
  // Generic variables reuse the VEdge kind with the position as index, renamed.
  std::vector<VariableId> vars;
  for (std::size_t i = 0; i < n; ++i) vars.push_back(VariableId::v_edge(static_cast<int>(i)));
  Ring r(std::move(vars));
  for (std::size_t i = 0; i < n; ++i) r.names_[i] = prefix + std::to_string(i + 1);
  return r;
}

std::size_t Ring::index_of(const VariableId& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) throw std::out_of_range("variable " + v.name() + " not in ring");
  return it->second;
}

namespace {
Exponent checked_add(Exponent a, Exponent b) {
  if (a > std::numeric_limits<Exponent>::max() - b) throw OverflowError("exponent overflow");
  return a + b;
}
}  // namespace

std::uint64_t Monomial::degree() const {
  return std::accumulate(exps.begin(), exps.end(), std::uint64_t{0});
}

bool Monomial::is_one() const {
  return std::all_of(exps.begin(), exps.end(), [](Exponent e) { return e == 0; });
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r.exps[i] = checked_add(a.exps[i], b.exps[i]);
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b.exps[i] > a.exps[i]) throw std::domain_error("monomial division is not exact");
    r.exps[i] = a.exps[i] - b.exps[i];
  }
  return r;
}

bool divides(const Monomial& d, const Monomial& m) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d.exps[i] > m.exps[i]) return false;
  return true;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r.exps[i] = std::max(a.exps[i], b.exps[i]);
  return r;
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r.exps[i] = std::min(a.exps[i], b.exps[i]);
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.exps[i] != 0 && b.exps[i] != 0) return false;
  return true;
}

std::string format(const Ring& ring, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.exps[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += ring.name(i);
    if (m.exps[i] > 1) out += "^" + std::to_string(m.exps[i]);
  }
  return out.empty() ? "1" : out;
}

std::string format(const Ring& ring, const Binomial& f) {
  if (f.is_zero()) return "0";
  return format(ring, f.plus) + " - " + format(ring, f.minus);
}

namespace {
std::vector<Point> support_vertices(const Ring& ring, const Monomial& m) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.exps[i] > 0 && ring.var(i).kind == VariableId::Kind::Vertex) out.push_back(ring.var(i).point);
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace

std::vector<Point> positive_vertices(const Ring& ring, const Binomial& f) { return support_vertices(ring, f.plus); }
std::vector<Point> negative_vertices(const Ring& ring, const Binomial& f) { return support_vertices(ring, f.minus); }

MonomialOrder MonomialOrder::degrevlex(std::size_t n) {
  MonomialOrder o;
  o.kind = Kind::DegRevLex;
  o.priority.resize(n);
  std::iota(o.priority.begin(), o.priority.end(), std::size_t{0});
  return o;
}

MonomialOrder MonomialOrder::lex(std::size_t n) {
  MonomialOrder o = degrevlex(n);
  o.kind = Kind::Lex;
  return o;
}

MonomialOrder MonomialOrder::elimination(std::size_t n, std::size_t k) {
  MonomialOrder o = degrevlex(n);
  o.kind = Kind::Elimination;
  o.eliminate = k;
  return o;
}

MonomialOrder MonomialOrder::with_last(std::size_t var) const {
  MonomialOrder o = *this;
  auto it = std::find(o.priority.begin(), o.priority.end(), var);
  if (it == o.priority.end()) throw std::out_of_range("variable not in order");
  o.priority.erase(it);
  o.priority.push_back(var);
  return o;
}

std::uint64_t MonomialOrder::weighted_degree(const Monomial& m) const {
  if (weights.empty()) return m.degree();
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += weights[i] * m.exps[i];
  return d;
}

namespace {
std::strong_ordering revlex_tail(const std::vector<std::size_t>& priority, const Monomial& a, const Monomial& b) {
  for (auto it = priority.rbegin(); it != priority.rend(); ++it) {
    Exponent x = a.exps[*it], y = b.exps[*it];
    if (x != y) return x < y ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}
}  // namespace

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind) {
    case Kind::Lex:
      for (std::size_t i : priority)
        if (a.exps[i] != b.exps[i]) return a.exps[i] <=> b.exps[i];
      return std::strong_ordering::equal;
    case Kind::Elimination: {
      std::uint64_t da = 0, db = 0;
      for (std::size_t k = 0; k < eliminate; ++k) {
        std::uint64_t w = weights.empty() ? 1 : weights[priority[k]];
        da += w * a.exps[priority[k]];
        db += w * b.exps[priority[k]];
      }
      if (da != db) return da <=> db;
      [[fallthrough]];
    }
    case Kind::DegRevLex: {
      std::uint64_t da = weighted_degree(a), db = weighted_degree(b);
      if (da != db) return da <=> db;
      return revlex_tail(priority, a, b);
    }
  }
  return std::strong_ordering::equal;
}

std::string MonomialOrder::describe() const {
  std::string k = kind == Kind::Lex ? "lex" : kind == Kind::DegRevLex ? "degrevlex" : "elimination";
  return k;
}

Binomial oriented(const Binomial& f, const MonomialOrder& order) {
  if (order.compare(f.plus, f.minus) < 0) return {f.minus, f.plus};
  return f;
}

}  // namespace polyprime
