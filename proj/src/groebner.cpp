#include "polyprime/groebner.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>

namespace polyprime {

BudgetExhausted::BudgetExhausted(const std::string& limit, std::vector<Binomial> partial)
    : std::runtime_error("budget exhausted: " + limit), limit_(limit), partial_(std::move(partial)) {}

Deadline::Deadline(double seconds) : limited_(seconds > 0) {
  if (limited_)
    end_ = std::chrono::steady_clock::now() +
           std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds));
}

bool Deadline::expired() const { return limited_ && std::chrono::steady_clock::now() >= end_; }

double Deadline::remaining() const {
  if (!limited_) return std::numeric_limits<double>::infinity();
  return std::chrono::duration<double>(end_ - std::chrono::steady_clock::now()).count();
}

Binomial remove_common_factor(const Binomial& f) {
  Monomial g = gcd(f.plus, f.minus);
  if (g.is_one()) return f;
  return {f.plus / g, f.minus / g};
}

namespace {

std::uint64_t support_mask(const Monomial& m) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.exps[i]) mask |= std::uint64_t{1} << (i % 64);
  return mask;
}

struct Element {
  Monomial lead;
  Monomial tail;
  std::uint64_t mask = 0;
};

// Rewrites m in place: m <- m / lead * tail. Caller ensures lead | m.
void rewrite(Monomial& m, const Element& e) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::uint64_t v = std::uint64_t{m.exps[i]} - e.lead.exps[i] + e.tail.exps[i];
    if (v > std::numeric_limits<Exponent>::max()) throw OverflowError("exponent overflow in reduction");
    m.exps[i] = static_cast<Exponent>(v);
  }
}

class Engine {
 public:
  Engine(const MonomialOrder& order, const Budget& budget, const Deadline& deadline)
      : order_(order), budget_(budget), deadline_(deadline) {}

  void add_generator(const Binomial& f) {
    if (f.plus.size() != order_.priority.size()) throw std::invalid_argument("binomial size does not match the order");
    Monomial a = normal_form(f.plus), b = normal_form(f.minus);
    if (a == b) return;
    insert(oriented({std::move(a), std::move(b)}, order_));
  }

  void run() {
    while (!pairs_.empty()) {
      auto it = pairs_.begin();
      auto [key, lcm_ij] = *it;
      pairs_.erase(it);
      auto [deg, j, i] = key;
      (void)deg;
      if (budget_.max_pairs && stats_.pairs >= budget_.max_pairs) throw BudgetExhausted("pairs", current());
      if (budget_.max_degree && lcm_ij.degree() > budget_.max_degree) throw BudgetExhausted("degree", current());
      if ((stats_.pairs & 15) == 0 && deadline_.expired()) throw BudgetExhausted("seconds", current());
      ++stats_.pairs;
      const Element& ei = store_[i];
      const Element& ej = store_[j];
      Monomial a = lcm_ij / ei.lead * ei.tail;
      Monomial b = lcm_ij / ej.lead * ej.tail;
      a = normal_form(std::move(a));
      b = normal_form(std::move(b));
      if (a == b) continue;
      insert(oriented({std::move(a), std::move(b)}, order_));
    }
  }

  GroebnerBasis result() {
    GroebnerBasis g;
    g.order = order_;
    g.reduced = true;
    for (std::size_t k : active_) {
      Monomial tail = normal_form(store_[k].tail);
      if (tail == store_[k].lead) continue;
      g.generators.push_back({store_[k].lead, std::move(tail)});
    }
    std::sort(g.generators.begin(), g.generators.end(),
              [&](const Binomial& x, const Binomial& y) { return order_.greater(x.plus, y.plus); });
    g.stats = stats_;
    return g;
  }

  Monomial normal_form(Monomial m) {
    for (;;) {
      const std::uint64_t mm = support_mask(m);
      const Element* hit = nullptr;
      for (std::size_t k : active_) {
        const Element& e = store_[k];
        if ((e.mask & ~mm) == 0 && divides(e.lead, m)) {
          hit = &e;
          break;
        }
      }
      if (!hit) return m;
      rewrite(m, *hit);
      ++stats_.reductions;
    }
  }

 private:
  using PairKey = std::tuple<std::uint64_t, std::size_t, std::size_t>;  // (degree, newer, older)

  std::vector<Binomial> current() const {
    std::vector<Binomial> out;
    for (std::size_t k : active_) out.push_back({store_[k].lead, store_[k].tail});
    return out;
  }

  // Gebauer-Moeller update for a new element.
  void insert(Binomial f) {
    const std::size_t h = store_.size();
    store_.push_back({std::move(f.plus), std::move(f.minus), 0});
    store_[h].mask = support_mask(store_[h].lead);
    const Monomial& lh = store_[h].lead;

    struct Candidate {
      std::size_t g;
      Monomial lcm;
      bool coprime;
      bool alive = true;
    };
    std::vector<Candidate> c;
    for (std::size_t g : active_) c.push_back({g, lcm(lh, store_[g].lead), coprime(lh, store_[g].lead)});
    // Chain criterion among the new pairs; of pairs with equal lcm only one survives.
    for (std::size_t x = 0; x < c.size(); ++x) {
      if (c[x].coprime) continue;
      for (std::size_t y = 0; y < c.size(); ++y) {
        if (y == x || !c[y].alive) continue;
        if (divides(c[y].lcm, c[x].lcm) && (c[y].lcm != c[x].lcm || y > x)) {
          c[x].alive = false;
          break;
        }
      }
    }
    // Pairs already queued that the new lead makes redundant.
    for (auto it = pairs_.begin(); it != pairs_.end();) {
      auto [deg, j, i] = it->first;
      (void)deg;
      const Monomial& l = it->second;
      if (divides(lh, l) && lcm(store_[i].lead, lh) != l && lcm(store_[j].lead, lh) != l) {
        it = pairs_.erase(it);
        ++stats_.skipped;
      } else {
        ++it;
      }
    }
    for (const Candidate& x : c) {
      if (!x.alive || x.coprime) {
        ++stats_.skipped;
        continue;
      }
      pairs_.emplace(PairKey{order_.weighted_degree(x.lcm), h, x.g}, x.lcm);
    }
    std::vector<std::size_t> keep;
    for (std::size_t g : active_)
      if (!divides(lh, store_[g].lead)) keep.push_back(g);
    keep.push_back(h);
    active_ = std::move(keep);
  }

  MonomialOrder order_;
  Budget budget_;
  const Deadline& deadline_;
  std::vector<Element> store_;
  std::vector<std::size_t> active_;
  std::map<PairKey, Monomial> pairs_;
  GroebnerStats stats_;
};

}  // namespace

GroebnerBasis buchberger(const std::vector<Binomial>& gens, const MonomialOrder& order, const Budget& budget,
                         const Deadline& deadline) {
  Deadline local(budget.max_seconds);
  const Deadline& effective = budget.max_seconds > 0 && local.remaining() < deadline.remaining() ? local : deadline;
  Engine engine(order, budget, effective);
  for (const Binomial& f : gens) engine.add_generator(f);
  engine.run();
  return engine.result();
}

Monomial normal_form(const GroebnerBasis& g, const Monomial& m) {
  Monomial r = m;
  for (;;) {
    const Binomial* hit = nullptr;
    for (const Binomial& f : g.generators)
      if (divides(f.plus, r)) {
        hit = &f;
        break;
      }
    if (!hit) return r;
    r = r / hit->plus * hit->minus;
  }
}

bool reduces_to_zero(const GroebnerBasis& g, const Binomial& f) {
  return normal_form(g, f.plus) == normal_form(g, f.minus);
}

std::vector<Binomial> saturate(const std::vector<Binomial>& gens, std::size_t var, const MonomialOrder& order,
                               const Budget& budget, const Deadline& deadline) {
  GroebnerBasis g = buchberger(gens, order.with_last(var), budget, deadline);
  std::vector<Binomial> out;
  for (Binomial& f : g.generators) {
    Exponent k = std::min(f.plus.exps[var], f.minus.exps[var]);
    f.plus.exps[var] -= k;
    f.minus.exps[var] -= k;
    out.push_back(std::move(f));
  }
  return out;
}

bool is_saturated(const std::vector<Binomial>& gens, std::size_t var, const MonomialOrder& order,
                  const Budget& budget, const Deadline& deadline) {
  GroebnerBasis g = buchberger(gens, order.with_last(var), budget, deadline);
  for (const Binomial& f : g.generators)
    if (f.plus.exps[var] > 0 && f.minus.exps[var] > 0) return false;
  return true;
}

}  // namespace polyprime
