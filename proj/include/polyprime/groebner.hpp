#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyprime/algebra.hpp"

namespace polyprime {

/// Resource limits for one Groebner computation; zero means unlimited.
struct Budget {
  std::uint64_t max_pairs = 0;
  std::uint64_t max_degree = 0;  // total degree of an S-pair lcm
  double max_seconds = 0;
};

class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted(const std::string& limit, std::vector<Binomial> partial);
  const std::string& limit() const { return limit_; }  // "pairs", "degree" or "seconds"
  const std::vector<Binomial>& partial() const { return partial_; }

 private:
  std::string limit_;
  std::vector<Binomial> partial_;
};

/// Wall-clock deadline shared by the stages of a longer computation.
class Deadline {
 public:
  explicit Deadline(double seconds = 0);
  bool expired() const;
  double remaining() const;  // seconds; infinity when unlimited

 private:
  bool limited_;
  std::chrono::steady_clock::time_point end_;
};

struct GroebnerStats {
  std::uint64_t pairs = 0;       // S-pairs reduced
  std::uint64_t skipped = 0;     // pairs removed by the criteria
  std::uint64_t reductions = 0;  // single rewriting steps
};

struct GroebnerBasis {
  std::vector<Binomial> generators;  // oriented, plus = leading monomial
  MonomialOrder order;
  bool reduced = false;
  GroebnerStats stats;
};

/// Reduced Groebner basis of the binomial ideal generated by gens. The
/// result lists generators by decreasing leading monomial, so equal ideals
/// give identical bases. Throws BudgetExhausted.
GroebnerBasis buchberger(const std::vector<Binomial>& gens, const MonomialOrder& order, const Budget& budget = {},
                         const Deadline& deadline = Deadline());

/// Normal form of m modulo a Groebner basis.
Monomial normal_form(const GroebnerBasis& g, const Monomial& m);
/// True when f reduces to zero modulo g.
bool reduces_to_zero(const GroebnerBasis& g, const Binomial& f);

/// Generators of (I : x_var^infinity): a Groebner basis with x_var last,
/// each element divided by its largest x_var power. Requires the ideal to be
/// homogeneous for the order's weights.
std::vector<Binomial> saturate(const std::vector<Binomial>& gens, std::size_t var, const MonomialOrder& order,
                               const Budget& budget = {}, const Deadline& deadline = Deadline());

/// Whether I : x_var = I, read off a Groebner basis with x_var last.
bool is_saturated(const std::vector<Binomial>& gens, std::size_t var, const MonomialOrder& order,
                  const Budget& budget = {}, const Deadline& deadline = Deadline());

/// Divides both terms by their gcd.
Binomial remove_common_factor(const Binomial& f);

}  // namespace polyprime
