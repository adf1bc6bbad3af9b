#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "polyprime/families.hpp"
#include "polyprime/toric.hpp"
#include "shapes.hpp"

using namespace polyprime;
using testshapes::frame3;
using testshapes::rectangle;

namespace {

Monomial mono(std::vector<Exponent> e) { return Monomial(std::move(e)); }
Binomial bin(std::vector<Exponent> a, std::vector<Exponent> b) { return {mono(std::move(a)), mono(std::move(b))}; }

ExponentMatrix twisted_cubic() { return ExponentMatrix::from_rows({{3, 2, 1, 0}, {0, 1, 2, 3}}); }

bool kernel_vector(const ExponentMatrix& m, const IntVector& u) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    mpz_class s = 0;
    for (std::size_t c = 0; c < m.cols; ++c) s += m.at(r, c) * u[c];
    if (s != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("integer kernel") {
  auto k = integer_kernel(ExponentMatrix::from_rows({{1, 1, 0}, {0, 1, 1}}));
  REQUIRE(k.size() == 1);
  IntVector u = k[0];
  if (u[0] < 0)
    for (auto& x : u) x = -x;
  CHECK(u == IntVector{1, -1, 1});

  CHECK(integer_kernel(ExponentMatrix::from_rows({{1, 0}, {0, 1}})).empty());

  std::mt19937 rng(1);
  for (int t = 0; t < 40; ++t) {
    std::size_t rows = 1 + rng() % 3, cols = 2 + rng() % 5;
    std::vector<std::vector<long>> e(rows, std::vector<long>(cols));
    for (auto& row : e)
      for (auto& x : row) x = static_cast<long>(rng() % 4);
    ExponentMatrix m = ExponentMatrix::from_rows(e);
    auto basis = integer_kernel(m);
    CHECK(basis.size() == cols - oracle::rank(m));
    for (const auto& u : basis) CHECK(kernel_vector(m, u));
  }
  auto tc = integer_kernel(twisted_cubic());
  CHECK(tc.size() == 2);
}

TEST_CASE("lattice basis ideal") {
  auto g = lattice_basis_ideal({IntVector{2, -1, 0, -1}});
  REQUIRE(g.size() == 1);
  CHECK(g[0] == bin({2, 0, 0, 0}, {0, 1, 0, 1}));
  CHECK_THROWS_AS(lattice_basis_ideal({IntVector{0, 0}}), std::invalid_argument);
}

TEST_CASE("twisted cubic") {
  ExponentMatrix m = twisted_cubic();
  GroebnerBasis g = toric_ideal(m);
  // a d - b c, b^2 - a c, c^2 - b d
  std::vector<Binomial> expect{bin({1, 0, 0, 1}, {0, 1, 1, 0}), bin({0, 2, 0, 0}, {1, 0, 1, 0}),
                               bin({0, 0, 2, 0}, {0, 1, 0, 1})};
  CHECK(g.generators.size() == 3);
  CHECK(ideal_equal(g.generators, expect, g.order));
  for (const Binomial& f : expect) {
    bool found = false;
    for (const Binomial& h : g.generators) found = found || h == f || h == Binomial{f.minus, f.plus};
    CHECK(found);
  }
  CHECK(oracle::kernel_gaps(m, g, 4) == 0);
  SUBCASE("without quadric seeding") {
    ToricOptions o;
    o.seed_quadrics = false;
    CHECK(toric_ideal(m, {}, o).generators == g.generators);
  }
}

TEST_CASE("rectangles: toric ideal equals the minor ideal") {
  for (int w = 1; w <= 3; ++w)
    for (int h = 1; h <= 3; ++h) {
      CAPTURE(w);
      CAPTURE(h);
      Polyomino p = rectangle(w, h);
      ToricMap phi = toric_map_marked(p, {});
      GroebnerBasis g = toric_ideal(phi);
      GroebnerBasis minors = buchberger(inner_minors(p, phi.source), g.order);
      CHECK(g.generators == minors.generators);
      CHECK(oracle::kernel_gaps(ExponentMatrix::of(phi), g, 4) == 0);
    }
}

TEST_CASE("saturation") {
  // (xz - xy) : x = (z - y)
  MonomialOrder o = MonomialOrder::degrevlex(3);
  auto s = saturate({bin({1, 0, 1}, {1, 1, 0})}, 0, o);
  GroebnerBasis g = buchberger(s, o);
  REQUIRE(g.generators.size() == 1);
  CHECK(ideal_equal(g.generators, {bin({0, 0, 1}, {0, 1, 0})}, o));
  CHECK_FALSE(is_saturated({bin({1, 0, 1}, {1, 1, 0})}, 0, o));
  CHECK(is_saturated(s, 0, o));
  CHECK(buchberger(saturate(s, 0, o), o).generators == g.generators);

  // Sign of the generators does not matter.
  CHECK(ideal_equal({bin({1, 0, 0}, {0, 1, 0})}, {bin({0, 1, 0}, {1, 0, 0})}, o));
}

TEST_CASE("saturation is idempotent on toric ideals") {
  std::vector<Polyomino> shapes{frame3(), rectangle(3, 2), Polyomino({{0, 0}, {1, 0}, {1, 1}})};
  for (const Polyomino& p : enumerate_closed_paths(12)) shapes.push_back(p);
  for (const Polyomino& p : shapes) {
    auto ls = find_l_configurations(p);
    ToricMap phi = ls.empty() ? toric_map_marked(p, {}) : toric_map_lconfig(p, ls.front());
    ExponentMatrix m = ExponentMatrix::of(phi);
    GroebnerBasis g = toric_ideal(m);
    for (const Binomial& f : g.generators) CHECK(in_kernel(m, f));
    for (std::size_t v = 0; v < m.cols; ++v) {
      CHECK(is_saturated(g.generators, v, g.order));
      CHECK(buchberger(saturate(g.generators, v, g.order), g.order).generators == g.generators);
    }
  }
}

TEST_CASE("frame3 is prime") {
  PrimalityVerdict v = certify_primality(frame3());
  CHECK(v.kind == PrimalityVerdict::Kind::Prime);
  CHECK(v.certificate == PrimalityVerdict::Certificate::FullEquality);
  CHECK(v.proof == PrimalityVerdict::Proof::LConfigToric);
  CHECK(v.generators == 20);
  CHECK(v.source_variables == 16);
  CHECK(v.target_variables == 9);

  ToricMap phi = toric_map_lconfig(frame3(), find_l_configurations(frame3()).front());
  GroebnerBasis g = toric_ideal(phi);
  CHECK(oracle::kernel_gaps(ExponentMatrix::of(phi), g, 4) == 0);

  SUBCASE("every feature gives the same verdict") {
    std::size_t n = find_l_configurations(frame3()).size();
    CHECK(n == 4);
    for (std::size_t k = 0; k < n; ++k) {
      CertifyOptions o;
      o.feature_choice = k;
      PrimalityVerdict w = certify_primality(frame3(), o);
      CHECK(w.kind == v.kind);
      CHECK(w.certificate == v.certificate);
    }
  }
}

TEST_CASE("results are deterministic") {
  ToricMap phi = toric_map_ladder(testshapes::ring22(), find_ladders(testshapes::ring22(), 3).front());
  CertifyOptions o;
  o.attempt_equality = false;
  auto a = to_json(certify_primality(testshapes::ring22(), o)).dump();
  auto b = to_json(certify_primality(testshapes::ring22(), o)).dump();
  CHECK(a == b);
  GroebnerBasis g1 = toric_ideal(ExponentMatrix::of(toric_map_lconfig(frame3(), find_l_configurations(frame3())[1])));
  GroebnerBasis g2 = toric_ideal(ExponentMatrix::of(toric_map_lconfig(frame3(), find_l_configurations(frame3())[1])));
  CHECK(g1.generators == g2.generators);
  CHECK(phi.marked.size() > 0);
}

TEST_CASE("budgets") {
  ToricMap phi = toric_map_lconfig(frame3(), find_l_configurations(frame3()).front());
  Budget b;
  b.max_pairs = 1;
  CHECK_THROWS_AS(toric_ideal(phi, b), BudgetExhausted);
  CertifyOptions o;
  o.budget.max_pairs = 1;
  PrimalityVerdict v = certify_primality(frame3(), o);
  CHECK(v.certificate == PrimalityVerdict::Certificate::ContainmentOnly);
  CHECK(v.containment);
}
