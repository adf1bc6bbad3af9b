#include <filesystem>
#include <set>

#include "doctest.h"
#include "polyprime/families.hpp"
#include "shapes.hpp"

using namespace polyprime;
using testshapes::frame3;
using testshapes::ring22;

namespace {

using Cells = std::vector<Cell>;

Cells row(Coord x0, Coord x1, Coord y) {
  Cells c;
  for (Coord x = x0; x <= x1; ++x) c.push_back({x, y});
  return c;
}

// Every free polyomino up to max cells, as canonical forms grown one cell at a time.
std::vector<std::set<Cells>> free_polyominoes(std::size_t max) {
  std::vector<std::set<Cells>> by_size(max + 1);
  by_size[1].insert({{0, 0}});
  for (std::size_t n = 2; n <= max; ++n)
    for (const Cells& cs : by_size[n - 1]) {
      std::set<Cell> have(cs.begin(), cs.end());
      for (Cell c : cs)
        for (Cell d : {Cell{c.x + 1, c.y}, Cell{c.x - 1, c.y}, Cell{c.x, c.y + 1}, Cell{c.x, c.y - 1}}) {
          if (have.count(d)) continue;
          Cells next = cs;
          next.push_back(d);
          by_size[n].insert(canonical_form(Polyomino(next)));
        }
    }
  return by_size;
}

// Cycle of cells, each with two neighbours, where cells more than two steps
// apart along the cycle do not even share a corner.
bool naive_closed_path(const Cells& cs) {
  if (cs.size() < 6) return false;  // the 2x2 square is a 4-cycle but encloses nothing
  std::set<Cell> have(cs.begin(), cs.end());
  auto nbrs = [&](Cell c) {
    Cells out;
    for (Cell d : {Cell{c.x + 1, c.y}, Cell{c.x - 1, c.y}, Cell{c.x, c.y + 1}, Cell{c.x, c.y - 1}})
      if (have.count(d)) out.push_back(d);
    return out;
  };
  for (Cell c : cs)
    if (nbrs(c).size() != 2) return false;
  Cells cyc{cs.front()};
  Cell prev = cs.front(), cur = nbrs(cs.front())[0];
  while (cur != cs.front()) {
    cyc.push_back(cur);
    Cells nb = nbrs(cur);
    Cell next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  const std::size_t n = cyc.size();
  if (n != cs.size()) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t d = std::min(j - i, n - (j - i));
      if (d <= 2) continue;
      if (std::abs(cyc[i].x - cyc[j].x) <= 1 && std::abs(cyc[i].y - cyc[j].y) <= 1) return false;
    }
  return true;
}

// Minimal P(S,C): a straight S, a two-cell C and two triminoes.
FamilyInstance straight_psc() {
  return build_psc(row(0, 5, 0), {{2, 2}, {3, 2}}, {{0, 1}, {0, 2}, {1, 2}}, {{5, 1}, {5, 2}, {4, 2}});
}

// C turns twice, so it has L-configurations.
FamilyInstance bent_psc() {
  return build_psc(row(0, 6, 0), {{2, 2}, {2, 3}, {2, 4}, {3, 4}, {4, 4}, {4, 3}, {4, 2}}, {{0, 1}, {0, 2}, {1, 2}},
                   {{6, 1}, {6, 2}, {5, 2}});
}

FamilyInstance small_l_rectangle() {
  return build_l_rectangle(4, 2, {{1, 2}, {1, 3}, {1, 4}}, row(1, 3, 5), {{3, 4}, {3, 3}, {3, 2}});
}

FamilyInstance side_l_rectangle() {
  return build_l_rectangle(5, 3, {{1, 3}, {1, 4}, {1, 5}}, row(1, 5, 6), {{5, 5}, {5, 4}, {5, 3}, {5, 2}});
}

FamilyInstance small_ladder_rectangle() {
  return build_ladder_rectangle(4, 2, {{1, 2}, {0, 2}, {0, 3}, {-1, 3}, {-1, 4}, {-1, 5}}, row(-1, 3, 6),
                                {{3, 5}, {3, 4}, {3, 3}, {3, 2}});
}

bool simple_cells(const Cells& cs) {
  // Each component has no hole.
  std::set<Cell> left(cs.begin(), cs.end());
  while (!left.empty()) {
    Cells comp{*left.begin()};
    left.erase(left.begin());
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (Cell d : {Cell{comp[i].x + 1, comp[i].y}, Cell{comp[i].x - 1, comp[i].y}, Cell{comp[i].x, comp[i].y + 1},
                     Cell{comp[i].x, comp[i].y - 1}})
        if (left.erase(d)) comp.push_back(d);
    if (!is_simple(Polyomino(comp))) return false;
  }
  return true;
}

int clause_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConditionViolated& e) {
    return e.clause();
  }
  return -1;
}

}  // namespace

TEST_CASE("closed path enumeration") {
  auto paths = enumerate_closed_paths(12);
  std::map<std::size_t, std::size_t> per_rank;
  for (const Polyomino& p : paths) ++per_rank[p.rank()];
  CHECK(per_rank[8] == 1);
  CHECK(canonical_polyomino(frame3()) == paths.front());
  for (auto [r, n] : per_rank) CHECK(r % 2 == 0);

  SUBCASE("agrees with brute force over all polyominoes") {
    auto all = free_polyominoes(12);
    std::set<Cells> expect;
    for (std::size_t n = 1; n <= 12; ++n)
      for (const Cells& cs : all[n])
        if (naive_closed_path(cs)) expect.insert(cs);
    std::set<Cells> got;
    for (const Polyomino& p : paths) got.insert(p.cells());
    CHECK(got == expect);
    CHECK(all[8].size() == 369);  // free octominoes
  }

  SUBCASE("ordering and threads") {
    for (std::size_t i = 1; i < paths.size(); ++i) CHECK(paths[i - 1].rank() <= paths[i].rank());
    auto big = enumerate_closed_paths(16);
    CHECK(enumerate_closed_paths(16, 4) == big);
    for (const Polyomino& p : big) CHECK(closed_path_certificate(p));
  }
}

TEST_CASE("canonical forms") {
  Polyomino r = ring22();
  Cells cf = canonical_form(r);
  CHECK(canonical_form(Polyomino(cf)) == cf);
  for (const Symmetry& s : Symmetry::all()) CHECK(canonical_form(r.transformed(s).translated(3, -7)) == cf);
  CHECK(canonical_form(frame3()) != cf);
}

TEST_CASE("P(S,C)") {
  FamilyInstance a = straight_psc();
  CHECK(a.spec.kind == FamilySpec::Kind::PSC);
  CHECK(holes(a.polyomino).size() == 1);
  PrimalityVerdict va = certify_family(a.polyomino, a.spec);
  CHECK(va.kind == PrimalityVerdict::Kind::Inconclusive);
  CHECK(va.reason.rfind("NotCovered", 0) == 0);

  FamilyInstance b = bent_psc();
  CHECK(holes(b.polyomino).size() == 1);
  auto marked = family_marked_set(b.polyomino, b.spec);
  REQUIRE(!marked.empty());
  CHECK(check_containment(b.polyomino, toric_map_marked(b.polyomino, marked)));
  PrimalityVerdict vb = certify_family(b.polyomino, b.spec);
  CHECK(vb.kind == PrimalityVerdict::Kind::Prime);
  CHECK(vb.certificate == PrimalityVerdict::Certificate::FullEquality);

  SUBCASE("dropping two adjacent cells of C leaves no hole") {
    const Cells& c = b.spec.parts.at("C");
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      Cells rest;
      for (Cell x : b.polyomino.cells())
        if (x != c[i] && x != c[i + 1]) rest.push_back(x);
      CHECK(simple_cells(rest));
    }
  }

  SUBCASE("violations") {
    const Cells s = row(0, 5, 0), c{{2, 2}, {3, 2}}, t1{{0, 1}, {0, 2}, {1, 2}};
    // T2 moved right: nothing holds it to the rest.
    CHECK(clause_of([&] { build_psc(s, c, t1, {{6, 1}, {6, 2}, {5, 2}}); }) == 1);
    // C reaches the moved T2, but S does not.
    CHECK(clause_of([&] { build_psc(row(0, 5, 0), {{2, 2}, {3, 2}, {4, 2}}, t1, {{6, 1}, {6, 2}, {5, 2}}); }) == 3);
    // A bump on S touches C at its corners.
    Cells s_bump = s;
    s_bump.push_back({2, 1});
    CHECK(clause_of([&] { build_psc(s_bump, c, t1, {{5, 1}, {5, 2}, {4, 2}}); }) == 2);
    // T1 is not a trimino.
    CHECK(clause_of([&] { build_psc(s, c, {{0, 1}, {0, 2}}, {{5, 1}, {5, 2}, {4, 2}}); }) == 0);
  }
}

TEST_CASE("L-rectangles") {
  for (auto make : {small_l_rectangle, side_l_rectangle}) {
    FamilyInstance f = make();
    CHECK(f.spec.kind == FamilySpec::Kind::GoodLRectangle);
    CHECK(holes(f.polyomino).size() == 1);
    CHECK(check_good_l_rectangle(f.polyomino, f.spec));
    auto marked = family_marked_set(f.polyomino, f.spec);
    CHECK(check_containment(f.polyomino, toric_map_marked(f.polyomino, marked)));
    PrimalityVerdict v = certify_family(f.polyomino, f.spec);
    CHECK(v.kind == PrimalityVerdict::Kind::Prime);
    CHECK(v.certificate == PrimalityVerdict::Certificate::FullEquality);

    // Without R's marked columns and P1 the rest is simple.
    const Coord n = f.spec.n;
    Cells rest;
    const Cells& p1 = f.spec.parts.at("P1");
    for (Cell x : f.polyomino.cells()) {
      bool in_r = x.y >= 1 && x.y < n && (x.x == 1 || x.x == 2);
      bool in_p1 = std::find(p1.begin(), p1.end(), x) != p1.end();
      if (!in_r && !in_p1) rest.push_back(x);
    }
    CHECK(simple_cells(rest));
  }

  SUBCASE("violations") {
    // m too small.
    CHECK(clause_of([] { build_l_rectangle(3, 2, {{1, 2}, {1, 3}, {1, 4}}, row(1, 2, 5), {{2, 4}, {2, 3}, {2, 2}}); }) ==
          0);
    // P2 lands next to P1.
    CHECK(clause_of([] { build_l_rectangle(4, 2, {{1, 2}, {1, 3}, {1, 4}}, row(1, 3, 5), {{2, 4}, {2, 3}, {2, 2}}); }) ==
          2);
    // P2 ends beside R instead of on it.
    CHECK(clause_of([] {
            build_l_rectangle(4, 2, {{1, 2}, {1, 3}, {1, 4}}, row(1, 4, 5), {{4, 4}, {4, 3}, {4, 2}});
          }) == 6);
    // P1 leaves R sideways: C_2 is not above C_1.
    CHECK(clause_of([] {
            build_l_rectangle(4, 2, {{1, 2}, {0, 2}, {0, 3}, {0, 4}}, row(0, 3, 5), {{3, 4}, {3, 3}, {3, 2}});
          }) == 7);
  }
}

TEST_CASE("ladder-rectangles") {
  FamilyInstance f = small_ladder_rectangle();
  CHECK(f.spec.kind == FamilySpec::Kind::LadderRectangle);
  CHECK(holes(f.polyomino).size() == 1);
  CHECK(first_block_length(f.spec) == 2);
  auto marked = family_marked_set(f.polyomino, f.spec);
  CHECK(check_containment(f.polyomino, toric_map_marked(f.polyomino, marked)));
  PrimalityVerdict v = certify_family(f.polyomino, f.spec);
  CHECK(v.kind == PrimalityVerdict::Kind::Prime);
  CHECK(v.certificate == PrimalityVerdict::Certificate::FullEquality);

  // The same attachment on the right side is fine for an L-rectangle but
  // not for a ladder-rectangle.
  const Cells p1{{1, 2}, {0, 2}, {0, 3}, {-1, 3}, {-1, 4}, {-1, 5}};
  const Cells p2{{4, 5}, {5, 5}, {5, 4}, {5, 3}, {5, 2}, {5, 1}};
  CHECK(clause_of([&] { build_ladder_rectangle(5, 2, p1, row(-1, 4, 6), {{4, 5}, {4, 4}, {4, 3}, {4, 2}}); }) == -1);
  CHECK(clause_of([&] { build_ladder_rectangle(5, 2, p1, row(-1, 4, 6), p2); }) == 8);
  // A straight P1 has no ladder start.
  CHECK(clause_of([] {
          build_ladder_rectangle(4, 2, {{1, 2}, {1, 3}, {1, 4}}, row(1, 3, 5), {{3, 4}, {3, 3}, {3, 2}});
        }) == 7);
}

TEST_CASE("family specs round-trip through JSON") {
  for (auto make : {straight_psc, bent_psc, small_l_rectangle, side_l_rectangle, small_ladder_rectangle}) {
    FamilyInstance f = make();
    FamilySpec back = family_spec_from_json(nlohmann::json::parse(to_json(f.spec).dump()));
    FamilyInstance g = build_family(back);
    CHECK(g.polyomino == f.polyomino);
    CHECK(g.spec.kind == f.spec.kind);
    CHECK(to_json(g.spec) == to_json(f.spec));
  }
  CHECK_THROWS_AS(family_spec_from_json(nlohmann::json::parse(R"({"kind":"blob","parts":{}})")),
                  std::invalid_argument);
}

TEST_CASE("harness") {
  HarnessOptions o;
  o.max_rank = 12;
  HarnessReport r = verify_main_theorem(o);
  CHECK(r.counterexamples == 0);
  CHECK(r.records.size() == enumerate_closed_paths(12).size());
  CHECK(r.summary.at("shapes") == r.records.size());
  CHECK_FALSE(r.summary.contains("total_seconds"));
  CHECK(r.summary.at("minimal_zigzag_rank").is_null());

  auto dir = std::filesystem::temp_directory_path() / "polyprime-cache-test";
  std::filesystem::remove_all(dir);
  o.cache_dir = dir.string();
  HarnessReport cold = verify_main_theorem(o);
  HarnessReport warm = verify_main_theorem(o);
  CHECK(cold.cache_hits == 0);
  CHECK(warm.cache_hits == warm.records.size());
  CHECK(warm.records == cold.records);
  CHECK(warm.summary == r.summary);
  CHECK(cold.records == r.records);

  // A different budget is a different key.
  HarnessOptions p = o;
  p.certify.budget.max_pairs = 99;
  CHECK(cache_key(frame3(), p) != cache_key(frame3(), o));
  std::filesystem::remove_all(dir);

  SUBCASE("frame3 record") {
    nlohmann::json rec = examine_closed_path(frame3(), o);
    CHECK(rec.at("violations").empty());
    CHECK(rec.at("features").at("l_configurations") == 4);
  }
}
