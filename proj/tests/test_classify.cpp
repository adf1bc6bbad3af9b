#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "polyprime/classify.hpp"
#include "shapes.hpp"

using namespace polyprime;
using testshapes::frame3;
using testshapes::rectangle;
using testshapes::ring22;

namespace {

// Oracle: every 5-cell walk in p accepted by the definition, as unordered sets.
std::set<std::set<Cell>> l_config_oracle(const Polyomino& p) {
  std::set<std::set<Cell>> out;
  std::vector<Cell> walk;
  auto rec = [&](auto&& self) -> void {
    if (walk.size() == 5) {
      LConfiguration l;
      std::copy(walk.begin(), walk.end(), l.cells.begin());
      if (is_l_configuration(p, l)) out.insert(std::set<Cell>(walk.begin(), walk.end()));
      return;
    }
    for (const Cell& c : walk.empty() ? p.cells() : p.neighbours(walk.back())) {
      if (std::find(walk.begin(), walk.end(), c) != walk.end()) continue;
      walk.push_back(c);
      self(self);
      walk.pop_back();
    }
  };
  rec(rec);
  return out;
}

std::set<std::set<Cell>> as_sets(const std::vector<LConfiguration>& ls) {
  std::set<std::set<Cell>> out;
  for (const auto& l : ls) out.insert(std::set<Cell>(l.cells.begin(), l.cells.end()));
  return out;
}

std::optional<Edge> contact_oracle(const Block& a, const Block& b) {
  std::vector<Point> common;
  for (Point v : a.vertices())
    for (Point w : b.vertices())
      if (v == w) common.push_back(v);
  if (common.size() != 2) return std::nullopt;
  if (std::abs(common[0].x - common[1].x) + std::abs(common[0].y - common[1].y) != 1) return std::nullopt;
  return make_edge(common[0], common[1]);
}

// Oracle: grow every chain of maximal blocks by trying all blocks at the end
// and validating with is_ladder; keep chains no block can extend at either end.
std::set<std::vector<Block>> ladder_oracle(const Polyomino& p, std::size_t min_steps) {
  std::set<std::vector<Block>> found;
  for (Orientation o : {Orientation::Horizontal, Orientation::Vertical}) {
    auto all = maximal_blocks(p, o);
    auto make = [&](const std::vector<Block>& bs) {
      Ladder l{o, bs, {}};
      for (std::size_t i = 0; i + 1 < bs.size(); ++i) {
        auto e = contact_oracle(bs[i], bs[i + 1]);
        if (!e) return std::optional<Ladder>{};
        l.contacts.push_back(*e);
      }
      return is_ladder(p, l) ? std::optional<Ladder>(l) : std::nullopt;
    };
    auto maximal = [&](const std::vector<Block>& bs) {
      for (const Block& b : all) {
        auto front = bs, back = bs;
        front.insert(front.begin(), b);
        back.push_back(b);
        if (make(front) || make(back)) return false;
      }
      return true;
    };
    std::vector<Block> chain;
    auto rec = [&](auto&& self) -> void {
      if (chain.size() >= 2 && maximal(chain) && chain.size() >= min_steps) {
        auto key = chain;
        if (key.front().cells.front() > key.back().cells.front()) std::reverse(key.begin(), key.end());
        found.insert(key);
      }
      for (const Block& b : all) {
        chain.push_back(b);
        if (chain.size() == 1 || make(chain)) self(self);
        chain.pop_back();
      }
    };
    rec(rec);
  }
  return found;
}

std::set<std::vector<Block>> ladder_keys(const std::vector<Ladder>& ls) {
  std::set<std::vector<Block>> out;
  for (const auto& l : ls) out.insert(l.blocks);
  return out;
}

}  // namespace

TEST_CASE("closed path certificates") {
  auto c = closed_path_certificate(frame3());
  REQUIRE(c);
  CHECK(c->cycle.size() == 8);
  CHECK(c->cycle.front() == Cell{0, 0});
  CHECK(is_closed_path_cycle(c->cycle));
  CHECK_FALSE(closed_path_certificate(rectangle(2, 2)));
  CHECK_FALSE(closed_path_certificate(rectangle(3, 2)));
  auto r = closed_path_certificate(ring22());
  REQUIRE(r);
  CHECK(r->cycle.size() == 22);
  CHECK(is_closed_path_cycle(r->cycle));
  // 2x3 ring of six cells is a cycle but violates the vertex condition.
  std::vector<Cell> six{{0, 0}, {1, 0}, {1, 1}, {1, 2}, {0, 2}, {0, 1}};
  CHECK_FALSE(is_closed_path_cycle(six));
}

TEST_CASE("L-configurations") {
  auto fl = find_l_configurations(frame3());
  CHECK(fl.size() == 4);
  for (const auto& l : fl) CHECK(is_l_configuration(frame3(), l));
  CHECK(find_l_configurations(ring22()).empty());
  CHECK(find_l_configurations(rectangle(5, 1)).empty());
  CHECK(as_sets(fl) == l_config_oracle(frame3()));
  std::mt19937 rng(21);
  for (int t = 0; t < 60; ++t) {
    Polyomino p = testshapes::random_polyomino(rng, 5 + rng() % 9);
    auto found = find_l_configurations(p);
    CHECK(as_sets(found) == l_config_oracle(p));
    CHECK(as_sets(found).size() == found.size());
  }
}

TEST_CASE("ladders") {
  auto rl = find_ladders(ring22(), 3);
  std::vector<Block> expected{{Orientation::Horizontal, {{0, 3}, {1, 3}}},
                              {Orientation::Horizontal, {{1, 4}, {2, 4}, {3, 4}}},
                              {Orientation::Horizontal, {{3, 5}, {4, 5}, {5, 5}}}};
  bool seen = false;
  for (const auto& l : rl) {
    CHECK(is_ladder(ring22(), l));
    CHECK(is_maximal_ladder(ring22(), l));
    if (l.blocks == expected) {
      seen = true;
      CHECK(l.contacts[0] == make_edge({1, 4}, {2, 4}));
      CHECK(l.contacts[1] == make_edge({3, 5}, {4, 5}));
    }
  }
  CHECK(seen);
  CHECK(find_ladders(frame3(), 3).empty());
  for (int n = 2; n <= 5; ++n) CHECK(find_ladders(rectangle(n, 2), 2).empty());
  CHECK(ladder_keys(rl) == ladder_oracle(ring22(), 3));
  CHECK(ladder_keys(find_ladders(ring22(), 2)) == ladder_oracle(ring22(), 2));
  std::mt19937 rng(4);
  for (int t = 0; t < 60; ++t) {
    Polyomino p = testshapes::random_polyomino(rng, 6 + rng() % 10);
    CHECK(ladder_keys(find_ladders(p, 2)) == ladder_oracle(p, 2));
  }
}

TEST_CASE("blocks of given length") {
  CHECK(has_block_of_length(frame3(), 3));
  CHECK_FALSE(has_block_of_length(testshapes::domino(), 3));
  CHECK(has_block_of_length(ring22(), 5));
  CHECK_FALSE(has_block_of_length(ring22(), 6));
}

TEST_CASE("open paths") {
  auto s = open_path_certificate(rectangle(4, 1));
  REQUIRE(s);
  CHECK(s->cells.size() == 4);
  CHECK_FALSE(open_path_certificate(frame3()));
  auto st = open_path_certificate(Polyomino({{0, 0}, {1, 0}, {1, 1}, {2, 1}}));
  REQUIRE(st);
  CHECK(st->cells == std::vector<Cell>{{0, 0}, {1, 0}, {1, 1}, {2, 1}});
  CHECK(s->free_edges_first().size() == 3);
  CHECK(s->free_edges_last().size() == 3);
  // U shape: the two arms touch at corners two steps apart only.
  CHECK_FALSE(open_path_certificate(Polyomino({{0, 1}, {0, 0}, {1, 0}, {2, 0}, {2, 1}, {1, 2}, {2, 2}, {0, 2}})));
}

TEST_CASE("triminoes") {
  auto t = trimino_certificate(Polyomino({{0, 0}, {1, 0}, {1, 1}}));
  REQUIRE(t);
  CHECK(t->cells[1] == Cell{1, 0});
  // The common vertex is (1,1); each end cell's hooking vertex is its opposite corner.
  CHECK(t->hooking_vertices[0] == Point{0, 0});
  CHECK(t->hooking_vertices[1] == Point{2, 2});
  for (int k = 0; k < 2; ++k)
    for (const Edge& e : t->hooking_edges[k])
      CHECK((e.from == t->hooking_vertices[k] || e.to == t->hooking_vertices[k]));
  CHECK_FALSE(trimino_certificate(rectangle(3, 1)));
  CHECK_FALSE(trimino_certificate(rectangle(2, 2)));
  // All four orientations.
  for (const Symmetry& s : Symmetry::all()) {
    Polyomino q = Polyomino({{0, 0}, {1, 0}, {1, 1}}).transformed(s);
    auto tq = trimino_certificate(q);
    REQUIRE(tq);
    for (Point h : tq->hooking_vertices) {
      int touching = 0;
      for (const Cell& c : q.cells()) touching += c.has_vertex(h);
      CHECK(touching == 1);
    }
  }
}

TEST_CASE("classifiers are equivariant under lattice symmetries") {
  std::vector<Polyomino> shapes{frame3(), ring22()};
  std::mt19937 rng(17);
  for (int t = 0; t < 20; ++t) shapes.push_back(testshapes::random_polyomino(rng, 8 + rng() % 8));
  for (const Polyomino& p : shapes)
    for (const Symmetry& s : Symmetry::all()) {
      Polyomino q = p.transformed(s);
      std::set<std::set<Cell>> image;
      for (const auto& l : find_l_configurations(p)) {
        std::set<Cell> cs;
        for (const Cell& c : l.cells) cs.insert(s.apply(c));
        image.insert(cs);
      }
      CHECK(image == as_sets(find_l_configurations(q)));
      std::set<std::set<Cell>> lad_p, lad_q;
      for (const auto& l : find_ladders(p, 2)) {
        std::set<Cell> cs;
        for (const auto& b : l.blocks)
          for (const Cell& c : b.cells) cs.insert(s.apply(c));
        lad_p.insert(cs);
      }
      for (const auto& l : find_ladders(q, 2)) {
        std::set<Cell> cs;
        for (const auto& b : l.blocks) cs.insert(b.cells.begin(), b.cells.end());
        lad_q.insert(cs);
      }
      CHECK(lad_p == lad_q);
      CHECK(closed_path_certificate(p).has_value() == closed_path_certificate(q).has_value());
      CHECK(holes(p).size() == holes(q).size());
    }
}
