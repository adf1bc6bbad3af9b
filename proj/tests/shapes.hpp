#pragma once

#include <random>
#include <vector>

#include "polyprime/grid.hpp"

namespace testshapes {

using polyprime::Cell;
using polyprime::Polyomino;

inline Polyomino rectangle(int w, int h, int x0 = 0, int y0 = 0) {
  std::vector<Cell> cells;
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < h; ++y) cells.push_back({x0 + x, y0 + y});
  return Polyomino(cells);
}

inline Polyomino frame3() {
  return Polyomino({{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}});
}

// Closed path without L-configurations.
inline Polyomino ring22() {
  return Polyomino({{1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}, {0, 1}, {1, 1}, {5, 1}, {6, 1}, {0, 2}, {6, 2},
                    {0, 3}, {1, 3}, {6, 3}, {1, 4}, {2, 4}, {3, 4}, {5, 4}, {6, 4}, {3, 5}, {4, 5}, {5, 5}});
}

inline Polyomino domino() { return Polyomino({{0, 0}, {1, 0}}); }

// Random polyomino grown cell by cell from the origin.
inline Polyomino random_polyomino(std::mt19937& rng, int n) {
  std::vector<Cell> cells{{0, 0}};
  while (static_cast<int>(cells.size()) < n) {
    Cell c = cells[rng() % cells.size()];
    static const int d[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    int k = rng() % 4;
    Cell nb{c.x + d[k][0], c.y + d[k][1]};
    bool seen = false;
    for (Cell e : cells) seen = seen || e == nb;
    if (!seen) cells.push_back(nb);
  }
  return Polyomino(cells);
}

}  // namespace testshapes
