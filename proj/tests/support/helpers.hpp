#pragma once

#include <random>

#include "oracles.hpp"
#include "uasdetect/mask.hpp"

namespace testutil {

inline oracle::Grid to_grid(const uasdetect::BinaryMask& m) {
  oracle::Grid g(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) g.set(x, y, m.get(x, y));
  return g;
}

inline uasdetect::BinaryMask to_mask(const oracle::Grid& g) {
  uasdetect::BinaryMask m(g.w, g.h);
  for (int y = 0; y < g.h; ++y)
    for (int x = 0; x < g.w; ++x) m.set(x, y, g.at(x, y) != 0);
  return m;
}

// Random mask of random size within [1, max_side]^2 and random density.
inline uasdetect::BinaryMask random_mask(std::mt19937_64& rng, int max_side) {
  std::uniform_int_distribution<int> side(1, max_side);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int w = side(rng);
  const int h = side(rng);
  const double density = unit(rng);
  uasdetect::BinaryMask m(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) m.set(x, y, unit(rng) < density);
  return m;
}

}  // namespace testutil
