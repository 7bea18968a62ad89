#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "esdl/orbit_classifier.hpp"

namespace esdl {

// Rectangular viewport sampled at pixel centres, row 0 at the top.
struct GridSpec {
  Complex center{0.0, 0.0};
  double half_width = 1.0;
  double half_height = 1.0;
  int px_w = 16;
  int px_h = 16;

  // From corner bounds [x0, x1] x [y0, y1].
  static GridSpec from_bounds(double x0, double x1, double y0, double y1, int px_w, int px_h);

  // Throws std::invalid_argument unless 16 <= px_w, px_h <= 16384 and the
  // half extents are positive.
  void validate() const;

  // center + ((i + 0.5)/w - 0.5) 2 hw + i ((0.5 - (j + 0.5)/h) 2 hh). The
  // offsets are formed from odd integers so mirrored pixels map to exactly
  // negated offsets.
  Complex point(int i, int j) const;

  double pixel_dx() const { return 2.0 * half_width / px_w; }
  double pixel_dy() const { return 2.0 * half_height / px_h; }
  std::size_t size() const { return static_cast<std::size_t>(px_w) * static_cast<std::size_t>(px_h); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * px_w + i; }

  // Pixel whose centre is nearest to z (clamped to the grid).
  std::size_t nearest_index(Complex z) const;
};

struct ClassificationGrid {
  int width = 0;
  int height = 0;
  int budget = 0;
  std::vector<OrbitClass> cells;    // row-major
  std::vector<std::int16_t> entry;  // escape entry, -1 when absent

  OrbitClass at(int i, int j) const { return cells[static_cast<std::size_t>(j) * width + i]; }
  bool operator==(const ClassificationGrid&) const = default;
};

using OrbitFn = std::function<OrbitRecord(Complex)>;

inline constexpr int kDefaultTile = 64;

// Classifies every pixel centre in tiles of tile x tile pixels spread over a
// worker pool. Each pixel is written by exactly one task, so the result does
// not depend on scheduling or thread count.
ClassificationGrid classify_grid(const GridSpec& grid, int budget, const OrbitFn& orbit, unsigned threads = 0,
                                 int tile = kDefaultTile);
ClassificationGrid classify_grid(const OrbitContext& ctx, const GridSpec& grid, unsigned threads = 0,
                                 int tile = kDefaultTile);

}  // namespace esdl
