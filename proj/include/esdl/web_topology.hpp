#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "esdl/grid.hpp"

namespace esdl {

class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RingReport {
  // Each ring is a closed 8-connected loop of FAST_ESCAPING pixels, listed in
  // boundary-tracing order, that separates the origin pixel from the frame.
  std::vector<std::vector<std::size_t>> rings;
  // Mean distance of each ring from the origin pixel, in pixels (increasing).
  std::vector<double> mean_radius_px;
  int nested_count = 0;
};

// Counts nested loops of FAST_ESCAPING pixels around origin_index.
//
// Walls are FAST_ESCAPING pixels off the frame; the origin pixel is never a
// wall. A 0-1 breadth-first search gives each pixel the least number of wall
// pixels crossed by a 4-connected path from the origin; the maximal number of
// disjoint nested wall loops equals that count at the frame. Ring k is the
// set of walls at depth k touching depth k-1, traced as the outer contour of
// {depth < k} plus the ring itself.
//
// Throws DegenerateError if every pixel has the same class.
RingReport spider_rings(const ClassificationGrid& grid, std::size_t origin_index);

// True when the frame is unreachable from origin_index by 4-connected steps
// that avoid the given pixels.
bool separates_from_frame(int width, int height, const std::vector<std::size_t>& walls,
                          std::size_t origin_index);

// True when FAST_ESCAPING pixels contain a 4-connected chain joining the left
// and right columns.
bool fast_crosses_left_to_right(const ClassificationGrid& grid);

// Classifies the window (which must lie inside the strip R(k) with Re z > 0)
// and reports whether fast-escaping pixels cross it from left to right:
// numerical evidence of a hair running through the strip.
bool strip_hair_presence(const OrbitContext& ctx, int k, const GridSpec& grid, unsigned threads = 0);
bool strip_hair_presence(const FamilyParams& params, int k, const GridSpec& grid, int budget,
                         unsigned threads = 0);

// Window Re in [x_lo, x_hi] spanning the strip R(k) without touching its
// edges (pixel centres stay strictly inside).
GridSpec strip_window(int k, double x_lo, double x_hi, int px_w, int px_h);

}  // namespace esdl
