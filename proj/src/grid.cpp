#include "esdl/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "esdl/parallel.hpp"

namespace esdl {

GridSpec GridSpec::from_bounds(double x0, double x1, double y0, double y1, int px_w, int px_h) {
  GridSpec g;
  g.center = {0.5 * (x0 + x1), 0.5 * (y0 + y1)};
  g.half_width = 0.5 * (x1 - x0);
  g.half_height = 0.5 * (y1 - y0);
  g.px_w = px_w;
  g.px_h = px_h;
  return g;
}

void GridSpec::validate() const {
  if (px_w < 16 || px_w > 16384 || px_h < 16 || px_h > 16384)
    throw std::invalid_argument("grid resolution must lie in [16, 16384]");
  if (!(half_width > 0.0) || !(half_height > 0.0))
    throw std::invalid_argument("grid half extents must be positive");
}

Complex GridSpec::point(int i, int j) const {
  const double ox = static_cast<double>(2 * i + 1 - px_w) / px_w * half_width;
  const double oy = static_cast<double>(px_h - 2 * j - 1) / px_h * half_height;
  return center + Complex(ox, oy);
}

std::size_t GridSpec::nearest_index(Complex z) const {
  const Complex d = z - center;
  const double fi = (d.real() / (2.0 * half_width) + 0.5) * px_w - 0.5;
  const double fj = (0.5 - d.imag() / (2.0 * half_height)) * px_h - 0.5;
  const int i = std::clamp(static_cast<int>(std::lround(fi)), 0, px_w - 1);
  const int j = std::clamp(static_cast<int>(std::lround(fj)), 0, px_h - 1);
  return index(i, j);
}

ClassificationGrid classify_grid(const GridSpec& grid, int budget, const OrbitFn& orbit, unsigned threads,
                                 int tile) {
  grid.validate();
  if (tile < 1)
    throw std::invalid_argument("tile size must be positive");
  ClassificationGrid out;
  out.width = grid.px_w;
  out.height = grid.px_h;
  out.budget = budget;
  out.cells.assign(grid.size(), OrbitClass::Undetermined);
  out.entry.assign(grid.size(), -1);

  const int tiles_x = (grid.px_w + tile - 1) / tile;
  const int tiles_y = (grid.px_h + tile - 1) / tile;
  parallel_for(
      static_cast<std::size_t>(tiles_x) * tiles_y,
      [&](std::size_t t) {
        const int tx = static_cast<int>(t % tiles_x);
        const int ty = static_cast<int>(t / tiles_x);
        const int i_end = std::min(grid.px_w, (tx + 1) * tile);
        const int j_end = std::min(grid.px_h, (ty + 1) * tile);
        for (int j = ty * tile; j < j_end; ++j)
          for (int i = tx * tile; i < i_end; ++i) {
            const OrbitRecord rec = orbit(grid.point(i, j));
            const std::size_t idx = grid.index(i, j);
            out.cells[idx] = rec.verdict;
            out.entry[idx] = rec.escape_entry ? static_cast<std::int16_t>(*rec.escape_entry) : std::int16_t{-1};
          }
      },
      threads);
  return out;
}

ClassificationGrid classify_grid(const OrbitContext& ctx, const GridSpec& grid, unsigned threads, int tile) {
  return classify_grid(
      grid, ctx.budget, [&ctx](Complex z) { return classify_orbit(ctx, z); }, threads, tile);
}

}  // namespace esdl
