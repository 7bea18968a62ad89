#include "esdl/web_topology.hpp"

#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

#include "esdl/plane_geometry.hpp"

namespace esdl {

namespace {

constexpr int kUnset = std::numeric_limits<int>::max();

struct Lattice {
  int w;
  int h;

  bool on_frame(std::size_t idx) const {
    const int i = static_cast<int>(idx % w);
    const int j = static_cast<int>(idx / w);
    return i == 0 || j == 0 || i == w - 1 || j == h - 1;
  }

  template <class Fn>
  void for_each_4(std::size_t idx, Fn&& fn) const {
    const int i = static_cast<int>(idx % w);
    const int j = static_cast<int>(idx / w);
    if (i > 0)
      fn(idx - 1);
    if (i + 1 < w)
      fn(idx + 1);
    if (j > 0)
      fn(idx - w);
    if (j + 1 < h)
      fn(idx + w);
  }
};

// Clockwise in image coordinates (y down), starting west.
constexpr std::array<std::array<int, 2>, 8> kMoore{{{-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}}};

int moore_index(int dx, int dy) {
  for (int d = 0; d < 8; ++d)
    if (kMoore[d][0] == dx && kMoore[d][1] == dy)
      return d;
  return 0;
}

// Moore-neighbour tracing with Jacob's stopping criterion. The region must
// not touch the grid frame.
template <class InRegion>
std::vector<std::size_t> trace_outer_contour(const Lattice& lat, std::size_t start, InRegion&& in_region) {
  std::vector<std::size_t> contour{start};
  int ci = static_cast<int>(start % lat.w);
  int cj = static_cast<int>(start / lat.w);
  const int si = ci;
  const int sj = cj;
  int bi = ci - 1;
  int bj = cj;
  const int start_bi = bi;
  const int start_bj = bj;
  const std::size_t limit = 8 * static_cast<std::size_t>(lat.w) * lat.h;
  for (std::size_t iter = 0; iter < limit; ++iter) {
    const int from = moore_index(bi - ci, bj - cj);
    bool found = false;
    for (int step = 1; step <= 8; ++step) {
      const auto& d = kMoore[(from + step) % 8];
      const int ni = ci + d[0];
      const int nj = cj + d[1];
      if (in_region(static_cast<std::size_t>(nj) * lat.w + ni)) {
        const auto& back = kMoore[(from + step - 1) % 8];
        bi = ci + back[0];
        bj = cj + back[1];
        ci = ni;
        cj = nj;
        found = true;
        break;
      }
    }
    if (!found)
      break;
    if (ci == si && cj == sj && bi == start_bi && bj == start_bj)
      break;
    contour.push_back(static_cast<std::size_t>(cj) * lat.w + ci);
  }
  return contour;
}

}  // namespace

RingReport spider_rings(const ClassificationGrid& grid, std::size_t origin_index) {
  const std::size_t n = grid.cells.size();
  if (n == 0 || origin_index >= n)
    throw std::invalid_argument("spider_rings: origin index outside the grid");
  bool uniform = true;
  for (std::size_t i = 1; i < n && uniform; ++i)
    uniform = grid.cells[i] == grid.cells[0];
  if (uniform)
    throw DegenerateError("spider_rings: grid is entirely one class");

  const Lattice lat{grid.width, grid.height};
  auto wall = [&](std::size_t idx) {
    return idx != origin_index && !lat.on_frame(idx) && grid.cells[idx] == OrbitClass::FastEscaping;
  };

  std::vector<int> depth(n, kUnset);
  std::deque<std::size_t> queue;
  depth[origin_index] = 0;
  queue.push_back(origin_index);
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    const int dx = depth[x];
    lat.for_each_4(x, [&](std::size_t y) {
      const int cost = wall(y) ? 1 : 0;
      if (dx + cost < depth[y]) {
        depth[y] = dx + cost;
        if (cost == 0)
          queue.push_front(y);
        else
          queue.push_back(y);
      }
    });
  }

  int nested = kUnset;
  for (std::size_t idx = 0; idx < n; ++idx)
    if (lat.on_frame(idx))
      nested = std::min(nested, depth[idx]);
  if (nested == kUnset)
    nested = 0;

  RingReport report;
  report.nested_count = nested;
  const int ow = static_cast<int>(origin_index % lat.w);
  const int oh = static_cast<int>(origin_index / lat.w);
  for (int k = 1; k <= nested; ++k) {
    auto in_ring = [&](std::size_t idx) {
      if (depth[idx] != k || !wall(idx))
        return false;
      bool touches = false;
      lat.for_each_4(idx, [&](std::size_t y) { touches = touches || depth[y] == k - 1; });
      return touches;
    };
    auto in_region = [&](std::size_t idx) { return depth[idx] < k || in_ring(idx); };
    std::size_t start = 0;
    while (start < n && !in_region(start))
      ++start;
    std::vector<std::size_t> loop = trace_outer_contour(lat, start, in_region);
    double sum = 0.0;
    for (std::size_t idx : loop)
      sum += std::hypot(static_cast<double>(static_cast<int>(idx % lat.w) - ow),
                        static_cast<double>(static_cast<int>(idx / lat.w) - oh));
    report.mean_radius_px.push_back(loop.empty() ? 0.0 : sum / static_cast<double>(loop.size()));
    report.rings.push_back(std::move(loop));
  }
  return report;
}

bool separates_from_frame(int width, int height, const std::vector<std::size_t>& walls, std::size_t origin_index) {
  const Lattice lat{width, height};
  std::vector<char> blocked(static_cast<std::size_t>(width) * height, 0);
  for (std::size_t w : walls)
    blocked[w] = 1;
  if (blocked[origin_index])
    return false;
  std::vector<char> seen(blocked.size(), 0);
  std::deque<std::size_t> queue{origin_index};
  seen[origin_index] = 1;
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    if (lat.on_frame(x))
      return false;
    lat.for_each_4(x, [&](std::size_t y) {
      if (!seen[y] && !blocked[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    });
  }
  return true;
}

bool fast_crosses_left_to_right(const ClassificationGrid& grid) {
  const Lattice lat{grid.width, grid.height};
  std::vector<char> seen(grid.cells.size(), 0);
  std::deque<std::size_t> queue;
  for (int j = 0; j < grid.height; ++j) {
    const std::size_t idx = static_cast<std::size_t>(j) * grid.width;
    if (grid.cells[idx] == OrbitClass::FastEscaping) {
      seen[idx] = 1;
      queue.push_back(idx);
    }
  }
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    if (static_cast<int>(x % grid.width) == grid.width - 1)
      return true;
    lat.for_each_4(x, [&](std::size_t y) {
      if (!seen[y] && grid.cells[y] == OrbitClass::FastEscaping) {
        seen[y] = 1;
        queue.push_back(y);
      }
    });
  }
  return false;
}

GridSpec strip_window(int k, double x_lo, double x_hi, int px_w, int px_h) {
  GridSpec g;
  g.center = {0.5 * (x_lo + x_hi), 2.0 * std::numbers::pi * k};
  g.half_width = 0.5 * (x_hi - x_lo);
  // Pixel centres sit half a pixel inside the window edges, so the full
  // strip height keeps every centre strictly inside R(k).
  g.half_height = std::numbers::pi;
  g.px_w = px_w;
  g.px_h = px_h;
  return g;
}

bool strip_hair_presence(const OrbitContext& ctx, int k, const GridSpec& grid, unsigned threads) {
  grid.validate();
  const Complex corners[] = {grid.point(0, 0), grid.point(grid.px_w - 1, 0), grid.point(0, grid.px_h - 1),
                             grid.point(grid.px_w - 1, grid.px_h - 1)};
  for (const Complex& c : corners)
    if (!in_R_strip(k, c) || !(c.real() > 0.0))
      throw std::invalid_argument("strip_hair_presence: window must lie inside R(k) with Re z > 0");
  return fast_crosses_left_to_right(classify_grid(ctx, grid, threads));
}

bool strip_hair_presence(const FamilyParams& params, int k, const GridSpec& grid, int budget, unsigned threads) {
  return strip_hair_presence(OrbitContext::make(params, budget, find_escape_radius(params)), k, grid, threads);
}

}  // namespace esdl
