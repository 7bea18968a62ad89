#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "esdl/plane_geometry.hpp"
#include "esdl/web_topology.hpp"

using namespace esdl;

namespace {

ClassificationGrid filled(int w, int h, OrbitClass c) {
  ClassificationGrid g;
  g.width = w;
  g.height = h;
  g.budget = 24;
  g.cells.assign(static_cast<std::size_t>(w) * h, c);
  g.entry.assign(g.cells.size(), -1);
  return g;
}

void set(ClassificationGrid& g, int i, int j, OrbitClass c) { g.cells[static_cast<std::size_t>(j) * g.width + i] = c; }

// Square annuli of FAST pixels at Chebyshev radii in `radii` around (cx, cy).
ClassificationGrid square_rings(int n, const std::vector<int>& radii) {
  ClassificationGrid g = filled(n, n, OrbitClass::BoundedWithinBudget);
  const int c = n / 2;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int r = std::max(std::abs(i - c), std::abs(j - c));
      for (int want : radii)
        if (r == want)
          set(g, i, j, OrbitClass::FastEscaping);
    }
  return g;
}

std::size_t center(const ClassificationGrid& g) {
  return static_cast<std::size_t>(g.height / 2) * g.width + g.width / 2;
}

}  // namespace

TEST_CASE("fast pixels everywhere but a disk around the origin") {
  ClassificationGrid g = filled(64, 64, OrbitClass::FastEscaping);
  for (int j = 0; j < 64; ++j)
    for (int i = 0; i < 64; ++i)
      if (std::hypot(i - 32, j - 32) < 6.0)
        set(g, i, j, OrbitClass::BoundedWithinBudget);
  const RingReport r = spider_rings(g, center(g));
  CHECK(r.nested_count >= 1);
  REQUIRE(r.rings.size() == static_cast<std::size_t>(r.nested_count));
  for (const auto& ring : r.rings)
    CHECK(separates_from_frame(64, 64, ring, center(g)));
}

TEST_CASE("no escaping pixels means no rings") {
  ClassificationGrid g = filled(40, 40, OrbitClass::BoundedWithinBudget);
  set(g, 3, 3, OrbitClass::Undetermined);  // a single class would be degenerate
  const RingReport r = spider_rings(g, center(g));
  CHECK(r.nested_count == 0);
  CHECK(r.rings.empty());
}

TEST_CASE("uniform grids are degenerate") {
  CHECK_THROWS_AS(spider_rings(filled(32, 32, OrbitClass::FastEscaping), 0), DegenerateError);
  CHECK_THROWS_AS(spider_rings(filled(32, 32, OrbitClass::BoundedWithinBudget), 0), DegenerateError);
}

TEST_CASE("concentric rings are counted, ordered and disjoint") {
  const ClassificationGrid g = square_rings(81, {5, 12, 20, 31});
  const RingReport r = spider_rings(g, center(g));
  CHECK(r.nested_count == 4);
  REQUIRE(r.rings.size() == 4);
  REQUIRE(r.mean_radius_px.size() == 4);
  std::set<std::size_t> seen;
  for (std::size_t k = 0; k < r.rings.size(); ++k) {
    CHECK(separates_from_frame(81, 81, r.rings[k], center(g)));
    for (std::size_t idx : r.rings[k]) {
      CHECK(g.cells[idx] == OrbitClass::FastEscaping);
      CHECK(seen.insert(idx).second);
    }
    if (k > 0)
      CHECK(r.mean_radius_px[k] > r.mean_radius_px[k - 1]);
  }
  CHECK(r.mean_radius_px[0] == doctest::Approx(5.0).epsilon(0.2));
}

TEST_CASE("a ring with a gap does not separate") {
  ClassificationGrid g = square_rings(41, {6, 14});
  set(g, 20 + 14, 20, OrbitClass::Escaping);  // break the outer ring
  const RingReport r = spider_rings(g, center(g));
  CHECK(r.nested_count == 1);
}

TEST_CASE("diagonal walls block 4-connected paths") {
  ClassificationGrid g = filled(41, 41, OrbitClass::BoundedWithinBudget);
  for (int j = 0; j < 41; ++j)
    for (int i = 0; i < 41; ++i)
      if (std::abs(i - 20) + std::abs(j - 20) == 9)
        set(g, i, j, OrbitClass::FastEscaping);
  const RingReport r = spider_rings(g, center(g));
  CHECK(r.nested_count == 1);
  REQUIRE(r.rings.size() == 1);
  CHECK(r.rings[0].size() == 36);
}

TEST_CASE("walls touching the frame or the origin do not count") {
  ClassificationGrid g = square_rings(21, {0, 10});  // radius 0 is the origin, 10 the frame
  set(g, 0, 0, OrbitClass::Escaping);
  const RingReport r = spider_rings(g, center(g));
  CHECK(r.nested_count == 0);
}

TEST_CASE("left-to-right crossings") {
  ClassificationGrid g = filled(30, 10, OrbitClass::BoundedWithinBudget);
  CHECK_FALSE(fast_crosses_left_to_right(g));
  for (int i = 0; i < 30; ++i)
    set(g, i, 4 + (i / 10), OrbitClass::FastEscaping);
  CHECK_FALSE(fast_crosses_left_to_right(g));  // diagonal steps only
  set(g, 10, 4, OrbitClass::FastEscaping);
  set(g, 20, 5, OrbitClass::FastEscaping);
  CHECK(fast_crosses_left_to_right(g));
}

TEST_CASE("strip windows") {
  const GridSpec w = strip_window(1, 20.0, 60.0, 256, 64);
  CHECK(w.px_w == 256);
  CHECK(w.px_h == 64);
  for (int j : {0, 63})
    for (int i : {0, 255}) {
      CHECK(in_R_strip(1, w.point(i, j)));
      CHECK(w.point(i, j).real() > 20.0);
      CHECK(w.point(i, j).real() < 60.0);
    }
  const OrbitContext ctx = OrbitContext::make(FamilyParams(4, 1.0), 24, 1.0);
  CHECK_THROWS_AS(strip_hair_presence(ctx, 2, w), std::invalid_argument);
  CHECK(strip_hair_presence(ctx, 1, w));
  CHECK(strip_hair_presence(FamilyParams(4, 1.0), 1, strip_window(1, 20.0, 60.0, 512, 128), 24));
}

TEST_CASE("rings in the pipeline grid") {
  const OrbitContext ctx = OrbitContext::make(FamilyParams(4, 1.0), 24, find_escape_radius(FamilyParams(4, 1.0)));
  const GridSpec grid = GridSpec::from_bounds(-20, 20, -20, 20, 128, 128);
  const ClassificationGrid g = classify_grid(ctx, grid);
  const RingReport r = spider_rings(g, grid.nearest_index(0.0));
  CHECK(r.nested_count >= 2);
  for (const auto& ring : r.rings)
    CHECK(separates_from_frame(128, 128, ring, grid.nearest_index(0.0)));
}

TEST_CASE("rings at full resolution with a short budget") {
  const OrbitContext ctx = OrbitContext::make(FamilyParams(4, 1.0), 12, find_escape_radius(FamilyParams(4, 1.0)));
  const GridSpec grid = GridSpec::from_bounds(-20, 20, -20, 20, 512, 512);
  const RingReport r = spider_rings(classify_grid(ctx, grid), grid.nearest_index(0.0));
  CHECK(r.nested_count >= 2);
}
