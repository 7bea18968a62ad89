#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "esdl/raster.hpp"

using namespace esdl;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& header, std::initializer_list<int> body) {
  std::vector<std::uint8_t> out(header.begin(), header.end());
  for (int b : body)
    out.push_back(static_cast<std::uint8_t>(b));
  return out;
}

}  // namespace

TEST_CASE("image encoding is exact") {
  RasterImage grey = RasterImage::blank(2, 1, 1);
  grey.data = {0x00, 0xFF};
  CHECK(encode_image(grey) == bytes_of("P5\n2 1\n255\n", {0x00, 0xFF}));
  CHECK(decode_image(encode_image(grey)) == grey);

  RasterImage rgb = RasterImage::blank(1, 1, 3);
  rgb.data = {1, 2, 3};
  CHECK(encode_image(rgb) == bytes_of("P6\n1 1\n255\n", {1, 2, 3}));
  CHECK(decode_image(encode_image(rgb)) == rgb);

  CHECK_THROWS_AS(decode_image(bytes_of("P4\n1 1\n255\n", {0})), std::runtime_error);
  CHECK_THROWS_AS(decode_image(bytes_of("P5\n2 2\n255\n", {0, 1, 2})), std::runtime_error);
  CHECK_THROWS_AS(decode_image({}), std::runtime_error);
}

TEST_CASE("grid specs") {
  const GridSpec g = GridSpec::from_bounds(-3, 3, -2, 2, 60, 40);
  CHECK_NOTHROW(g.validate());
  CHECK(g.point(0, 0).real() == doctest::Approx(-2.95));
  CHECK(g.point(0, 0).imag() == doctest::Approx(1.95));
  for (int j = 0; j < 40; ++j)
    for (int i = 0; i < 60; ++i) {
      CHECK(g.point(59 - i, 39 - j) == -g.point(i, j));
      CHECK(g.nearest_index(g.point(i, j)) == g.index(i, j));
    }
  CHECK(g.nearest_index({100, -100}) == g.index(59, 39));
  CHECK_THROWS_AS(GridSpec::from_bounds(-1, 1, -1, 1, 8, 32).validate(), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec::from_bounds(1, 1, -1, 1, 32, 32).validate(), std::invalid_argument);
}

TEST_CASE("a map with only bounded orbits renders black") {
  const GridSpec g = GridSpec::from_bounds(-1, 1, -1, 1, 32, 32);
  const OrbitFn stub = [](Complex z) {
    OrbitRecord r;
    r.seed = z;
    r.points.assign(5, ScaledComplex::from(z));
    r.verdict = OrbitClass::BoundedWithinBudget;
    return r;
  };
  const Rendering out = render_classification(g, 4, stub, 2, 16);
  CHECK(out.image == RasterImage::blank(32, 32, 1));
  for (OrbitClass c : out.classes.cells)
    CHECK(c == OrbitClass::BoundedWithinBudget);
}

TEST_CASE("escape shading") {
  ClassificationGrid g;
  g.width = 4;
  g.height = 1;
  g.budget = 24;
  g.cells = {OrbitClass::FastEscaping, OrbitClass::Escaping, OrbitClass::Escaping, OrbitClass::AttractedReal};
  g.entry = {0, 6, 24, -1};
  const RasterImage img = escape_image(g);
  CHECK(img.data == std::vector<std::uint8_t>{255, 191, 0, 0});
}

TEST_CASE("the attracting fixed point renders black") {
  const FamilyParams params(4, 0.25);
  const auto fps = real_fixed_points(params, 0.0, 2.0);
  REQUIRE_FALSE(fps.empty());
  // odd height puts the middle row on the real axis
  const GridSpec g = GridSpec::from_bounds(-2, 2, -2, 2, 65, 65);
  REQUIRE(g.point(0, 32).imag() == 0.0);
  const Rendering out = render_classification(params, g, 24, find_escape_radius(params));
  for (const auto& fp : fps)
    if (fp.kind == FixedPointKind::Attracting) {
      const std::size_t idx = g.nearest_index(fp.x_star);
      CHECK(out.image.data[idx] == 0);
      CHECK(out.classes.cells[idx] == OrbitClass::AttractedReal);
    }
}

TEST_CASE("rendering ignores tiling and thread count") {
  const FamilyParams params(4, 1.0);
  const double R = find_escape_radius(params);
  const GridSpec g = GridSpec::from_bounds(-6, 6, -6, 6, 96, 96);
  const Rendering base = render_classification(params, g, 24, R, 1, 64);
  for (unsigned threads : {2u, 3u, 4u})
    for (int tile : {7, 16, 200}) {
      const Rendering other = render_classification(params, g, 24, R, threads, tile);
      CHECK(other.classes == base.classes);
      CHECK(encode_image(other.image) == encode_image(base.image));
    }
}

TEST_CASE("even p renders with half-turn symmetry") {
  for (int p : {4, 6}) {
    const FamilyParams params(p, 1.0);
    const GridSpec g = GridSpec::from_bounds(-8, 8, -8, 8, 80, 80);
    const Rendering out = render_classification(params, g, 24, find_escape_radius(params));
    for (int j = 0; j < 80; ++j)
      for (int i = 0; i < 80; ++i) {
        const std::size_t a = g.index(i, j), b = g.index(79 - i, 79 - j);
        CHECK(out.classes.cells[a] == out.classes.cells[b]);
        CHECK(out.image.data[a] == out.image.data[b]);
      }
  }
}

TEST_CASE("partition overlay") {
  const GridSpec g = GridSpec::from_bounds(-2, 2, -2, 2, 128, 128);
  const PartitionConfig cfg = PartitionConfig::with_min_q(4, 1.0);
  const RasterImage black = RasterImage::blank(128, 128, 1);
  const RasterImage over = overlay_partition(black, g, cfg);
  REQUIRE(over.channels == 3);
  const double slack = std::hypot(g.pixel_dx(), g.pixel_dy());
  int red = 0;
  for (int j = 0; j < 128; ++j)
    for (int i = 0; i < 128; ++i) {
      const std::uint8_t* px = &over.data[3 * g.index(i, j)];
      const Complex z = g.point(i, j);
      if (px[0] == 255 && px[1] == 0 && px[2] == 0) {
        ++red;
        // polygon edges lie between the inradius and the circumradius
        CHECK(std::abs(z) >= 1.0 - slack);
        CHECK(std::abs(z) <= std::sqrt(2.0) + slack);
      }
    }
  CHECK(red > 4 * 100);
  CHECK(overlay_partition(over, g, cfg) == over);
  CHECK_THROWS_AS(overlay_partition(RasterImage::blank(64, 128, 1), g, cfg), std::invalid_argument);
}
