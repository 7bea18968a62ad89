#include "esdl/raster.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <string>

namespace esdl {

RasterImage RasterImage::blank(int width, int height, int channels) {
  if (channels != 1 && channels != 3)
    throw std::invalid_argument("RasterImage: channels must be 1 or 3");
  return {width, height, channels,
          std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height * channels, 0)};
}

RasterImage escape_image(const ClassificationGrid& grid) {
  RasterImage img = RasterImage::blank(grid.width, grid.height, 1);
  for (std::size_t i = 0; i < grid.entry.size(); ++i) {
    const int n = grid.entry[i];
    if (n < 0 || grid.budget <= 0)
      continue;
    const double shade = 255.0 * (1.0 - static_cast<double>(n) / grid.budget);
    img.data[i] = static_cast<std::uint8_t>(std::clamp(std::lround(shade), 0L, 255L));
  }
  return img;
}

Rendering render_classification(const GridSpec& grid, int budget, const OrbitFn& orbit, unsigned threads,
                                int tile) {
  Rendering out;
  out.classes = classify_grid(grid, budget, orbit, threads, tile);
  out.image = escape_image(out.classes);
  return out;
}

Rendering render_classification(const FamilyParams& params, const GridSpec& grid, int budget, double R,
                                unsigned threads, int tile) {
  const OrbitContext ctx = OrbitContext::make(params, budget, R);
  return render_classification(
      grid, budget, [&ctx](Complex z) { return classify_orbit(ctx, z); }, threads, tile);
}

RasterImage overlay_partition(const RasterImage& image, const GridSpec& grid, const PartitionConfig& config) {
  if (image.width != grid.px_w || image.height != grid.px_h)
    throw std::invalid_argument("overlay_partition: image and grid dimensions differ");
  config.validate();

  RasterImage out = RasterImage::blank(image.width, image.height, 3);
  const std::size_t pixels = static_cast<std::size_t>(image.width) * image.height;
  for (std::size_t i = 0; i < pixels; ++i)
    for (int c = 0; c < 3; ++c)
      out.data[3 * i + c] = image.channels == 3 ? image.data[3 * i + c] : image.data[i];

  const double reach = 0.5 * std::hypot(grid.pixel_dx(), grid.pixel_dy());
  const auto vertices = polygon_vertices(config);
  const int p = config.p;

  for (int j = 0; j < grid.px_h; ++j)
    for (int i = 0; i < grid.px_w; ++i) {
      const Complex z = grid.point(i, j);
      double d_poly = std::numeric_limits<double>::infinity();
      for (int k = 0; k < p; ++k)
        d_poly = std::min(d_poly, distance_to_segment(z, vertices[(k + p - 1) % p], vertices[k]));
      double d_strip = std::numeric_limits<double>::infinity();
      double d_ray = std::numeric_limits<double>::infinity();
      for (int k = 0; k < p; ++k) {
        const Complex dir = ray_direction(p, k);
        const Complex normal = dir * Complex(0.0, 1.0);
        d_strip = std::min({d_strip, distance_to_halfline(z, config.q * normal, dir),
                            distance_to_halfline(z, -config.q * normal, dir)});
        d_ray = std::min(d_ray, distance_to_halfline(z, {0.0, 0.0}, dir));
      }
      const Rgb* color = nullptr;
      if (d_poly < reach)
        color = &kPolygonColor;
      if (d_strip < reach && classify_point(config, z).tag != RegionTag::Polygon)
        color = &kStripColor;
      if (d_ray < reach)
        color = &kRayColor;
      if (color) {
        const std::size_t idx = 3 * grid.index(i, j);
        out.data[idx] = color->r;
        out.data[idx + 1] = color->g;
        out.data[idx + 2] = color->b;
      }
    }
  return out;
}

std::vector<std::uint8_t> encode_image(const RasterImage& image) {
  if (image.channels != 1 && image.channels != 3)
    throw std::invalid_argument("encode_image: channels must be 1 or 3");
  if (image.data.size() != static_cast<std::size_t>(image.width) * image.height * image.channels)
    throw std::invalid_argument("encode_image: buffer size does not match dimensions");
  const std::string header = std::string(image.channels == 1 ? "P5" : "P6") + "\n" + std::to_string(image.width) +
                             " " + std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.data.begin(), image.data.end());
  return out;
}

RasterImage decode_image(const std::vector<std::uint8_t>& bytes) {
  std::size_t pos = 0;
  auto token = [&]() {
    while (pos < bytes.size() && std::isspace(bytes[pos]))
      ++pos;
    std::string t;
    while (pos < bytes.size() && !std::isspace(bytes[pos]))
      t.push_back(static_cast<char>(bytes[pos++]));
    return t;
  };
  const std::string magic = token();
  if (magic != "P5" && magic != "P6")
    throw std::runtime_error("decode_image: not a binary PGM/PPM stream");
  RasterImage img;
  try {
    img.width = std::stoi(token());
    img.height = std::stoi(token());
    if (std::stoi(token()) != 255)
      throw std::runtime_error("decode_image: only maxval 255 is supported");
  } catch (const std::logic_error&) {
    throw std::runtime_error("decode_image: malformed header");
  }
  ++pos;  // single whitespace byte after maxval
  img.channels = magic == "P5" ? 1 : 3;
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height * img.channels;
  if (img.width <= 0 || img.height <= 0 || pos + n != bytes.size())
    throw std::runtime_error("decode_image: payload size mismatch");
  img.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
  return img;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace esdl
