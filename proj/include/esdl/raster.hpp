#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "esdl/grid.hpp"
#include "esdl/plane_geometry.hpp"

namespace esdl {

struct RasterImage {
  int width = 0;
  int height = 0;
  int channels = 1;  // 1 (grey) or 3 (RGB)
  std::vector<std::uint8_t> data;  // row-major, interleaved channels

  static RasterImage blank(int width, int height, int channels);
  bool operator==(const RasterImage&) const = default;
};

// 255 (1 - n / budget), rounded, for pixels with escape entry n; 0 otherwise.
RasterImage escape_image(const ClassificationGrid& grid);

struct Rendering {
  ClassificationGrid classes;
  RasterImage image;
};

// Classify every pixel centre with classify_orbit (ladder built from R) and
// shade by escape entry.
Rendering render_classification(const FamilyParams& params, const GridSpec& grid, int budget, double R,
                                unsigned threads = 0, int tile = kDefaultTile);
// Same with a caller-supplied orbit function (used with stub maps in tests).
Rendering render_classification(const GridSpec& grid, int budget, const OrbitFn& orbit, unsigned threads = 0,
                                int tile = kDefaultTile);

struct Rgb {
  std::uint8_t r, g, b;
};
inline constexpr Rgb kPolygonColor{255, 0, 0};
inline constexpr Rgb kStripColor{0, 255, 0};
inline constexpr Rgb kRayColor{0, 0, 255};

// RGB copy of image with the polygon edges, strip sides and rays V_k drawn
// where the pixel centre is within half a pixel diagonal of the curve. Rays
// are drawn over strips, strips over the polygon. Throws
// std::invalid_argument if the image and grid sizes differ.
RasterImage overlay_partition(const RasterImage& image, const GridSpec& grid, const PartitionConfig& config);

// Binary PGM (1 channel) or PPM (3 channels): "P5\n{w} {h}\n255\n" + bytes.
std::vector<std::uint8_t> encode_image(const RasterImage& image);
// Inverse of encode_image for the headers it writes. Throws
// std::runtime_error on malformed input.
RasterImage decode_image(const std::vector<std::uint8_t>& bytes);

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> read_file(const std::string& path);

}  // namespace esdl
