#pragma once

#include <cstdint>
#include <vector>

#include "esdl/grid.hpp"

namespace esdl {

// Classification grid file: 16-byte header
//   bytes 0-3   magic "ESDL"
//   bytes 4-7   width  (u32, little endian)
//   bytes 8-11  height (u32, little endian)
//   bytes 12-15 budget (u32, little endian)
// followed by width * height bytes, one OrbitClass value per pixel in
// row-major order (row 0 at the top). Escape entries are not stored.
std::vector<std::uint8_t> encode_grid(const ClassificationGrid& grid);

// Throws std::runtime_error on a bad magic, short payload or unknown tag.
// The decoded grid has entry[] filled with -1.
ClassificationGrid decode_grid(const std::vector<std::uint8_t>& bytes);

}  // namespace esdl
