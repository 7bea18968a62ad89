#include "esdl/grid_io.hpp"

#include <stdexcept>

namespace esdl {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b)
    out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& in, std::size_t at) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b)
    v |= static_cast<std::uint32_t>(in[at + b]) << (8 * b);
  return v;
}

}  // namespace

std::vector<std::uint8_t> encode_grid(const ClassificationGrid& grid) {
  std::vector<std::uint8_t> out{'E', 'S', 'D', 'L'};
  out.reserve(16 + grid.cells.size());
  put_u32(out, static_cast<std::uint32_t>(grid.width));
  put_u32(out, static_cast<std::uint32_t>(grid.height));
  put_u32(out, static_cast<std::uint32_t>(grid.budget));
  for (OrbitClass c : grid.cells)
    out.push_back(static_cast<std::uint8_t>(c));
  return out;
}

ClassificationGrid decode_grid(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 16 || bytes[0] != 'E' || bytes[1] != 'S' || bytes[2] != 'D' || bytes[3] != 'L')
    throw std::runtime_error("decode_grid: missing ESDL header");
  ClassificationGrid grid;
  grid.width = static_cast<int>(get_u32(bytes, 4));
  grid.height = static_cast<int>(get_u32(bytes, 8));
  grid.budget = static_cast<int>(get_u32(bytes, 12));
  const std::size_t n = static_cast<std::size_t>(grid.width) * grid.height;
  if (bytes.size() != 16 + n)
    throw std::runtime_error("decode_grid: payload size mismatch");
  grid.cells.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t tag = bytes[16 + i];
    if (tag > static_cast<std::uint8_t>(OrbitClass::Undetermined))
      throw std::runtime_error("decode_grid: unknown class tag");
    grid.cells.push_back(static_cast<OrbitClass>(tag));
  }
  grid.entry.assign(n, -1);
  return grid;
}

}  // namespace esdl
