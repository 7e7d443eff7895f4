#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ddch/grid.hpp"

namespace ddch {

/// Raw field file: a 64-byte header followed by the node values as
/// little-endian IEEE 754 doubles in row-major order (last axis fastest).
///
///   offset  size  content
///        0     8  magic "DDCHFLD1"
///        8     4  uint32 ndim (1..3)
///       12     4  uint32 reserved, 0
///       16    24  uint64 dims[3], unused entries 1
///       40    24  double lengths[3], unused entries 0
inline constexpr char raw_magic[8] = {'D', 'D', 'C', 'H', 'F', 'L', 'D', '1'};
inline constexpr std::size_t raw_header_bytes = 64;

struct RawField {
  Grid grid;
  Field values;
};

void write_raw(const std::string &path, const Grid &grid, const Field &field);
/// Throws FormatError on a bad magic, header or payload size.
RawField read_raw(const std::string &path);

/// One text line per run of the last axis (the whole field for 1D), values
/// separated by commas with %.17g; 3D slices along the first axis are
/// separated by an empty line.
std::string field_csv(const std::vector<int> &dims, const Field &field);
std::string field_csv(const Grid &grid, const Field &field);
void write_csv(const std::string &path, const Grid &grid, const Field &field);

/// sum_k (k - 1) u_k for 1-based k.
Field composite(const std::vector<Field> &phases);

/// 8-bit RGB for a value in [0, top], clamped.
std::array<std::uint8_t, 3> colormap(double value, double top) noexcept;

/// Binary PPM (P6) of a 2D field, first axis left to right, second axis
/// bottom to top. 3D fields are cut at the middle of the first axis.
void write_ppm(const std::string &path, const Grid &grid, const Field &field, double top);

} // namespace ddch
