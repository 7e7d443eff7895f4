#include "ddch/field_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "ddch/error.hpp"

namespace ddch {

namespace {

template <class T> void put_le(std::string &out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.append(reinterpret_cast<const char *>(bytes), sizeof(T));
}

template <class T> T get_le(const char *p) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

void write_file(const std::string &path, const std::string &bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path);
}

} // namespace

void write_raw(const std::string &path, const Grid &grid, const Field &field) {
  if (field.size() != grid.size()) throw ValidationError("field does not match the grid");
  std::string out(raw_magic, sizeof raw_magic);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(grid.ndim()));
  put_le<std::uint32_t>(out, 0);
  for (int a = 0; a < 3; ++a)
    put_le<std::uint64_t>(out, a < grid.ndim() ? static_cast<std::uint64_t>(grid.dim(a)) : 1);
  for (int a = 0; a < 3; ++a) put_le<double>(out, a < grid.ndim() ? grid.length(a) : 0.0);
  out.reserve(raw_header_bytes + 8 * field.size());
  for (double v : field) put_le<double>(out, v);
  write_file(path, out);
}

RawField read_raw(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < raw_header_bytes || std::memcmp(bytes.data(), raw_magic, 8) != 0)
    throw FormatError(path + ": not a raw field file");
  const auto ndim = get_le<std::uint32_t>(bytes.data() + 8);
  if (ndim < 1 || ndim > 3) throw FormatError(path + ": bad dimension count");
  std::vector<int> dims;
  std::vector<double> lengths;
  for (std::uint32_t a = 0; a < ndim; ++a) {
    const auto n = get_le<std::uint64_t>(bytes.data() + 16 + 8 * a);
    if (n == 0 || n > (1u << 20)) throw FormatError(path + ": bad dimensions");
    dims.push_back(static_cast<int>(n));
    lengths.push_back(get_le<double>(bytes.data() + 40 + 8 * a));
  }
  Grid grid(dims, lengths);
  if (bytes.size() != raw_header_bytes + 8 * grid.size())
    throw FormatError(path + ": payload size does not match the header");
  Field values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = get_le<double>(bytes.data() + raw_header_bytes + 8 * i);
  return {std::move(grid), std::move(values)};
}

std::string field_csv(const std::vector<int> &dims, const Field &field) {
  if (dims.empty() || dims.size() > 3) throw ValidationError("fields have 1 to 3 axes");
  std::size_t total = 1;
  for (int n : dims) {
    if (n <= 0) throw ValidationError("axis lengths must be positive");
    total *= static_cast<std::size_t>(n);
  }
  if (field.size() != total) throw ValidationError("field does not match the dimensions");
  const std::size_t row = static_cast<std::size_t>(dims.back());
  const std::size_t slab = dims.size() == 3 ? row * static_cast<std::size_t>(dims[1]) : total;
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (i > 0 && i % slab == 0) out += '\n';
    std::snprintf(buf, sizeof buf, "%.17g", field[i]);
    out += buf;
    out += (i + 1) % row == 0 ? '\n' : ',';
  }
  return out;
}

std::string field_csv(const Grid &grid, const Field &field) {
  std::vector<int> dims(static_cast<std::size_t>(grid.ndim()));
  for (int a = 0; a < grid.ndim(); ++a) dims[static_cast<std::size_t>(a)] = grid.dim(a);
  return field_csv(dims, field);
}

void write_csv(const std::string &path, const Grid &grid, const Field &field) {
  write_file(path, field_csv(grid, field));
}

Field composite(const std::vector<Field> &phases) {
  if (phases.empty()) return {};
  Field out(phases[0].size(), 0.0);
  for (std::size_t k = 1; k < phases.size(); ++k)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += static_cast<double>(k) * phases[k][i];
  return out;
}

std::array<std::uint8_t, 3> colormap(double value, double top) noexcept {
  // Dark blue -> teal -> green -> yellow, close to the usual perceptual maps.
  static constexpr double anchors[5][3] = {
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  double t = top > 0.0 ? value / top : value;
  if (!(t >= 0.0)) t = 0.0; // also catches NaN
  t = std::min(t, 1.0) * 4.0;
  const int i = std::min(static_cast<int>(t), 3);
  const double f = t - i;
  std::array<std::uint8_t, 3> rgb{};
  for (int c = 0; c < 3; ++c)
    rgb[c] = static_cast<std::uint8_t>(
        std::lround(anchors[i][c] + f * (anchors[i + 1][c] - anchors[i][c])));
  return rgb;
}

void write_ppm(const std::string &path, const Grid &grid, const Field &field, double top) {
  if (grid.ndim() < 2) throw ValidationError("images need a 2D or 3D grid");
  if (field.size() != grid.size()) throw ValidationError("field does not match the grid");
  const int ax = grid.ndim() - 2, ay = grid.ndim() - 1;
  const int w = grid.dim(ax), h = grid.dim(ay);
  const int cut = grid.ndim() == 3 ? grid.dim(0) / 2 : 0;
  std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  for (int r = 0; r < h; ++r) {
    const int j = h - 1 - r;
    for (int i = 0; i < w; ++i) {
      const std::array<int, 3> idx =
          grid.ndim() == 3 ? std::array<int, 3>{cut, i, j} : std::array<int, 3>{i, j, 0};
      const auto rgb = colormap(field[grid.flatten(idx)], top);
      out.append(reinterpret_cast<const char *>(rgb.data()), 3);
    }
  }
  write_file(path, out);
}

} // namespace ddch
