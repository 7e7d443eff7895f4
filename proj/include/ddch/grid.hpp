#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ddch/aligned.hpp"

namespace ddch {

/// Real-space field sampled at the grid nodes, row-major (last axis fastest).
using Field = RealBuffer;
/// Half-spectrum of a real field in the r2c layout: the last axis keeps
/// modes 0..N/2 only, Hermitian symmetry supplies the rest.
using Spectrum = ComplexBuffer;

/// Periodic box [0, L_1) x ... x [0, L_d) with N_i nodes per axis.
///
/// Frequencies follow the K_N = [-N/2, N/2 - 1] convention with
/// xi_k = k / L_i, stored in FFT order (0, 1, .., N/2 - 1, -N/2, .., -1).
/// The Laplacian symbol and the per-axis derivative wavenumbers are
/// precomputed on the half-spectrum.
class Grid {
public:
  Grid(std::vector<int> dims, std::vector<double> lengths);

  int ndim() const noexcept { return static_cast<int>(dims_.size()); }
  const std::vector<int> &dims() const noexcept { return dims_; }
  const std::vector<double> &lengths() const noexcept { return lengths_; }
  int dim(int axis) const { return dims_.at(axis); }
  double length(int axis) const { return lengths_.at(axis); }
  double spacing(int axis) const { return lengths_.at(axis) / dims_.at(axis); }
  double cell_volume() const noexcept;
  double volume() const noexcept;

  /// Number of real nodes.
  std::size_t size() const noexcept { return size_; }
  /// Number of stored half-spectrum modes.
  std::size_t spectral_size() const noexcept { return spectral_size_; }
  /// Half-spectrum shape (last axis N/2 + 1).
  const std::vector<int> &spectral_dims() const noexcept { return spectral_dims_; }

  /// Frequencies xi for one axis, full length N_i in FFT order.
  const std::vector<double> &frequencies(int axis) const { return freq_.at(axis); }

  /// -4 pi^2 |xi|^2 on the half-spectrum.
  const RealBuffer &laplacian_symbol() const noexcept { return laplacian_; }
  /// 2 pi xi_axis on the half-spectrum, zero on that axis' Nyquist plane.
  const RealBuffer &wavenumber(int axis) const { return wavenumber_.at(axis); }

  /// Node coordinate along one axis: index * h.
  double coordinate(int axis, int index) const { return index * spacing(axis); }
  /// Multi-index of a flat node index.
  std::array<int, 3> unflatten(std::size_t flat) const noexcept;
  std::size_t flatten(const std::array<int, 3> &index) const noexcept;

  /// Fill a field by evaluating f(x) with x = (x_1, .., x_d) at every node.
  template <class F> Field sample(F &&f) const {
    Field out(size_);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < size_; ++i) {
      const auto idx = unflatten(i);
      for (int a = 0; a < ndim(); ++a) x[a] = coordinate(a, idx[a]);
      out[i] = f(x);
    }
    return out;
  }

  bool operator==(const Grid &other) const noexcept {
    return dims_ == other.dims_ && lengths_ == other.lengths_;
  }

private:
  std::vector<int> dims_;
  std::vector<double> lengths_;
  std::vector<int> spectral_dims_;
  std::size_t size_ = 0;
  std::size_t spectral_size_ = 0;
  std::vector<std::vector<double>> freq_;
  RealBuffer laplacian_;
  std::vector<RealBuffer> wavenumber_;
};

} // namespace ddch
