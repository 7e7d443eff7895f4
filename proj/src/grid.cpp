#include "ddch/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ddch/error.hpp"

namespace ddch {

Grid::Grid(std::vector<int> dims, std::vector<double> lengths)
    : dims_(std::move(dims)), lengths_(std::move(lengths)) {
  if (dims_.empty() || dims_.size() > 3)
    throw InvalidGrid("grid dimension must be 1, 2 or 3");
  if (lengths_.size() != dims_.size())
    throw InvalidGrid("grid needs one length per axis");
  for (std::size_t a = 0; a < dims_.size(); ++a) {
    if (dims_[a] < 4 || dims_[a] % 2 != 0)
      throw InvalidGrid("axis " + std::to_string(a) +
                        ": node count must be even and >= 4");
    if (!(lengths_[a] > 0.0) || !std::isfinite(lengths_[a]))
      throw InvalidGrid("axis " + std::to_string(a) + ": length must be > 0");
  }

  spectral_dims_ = dims_;
  spectral_dims_.back() = dims_.back() / 2 + 1;
  size_ = 1;
  spectral_size_ = 1;
  for (std::size_t a = 0; a < dims_.size(); ++a) {
    size_ *= static_cast<std::size_t>(dims_[a]);
    spectral_size_ *= static_cast<std::size_t>(spectral_dims_[a]);
  }

  freq_.resize(dims_.size());
  for (std::size_t a = 0; a < dims_.size(); ++a) {
    const int n = dims_[a];
    freq_[a].resize(n);
    for (int i = 0; i < n; ++i) {
      const int k = i < n / 2 ? i : i - n;
      freq_[a][i] = k / lengths_[a];
    }
  }

  const int d = ndim();
  const double two_pi = 2.0 * std::numbers::pi;
  laplacian_.assign(spectral_size_, 0.0);
  wavenumber_.assign(d, RealBuffer(spectral_size_, 0.0));
  std::array<int, 3> idx{0, 0, 0};
  for (std::size_t flat = 0; flat < spectral_size_; ++flat) {
    std::size_t rem = flat;
    for (int a = d - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rem % spectral_dims_[a]);
      rem /= spectral_dims_[a];
    }
    double xi2 = 0.0;
    for (int a = 0; a < d; ++a) {
      const double xi = freq_[a][idx[a]];
      xi2 += xi * xi;
      // Odd derivatives of the Nyquist mode have no real representation.
      const bool nyquist = idx[a] == dims_[a] / 2;
      wavenumber_[a][flat] = nyquist ? 0.0 : two_pi * xi;
    }
    laplacian_[flat] = -two_pi * two_pi * xi2;
  }
}

double Grid::cell_volume() const noexcept {
  double v = 1.0;
  for (int a = 0; a < ndim(); ++a) v *= spacing(a);
  return v;
}

double Grid::volume() const noexcept {
  double v = 1.0;
  for (double l : lengths_) v *= l;
  return v;
}

std::array<int, 3> Grid::unflatten(std::size_t flat) const noexcept {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = ndim() - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % dims_[a]);
    flat /= dims_[a];
  }
  return idx;
}

std::size_t Grid::flatten(const std::array<int, 3> &index) const noexcept {
  std::size_t flat = 0;
  for (int a = 0; a < ndim(); ++a) {
    const int n = dims_[a];
    const int i = ((index[a] % n) + n) % n;
    flat = flat * n + static_cast<std::size_t>(i);
  }
  return flat;
}

} // namespace ddch
