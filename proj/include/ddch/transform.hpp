#pragma once

#include <complex>
#include <memory>
#include <span>

#include "ddch/grid.hpp"

namespace ddch {

/// Forward/inverse real DFT on a Grid, backed by FFTW.
///
/// Forward is unnormalized; inverse divides by the node count. Plans are
/// built with FFTW_ESTIMATE so that the same build always performs the same
/// floating-point operations (checkpoint resumes must be bit-exact).
///
/// Owns scratch storage, so one Transform must not be used from two threads
/// at once.
class Transform {
public:
  explicit Transform(Grid grid);
  ~Transform();
  Transform(const Transform &) = delete;
  Transform &operator=(const Transform &) = delete;
  Transform(Transform &&) noexcept;
  Transform &operator=(Transform &&) noexcept;

  const Grid &grid() const noexcept;

  void forward(std::span<const double> in, std::span<std::complex<double>> out);
  void inverse(std::span<const std::complex<double>> in, std::span<double> out);

  Spectrum forward(const Field &in);
  Field inverse(const Spectrum &in);

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

} // namespace ddch
