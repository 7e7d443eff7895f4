#include "ddch/transform.hpp"

#include <cstring>

#include <fftw3.h>

#include "ddch/error.hpp"

namespace ddch {

struct Transform::Impl {
  Grid grid;
  Spectrum scratch;
  fftw_plan forward_plan = nullptr;
  fftw_plan inverse_plan = nullptr;

  explicit Impl(Grid g) : grid(std::move(g)), scratch(grid.spectral_size()) {
    Field probe(grid.size());
    const int rank = grid.ndim();
    const int *n = grid.dims().data();
    auto *c = reinterpret_cast<fftw_complex *>(scratch.data());
    forward_plan = fftw_plan_dft_r2c(rank, n, probe.data(), c,
                                     FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    inverse_plan = fftw_plan_dft_c2r(rank, n, c, probe.data(), FFTW_ESTIMATE);
    if (!forward_plan || !inverse_plan) throw Error("FFTW plan creation failed");
  }

  ~Impl() {
    if (forward_plan) fftw_destroy_plan(forward_plan);
    if (inverse_plan) fftw_destroy_plan(inverse_plan);
  }
};

Transform::Transform(Grid grid) : impl_(std::make_unique<Impl>(std::move(grid))) {}
Transform::~Transform() = default;
Transform::Transform(Transform &&) noexcept = default;
Transform &Transform::operator=(Transform &&) noexcept = default;

const Grid &Transform::grid() const noexcept { return impl_->grid; }

void Transform::forward(std::span<const double> in, std::span<std::complex<double>> out) {
  // FFTW_PRESERVE_INPUT: the input is read only.
  fftw_execute_dft_r2c(impl_->forward_plan, const_cast<double *>(in.data()),
                       reinterpret_cast<fftw_complex *>(out.data()));
}

void Transform::inverse(std::span<const std::complex<double>> in, std::span<double> out) {
  // Multi-dimensional c2r overwrites its input.
  auto &scratch = impl_->scratch;
  std::memcpy(scratch.data(), in.data(), scratch.size() * sizeof(std::complex<double>));
  fftw_execute_dft_c2r(impl_->inverse_plan, reinterpret_cast<fftw_complex *>(scratch.data()),
                       out.data());
  const double inv_n = 1.0 / static_cast<double>(impl_->grid.size());
  for (double &v : out) v *= inv_n;
}

Spectrum Transform::forward(const Field &in) {
  Spectrum out(impl_->grid.spectral_size());
  forward(std::span<const double>(in), std::span<std::complex<double>>(out));
  return out;
}

Field Transform::inverse(const Spectrum &in) {
  Field out(impl_->grid.size());
  inverse(std::span<const std::complex<double>>(in), std::span<double>(out));
  return out;
}

} // namespace ddch
