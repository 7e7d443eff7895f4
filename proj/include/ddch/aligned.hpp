#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <vector>

namespace ddch {

/// 64-byte aligned allocator. FFTW plans and the AVX2 kernels both rely on
/// every field buffer sharing this alignment.
template <class T> struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t alignment{64};

  AlignedAllocator() noexcept = default;
  template <class U> AlignedAllocator(const AlignedAllocator<U> &) noexcept {}

  T *allocate(std::size_t n) {
    return static_cast<T *>(::operator new(n * sizeof(T), alignment));
  }
  void deallocate(T *p, std::size_t) noexcept {
    ::operator delete(p, alignment);
  }

  template <class U> bool operator==(const AlignedAllocator<U> &) const noexcept {
    return true;
  }
};

using RealBuffer = std::vector<double, AlignedAllocator<double>>;
using ComplexBuffer =
    std::vector<std::complex<double>, AlignedAllocator<std::complex<double>>>;

} // namespace ddch
