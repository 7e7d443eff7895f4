#pragma once

// Pointwise arithmetic used by the time steppers. Each kernel has a scalar
// reference implementation and, on x86-64, an AVX2/FMA variant compiled in a
// separate translation unit. The variant is picked once at startup from the
// CPU features; DDCH_KERNELS=scalar|avx2 overrides the choice.

#include <complex>
#include <cstddef>
#include <string_view>

namespace ddch::kernels {

using cplx = std::complex<double>;

struct Table {
  const char *name;

  // Spectral side: real symbols acting on half-spectra.
  void (*scale)(cplx *c, const double *s, std::size_t n);                      // c *= s
  void (*scale_into)(const cplx *c, const double *s, cplx *out, std::size_t n); // out = s c
  void (*derivative_into)(const cplx *c, const double *k, cplx *out, std::size_t n); // out = i k c
  void (*derivative_add)(const cplx *c, const double *k, cplx *out, std::size_t n);  // out += i k c
  void (*combine)(const cplx *a, const double *sa, const cplx *b, const double *sb,
                  cplx *out, std::size_t n); // out = sa a + sb b

  // Real side.
  void (*explicit_potential)(const double *u, double alpha, double inv_eps2, double *out,
                             std::size_t n); // (W'(u) - alpha u) / eps^2
  void (*double_well_derivative)(const double *u, double *out, std::size_t n); // W'(u)
  void (*double_well)(const double *u, double *out, std::size_t n);            // W(u)
  // scale * 2W(clamp(u)) - shift, clamp to [-0.5, 1.5]; returns true if any
  // entry was clamped.
  bool (*shifted_mobility)(const double *u, double scale, double shift, double *out,
                           std::size_t n);
  // sqrt(2W(clamp(u)) + floor).
  bool (*sqrt_mobility)(const double *u, double floor, double *out, std::size_t n);
  void (*multiply)(const double *a, const double *b, double *out, std::size_t n);
  void (*divide)(const double *a, const double *b, double *out, std::size_t n);
  void (*axpy)(double a, const double *x, double *y, std::size_t n);          // y += a x
  void (*linear)(const double *x, double a, const double *y, double *out,
                 std::size_t n);                                              // out = x + a y
  void (*product_add)(double a, const double *x, const double *y, double *out,
                      std::size_t n);                                         // out += a x y
  double (*sum)(const double *x, std::size_t n);
  void (*min_max)(const double *x, std::size_t n, double *lo, double *hi);
};

const Table &scalar();
/// AVX2 table, or nullptr when not compiled in or not supported by the CPU.
const Table *avx2();
/// The table the library uses.
const Table &active();
/// Select a table by name ("scalar", "avx2"); returns false if unavailable.
bool select(std::string_view name);

} // namespace ddch::kernels
