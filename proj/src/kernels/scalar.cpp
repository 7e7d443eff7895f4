#include <algorithm>
#include <cmath>

#include "ddch/kernels.hpp"

namespace ddch::kernels {
namespace {

constexpr double clamp_lo = -0.5;
constexpr double clamp_hi = 1.5;

void scale(cplx *c, const double *s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) c[i] *= s[i];
}

void scale_into(const cplx *c, const double *s, cplx *out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = c[i] * s[i];
}

void derivative_into(const cplx *c, const double *k, cplx *out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = cplx(-k[i] * c[i].imag(), k[i] * c[i].real());
}

void derivative_add(const cplx *c, const double *k, cplx *out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] += cplx(-k[i] * c[i].imag(), k[i] * c[i].real());
}

void combine(const cplx *a, const double *sa, const cplx *b, const double *sb, cplx *out,
             std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * sa[i] + b[i] * sb[i];
}

inline double wp(double s) { return s * (1.0 - s) * (1.0 - 2.0 * s); }

void explicit_potential(const double *u, double alpha, double inv_eps2, double *out,
                        std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (wp(u[i]) - alpha * u[i]) * inv_eps2;
}

void double_well_derivative(const double *u, double *out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = wp(u[i]);
}

void double_well(const double *u, double *out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double t = u[i] * (1.0 - u[i]);
    out[i] = 0.5 * t * t;
  }
}

bool shifted_mobility(const double *u, double scale, double shift, double *out,
                      std::size_t n) {
  bool clamped = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::clamp(u[i], clamp_lo, clamp_hi);
    clamped |= s != u[i];
    const double t = s * (1.0 - s);
    out[i] = scale * (t * t) - shift;
  }
  return clamped;
}

bool sqrt_mobility(const double *u, double floor, double *out, std::size_t n) {
  bool clamped = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::clamp(u[i], clamp_lo, clamp_hi);
    clamped |= s != u[i];
    const double t = s * (1.0 - s);
    out[i] = std::sqrt(t * t + floor);
  }
  return clamped;
}

void multiply(const double *a, const double *b, double *out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void divide(const double *a, const double *b, double *out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] / b[i];
}

void axpy(double a, const double *x, double *y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void linear(const double *x, double a, const double *y, double *out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + a * y[i];
}

void product_add(double a, const double *x, const double *y, double *out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] += a * (x[i] * y[i]);
}

// Pairwise summation keeps the reference sum accurate on 2^20-node grids.
double sum(const double *x, std::size_t n) {
  if (n <= 64) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return sum(x, h) + sum(x + h, n - h);
}

void min_max(const double *x, std::size_t n, double *lo, double *hi) {
  double a = x[0], b = x[0];
  for (std::size_t i = 1; i < n; ++i) {
    a = std::min(a, x[i]);
    b = std::max(b, x[i]);
  }
  *lo = a;
  *hi = b;
}

constexpr Table table{
    "scalar",         scale,       scale_into,       derivative_into,
    derivative_add,   combine,     explicit_potential, double_well_derivative,
    double_well,      shifted_mobility, sqrt_mobility, multiply,
    divide,           axpy,        linear,           product_add,
    sum,              min_max,
};

} // namespace

const Table &scalar() { return table; }

} // namespace ddch::kernels
