// Compiled with -mavx2 -mfma. Only reached through the dispatch table after
// a CPUID check. Keep std:: inline templates out of this file: an AVX2
// instantiation could otherwise be merged into scalar callers at link time.

#include <immintrin.h>

#include "ddch/kernels.hpp"

namespace ddch::kernels {
namespace {

inline __m256d load_pairs(const double *s) {
  // [s0, s0, s1, s1]
  const __m256d v = _mm256_castpd128_pd256(_mm_loadu_pd(s));
  return _mm256_permute4x64_pd(v, 0b01010000);
}

inline double *as_real(cplx *c) { return reinterpret_cast<double *>(c); }
inline const double *as_real(const cplx *c) { return reinterpret_cast<const double *>(c); }

void scale(cplx *c, const double *s, std::size_t n) {
  double *p = as_real(c);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(p + 2 * i);
    _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(v, load_pairs(s + i)));
  }
  for (; i < n; ++i) {
    p[2 * i] *= s[i];
    p[2 * i + 1] *= s[i];
  }
}

void scale_into(const cplx *c, const double *s, cplx *out, std::size_t n) {
  const double *p = as_real(c);
  double *q = as_real(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(q + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(p + 2 * i), load_pairs(s + i)));
  for (; i < n; ++i) {
    q[2 * i] = p[2 * i] * s[i];
    q[2 * i + 1] = p[2 * i + 1] * s[i];
  }
}

// i k c = (-k im, k re)
inline __m256d rotate(__m256d v, const double *k) {
  const __m256d sign = _mm256_setr_pd(-1.0, 1.0, -1.0, 1.0);
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_mul_pd(_mm256_mul_pd(swapped, load_pairs(k)), sign);
}

void derivative_into(const cplx *c, const double *k, cplx *out, std::size_t n) {
  const double *p = as_real(c);
  double *q = as_real(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(q + 2 * i, rotate(_mm256_loadu_pd(p + 2 * i), k + i));
  for (; i < n; ++i) {
    const double re = p[2 * i], im = p[2 * i + 1];
    q[2 * i] = -(k[i] * im);
    q[2 * i + 1] = k[i] * re;
  }
}

void derivative_add(const cplx *c, const double *k, cplx *out, std::size_t n) {
  const double *p = as_real(c);
  double *q = as_real(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d acc = _mm256_loadu_pd(q + 2 * i);
    _mm256_storeu_pd(q + 2 * i, _mm256_add_pd(acc, rotate(_mm256_loadu_pd(p + 2 * i), k + i)));
  }
  for (; i < n; ++i) {
    const double re = p[2 * i], im = p[2 * i + 1];
    q[2 * i] += -(k[i] * im);
    q[2 * i + 1] += k[i] * re;
  }
}

void combine(const cplx *a, const double *sa, const cplx *b, const double *sb, cplx *out,
             std::size_t n) {
  const double *pa = as_real(a);
  const double *pb = as_real(b);
  double *q = as_real(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d rb = _mm256_mul_pd(_mm256_loadu_pd(pb + 2 * i), load_pairs(sb + i));
    _mm256_storeu_pd(q + 2 * i,
                     _mm256_fmadd_pd(_mm256_loadu_pd(pa + 2 * i), load_pairs(sa + i), rb));
  }
  for (; i < n; ++i) {
    q[2 * i] = pa[2 * i] * sa[i] + pb[2 * i] * sb[i];
    q[2 * i + 1] = pa[2 * i + 1] * sa[i] + pb[2 * i + 1] * sb[i];
  }
}

inline __m256d wp(__m256d s) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d t = _mm256_mul_pd(s, _mm256_sub_pd(one, s));
  const __m256d r = _mm256_fnmadd_pd(_mm256_set1_pd(2.0), s, one);
  return _mm256_mul_pd(t, r);
}

inline double wp(double s) { return s * (1.0 - s) * (1.0 - 2.0 * s); }

void explicit_potential(const double *u, double alpha, double inv_eps2, double *out,
                        std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d ve = _mm256_set1_pd(inv_eps2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_loadu_pd(u + i);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_fnmadd_pd(va, s, wp(s)), ve));
  }
  for (; i < n; ++i) out[i] = (wp(u[i]) - alpha * u[i]) * inv_eps2;
}

void double_well_derivative(const double *u, double *out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, wp(_mm256_loadu_pd(u + i)));
  for (; i < n; ++i) out[i] = wp(u[i]);
}

void double_well(const double *u, double *out, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_loadu_pd(u + i);
    const __m256d t = _mm256_mul_pd(s, _mm256_sub_pd(one, s));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(half, _mm256_mul_pd(t, t)));
  }
  for (; i < n; ++i) {
    const double t = u[i] * (1.0 - u[i]);
    out[i] = 0.5 * t * t;
  }
}

inline double clamp_scalar(double s, bool &clamped) {
  const double c = s < -0.5 ? -0.5 : (s > 1.5 ? 1.5 : s);
  clamped |= c != s;
  return c;
}

inline __m256d clamp_vec(__m256d s, int &mask) {
  const __m256d c = _mm256_min_pd(_mm256_max_pd(s, _mm256_set1_pd(-0.5)), _mm256_set1_pd(1.5));
  mask |= _mm256_movemask_pd(_mm256_cmp_pd(c, s, _CMP_NEQ_UQ));
  return c;
}

bool shifted_mobility(const double *u, double scale, double shift, double *out,
                      std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d vs = _mm256_set1_pd(scale);
  const __m256d vm = _mm256_set1_pd(shift);
  int mask = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = clamp_vec(_mm256_loadu_pd(u + i), mask);
    const __m256d t = _mm256_mul_pd(s, _mm256_sub_pd(one, s));
    _mm256_storeu_pd(out + i, _mm256_fmsub_pd(vs, _mm256_mul_pd(t, t), vm));
  }
  bool clamped = mask != 0;
  for (; i < n; ++i) {
    const double s = clamp_scalar(u[i], clamped);
    const double t = s * (1.0 - s);
    out[i] = scale * (t * t) - shift;
  }
  return clamped;
}

bool sqrt_mobility(const double *u, double floor, double *out, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d vf = _mm256_set1_pd(floor);
  int mask = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = clamp_vec(_mm256_loadu_pd(u + i), mask);
    const __m256d t = _mm256_mul_pd(s, _mm256_sub_pd(one, s));
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(_mm256_fmadd_pd(t, t, vf)));
  }
  bool clamped = mask != 0;
  for (; i < n; ++i) {
    const double s = clamp_scalar(u[i], clamped);
    const double t = s * (1.0 - s);
    const __m128d v = _mm_set_sd(t * t + floor);
    out[i] = _mm_cvtsd_f64(_mm_sqrt_sd(v, v));
  }
  return clamped;
}

void multiply(const double *a, const double *b, double *out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void divide(const double *a, const double *b, double *out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] / b[i];
}

void axpy(double a, const double *x, double *y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void linear(const double *x, double a, const double *y, double *out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i,
                     _mm256_fmadd_pd(va, _mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = x[i] + a * y[i];
}

void product_add(double a, const double *x, const double *y, double *out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xy = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(va, xy, _mm256_loadu_pd(out + i)));
  }
  for (; i < n; ++i) out[i] += a * (x[i] * y[i]);
}

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum(const double *x, std::size_t n) {
  if (n <= 256) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
      acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
      acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return sum(x, h) + sum(x + h, n - h);
}

void min_max(const double *x, std::size_t n, double *lo, double *hi) {
  double a = x[0], b = x[0];
  std::size_t i = 0;
  if (n >= 4) {
    __m256d vlo = _mm256_loadu_pd(x);
    __m256d vhi = vlo;
    for (i = 4; i + 4 <= n; i += 4) {
      const __m256d v = _mm256_loadu_pd(x + i);
      vlo = _mm256_min_pd(vlo, v);
      vhi = _mm256_max_pd(vhi, v);
    }
    alignas(32) double l[4], h[4];
    _mm256_store_pd(l, vlo);
    _mm256_store_pd(h, vhi);
    a = l[0];
    b = h[0];
    for (int j = 1; j < 4; ++j) {
      a = l[j] < a ? l[j] : a;
      b = h[j] > b ? h[j] : b;
    }
  }
  for (; i < n; ++i) {
    a = x[i] < a ? x[i] : a;
    b = x[i] > b ? x[i] : b;
  }
  *lo = a;
  *hi = b;
}

} // namespace

extern const Table avx2_table;
const Table avx2_table{
    "avx2",           scale,       scale_into,       derivative_into,
    derivative_add,   combine,     explicit_potential, double_well_derivative,
    double_well,      shifted_mobility, sqrt_mobility, multiply,
    divide,           axpy,        linear,           product_add,
    sum,              min_max,
};

} // namespace ddch::kernels
