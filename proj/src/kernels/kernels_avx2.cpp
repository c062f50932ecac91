#include <immintrin.h>

#include <cassert>

#include "qgraph/kernels.hpp"

namespace qgraph::kernels::avx2 {

namespace {

// Two complex doubles per register, laid out [re0, im0, re1, im1].

inline const double* as_doubles(const Complex* p) {
  return reinterpret_cast<const double*>(p);
}

inline double* as_doubles(Complex* p) { return reinterpret_cast<double*>(p); }

// Lane-wise complex product v * w.
inline __m256d cmul(__m256d v, __m256d w) {
  const __m256d w_re = _mm256_movedup_pd(w);
  const __m256d w_im = _mm256_permute_pd(w, 0b1111);
  const __m256d v_swap = _mm256_permute_pd(v, 0b0101);
  return _mm256_addsub_pd(_mm256_mul_pd(v, w_re), _mm256_mul_pd(v_swap, w_im));
}

}  // namespace

void caxpy(Complex a, std::span<const Complex> x, std::span<Complex> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  const double* xp = as_doubles(x.data());
  double* yp = as_doubles(y.data());
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0b0101);
    const __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(xv, ar), _mm256_mul_pd(xs, ai));
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yp + 2 * i), prod));
  }
  if (i < n) scalar::caxpy(a, x.subspan(i), y.subspan(i));
}

Complex cdotu(std::span<const Complex> x, std::span<const Complex> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  const double* xp = as_doubles(x.data());
  const double* yp = as_doubles(y.data());
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, cmul(_mm256_loadu_pd(xp + 2 * i), _mm256_loadu_pd(yp + 2 * i)));
    acc1 = _mm256_add_pd(acc1, cmul(_mm256_loadu_pd(xp + 2 * i + 4),
                                    _mm256_loadu_pd(yp + 2 * i + 4)));
  }
  for (; i + 2 <= n; i += 2) {
    acc0 = _mm256_add_pd(acc0, cmul(_mm256_loadu_pd(xp + 2 * i), _mm256_loadu_pd(yp + 2 * i)));
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  const __m128d lanes = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
  alignas(16) double parts[2];
  _mm_store_pd(parts, lanes);
  Complex sum(parts[0], parts[1]);
  if (i < n) sum += scalar::cdotu(x.subspan(i), y.subspan(i));
  return sum;
}

void horner(std::span<const Complex> coeffs, std::span<const Complex> z,
            std::span<Complex> out) {
  assert(z.size() == out.size());
  const std::size_t n = z.size();
  if (coeffs.empty()) {
    for (auto& o : out) o = 0.0;
    return;
  }
  const double* zp = as_doubles(z.data());
  double* op = as_doubles(out.data());
  const std::size_t degree = coeffs.size() - 1;
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d zv = _mm256_loadu_pd(zp + 2 * k);
    const Complex top = coeffs[degree];
    __m256d acc = _mm256_setr_pd(top.real(), top.imag(), top.real(), top.imag());
    for (std::size_t j = degree; j-- > 0;) {
      const Complex c = coeffs[j];
      acc = _mm256_add_pd(cmul(acc, zv), _mm256_setr_pd(c.real(), c.imag(), c.real(), c.imag()));
    }
    _mm256_storeu_pd(op + 2 * k, acc);
  }
  if (k < n) scalar::horner(coeffs, z.subspan(k), out.subspan(k));
}

}  // namespace qgraph::kernels::avx2
