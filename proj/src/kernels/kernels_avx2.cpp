// SPDX-License-Identifier: Apache-2.0
//
// AVX2+FMA kernels, 4 doubles per vector. This translation unit is compiled
// with -mavx2 -mfma; nothing in it may run unless the dispatcher has
// verified CPU support.

#include "udet/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

namespace udet::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double dot_avx2(const double* a, const double* b, size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_avx2(double alpha, const double* x, double* y, size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void gemm_nn_avx2(size_t m, size_t n, size_t k, const double* a,
                  const double* b, double* c) {
  for (size_t i = 0; i < m; ++i) {
    for (size_t l = 0; l < k; ++l) {
      axpy_avx2(a[i * k + l], b + l * n, c + i * n, n);
    }
  }
}

// Four B rows per pass so each A load feeds four FMAs.
void gemm_nt_avx2(size_t m, size_t n, size_t k, const double* a,
                  const double* b, double* c) {
  for (size_t i = 0; i < m; ++i) {
    const double* arow = a + i * k;
    double* crow = c + i * n;
    size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      const double* b0 = b + (j + 0) * k;
      const double* b1 = b + (j + 1) * k;
      const double* b2 = b + (j + 2) * k;
      const double* b3 = b + (j + 3) * k;
      __m256d acc0 = _mm256_setzero_pd();
      __m256d acc1 = _mm256_setzero_pd();
      __m256d acc2 = _mm256_setzero_pd();
      __m256d acc3 = _mm256_setzero_pd();
      size_t t = 0;
      for (; t + 4 <= k; t += 4) {
        const __m256d av = _mm256_loadu_pd(arow + t);
        acc0 = _mm256_fmadd_pd(av, _mm256_loadu_pd(b0 + t), acc0);
        acc1 = _mm256_fmadd_pd(av, _mm256_loadu_pd(b1 + t), acc1);
        acc2 = _mm256_fmadd_pd(av, _mm256_loadu_pd(b2 + t), acc2);
        acc3 = _mm256_fmadd_pd(av, _mm256_loadu_pd(b3 + t), acc3);
      }
      double s0 = hsum(acc0), s1 = hsum(acc1), s2 = hsum(acc2), s3 = hsum(acc3);
      for (; t < k; ++t) {
        const double av = arow[t];
        s0 += av * b0[t];
        s1 += av * b1[t];
        s2 += av * b2[t];
        s3 += av * b3[t];
      }
      crow[j + 0] += s0;
      crow[j + 1] += s1;
      crow[j + 2] += s2;
      crow[j + 3] += s3;
    }
    for (; j < n; ++j) crow[j] += dot_avx2(arow, b + j * k, k);
  }
}

void gemm_tn_avx2(size_t m, size_t n, size_t k, const double* a,
                  const double* b, double* c) {
  for (size_t l = 0; l < k; ++l) {
    const double* arow = a + l * m;
    const double* brow = b + l * n;
    for (size_t i = 0; i < m; ++i) {
      axpy_avx2(arow[i], brow, c + i * n, n);
    }
  }
}

void leaky_forward_avx2(const double* x, double* y, size_t n, double slope) {
  const __m256d vslope = _mm256_set1_pd(slope);
  const __m256d zero = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    const __m256d mask = _mm256_cmp_pd(v, zero, _CMP_GT_OQ);
    _mm256_storeu_pd(y + i, _mm256_blendv_pd(_mm256_mul_pd(v, vslope), v, mask));
  }
  for (; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : slope * x[i];
}

void leaky_backward_avx2(const double* y, const double* dy, double* dx,
                         size_t n, double slope) {
  const __m256d vslope = _mm256_set1_pd(slope);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(y + i), zero, _CMP_GT_OQ);
    const __m256d factor = _mm256_blendv_pd(vslope, one, mask);
    _mm256_storeu_pd(dx + i, _mm256_mul_pd(_mm256_loadu_pd(dy + i), factor));
  }
  for (; i < n; ++i) dx[i] = dy[i] * (y[i] > 0.0 ? 1.0 : slope);
}

void sgd_update_avx2(double* p, double* v, const double* g, size_t n,
                     double lr, double momentum, double decay) {
  const __m256d vmom = _mm256_set1_pd(momentum);
  const __m256d vneglr = _mm256_set1_pd(-lr);
  const __m256d vdecay = _mm256_set1_pd(decay);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d pv = _mm256_loadu_pd(p + i);
    const __m256d gv = _mm256_fmadd_pd(vdecay, pv, _mm256_loadu_pd(g + i));
    const __m256d vv = _mm256_fmadd_pd(vneglr, gv,
                                       _mm256_mul_pd(vmom, _mm256_loadu_pd(v + i)));
    _mm256_storeu_pd(v + i, vv);
    _mm256_storeu_pd(p + i, _mm256_add_pd(pv, vv));
  }
  for (; i < n; ++i) {
    v[i] = momentum * v[i] - lr * (g[i] + decay * p[i]);
    p[i] += v[i];
  }
}

}  // namespace

const KernelTable kAvx2Table = {
    "avx2",          dot_avx2,           axpy_avx2,
    gemm_nn_avx2,    gemm_nt_avx2,       gemm_tn_avx2,
    leaky_forward_avx2, leaky_backward_avx2, sgd_update_avx2,
};

}  // namespace udet::kernels

#endif  // __AVX2__ && __FMA__
