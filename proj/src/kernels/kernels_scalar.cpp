// SPDX-License-Identifier: Apache-2.0
//
// Scalar reference kernels. These are the semantic ground truth the SIMD
// variants are tested against; keep them simple enough to audit by eye.

#include "udet/kernels.hpp"

namespace udet::kernels {
namespace {

double dot_scalar(const double* a, const double* b, size_t n) {
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void gemm_nn_scalar(size_t m, size_t n, size_t k, const double* a,
                    const double* b, double* c) {
  for (size_t i = 0; i < m; ++i) {
    for (size_t l = 0; l < k; ++l) {
      const double ail = a[i * k + l];
      const double* brow = b + l * n;
      double* crow = c + i * n;
      for (size_t j = 0; j < n; ++j) crow[j] += ail * brow[j];
    }
  }
}

void gemm_nt_scalar(size_t m, size_t n, size_t k, const double* a,
                    const double* b, double* c) {
  for (size_t i = 0; i < m; ++i) {
    const double* arow = a + i * k;
    for (size_t j = 0; j < n; ++j) {
      c[i * n + j] += dot_scalar(arow, b + j * k, k);
    }
  }
}

void gemm_tn_scalar(size_t m, size_t n, size_t k, const double* a,
                    const double* b, double* c) {
  for (size_t l = 0; l < k; ++l) {
    const double* arow = a + l * m;
    const double* brow = b + l * n;
    for (size_t i = 0; i < m; ++i) {
      const double ali = arow[i];
      double* crow = c + i * n;
      for (size_t j = 0; j < n; ++j) crow[j] += ali * brow[j];
    }
  }
}

void leaky_forward_scalar(const double* x, double* y, size_t n, double slope) {
  for (size_t i = 0; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : slope * x[i];
}

void leaky_backward_scalar(const double* y, const double* dy, double* dx,
                           size_t n, double slope) {
  for (size_t i = 0; i < n; ++i) dx[i] = dy[i] * (y[i] > 0.0 ? 1.0 : slope);
}

void sgd_update_scalar(double* p, double* v, const double* g, size_t n,
                       double lr, double momentum, double decay) {
  for (size_t i = 0; i < n; ++i) {
    v[i] = momentum * v[i] - lr * (g[i] + decay * p[i]);
    p[i] += v[i];
  }
}

}  // namespace

const KernelTable kScalarTable = {
    "scalar",          dot_scalar,           axpy_scalar,
    gemm_nn_scalar,    gemm_nt_scalar,       gemm_tn_scalar,
    leaky_forward_scalar, leaky_backward_scalar, sgd_update_scalar,
};

}  // namespace udet::kernels
