// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

// Low-level arithmetic kernels behind the network's inner loops. Every entry
// has a scalar reference implementation and may have SIMD variants; the
// active table is chosen once at runtime (CPU detection, UDET_KERNELS env
// var, or select_backend). Variants are equivalence-tested against the
// scalar reference.
//
// All matrices are row-major, densely packed. gemm_* accumulate into C.

namespace udet::kernels {

struct KernelTable {
  const char* name;

  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, size_t n);

  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, size_t n);

  // C[m x n] += A[m x k] * B[k x n]
  void (*gemm_nn)(size_t m, size_t n, size_t k, const double* a,
                  const double* b, double* c);

  // C[m x n] += A[m x k] * B[n x k]^T  (rows of A dotted with rows of B)
  void (*gemm_nt)(size_t m, size_t n, size_t k, const double* a,
                  const double* b, double* c);

  // C[m x n] += A[k x m]^T * B[k x n]
  void (*gemm_tn)(size_t m, size_t n, size_t k, const double* a,
                  const double* b, double* c);

  // y[i] = x[i] > 0 ? x[i] : slope * x[i]
  void (*leaky_forward)(const double* x, double* y, size_t n, double slope);

  // dx[i] = dy[i] * (y[i] > 0 ? 1 : slope), where y is the forward output.
  // Valid because sign(y) == sign(x) for slope > 0; y == 0 takes the slope
  // branch, matching the convention that the derivative at 0 is the slope.
  void (*leaky_backward)(const double* y, const double* dy, double* dx,
                         size_t n, double slope);

  // v[i] = momentum * v[i] - lr * (g[i] + decay * p[i]);  p[i] += v[i]
  void (*sgd_update)(double* p, double* v, const double* g, size_t n,
                     double lr, double momentum, double decay);
};

enum class Backend { kScalar, kAvx2 };

// Table for an explicit backend. Throws ConfigError if the backend is not
// compiled in or the CPU lacks support.
const KernelTable& table(Backend backend);

// Active table. First use resolves the default: UDET_KERNELS=scalar|avx2
// when set, otherwise the widest supported backend.
const KernelTable& active();

void select_backend(Backend backend);
Backend active_backend();

bool avx2_available();                   // compiled in and supported by CPU
std::vector<Backend> available_backends();
std::string backend_name(Backend backend);

}  // namespace udet::kernels
