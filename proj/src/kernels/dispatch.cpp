// SPDX-License-Identifier: Apache-2.0

#include "udet/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "udet/errors.hpp"

namespace udet::kernels {

extern const KernelTable kScalarTable;
#if defined(__x86_64__)
extern const KernelTable kAvx2Table;  // defined only when compiled with AVX2
#endif

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend default_backend() {
  if (const char* env = std::getenv("UDET_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::kScalar;
    if (std::strcmp(env, "avx2") == 0) return Backend::kAvx2;
    if (std::strcmp(env, "auto") != 0)
      throw ConfigError(std::string("UDET_KERNELS: unknown backend '") + env +
                        "' (expected scalar, avx2 or auto)");
  }
  return cpu_has_avx2() ? Backend::kAvx2 : Backend::kScalar;
}

Backend& active_slot() {
  static Backend backend = default_backend();
  return backend;
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__)
  return cpu_has_avx2();
#else
  return false;
#endif
}

const KernelTable& table(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return kScalarTable;
    case Backend::kAvx2:
#if defined(__x86_64__)
      if (avx2_available()) return kAvx2Table;
#endif
      throw ConfigError("avx2 kernels requested but not supported on this CPU");
  }
  throw ConfigError("unknown kernel backend");
}

const KernelTable& active() { return table(active_slot()); }

void select_backend(Backend backend) {
  table(backend);  // validate
  active_slot() = backend;
}

Backend active_backend() { return active_slot(); }

std::vector<Backend> available_backends() {
  std::vector<Backend> out = {Backend::kScalar};
  if (avx2_available()) out.push_back(Backend::kAvx2);
  return out;
}

std::string backend_name(Backend backend) {
  return backend == Backend::kScalar ? "scalar" : "avx2";
}

}  // namespace udet::kernels
