#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

#include "actnext/error.hpp"
#include "actnext/kernels.hpp"

namespace actnext::kernels {

const KernelTable& scalar_table();
#ifdef ACTNEXT_AVX2_BUILT
const KernelTable& avx2_table();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend pick_default() {
  if (const char* env = std::getenv("ACTNEXT_KERNELS")) {
    std::string s(env);
    if (s == "scalar") return Backend::Scalar;
    if (s == "avx2") {
      if (!backend_available(Backend::Avx2))
        throw UsageError("ACTNEXT_KERNELS=avx2 but avx2 is not available on this host");
      return Backend::Avx2;
    }
    if (!s.empty()) throw UsageError("unknown ACTNEXT_KERNELS value: " + s);
  }
  return backend_available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& active_slot() {
  static std::atomic<Backend> slot{pick_default()};
  return slot;
}

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "?";
}

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#ifdef ACTNEXT_AVX2_BUILT
      return cpu_has_avx2();
#else
      return false;
#endif
  }
  return false;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::Scalar};
  if (backend_available(Backend::Avx2)) out.push_back(Backend::Avx2);
  return out;
}

const KernelTable& table(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return scalar_table();
    case Backend::Avx2:
#ifdef ACTNEXT_AVX2_BUILT
      if (cpu_has_avx2()) return avx2_table();
#endif
      throw UsageError("avx2 kernel backend not available on this host");
  }
  throw UsageError("unknown kernel backend");
}

Backend active_backend() { return active_slot().load(std::memory_order_relaxed); }

void force_backend(Backend b) {
  if (!backend_available(b))
    throw UsageError(std::string("kernel backend not available: ") + backend_name(b));
  active_slot().store(b, std::memory_order_relaxed);
}

void softmax_inplace(std::size_t n, double* x) {
  if (n == 0) return;
  double mx = x[0];
  for (std::size_t i = 1; i < n; ++i) mx = std::max(mx, x[i]);
  for (std::size_t i = 0; i < n; ++i) x[i] -= mx;
  vexp(n, x, x);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  scale(n, 1.0 / s, x);
}

}  // namespace actnext::kernels
