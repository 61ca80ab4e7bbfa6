#include <bit>
#include <cmath>
#include <cstdint>

#include "actnext/kernels.hpp"
#include "exp_poly.hpp"

// Reference backend. Plain sequential loops; reductions accumulate in
// index order. SIMD backends are tested against these semantics.

namespace actnext::kernels {
namespace {

using detail::kExpClamp;
using detail::kExpCoeff;
using detail::kLn2Hi;
using detail::kLn2Lo;
using detail::kLog2E;

void s_axpy(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void s_scale(std::size_t n, double a, double* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double s_dot(std::size_t n, const double* x, const double* y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void s_mul(std::size_t n, const double* a, const double* b, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void s_mul_add(std::size_t n, const double* a, const double* b, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

double exp_one(double x) {
  if (x > kExpClamp) x = kExpClamp;
  if (x < -kExpClamp) x = -kExpClamp;
  double k = std::nearbyint(x * kLog2E);
  double r = x - k * kLn2Hi;
  r -= k * kLn2Lo;
  double p = kExpCoeff[0];
  for (int i = 1; i < 12; ++i) p = p * r + kExpCoeff[i];
  p = p * r * r + r + 1.0;
  auto ki = static_cast<std::int64_t>(k);
  double scale2k = std::bit_cast<double>((ki + 1023) << 52);
  return p * scale2k;
}

void s_vexp(std::size_t n, const double* x, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = exp_one(x[i]);
}

void s_vsigmoid(std::size_t n, const double* x, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = 1.0 / (1.0 + exp_one(-x[i]));
}

void s_vtanh(std::size_t n, const double* x, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    double a = x[i];
    double t = a < 0.0 ? -2.0 * a : 2.0 * a;
    if (t > 60.0) t = 60.0;  // tanh(30) == 1 within double
    double e = exp_one(t);
    double m = 1.0 - 2.0 / (e + 1.0);
    out[i] = a < 0.0 ? -m : m;
  }
}

void s_add_rowwise(std::size_t rows, std::size_t cols, double* m, const double* v) {
  for (std::size_t r = 0; r < rows; ++r) {
    double* row = m + r * cols;
    for (std::size_t c = 0; c < cols; ++c) row[c] += v[c];
  }
}

void s_gemm_nt(std::size_t M, std::size_t N, std::size_t K, const double* A,
               const double* B, double* C, bool acc) {
  for (std::size_t i = 0; i < M; ++i) {
    const double* a = A + i * K;
    for (std::size_t j = 0; j < N; ++j) {
      const double* b = B + j * K;
      double s = 0.0;
      for (std::size_t k = 0; k < K; ++k) s += a[k] * b[k];
      double* c = C + i * N + j;
      *c = acc ? *c + s : s;
    }
  }
}

void s_gemm_nn(std::size_t M, std::size_t N, std::size_t K, const double* A,
               const double* B, double* C, bool acc) {
  for (std::size_t i = 0; i < M; ++i) {
    double* c = C + i * N;
    if (!acc)
      for (std::size_t j = 0; j < N; ++j) c[j] = 0.0;
    const double* a = A + i * K;
    for (std::size_t k = 0; k < K; ++k) {
      double aik = a[k];
      const double* b = B + k * N;
      for (std::size_t j = 0; j < N; ++j) c[j] += aik * b[j];
    }
  }
}

void s_gemm_tn(std::size_t M, std::size_t N, std::size_t K, const double* A,
               const double* B, double* C, bool acc) {
  if (!acc)
    for (std::size_t i = 0; i < M * N; ++i) C[i] = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const double* a = A + k * M;
    const double* b = B + k * N;
    for (std::size_t i = 0; i < M; ++i) {
      double aki = a[i];
      double* c = C + i * N;
      for (std::size_t j = 0; j < N; ++j) c[j] += aki * b[j];
    }
  }
}

void s_adam_update(std::size_t n, double* p, const double* g, double* m,
                   double* v, double lr, double beta1, double beta2, double eps,
                   double bc1, double bc2) {
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
    v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
    double mhat = m[i] / bc1;
    double vhat = v[i] / bc2;
    p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{
      s_axpy,   s_scale,      s_dot,     s_mul,     s_mul_add,
      s_vexp,   s_vsigmoid,   s_vtanh,   s_add_rowwise,
      s_gemm_nt, s_gemm_nn,   s_gemm_tn, s_adam_update,
  };
  return t;
}

}  // namespace actnext::kernels
