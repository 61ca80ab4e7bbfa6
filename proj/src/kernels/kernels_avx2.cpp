#include <immintrin.h>

#include <cmath>
#include <cstdint>

#include "actnext/kernels.hpp"
#include "exp_poly.hpp"

// AVX2+FMA backend. Compiled only on x86-64 (see src/CMakeLists.txt) and
// selected at runtime when the CPU reports avx2+fma. Reductions use fixed
// lane order, so results are reproducible run to run; they differ from the
// scalar backend only by reassociation and FMA rounding.

namespace actnext::kernels {
namespace {

using detail::kExpClamp;
using detail::kExpCoeff;
using detail::kLn2Hi;
using detail::kLn2Lo;
using detail::kLog2E;

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

void a_axpy(std::size_t n, double a, const double* x, double* y) {
  __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void a_scale(std::size_t n, double a, double* x) {
  __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

double a_dot(std::size_t n, const double* x, const double* y) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void a_mul(std::size_t n, const double* a, const double* b, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void a_mul_add(std::size_t n, const double* a, const double* b, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vo = _mm256_loadu_pd(out + i);
    vo = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), vo);
    _mm256_storeu_pd(out + i, vo);
  }
  for (; i < n; ++i) out[i] += a[i] * b[i];
}

inline __m256d exp4(__m256d x) {
  const __m256d clamp = _mm256_set1_pd(kExpClamp);
  x = _mm256_min_pd(x, clamp);
  x = _mm256_max_pd(x, _mm256_sub_pd(_mm256_setzero_pd(), clamp));
  __m256d k = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kLog2E)),
                              _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kLn2Hi), x);
  r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kLn2Lo), r);
  __m256d p = _mm256_set1_pd(kExpCoeff[0]);
  for (int i = 1; i < 12; ++i)
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kExpCoeff[i]));
  // p*r*r + r + 1
  p = _mm256_mul_pd(p, r);
  p = _mm256_fmadd_pd(p, r, _mm256_add_pd(r, _mm256_set1_pd(1.0)));
  // scale by 2^k via exponent bits; |k| <= 1022 after the clamp above
  __m128i k32 = _mm256_cvttpd_epi32(k);
  __m256i k64 = _mm256_cvtepi32_epi64(k32);
  k64 = _mm256_add_epi64(k64, _mm256_set1_epi64x(1023));
  k64 = _mm256_slli_epi64(k64, 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(k64));
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
  double scale2k;
  std::int64_t bits = (ki + 1023) << 52;
  __builtin_memcpy(&scale2k, &bits, sizeof(double));
  return p * scale2k;
}

void a_vexp(std::size_t n, const double* x, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, exp4(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = exp_one(x[i]);
}

void a_vsigmoid(std::size_t n, const double* x, double* out) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d e = exp4(_mm256_sub_pd(_mm256_setzero_pd(), _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(out + i, _mm256_div_pd(one, _mm256_add_pd(one, e)));
  }
  for (; i < n; ++i) out[i] = 1.0 / (1.0 + exp_one(-x[i]));
}

void a_vtanh(std::size_t n, const double* x, double* out) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d cap = _mm256_set1_pd(60.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    __m256d ax = _mm256_andnot_pd(sign, v);
    __m256d t = _mm256_min_pd(_mm256_mul_pd(two, ax), cap);
    __m256d e = exp4(t);
    __m256d m = _mm256_sub_pd(one, _mm256_div_pd(two, _mm256_add_pd(e, one)));
    _mm256_storeu_pd(out + i, _mm256_or_pd(m, _mm256_and_pd(sign, v)));
  }
  for (; i < n; ++i) {
    double a = x[i];
    double t = a < 0.0 ? -2.0 * a : 2.0 * a;
    if (t > 60.0) t = 60.0;
    double e = exp_one(t);
    double m = 1.0 - 2.0 / (e + 1.0);
    out[i] = a < 0.0 ? -m : m;
  }
}

void a_add_rowwise(std::size_t rows, std::size_t cols, double* m, const double* v) {
  for (std::size_t r = 0; r < rows; ++r) {
    double* row = m + r * cols;
    std::size_t c = 0;
    for (; c + 4 <= cols; c += 4)
      _mm256_storeu_pd(row + c, _mm256_add_pd(_mm256_loadu_pd(row + c), _mm256_loadu_pd(v + c)));
    for (; c < cols; ++c) row[c] += v[c];
  }
}

void a_gemm_nt(std::size_t M, std::size_t N, std::size_t K, const double* A,
               const double* B, double* C, bool acc) {
  for (std::size_t i = 0; i < M; ++i) {
    const double* a = A + i * K;
    std::size_t j = 0;
    for (; j + 4 <= N; j += 4) {
      const double* b0 = B + (j + 0) * K;
      const double* b1 = B + (j + 1) * K;
      const double* b2 = B + (j + 2) * K;
      const double* b3 = B + (j + 3) * K;
      __m256d acc0 = _mm256_setzero_pd();
      __m256d acc1 = _mm256_setzero_pd();
      __m256d acc2 = _mm256_setzero_pd();
      __m256d acc3 = _mm256_setzero_pd();
      std::size_t k = 0;
      for (; k + 4 <= K; k += 4) {
        __m256d av = _mm256_loadu_pd(a + k);
        acc0 = _mm256_fmadd_pd(av, _mm256_loadu_pd(b0 + k), acc0);
        acc1 = _mm256_fmadd_pd(av, _mm256_loadu_pd(b1 + k), acc1);
        acc2 = _mm256_fmadd_pd(av, _mm256_loadu_pd(b2 + k), acc2);
        acc3 = _mm256_fmadd_pd(av, _mm256_loadu_pd(b3 + k), acc3);
      }
      // reduce the four accumulators into one vector of row sums
      __m256d t01 = _mm256_hadd_pd(acc0, acc1);
      __m256d t23 = _mm256_hadd_pd(acc2, acc3);
      __m256d swap = _mm256_permute2f128_pd(t01, t23, 0x21);
      __m256d blend = _mm256_blend_pd(t01, t23, 0b1100);
      __m256d sums = _mm256_add_pd(swap, blend);
      double tail[4] = {0.0, 0.0, 0.0, 0.0};
      for (; k < K; ++k) {
        tail[0] += a[k] * b0[k];
        tail[1] += a[k] * b1[k];
        tail[2] += a[k] * b2[k];
        tail[3] += a[k] * b3[k];
      }
      sums = _mm256_add_pd(sums, _mm256_loadu_pd(tail));
      double* c = C + i * N + j;
      if (acc) sums = _mm256_add_pd(sums, _mm256_loadu_pd(c));
      _mm256_storeu_pd(c, sums);
    }
    for (; j < N; ++j) {
      const double* b = B + j * K;
      __m256d accv = _mm256_setzero_pd();
      std::size_t k = 0;
      for (; k + 4 <= K; k += 4)
        accv = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), accv);
      double s = hsum(accv);
      for (; k < K; ++k) s += a[k] * b[k];
      double* c = C + i * N + j;
      *c = acc ? *c + s : s;
    }
  }
}

inline void row_axpy(std::size_t n, double a, const double* x, double* y) {
  __m256d va = _mm256_set1_pd(a);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d vy = _mm256_loadu_pd(y + j);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + j), vy);
    _mm256_storeu_pd(y + j, vy);
  }
  for (; j < n; ++j) y[j] += a * x[j];
}

void a_gemm_nn(std::size_t M, std::size_t N, std::size_t K, const double* A,
               const double* B, double* C, bool acc) {
  for (std::size_t i = 0; i < M; ++i) {
    double* c = C + i * N;
    if (!acc)
      for (std::size_t j = 0; j < N; ++j) c[j] = 0.0;
    const double* a = A + i * K;
    for (std::size_t k = 0; k < K; ++k) row_axpy(N, a[k], B + k * N, c);
  }
}

void a_gemm_tn(std::size_t M, std::size_t N, std::size_t K, const double* A,
               const double* B, double* C, bool acc) {
  if (!acc)
    for (std::size_t i = 0; i < M * N; ++i) C[i] = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const double* a = A + k * M;
    const double* b = B + k * N;
    for (std::size_t i = 0; i < M; ++i) row_axpy(N, a[i], b, C + i * N);
  }
}

void a_adam_update(std::size_t n, double* p, const double* g, double* m,
                   double* v, double lr, double beta1, double beta2, double eps,
                   double bc1, double bc2) {
  const __m256d vb1 = _mm256_set1_pd(beta1);
  const __m256d vb2 = _mm256_set1_pd(beta2);
  const __m256d vc1 = _mm256_set1_pd(1.0 - beta1);
  const __m256d vc2 = _mm256_set1_pd(1.0 - beta2);
  const __m256d vlr = _mm256_set1_pd(lr);
  const __m256d veps = _mm256_set1_pd(eps);
  const __m256d vbc1 = _mm256_set1_pd(bc1);
  const __m256d vbc2 = _mm256_set1_pd(bc2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vg = _mm256_loadu_pd(g + i);
    __m256d vm = _mm256_fmadd_pd(vc1, vg, _mm256_mul_pd(vb1, _mm256_loadu_pd(m + i)));
    __m256d vv = _mm256_fmadd_pd(vc2, _mm256_mul_pd(vg, vg),
                                 _mm256_mul_pd(vb2, _mm256_loadu_pd(v + i)));
    _mm256_storeu_pd(m + i, vm);
    _mm256_storeu_pd(v + i, vv);
    __m256d mhat = _mm256_div_pd(vm, vbc1);
    __m256d vhat = _mm256_div_pd(vv, vbc2);
    __m256d den = _mm256_add_pd(_mm256_sqrt_pd(vhat), veps);
    __m256d upd = _mm256_div_pd(_mm256_mul_pd(vlr, mhat), den);
    _mm256_storeu_pd(p + i, _mm256_sub_pd(_mm256_loadu_pd(p + i), upd));
  }
  for (; i < n; ++i) {
    m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
    v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
    p[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + eps);
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{
      a_axpy,   a_scale,      a_dot,     a_mul,     a_mul_add,
      a_vexp,   a_vsigmoid,   a_vtanh,   a_add_rowwise,
      a_gemm_nt, a_gemm_nn,   a_gemm_tn, a_adam_update,
  };
  return t;
}

}  // namespace actnext::kernels
