#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace actnext::kernels {

enum class Backend { Scalar, Avx2 };

// Function table for the data-parallel inner loops. One instance per
// backend; the scalar table is the reference semantics, SIMD tables must
// agree with it within floating-point reassociation tolerance (see
// tests/test_kernels.cpp).
//
// Matrix arguments are dense row-major. For the gemm_* kernels C is
// overwritten unless `acc` is set, in which case the product is added.
struct KernelTable {
  void (*axpy)(std::size_t n, double a, const double* x, double* y);
  void (*scale)(std::size_t n, double a, double* x);
  double (*dot)(std::size_t n, const double* x, const double* y);
  void (*mul)(std::size_t n, const double* a, const double* b, double* out);
  void (*mul_add)(std::size_t n, const double* a, const double* b, double* out);
  void (*vexp)(std::size_t n, const double* x, double* out);
  void (*vsigmoid)(std::size_t n, const double* x, double* out);
  void (*vtanh)(std::size_t n, const double* x, double* out);
  // m[r] += v for every row r
  void (*add_rowwise)(std::size_t rows, std::size_t cols, double* m, const double* v);
  // C(MxN) = A(MxK) * B(NxK)^T   -- C[i][j] = dot(row_i(A), row_j(B))
  void (*gemm_nt)(std::size_t M, std::size_t N, std::size_t K, const double* A,
                  const double* B, double* C, bool acc);
  // C(MxN) = A(MxK) * B(KxN)
  void (*gemm_nn)(std::size_t M, std::size_t N, std::size_t K, const double* A,
                  const double* B, double* C, bool acc);
  // C(MxN) = A(KxM)^T * B(KxN)
  void (*gemm_tn)(std::size_t M, std::size_t N, std::size_t K, const double* A,
                  const double* B, double* C, bool acc);
  // Adam with bias correction factors bc1 = 1-beta1^t, bc2 = 1-beta2^t
  void (*adam_update)(std::size_t n, double* p, const double* g, double* m,
                      double* v, double lr, double beta1, double beta2,
                      double eps, double bc1, double bc2);
};

const char* backend_name(Backend b);
bool backend_available(Backend b);
std::vector<Backend> available_backends();
const KernelTable& table(Backend b);

// Backend in use by the wrappers below. Chosen once per process: the widest
// available SIMD variant, unless overridden by force_backend() or the
// ACTNEXT_KERNELS environment variable ("scalar" / "avx2").
Backend active_backend();
void force_backend(Backend b);

inline void axpy(std::size_t n, double a, const double* x, double* y) {
  table(active_backend()).axpy(n, a, x, y);
}
inline void scale(std::size_t n, double a, double* x) {
  table(active_backend()).scale(n, a, x);
}
inline double dot(std::size_t n, const double* x, const double* y) {
  return table(active_backend()).dot(n, x, y);
}
inline void mul(std::size_t n, const double* a, const double* b, double* out) {
  table(active_backend()).mul(n, a, b, out);
}
inline void mul_add(std::size_t n, const double* a, const double* b, double* out) {
  table(active_backend()).mul_add(n, a, b, out);
}
inline void vexp(std::size_t n, const double* x, double* out) {
  table(active_backend()).vexp(n, x, out);
}
inline void vsigmoid(std::size_t n, const double* x, double* out) {
  table(active_backend()).vsigmoid(n, x, out);
}
inline void vtanh(std::size_t n, const double* x, double* out) {
  table(active_backend()).vtanh(n, x, out);
}
inline void add_rowwise(std::size_t rows, std::size_t cols, double* m, const double* v) {
  table(active_backend()).add_rowwise(rows, cols, m, v);
}
inline void gemm_nt(std::size_t M, std::size_t N, std::size_t K, const double* A,
                    const double* B, double* C, bool acc) {
  table(active_backend()).gemm_nt(M, N, K, A, B, C, acc);
}
inline void gemm_nn(std::size_t M, std::size_t N, std::size_t K, const double* A,
                    const double* B, double* C, bool acc) {
  table(active_backend()).gemm_nn(M, N, K, A, B, C, acc);
}
inline void gemm_tn(std::size_t M, std::size_t N, std::size_t K, const double* A,
                    const double* B, double* C, bool acc) {
  table(active_backend()).gemm_tn(M, N, K, A, B, C, acc);
}
inline void adam_update(std::size_t n, double* p, const double* g, double* m,
                        double* v, double lr, double beta1, double beta2,
                        double eps, double bc1, double bc2) {
  table(active_backend()).adam_update(n, p, g, m, v, lr, beta1, beta2, eps, bc1, bc2);
}

// Numerically stable softmax over a contiguous row, in place.
void softmax_inplace(std::size_t n, double* x);

}  // namespace actnext::kernels
