#pragma once

#include <cstddef>

namespace hignn::kernels {

// Compute kernels exist twice: a serial reference implementation and an
// OpenMP one. Both produce bit-identical results because every output
// element is accumulated by exactly one thread in a fixed order; the tests
// assert equality and the benchmark compares their throughput. The
// backend applies process-wide.
enum class Backend { Serial, OpenMP };

Backend backend();
void set_backend(Backend b);
// thread cap for the OpenMP backend (also read from HIGNN_THREADS at startup)
void set_threads(int n);
int threads();

enum class Unary { Relu, LeakyRelu, Tanh, Sigmoid, Exp, Log };
enum class Binary { Add, Sub, Mul, Div };

// C[n x m] = op(A) * op(B), A effectively n x k, B effectively k x m;
// accumulate adds into C instead of overwriting
void matmul(const double* A, bool ta, const double* B, bool tb, double* C,
            int n, int k, int m, bool accumulate);

// out[i, s] = sum_{j,k} Xi[i, j] * W[s, j, k] * Xj[i, k]
void bilinear_fwd(const double* Xi, const double* W, const double* Xj,
                  double* out, int n, int d, int a);
// gradients accumulate into dXi / dW / dXj (any may be null)
void bilinear_bwd(const double* Xi, const double* W, const double* Xj,
                  const double* g, double* dXi, double* dW, double* dXj,
                  int n, int d, int a);

// out[i, s*dd + t] = X[i, s*dd + t] * alpha[i, s]   with dd = d / a
void slice_scale_fwd(const double* X, const double* alpha, double* out,
                     int n, int d, int a);
void slice_scale_bwd(const double* X, const double* alpha, const double* g,
                     double* dX, double* dalpha, int n, int d, int a);

void vmap(Unary f, const double* x, double* y, std::size_t n);
void vzip(Binary f, const double* a, const double* b, double* out,
          std::size_t n);
// acc += a * b elementwise
void vacc_mul(const double* a, const double* b, double* acc, std::size_t n);

namespace serial {
void matmul(const double* A, bool ta, const double* B, bool tb, double* C,
            int n, int k, int m, bool accumulate);
void bilinear_fwd(const double* Xi, const double* W, const double* Xj,
                  double* out, int n, int d, int a);
void bilinear_bwd(const double* Xi, const double* W, const double* Xj,
                  const double* g, double* dXi, double* dW, double* dXj,
                  int n, int d, int a);
void slice_scale_fwd(const double* X, const double* alpha, double* out,
                     int n, int d, int a);
void slice_scale_bwd(const double* X, const double* alpha, const double* g,
                     double* dX, double* dalpha, int n, int d, int a);
void vmap(Unary f, const double* x, double* y, std::size_t n);
void vzip(Binary f, const double* a, const double* b, double* out,
          std::size_t n);
void vacc_mul(const double* a, const double* b, double* acc, std::size_t n);
}  // namespace serial

namespace omp {
void matmul(const double* A, bool ta, const double* B, bool tb, double* C,
            int n, int k, int m, bool accumulate);
void bilinear_fwd(const double* Xi, const double* W, const double* Xj,
                  double* out, int n, int d, int a);
void bilinear_bwd(const double* Xi, const double* W, const double* Xj,
                  const double* g, double* dXi, double* dW, double* dXj,
                  int n, int d, int a);
void slice_scale_fwd(const double* X, const double* alpha, double* out,
                     int n, int d, int a);
void slice_scale_bwd(const double* X, const double* alpha, const double* g,
                     double* dX, double* dalpha, int n, int d, int a);
void vmap(Unary f, const double* x, double* y, std::size_t n);
void vzip(Binary f, const double* a, const double* b, double* out,
          std::size_t n);
void vacc_mul(const double* a, const double* b, double* acc, std::size_t n);
}  // namespace omp

}  // namespace hignn::kernels
