#include "hignn/kernels.hpp"

#include <cstdlib>
#include <omp.h>

namespace hignn::kernels {

namespace {

struct State {
  Backend backend = Backend::OpenMP;
  int threads = 0;
  State() {
    if (const char* env = std::getenv("HIGNN_THREADS")) {
      int n = std::atoi(env);
      if (n == 1) backend = Backend::Serial;
      if (n > 0) {
        threads = n;
        omp_set_num_threads(n);
      }
    }
  }
};

State& state() {
  static State s;
  return s;
}

}  // namespace

Backend backend() { return state().backend; }
void set_backend(Backend b) { state().backend = b; }

void set_threads(int n) {
  state().threads = n;
  if (n > 0) omp_set_num_threads(n);
  if (n == 1) state().backend = Backend::Serial;
}

int threads() {
  return state().threads > 0 ? state().threads : omp_get_max_threads();
}

#define HIGNN_DISPATCH(fn, ...)                  \
  do {                                           \
    if (backend() == Backend::Serial)            \
      serial::fn(__VA_ARGS__);                   \
    else                                         \
      omp::fn(__VA_ARGS__);                      \
  } while (0)

void matmul(const double* A, bool ta, const double* B, bool tb, double* C,
            int n, int k, int m, bool accumulate) {
  HIGNN_DISPATCH(matmul, A, ta, B, tb, C, n, k, m, accumulate);
}

void bilinear_fwd(const double* Xi, const double* W, const double* Xj,
                  double* out, int n, int d, int a) {
  HIGNN_DISPATCH(bilinear_fwd, Xi, W, Xj, out, n, d, a);
}

void bilinear_bwd(const double* Xi, const double* W, const double* Xj,
                  const double* g, double* dXi, double* dW, double* dXj,
                  int n, int d, int a) {
  HIGNN_DISPATCH(bilinear_bwd, Xi, W, Xj, g, dXi, dW, dXj, n, d, a);
}

void slice_scale_fwd(const double* X, const double* alpha, double* out,
                     int n, int d, int a) {
  HIGNN_DISPATCH(slice_scale_fwd, X, alpha, out, n, d, a);
}

void slice_scale_bwd(const double* X, const double* alpha, const double* g,
                     double* dX, double* dalpha, int n, int d, int a) {
  HIGNN_DISPATCH(slice_scale_bwd, X, alpha, g, dX, dalpha, n, d, a);
}

void vmap(Unary f, const double* x, double* y, std::size_t n) {
  HIGNN_DISPATCH(vmap, f, x, y, n);
}

void vzip(Binary f, const double* a, const double* b, double* out,
          std::size_t n) {
  HIGNN_DISPATCH(vzip, f, a, b, out, n);
}

void vacc_mul(const double* a, const double* b, double* acc, std::size_t n) {
  HIGNN_DISPATCH(vacc_mul, a, b, acc, n);
}

#undef HIGNN_DISPATCH

}  // namespace hignn::kernels
