// OpenMP variants. Every output element is produced by exactly one thread
// with the same inner accumulation order as the serial reference, so the
// two backends are bit-identical; tests assert this.

#include <cmath>
#include <omp.h>

#include "hignn/kernels.hpp"

namespace hignn::kernels::omp {

namespace {

inline double uapply(Unary f, double x) {
  switch (f) {
    case Unary::Relu: return x > 0.0 ? x : 0.0;
    case Unary::LeakyRelu: return x > 0.0 ? x : 0.01 * x;
    case Unary::Tanh: return std::tanh(x);
    case Unary::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
    case Unary::Exp: return std::exp(x);
    case Unary::Log: return std::log(x);
  }
  return x;
}

inline double bapply(Binary f, double a, double b) {
  switch (f) {
    case Binary::Add: return a + b;
    case Binary::Sub: return a - b;
    case Binary::Mul: return a * b;
    case Binary::Div: return a / b;
  }
  return 0.0;
}

}  // namespace

void matmul(const double* A, bool ta, const double* B, bool tb, double* C,
            int n, int k, int m, bool accumulate) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      double acc = 0.0;
      for (int p = 0; p < k; ++p) {
        double av = ta ? A[static_cast<std::size_t>(p) * n + i]
                       : A[static_cast<std::size_t>(i) * k + p];
        double bv = tb ? B[static_cast<std::size_t>(j) * k + p]
                       : B[static_cast<std::size_t>(p) * m + j];
        acc += av * bv;
      }
      std::size_t idx = static_cast<std::size_t>(i) * m + j;
      C[idx] = accumulate ? C[idx] + acc : acc;
    }
  }
}

void bilinear_fwd(const double* Xi, const double* W, const double* Xj,
                  double* out, int n, int d, int a) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const double* xi = Xi + static_cast<std::size_t>(i) * d;
    const double* xj = Xj + static_cast<std::size_t>(i) * d;
    for (int s = 0; s < a; ++s) {
      const double* Ws = W + static_cast<std::size_t>(s) * d * d;
      double acc = 0.0;
      for (int j = 0; j < d; ++j) {
        double row = 0.0;
        const double* wrow = Ws + static_cast<std::size_t>(j) * d;
        for (int t = 0; t < d; ++t) row += wrow[t] * xj[t];
        acc += xi[j] * row;
      }
      out[static_cast<std::size_t>(i) * a + s] = acc;
    }
  }
}

void bilinear_bwd(const double* Xi, const double* W, const double* Xj,
                  const double* g, double* dXi, double* dW, double* dXj,
                  int n, int d, int a) {
  if (dXi) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      const double* xj = Xj + static_cast<std::size_t>(i) * d;
      double* out = dXi + static_cast<std::size_t>(i) * d;
      for (int j = 0; j < d; ++j) {
        double acc = 0.0;
        for (int s = 0; s < a; ++s) {
          const double* wrow = W + (static_cast<std::size_t>(s) * d + j) * d;
          double row = 0.0;
          for (int t = 0; t < d; ++t) row += wrow[t] * xj[t];
          acc += g[static_cast<std::size_t>(i) * a + s] * row;
        }
        out[j] += acc;
      }
    }
  }
  if (dXj) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      const double* xi = Xi + static_cast<std::size_t>(i) * d;
      double* out = dXj + static_cast<std::size_t>(i) * d;
      for (int t = 0; t < d; ++t) {
        double acc = 0.0;
        for (int s = 0; s < a; ++s) {
          const double* Ws = W + static_cast<std::size_t>(s) * d * d;
          double col = 0.0;
          for (int j = 0; j < d; ++j)
            col += xi[j] * Ws[static_cast<std::size_t>(j) * d + t];
          acc += g[static_cast<std::size_t>(i) * a + s] * col;
        }
        out[t] += acc;
      }
    }
  }
  if (dW) {
    // one thread per (slice, row): each dW element accumulated serially
    // over i in index order
#pragma omp parallel for collapse(2) schedule(static)
    for (int s = 0; s < a; ++s) {
      for (int j = 0; j < d; ++j) {
        double* wrow = dW + (static_cast<std::size_t>(s) * d + j) * d;
        for (int t = 0; t < d; ++t) {
          double acc = 0.0;
          for (int i = 0; i < n; ++i) {
            acc += g[static_cast<std::size_t>(i) * a + s] *
                   Xi[static_cast<std::size_t>(i) * d + j] *
                   Xj[static_cast<std::size_t>(i) * d + t];
          }
          wrow[t] += acc;
        }
      }
    }
  }
}

void slice_scale_fwd(const double* X, const double* alpha, double* out,
                     int n, int d, int a) {
  int dd = d / a;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < a; ++s) {
      double f = alpha[static_cast<std::size_t>(i) * a + s];
      const double* x = X + static_cast<std::size_t>(i) * d + s * dd;
      double* o = out + static_cast<std::size_t>(i) * d + s * dd;
      for (int t = 0; t < dd; ++t) o[t] = x[t] * f;
    }
  }
}

void slice_scale_bwd(const double* X, const double* alpha, const double* g,
                     double* dX, double* dalpha, int n, int d, int a) {
  int dd = d / a;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < a; ++s) {
      double f = alpha[static_cast<std::size_t>(i) * a + s];
      const double* gi = g + static_cast<std::size_t>(i) * d + s * dd;
      const double* x = X + static_cast<std::size_t>(i) * d + s * dd;
      if (dX) {
        double* o = dX + static_cast<std::size_t>(i) * d + s * dd;
        for (int t = 0; t < dd; ++t) o[t] += gi[t] * f;
      }
      if (dalpha) {
        double acc = 0.0;
        for (int t = 0; t < dd; ++t) acc += gi[t] * x[t];
        dalpha[static_cast<std::size_t>(i) * a + s] += acc;
      }
    }
  }
}

void vmap(Unary f, const double* x, double* y, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    y[i] = uapply(f, x[i]);
}

void vzip(Binary f, const double* a, const double* b, double* out,
          std::size_t n) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    out[i] = bapply(f, a[i], b[i]);
}

void vacc_mul(const double* a, const double* b, double* acc, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    acc[i] += a[i] * b[i];
}

}  // namespace hignn::kernels::omp
