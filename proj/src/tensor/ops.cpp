#include <algorithm>
#include <cmath>
#include <memory>

#include "hignn/kernels.hpp"
#include "hignn/rng.hpp"
#include "hignn/tensor.hpp"

namespace hignn::tensor {

namespace {

namespace K = hignn::kernels;

void require(bool cond, const std::string& what) {
  if (!cond) throw ShapeMismatch(what);
}

int rows_of(const Shape& s) { return s.empty() ? 0 : s[0]; }
int cols_of(const Shape& s) {
  int c = 1;
  for (std::size_t k = 1; k < s.size(); ++k) c *= s[k];
  return c;
}

bool same_shape(const Shape& a, const Shape& b) { return a == b; }

}  // namespace

Tensor matmul(const Tensor& A, const Tensor& B) {
  require(A.shape().size() == 2 && B.shape().size() == 2,
          "matmul expects matrices");
  int n = A.shape()[0], k = A.shape()[1];
  require(B.shape()[0] == k, "matmul inner dimensions differ");
  int m = B.shape()[1];
  Tape& t = *A.tape();
  std::vector<double> out(static_cast<std::size_t>(n) * m);
  K::matmul(A.value().data(), false, B.value().data(), false, out.data(), n,
            k, m, false);
  bool rg = A.requires_grad() || B.requires_grad();
  int ida = A.id(), idb = B.id();
  int id = t.add({n, m}, std::move(out), rg, {});
  t.node(id).backward = [ida, idb, id, n, k, m](Tape& t) {
    const auto& g = t.node(id).grad;
    if (t.node(ida).requires_grad) {
      // dA = g * B^T
      K::matmul(g.data(), false, t.node(idb).value.data(), true,
                t.grad_buffer(ida).data(), n, m, k, true);
    }
    if (t.node(idb).requires_grad) {
      // dB = A^T * g
      K::matmul(t.node(ida).value.data(), true, g.data(), false,
                t.grad_buffer(idb).data(), k, n, m, true);
    }
  };
  return Tensor(&t, id);
}

Tensor linear(const Tensor& X, const Tensor& W) {
  require(X.shape().size() == 2 && W.shape().size() == 2,
          "linear expects matrices");
  int n = X.shape()[0], k = X.shape()[1];
  require(W.shape()[1] == k, "linear: W columns must match X columns");
  int m = W.shape()[0];
  Tape& t = *X.tape();
  std::vector<double> out(static_cast<std::size_t>(n) * m);
  K::matmul(X.value().data(), false, W.value().data(), true, out.data(), n, k,
            m, false);
  bool rg = X.requires_grad() || W.requires_grad();
  int idx = X.id(), idw = W.id();
  int id = t.add({n, m}, std::move(out), rg, {});
  t.node(id).backward = [idx, idw, id, n, k, m](Tape& t) {
    const auto& g = t.node(id).grad;
    if (t.node(idx).requires_grad) {
      // dX = g * W
      K::matmul(g.data(), false, t.node(idw).value.data(), false,
                t.grad_buffer(idx).data(), n, m, k, true);
    }
    if (t.node(idw).requires_grad) {
      // dW = g^T * X
      K::matmul(g.data(), true, t.node(idx).value.data(), false,
                t.grad_buffer(idw).data(), m, n, k, true);
    }
  };
  return Tensor(&t, id);
}

namespace {

Tensor binary_op(const Tensor& a, const Tensor& b, K::Binary kind) {
  require(same_shape(a.shape(), b.shape()), "elementwise shape mismatch");
  Tape& t = *a.tape();
  std::size_t n = numel(a.shape());
  std::vector<double> out(n);
  K::vzip(kind, a.value().data(), b.value().data(), out.data(), n);
  bool rg = a.requires_grad() || b.requires_grad();
  int ida = a.id(), idb = b.id();
  int id = t.add(a.shape(), std::move(out), rg, {});
  t.node(id).backward = [ida, idb, id, kind, n](Tape& t) {
    const auto& g = t.node(id).grad;
    const auto& av = t.node(ida).value;
    const auto& bv = t.node(idb).value;
    bool need_a = t.node(ida).requires_grad;
    bool need_b = t.node(idb).requires_grad;
    switch (kind) {
      case K::Binary::Add:
        if (need_a) {
          auto& ga = t.grad_buffer(ida);
          for (std::size_t i = 0; i < n; ++i) ga[i] += g[i];
        }
        if (need_b) {
          auto& gb = t.grad_buffer(idb);
          for (std::size_t i = 0; i < n; ++i) gb[i] += g[i];
        }
        break;
      case K::Binary::Sub:
        if (need_a) {
          auto& ga = t.grad_buffer(ida);
          for (std::size_t i = 0; i < n; ++i) ga[i] += g[i];
        }
        if (need_b) {
          auto& gb = t.grad_buffer(idb);
          for (std::size_t i = 0; i < n; ++i) gb[i] -= g[i];
        }
        break;
      case K::Binary::Mul:
        if (need_a) K::vacc_mul(g.data(), bv.data(), t.grad_buffer(ida).data(), n);
        if (need_b) K::vacc_mul(g.data(), av.data(), t.grad_buffer(idb).data(), n);
        break;
      case K::Binary::Div:
        if (need_a) {
          auto& ga = t.grad_buffer(ida);
          for (std::size_t i = 0; i < n; ++i) ga[i] += g[i] / bv[i];
        }
        if (need_b) {
          auto& gb = t.grad_buffer(idb);
          for (std::size_t i = 0; i < n; ++i)
            gb[i] -= g[i] * av[i] / (bv[i] * bv[i]);
        }
        break;
    }
  };
  return Tensor(&t, id);
}

}  // namespace

Tensor add(const Tensor& a, const Tensor& b) { return binary_op(a, b, K::Binary::Add); }
Tensor sub(const Tensor& a, const Tensor& b) { return binary_op(a, b, K::Binary::Sub); }
Tensor mul(const Tensor& a, const Tensor& b) { return binary_op(a, b, K::Binary::Mul); }
Tensor div(const Tensor& a, const Tensor& b) { return binary_op(a, b, K::Binary::Div); }

Tensor emax(const Tensor& a, const Tensor& b) {
  require(same_shape(a.shape(), b.shape()), "emax shape mismatch");
  Tape& t = *a.tape();
  std::size_t n = numel(a.shape());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::max(a.value()[i], b.value()[i]);
  bool rg = a.requires_grad() || b.requires_grad();
  int ida = a.id(), idb = b.id();
  int id = t.add(a.shape(), std::move(out), rg, {});
  t.node(id).backward = [ida, idb, id, n](Tape& t) {
    const auto& g = t.node(id).grad;
    const auto& av = t.node(ida).value;
    const auto& bv = t.node(idb).value;
    bool need_a = t.node(ida).requires_grad;
    bool need_b = t.node(idb).requires_grad;
    for (std::size_t i = 0; i < n; ++i) {
      if (av[i] >= bv[i]) {
        if (need_a) t.grad_buffer(ida)[i] += g[i];
      } else if (need_b) {
        t.grad_buffer(idb)[i] += g[i];
      }
    }
  };
  return Tensor(&t, id);
}

Tensor add_rowvec(const Tensor& X, const Tensor& b) {
  require(X.shape().size() == 2, "add_rowvec expects a matrix");
  int n = X.shape()[0], m = X.shape()[1];
  require(static_cast<int>(numel(b.shape())) == m,
          "add_rowvec vector length mismatch");
  Tape& t = *X.tape();
  std::vector<double> out(X.value());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) out[static_cast<std::size_t>(i) * m + j] += b.value()[j];
  bool rg = X.requires_grad() || b.requires_grad();
  int idx = X.id(), idb = b.id();
  int id = t.add({n, m}, std::move(out), rg, {});
  t.node(id).backward = [idx, idb, id, n, m](Tape& t) {
    const auto& g = t.node(id).grad;
    if (t.node(idx).requires_grad) {
      auto& gx = t.grad_buffer(idx);
      for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i];
    }
    if (t.node(idb).requires_grad) {
      auto& gb = t.grad_buffer(idb);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) gb[j] += g[static_cast<std::size_t>(i) * m + j];
    }
  };
  return Tensor(&t, id);
}

Tensor scale_rows(const Tensor& X, const Tensor& s) {
  require(X.shape().size() == 2, "scale_rows expects a matrix");
  int n = X.shape()[0], m = X.shape()[1];
  require(static_cast<int>(numel(s.shape())) == n,
          "scale_rows scale length mismatch");
  Tape& t = *X.tape();
  std::vector<double> out(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      out[static_cast<std::size_t>(i) * m + j] =
          X.value()[static_cast<std::size_t>(i) * m + j] * s.value()[i];
  bool rg = X.requires_grad() || s.requires_grad();
  int idx = X.id(), ids = s.id();
  int id = t.add({n, m}, std::move(out), rg, {});
  t.node(id).backward = [idx, ids, id, n, m](Tape& t) {
    const auto& g = t.node(id).grad;
    const auto& xv = t.node(idx).value;
    const auto& sv = t.node(ids).value;
    if (t.node(idx).requires_grad) {
      auto& gx = t.grad_buffer(idx);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
          gx[static_cast<std::size_t>(i) * m + j] +=
              g[static_cast<std::size_t>(i) * m + j] * sv[i];
    }
    if (t.node(ids).requires_grad) {
      auto& gs = t.grad_buffer(ids);
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < m; ++j)
          acc += g[static_cast<std::size_t>(i) * m + j] *
                 xv[static_cast<std::size_t>(i) * m + j];
        gs[i] += acc;
      }
    }
  };
  return Tensor(&t, id);
}

Tensor cmul(const Tensor& x, double c) {
  Tape& t = *x.tape();
  std::vector<double> out(x.value());
  for (double& v : out) v *= c;
  int idx = x.id();
  int id = t.add(x.shape(), std::move(out), x.requires_grad(), {});
  t.node(id).backward = [idx, id, c](Tape& t) {
    if (!t.node(idx).requires_grad) return;
    const auto& g = t.node(id).grad;
    auto& gx = t.grad_buffer(idx);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += c * g[i];
  };
  return Tensor(&t, id);
}

Tensor concat_cols(const std::vector<Tensor>& xs) {
  require(!xs.empty(), "concat of nothing");
  int n = xs[0].shape()[0];
  int total = 0;
  bool rg = false;
  for (const auto& x : xs) {
    require(x.shape().size() == 2 && x.shape()[0] == n,
            "concat_cols row mismatch");
    total += x.shape()[1];
    rg = rg || x.requires_grad();
  }
  Tape& t = *xs[0].tape();
  std::vector<double> out(static_cast<std::size_t>(n) * total);
  int off = 0;
  for (const auto& x : xs) {
    int m = x.shape()[1];
    for (int i = 0; i < n; ++i)
      std::copy_n(x.value().data() + static_cast<std::size_t>(i) * m, m,
                  out.data() + static_cast<std::size_t>(i) * total + off);
    off += m;
  }
  std::vector<int> ids;
  std::vector<int> widths;
  for (const auto& x : xs) {
    ids.push_back(x.id());
    widths.push_back(x.shape()[1]);
  }
  int id = t.add({n, total}, std::move(out), rg, {});
  t.node(id).backward = [ids, widths, id, n, total](Tape& t) {
    const auto& g = t.node(id).grad;
    int off = 0;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      int m = widths[k];
      if (t.node(ids[k]).requires_grad) {
        auto& gx = t.grad_buffer(ids[k]);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < m; ++j)
            gx[static_cast<std::size_t>(i) * m + j] +=
                g[static_cast<std::size_t>(i) * total + off + j];
      }
      off += m;
    }
  };
  return Tensor(&t, id);
}

Tensor slice_cols(const Tensor& x, int lo, int hi) {
  require(x.shape().size() == 2, "slice_cols expects a matrix");
  int n = x.shape()[0], m = x.shape()[1];
  require(0 <= lo && lo < hi && hi <= m, "slice_cols range");
  int w = hi - lo;
  Tape& t = *x.tape();
  std::vector<double> out(static_cast<std::size_t>(n) * w);
  for (int i = 0; i < n; ++i)
    std::copy_n(x.value().data() + static_cast<std::size_t>(i) * m + lo, w,
                out.data() + static_cast<std::size_t>(i) * w);
  int idx = x.id();
  int id = t.add({n, w}, std::move(out), x.requires_grad(), {});
  t.node(id).backward = [idx, id, n, m, lo, w](Tape& t) {
    if (!t.node(idx).requires_grad) return;
    const auto& g = t.node(id).grad;
    auto& gx = t.grad_buffer(idx);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < w; ++j)
        gx[static_cast<std::size_t>(i) * m + lo + j] +=
            g[static_cast<std::size_t>(i) * w + j];
  };
  return Tensor(&t, id);
}

Tensor reshape(const Tensor& x, Shape shape) {
  require(numel(shape) == numel(x.shape()), "reshape element count mismatch");
  Tape& t = *x.tape();
  int idx = x.id();
  int id = t.add(std::move(shape), x.value(), x.requires_grad(), {});
  t.node(id).backward = [idx, id](Tape& t) {
    if (!t.node(idx).requires_grad) return;
    const auto& g = t.node(id).grad;
    auto& gx = t.grad_buffer(idx);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i];
  };
  return Tensor(&t, id);
}

namespace {

Tensor unary_op(const Tensor& x, K::Unary kind) {
  Tape& t = *x.tape();
  std::size_t n = numel(x.shape());
  std::vector<double> out(n);
  K::vmap(kind, x.value().data(), out.data(), n);
  int idx = x.id();
  int id = t.add(x.shape(), std::move(out), x.requires_grad(), {});
  t.node(id).backward = [idx, id, kind, n](Tape& t) {
    if (!t.node(idx).requires_grad) return;
    const auto& g = t.node(id).grad;
    const auto& xv = t.node(idx).value;
    const auto& yv = t.node(id).value;
    auto& gx = t.grad_buffer(idx);
    switch (kind) {
      case K::Unary::Relu:
        for (std::size_t i = 0; i < n; ++i)
          if (xv[i] > 0.0) gx[i] += g[i];
        break;
      case K::Unary::LeakyRelu:
        for (std::size_t i = 0; i < n; ++i)
          gx[i] += g[i] * (xv[i] > 0.0 ? 1.0 : 0.01);
        break;
      case K::Unary::Tanh:
        for (std::size_t i = 0; i < n; ++i)
          gx[i] += g[i] * (1.0 - yv[i] * yv[i]);
        break;
      case K::Unary::Sigmoid:
        for (std::size_t i = 0; i < n; ++i)
          gx[i] += g[i] * yv[i] * (1.0 - yv[i]);
        break;
      case K::Unary::Exp:
        for (std::size_t i = 0; i < n; ++i) gx[i] += g[i] * yv[i];
        break;
      case K::Unary::Log:
        for (std::size_t i = 0; i < n; ++i) gx[i] += g[i] / xv[i];
        break;
    }
  };
  return Tensor(&t, id);
}

}  // namespace

Tensor relu(const Tensor& x) { return unary_op(x, K::Unary::Relu); }
Tensor leaky_relu(const Tensor& x) { return unary_op(x, K::Unary::LeakyRelu); }
Tensor tanh_t(const Tensor& x) { return unary_op(x, K::Unary::Tanh); }
Tensor sigmoid(const Tensor& x) { return unary_op(x, K::Unary::Sigmoid); }
Tensor exp_t(const Tensor& x) { return unary_op(x, K::Unary::Exp); }
Tensor log_t(const Tensor& x) { return unary_op(x, K::Unary::Log); }

Tensor softmax_rows(const Tensor& x) {
  require(x.shape().size() == 2, "softmax_rows expects a matrix");
  int n = x.shape()[0], m = x.shape()[1];
  Tape& t = *x.tape();
  std::vector<double> out(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i) {
    const double* row = x.value().data() + static_cast<std::size_t>(i) * m;
    double mx = row[0];
    for (int j = 1; j < m; ++j) mx = std::max(mx, row[j]);
    double denom = 0.0;
    for (int j = 0; j < m; ++j) denom += std::exp(row[j] - mx);
    for (int j = 0; j < m; ++j)
      out[static_cast<std::size_t>(i) * m + j] = std::exp(row[j] - mx) / denom;
  }
  int idx = x.id();
  int id = t.add({n, m}, std::move(out), x.requires_grad(), {});
  t.node(id).backward = [idx, id, n, m](Tape& t) {
    if (!t.node(idx).requires_grad) return;
    const auto& g = t.node(id).grad;
    const auto& y = t.node(id).value;
    auto& gx = t.grad_buffer(idx);
    for (int i = 0; i < n; ++i) {
      double dot = 0.0;
      for (int j = 0; j < m; ++j)
        dot += g[static_cast<std::size_t>(i) * m + j] *
               y[static_cast<std::size_t>(i) * m + j];
      for (int j = 0; j < m; ++j) {
        std::size_t k = static_cast<std::size_t>(i) * m + j;
        gx[k] += y[k] * (g[k] - dot);
      }
    }
  };
  return Tensor(&t, id);
}

Tensor reduce_sum_all(const Tensor& x) {
  Tape& t = *x.tape();
  double acc = 0.0;
  for (double v : x.value()) acc += v;
  int idx = x.id();
  int id = t.add({1}, {acc}, x.requires_grad(), {});
  t.node(id).backward = [idx, id](Tape& t) {
    if (!t.node(idx).requires_grad) return;
    double g = t.node(id).grad[0];
    auto& gx = t.grad_buffer(idx);
    for (double& v : gx) v += g;
  };
  return Tensor(&t, id);
}

Tensor reduce_sum_axis0(const Tensor& x) {
  require(x.shape().size() == 2, "reduce_sum_axis0 expects a matrix");
  int n = x.shape()[0], m = x.shape()[1];
  Tape& t = *x.tape();
  std::vector<double> out(m, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      out[j] += x.value()[static_cast<std::size_t>(i) * m + j];
  int idx = x.id();
  int id = t.add({m}, std::move(out), x.requires_grad(), {});
  t.node(id).backward = [idx, id, n, m](Tape& t) {
    if (!t.node(idx).requires_grad) return;
    const auto& g = t.node(id).grad;
    auto& gx = t.grad_buffer(idx);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j)
        gx[static_cast<std::size_t>(i) * m + j] += g[j];
  };
  return Tensor(&t, id);
}

Tensor reduce_sum_axis1(const Tensor& x) {
  require(x.shape().size() == 2, "reduce_sum_axis1 expects a matrix");
  int n = x.shape()[0], m = x.shape()[1];
  Tape& t = *x.tape();
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      out[i] += x.value()[static_cast<std::size_t>(i) * m + j];
  int idx = x.id();
  int id = t.add({n, 1}, std::move(out), x.requires_grad(), {});
  t.node(id).backward = [idx, id, n, m](Tape& t) {
    if (!t.node(idx).requires_grad) return;
    const auto& g = t.node(id).grad;
    auto& gx = t.grad_buffer(idx);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j)
        gx[static_cast<std::size_t>(i) * m + j] += g[i];
  };
  return Tensor(&t, id);
}

Tensor reduce_max_axis0(const Tensor& x) {
  require(x.shape().size() == 2, "reduce_max_axis0 expects a matrix");
  int n = x.shape()[0], m = x.shape()[1];
  require(n >= 1, "reduce_max_axis0 needs at least one row");
  Tape& t = *x.tape();
  std::vector<double> out(m);
  auto argmax = std::make_shared<std::vector<int>>(m, 0);
  for (int j = 0; j < m; ++j) {
    double best = x.value()[j];
    int arg = 0;
    for (int i = 1; i < n; ++i) {
      double v = x.value()[static_cast<std::size_t>(i) * m + j];
      if (v > best) {  // strict: ties keep the lowest index
        best = v;
        arg = i;
      }
    }
    out[j] = best;
    (*argmax)[j] = arg;
  }
  int idx = x.id();
  int id = t.add({m}, std::move(out), x.requires_grad(), {});
  t.node(id).backward = [idx, id, m, argmax](Tape& t) {
    if (!t.node(idx).requires_grad) return;
    const auto& g = t.node(id).grad;
    auto& gx = t.grad_buffer(idx);
    for (int j = 0; j < m; ++j)
      gx[static_cast<std::size_t>((*argmax)[j]) * m + j] += g[j];
  };
  return Tensor(&t, id);
}

Tensor gather_rows(const Tensor& x, std::vector<int> idxs) {
  require(x.shape().size() == 2, "gather_rows expects a matrix");
  int n = x.shape()[0], m = x.shape()[1];
  for (int i : idxs) require(0 <= i && i < n, "gather_rows index range");
  Tape& t = *x.tape();
  int k = static_cast<int>(idxs.size());
  std::vector<double> out(static_cast<std::size_t>(k) * m);
  for (int r = 0; r < k; ++r)
    std::copy_n(x.value().data() + static_cast<std::size_t>(idxs[r]) * m, m,
                out.data() + static_cast<std::size_t>(r) * m);
  auto shared = std::make_shared<std::vector<int>>(std::move(idxs));
  int idx = x.id();
  int id = t.add({k, m}, std::move(out), x.requires_grad(), {});
  t.node(id).backward = [idx, id, k, m, shared](Tape& t) {
    if (!t.node(idx).requires_grad) return;
    const auto& g = t.node(id).grad;
    auto& gx = t.grad_buffer(idx);
    for (int r = 0; r < k; ++r)
      for (int j = 0; j < m; ++j)
        gx[static_cast<std::size_t>((*shared)[r]) * m + j] +=
            g[static_cast<std::size_t>(r) * m + j];
  };
  return Tensor(&t, id);
}

Tensor segment_sum(const Tensor& x, std::vector<int> seg, int n_seg) {
  require(x.shape().size() == 2, "segment_sum expects a matrix");
  int n = x.shape()[0], m = x.shape()[1];
  require(static_cast<int>(seg.size()) == n, "segment ids length mismatch");
  for (int s : seg) require(0 <= s && s < n_seg, "segment id range");
  Tape& t = *x.tape();
  std::vector<double> out(static_cast<std::size_t>(n_seg) * m, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      out[static_cast<std::size_t>(seg[i]) * m + j] +=
          x.value()[static_cast<std::size_t>(i) * m + j];
  auto shared = std::make_shared<std::vector<int>>(std::move(seg));
  int idx = x.id();
  int id = t.add({n_seg, m}, std::move(out), x.requires_grad(), {});
  t.node(id).backward = [idx, id, n, m, shared](Tape& t) {
    if (!t.node(idx).requires_grad) return;
    const auto& g = t.node(id).grad;
    auto& gx = t.grad_buffer(idx);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j)
        gx[static_cast<std::size_t>(i) * m + j] +=
            g[static_cast<std::size_t>((*shared)[i]) * m + j];
  };
  return Tensor(&t, id);
}

Tensor segment_max(const Tensor& x, std::vector<int> seg, int n_seg) {
  require(x.shape().size() == 2, "segment_max expects a matrix");
  int n = x.shape()[0], m = x.shape()[1];
  require(static_cast<int>(seg.size()) == n, "segment ids length mismatch");
  Tape& t = *x.tape();
  std::vector<double> out(static_cast<std::size_t>(n_seg) * m, 0.0);
  auto argmax = std::make_shared<std::vector<int>>(
      static_cast<std::size_t>(n_seg) * m, -1);
  for (int i = 0; i < n; ++i) {
    int s = seg[i];
    require(0 <= s && s < n_seg, "segment id range");
    for (int j = 0; j < m; ++j) {
      double v = x.value()[static_cast<std::size_t>(i) * m + j];
      std::size_t k = static_cast<std::size_t>(s) * m + j;
      if ((*argmax)[k] < 0 || v > out[k]) {  // first index wins ties
        out[k] = v;
        (*argmax)[k] = i;
      }
    }
  }
  for (std::size_t k = 0; k < argmax->size(); ++k)
    require((*argmax)[k] >= 0, "segment_max: empty segment");
  int idx = x.id();
  int id = t.add({n_seg, m}, std::move(out), x.requires_grad(), {});
  t.node(id).backward = [idx, id, m, argmax](Tape& t) {
    if (!t.node(idx).requires_grad) return;
    const auto& g = t.node(id).grad;
    auto& gx = t.grad_buffer(idx);
    for (std::size_t k = 0; k < argmax->size(); ++k)
      gx[static_cast<std::size_t>((*argmax)[k]) * m + (k % m)] += g[k];
  };
  return Tensor(&t, id);
}

Tensor bilinear(const Tensor& Xi, const Tensor& W, const Tensor& Xj) {
  require(W.shape().size() == 3 && W.shape()[1] == W.shape()[2],
          "bilinear weights must be {a, d, d}");
  int a = W.shape()[0], d = W.shape()[1];
  require(Xi.shape().size() == 2 && Xi.shape()[1] == d, "bilinear Xi shape");
  require(same_shape(Xi.shape(), Xj.shape()), "bilinear Xi/Xj mismatch");
  int n = Xi.shape()[0];
  Tape& t = *Xi.tape();
  std::vector<double> out(static_cast<std::size_t>(n) * a);
  K::bilinear_fwd(Xi.value().data(), W.value().data(), Xj.value().data(),
                  out.data(), n, d, a);
  bool rg = Xi.requires_grad() || W.requires_grad() || Xj.requires_grad();
  int idi = Xi.id(), idw = W.id(), idj = Xj.id();
  int id = t.add({n, a}, std::move(out), rg, {});
  t.node(id).backward = [idi, idw, idj, id, n, d, a](Tape& t) {
    const auto& g = t.node(id).grad;
    double* dXi = t.node(idi).requires_grad ? t.grad_buffer(idi).data() : nullptr;
    double* dW = t.node(idw).requires_grad ? t.grad_buffer(idw).data() : nullptr;
    double* dXj = t.node(idj).requires_grad ? t.grad_buffer(idj).data() : nullptr;
    K::bilinear_bwd(t.node(idi).value.data(), t.node(idw).value.data(),
                    t.node(idj).value.data(), g.data(), dXi, dW, dXj, n, d, a);
  };
  return Tensor(&t, id);
}

Tensor slice_scale(const Tensor& X, const Tensor& alpha) {
  require(X.shape().size() == 2 && alpha.shape().size() == 2,
          "slice_scale expects matrices");
  int n = X.shape()[0], d = X.shape()[1], a = alpha.shape()[1];
  require(alpha.shape()[0] == n, "slice_scale row mismatch");
  require(a >= 1 && d % a == 0, "slice count must divide width");
  Tape& t = *X.tape();
  std::vector<double> out(static_cast<std::size_t>(n) * d);
  K::slice_scale_fwd(X.value().data(), alpha.value().data(), out.data(), n, d,
                     a);
  bool rg = X.requires_grad() || alpha.requires_grad();
  int idx = X.id(), ida = alpha.id();
  int id = t.add({n, d}, std::move(out), rg, {});
  t.node(id).backward = [idx, ida, id, n, d, a](Tape& t) {
    const auto& g = t.node(id).grad;
    double* dX = t.node(idx).requires_grad ? t.grad_buffer(idx).data() : nullptr;
    double* dA = t.node(ida).requires_grad ? t.grad_buffer(ida).data() : nullptr;
    K::slice_scale_bwd(t.node(idx).value.data(), t.node(ida).value.data(),
                       g.data(), dX, dA, n, d, a);
  };
  return Tensor(&t, id);
}

Tensor dropout(const Tensor& x, double p, bool training, uint64_t seed,
               uint64_t stream) {
  if (!(p >= 0.0 && p < 1.0)) throw ConfigError("dropout p must be in [0,1)");
  Tape& t = *x.tape();
  if (!training || p == 0.0) {
    // identity pass-through keeps the tape structure uniform
    int idx = x.id();
    int id = t.add(x.shape(), x.value(), x.requires_grad(), {});
    t.node(id).backward = [idx, id](Tape& t) {
      if (!t.node(idx).requires_grad) return;
      const auto& g = t.node(id).grad;
      auto& gx = t.grad_buffer(idx);
      for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i];
    };
    return Tensor(&t, id);
  }
  std::size_t n = numel(x.shape());
  auto mask = std::make_shared<std::vector<double>>(n);
  CounterRng rng(seed, stream);
  double scale = 1.0 / (1.0 - p);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double keep = rng.next_double() >= p ? scale : 0.0;
    (*mask)[i] = keep;
    out[i] = x.value()[i] * keep;
  }
  int idx = x.id();
  int id = t.add(x.shape(), std::move(out), x.requires_grad(), {});
  t.node(id).backward = [idx, id, mask](Tape& t) {
    if (!t.node(idx).requires_grad) return;
    const auto& g = t.node(id).grad;
    auto& gx = t.grad_buffer(idx);
    for (std::size_t i = 0; i < g.size(); ++i) gx[i] += g[i] * (*mask)[i];
  };
  return Tensor(&t, id);
}

namespace {

double mask_total(const std::vector<double>& mask) {
  double total = 0.0;
  for (double v : mask) total += v;
  if (total <= 0.0) throw AllMasked("every label in the batch is masked");
  return total;
}

}  // namespace

Tensor masked_mse(const Tensor& pred, const std::vector<double>& target,
                  const std::vector<double>& mask) {
  require(numel(pred.shape()) == target.size() && target.size() == mask.size(),
          "masked_mse size mismatch");
  double total = mask_total(mask);
  double acc = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    double d = pred.value()[i] - target[i];
    acc += mask[i] * d * d;
  }
  Tape& t = *pred.tape();
  auto tgt = std::make_shared<std::vector<double>>(target);
  auto msk = std::make_shared<std::vector<double>>(mask);
  int idp = pred.id();
  int id = t.add({1}, {acc / total}, pred.requires_grad(), {});
  t.node(id).backward = [idp, id, tgt, msk, total](Tape& t) {
    if (!t.node(idp).requires_grad) return;
    double g = t.node(id).grad[0];
    const auto& pv = t.node(idp).value;
    auto& gp = t.grad_buffer(idp);
    for (std::size_t i = 0; i < pv.size(); ++i)
      gp[i] += g * 2.0 * (*msk)[i] * (pv[i] - (*tgt)[i]) / total;
  };
  return Tensor(&t, id);
}

Tensor masked_bce_logits(const Tensor& logits,
                         const std::vector<double>& target,
                         const std::vector<double>& mask) {
  require(numel(logits.shape()) == target.size() &&
              target.size() == mask.size(),
          "masked_bce size mismatch");
  double total = mask_total(mask);
  double acc = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    double z = logits.value()[i], y = target[i];
    double l = std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
    acc += mask[i] * l;
  }
  Tape& t = *logits.tape();
  auto tgt = std::make_shared<std::vector<double>>(target);
  auto msk = std::make_shared<std::vector<double>>(mask);
  int idz = logits.id();
  int id = t.add({1}, {acc / total}, logits.requires_grad(), {});
  t.node(id).backward = [idz, id, tgt, msk, total](Tape& t) {
    if (!t.node(idz).requires_grad) return;
    double g = t.node(id).grad[0];
    const auto& zv = t.node(idz).value;
    auto& gz = t.grad_buffer(idz);
    for (std::size_t i = 0; i < zv.size(); ++i) {
      double s = 1.0 / (1.0 + std::exp(-zv[i]));
      gz[i] += g * (*msk)[i] * (s - (*tgt)[i]) / total;
    }
  };
  return Tensor(&t, id);
}

}  // namespace hignn::tensor
