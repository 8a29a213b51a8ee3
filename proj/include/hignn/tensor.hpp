#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hignn/errors.hpp"

namespace hignn::tensor {

using Shape = std::vector<int>;

inline std::size_t numel(const Shape& s) {
  std::size_t n = 1;
  for (int d : s) n *= static_cast<std::size_t>(d);
  return n;
}

// long-lived trainable buffer; tapes bind to it per step
struct Param {
  std::string name;
  Shape shape;
  std::vector<double> value;
  std::vector<double> grad;
  std::vector<double> adam_m, adam_v;

  void resize() {
    value.assign(numel(shape), 0.0);
    grad.assign(numel(shape), 0.0);
    adam_m.assign(numel(shape), 0.0);
    adam_v.assign(numel(shape), 0.0);
  }
  void zero_grad() { std::fill(grad.begin(), grad.end(), 0.0); }
};

class Tape;

// lightweight handle into a tape node
class Tensor {
 public:
  Tensor() = default;
  Tensor(Tape* tape, int id) : tape_(tape), id_(id) {}
  const Shape& shape() const;
  const std::vector<double>& value() const;
  const std::vector<double>& grad() const;
  bool requires_grad() const;
  int rows() const { return shape().at(0); }
  int cols() const { return shape().size() > 1 ? shape().at(1) : 1; }
  double scalar() const;
  Tape* tape() const { return tape_; }
  int id() const { return id_; }
  bool valid() const { return tape_ != nullptr; }

 private:
  Tape* tape_ = nullptr;
  int id_ = -1;
};

// reverse-mode tape: nodes appended in topological order, traversed once in
// reverse by backward()
class Tape {
 public:
  struct Node {
    Shape shape;
    std::vector<double> value;
    std::vector<double> grad;
    bool requires_grad = false;
    std::function<void(Tape&)> backward;
  };

  Tensor constant(Shape shape, std::vector<double> value);
  Tensor param(Param& p);

  void backward(const Tensor& loss);  // NonScalarLoss / DoubleBackward

  int add(Shape shape, std::vector<double> value, bool requires_grad,
          std::function<void(Tape&)> bw);
  Node& node(int id) { return nodes_[id]; }
  const Node& node(int id) const { return nodes_[id]; }
  std::vector<double>& grad_buffer(int id);  // lazily zero-initialized
  std::size_t size() const { return nodes_.size(); }

 private:
  std::vector<Node> nodes_;
  std::vector<std::pair<Param*, int>> bindings_;
  bool backward_done_ = false;
};

// ---- operations ------------------------------------------------------

Tensor matmul(const Tensor& A, const Tensor& B);         // [n,k]x[k,m]
Tensor linear(const Tensor& X, const Tensor& W);         // X * W^T, W [m,k]
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);            // hadamard
Tensor div(const Tensor& a, const Tensor& b);
Tensor emax(const Tensor& a, const Tensor& b);           // gradient to a on ties
Tensor add_rowvec(const Tensor& X, const Tensor& b);     // b [m] broadcast
Tensor scale_rows(const Tensor& X, const Tensor& s);     // s [n] or [n,1]
Tensor cmul(const Tensor& x, double c);
Tensor concat_cols(const std::vector<Tensor>& xs);
Tensor slice_cols(const Tensor& x, int lo, int hi);
Tensor reshape(const Tensor& x, Shape shape);
Tensor relu(const Tensor& x);
Tensor leaky_relu(const Tensor& x);                      // slope 0.01
Tensor tanh_t(const Tensor& x);
Tensor sigmoid(const Tensor& x);
Tensor exp_t(const Tensor& x);
Tensor log_t(const Tensor& x);
Tensor softmax_rows(const Tensor& x);
Tensor reduce_sum_all(const Tensor& x);                  // [1]
Tensor reduce_sum_axis0(const Tensor& x);                // [m]
Tensor reduce_sum_axis1(const Tensor& x);                // [n,1]
Tensor reduce_max_axis0(const Tensor& x);                // [m], first argmax
Tensor gather_rows(const Tensor& x, std::vector<int> idx);
Tensor segment_sum(const Tensor& x, std::vector<int> seg, int n_seg);
Tensor segment_max(const Tensor& x, std::vector<int> seg, int n_seg);
// Xi [n,d], W [a,d,d], Xj [n,d] -> [n,a]; single vectors as n = 1
Tensor bilinear(const Tensor& Xi, const Tensor& W, const Tensor& Xj);
// X [n,d], alpha [n,a]: slice s of each row scaled by alpha[i,s]
Tensor slice_scale(const Tensor& X, const Tensor& alpha);
Tensor dropout(const Tensor& x, double p, bool training, uint64_t seed,
               uint64_t stream);
Tensor masked_mse(const Tensor& pred, const std::vector<double>& target,
                  const std::vector<double>& mask);
Tensor masked_bce_logits(const Tensor& logits,
                         const std::vector<double>& target,
                         const std::vector<double>& mask);

}  // namespace hignn::tensor
