#include "hignn/tensor.hpp"

namespace hignn::tensor {

const Shape& Tensor::shape() const { return tape_->node(id_).shape; }
const std::vector<double>& Tensor::value() const {
  return tape_->node(id_).value;
}
const std::vector<double>& Tensor::grad() const {
  return tape_->node(id_).grad;
}
bool Tensor::requires_grad() const { return tape_->node(id_).requires_grad; }

double Tensor::scalar() const {
  const auto& v = value();
  if (v.size() != 1) throw ShapeMismatch("scalar() on non-scalar tensor");
  return v[0];
}

int Tape::add(Shape shape, std::vector<double> value, bool requires_grad,
              std::function<void(Tape&)> bw) {
  if (numel(shape) != value.size())
    throw ShapeMismatch("node value size does not match shape");
  Node n;
  n.shape = std::move(shape);
  n.value = std::move(value);
  n.requires_grad = requires_grad;
  n.backward = std::move(bw);
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

Tensor Tape::constant(Shape shape, std::vector<double> value) {
  return Tensor(this, add(std::move(shape), std::move(value), false, {}));
}

Tensor Tape::param(Param& p) {
  int id = add(p.shape, p.value, true, {});
  bindings_.push_back({&p, id});
  return Tensor(this, id);
}

std::vector<double>& Tape::grad_buffer(int id) {
  Node& n = nodes_[id];
  if (n.grad.empty()) n.grad.assign(numel(n.shape), 0.0);
  return n.grad;
}

void Tape::backward(const Tensor& loss) {
  if (backward_done_)
    throw DoubleBackward("backward() already ran on this tape");
  if (loss.tape() != this)
    throw ShapeMismatch("loss belongs to a different tape");
  if (numel(node(loss.id()).shape) != 1)
    throw NonScalarLoss("loss must be a scalar");
  backward_done_ = true;
  grad_buffer(loss.id())[0] = 1.0;
  for (int id = loss.id(); id >= 0; --id) {
    Node& n = nodes_[id];
    if (!n.requires_grad || n.grad.empty() || !n.backward) continue;
    n.backward(*this);
  }
  for (auto& [p, id] : bindings_) {
    Node& n = nodes_[id];
    if (n.grad.empty()) continue;
    for (std::size_t k = 0; k < p->grad.size(); ++k) p->grad[k] += n.grad[k];
  }
}

}  // namespace hignn::tensor
