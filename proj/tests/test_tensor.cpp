#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "hignn/rng.hpp"
#include "hignn/tensor.hpp"

using namespace hignn;
using namespace hignn::tensor;

namespace {

std::vector<double> random_vec(std::size_t n, uint64_t stream,
                               double scale = 1.0) {
  CounterRng rng(911, stream);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.next_uniform(scale);
  return v;
}

// central finite differences of f at base, relative error vs analytic
double max_rel_err(std::function<double(const std::vector<double>&)> f,
                   const std::vector<double>& base,
                   const std::vector<double>& analytic, double h = 1e-6) {
  double worst = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    std::vector<double> hi(base), lo(base);
    hi[i] += h;
    lo[i] -= h;
    double num = (f(hi) - f(lo)) / (2.0 * h);
    double denom = std::max({std::abs(num), std::abs(analytic[i]), 1e-8});
    worst = std::max(worst, std::abs(num - analytic[i]) / denom);
  }
  return worst;
}

// builds a scalar loss from a single param vector through `graph`
double check_param_gradient(
    Shape shape, uint64_t stream,
    std::function<Tensor(Tape&, const Tensor&)> graph, double scale = 1.0) {
  Param p;
  p.name = "p";
  p.shape = shape;
  p.resize();
  p.value = random_vec(numel(shape), stream, scale);
  auto eval = [&](const std::vector<double>& v) {
    Param q = p;
    q.value = v;
    Tape t;
    return graph(t, t.param(q)).scalar();
  };
  Tape t;
  Tensor loss = graph(t, t.param(p));
  t.backward(loss);
  return max_rel_err(eval, p.value, p.grad);
}

}  // namespace

TEST_CASE("tanh at zero") {
  Param p;
  p.shape = {1};
  p.resize();
  p.value = {0.0};
  Tape t;
  Tensor y = tanh_t(t.param(p));
  CHECK(y.scalar() == 0.0);
  t.backward(y);
  CHECK(p.grad[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bilinear identity slice on basis vector") {
  Tape t;
  std::vector<double> w(9, 0.0);
  w[0] = w[4] = w[8] = 1.0;  // identity
  Tensor W = t.constant({1, 3, 3}, w);
  Tensor x = t.constant({1, 3}, {1.0, 0.0, 0.0});
  Tensor out = bilinear(x, W, x);
  CHECK(out.value()[0] == doctest::Approx(1.0));
}

TEST_CASE("backward of sum gives ones, sum of squares gives 2W") {
  Param p;
  p.shape = {2, 3};
  p.resize();
  p.value = random_vec(6, 7);
  {
    Tape t;
    Tensor w = t.param(p);
    t.backward(reduce_sum_all(w));
    for (double g : p.grad) CHECK(g == doctest::Approx(1.0));
  }
  p.zero_grad();
  {
    Tape t;
    Tensor w = t.param(p);
    t.backward(reduce_sum_all(mul(w, w)));
    for (int i = 0; i < 6; ++i)
      CHECK(p.grad[i] == doctest::Approx(2.0 * p.value[i]));
  }
}

TEST_CASE("double backward and non-scalar loss throw") {
  Param p;
  p.shape = {2};
  p.resize();
  Tape t;
  Tensor w = t.param(p);
  CHECK_THROWS_AS(t.backward(w), NonScalarLoss);
  Tensor loss = reduce_sum_all(w);
  t.backward(loss);
  CHECK_THROWS_AS(t.backward(loss), DoubleBackward);
}

TEST_CASE("shape mismatches throw") {
  Tape t;
  Tensor a = t.constant({2, 3}, std::vector<double>(6, 1.0));
  Tensor b = t.constant({3, 3}, std::vector<double>(9, 1.0));
  CHECK_THROWS_AS(add(a, b), ShapeMismatch);
  CHECK_THROWS_AS(matmul(a, a), ShapeMismatch);
  CHECK_THROWS_AS(slice_scale(a, t.constant({2, 2}, {1, 1, 1, 1})),
                  ShapeMismatch);
}

TEST_CASE("softmax rows sum to one") {
  Tape t;
  Tensor x = t.constant({3, 4}, random_vec(12, 21, 5.0));
  Tensor y = softmax_rows(x);
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int j = 0; j < 4; ++j) s += y.value()[i * 4 + j];
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
  Tensor z = sigmoid(x);
  for (double v : z.value()) {
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("reduce_max ties go to the lowest index") {
  Tape t;
  Param p;
  p.shape = {3, 2};
  p.resize();
  p.value = {5.0, 1.0, 5.0, 2.0, 3.0, 2.0};
  Tensor x = t.param(p);
  Tensor mx = reduce_max_axis0(x);
  CHECK(mx.value()[0] == 5.0);
  CHECK(mx.value()[1] == 2.0);
  t.backward(reduce_sum_all(mx));
  CHECK(p.grad[0] == 1.0);  // first of the tied 5s
  CHECK(p.grad[4] == 0.0);
  CHECK(p.grad[3] == 1.0);  // first of the tied 2s
  CHECK(p.grad[5] == 0.0);
}

TEST_CASE("finite differences across every primitive") {
  // every op wrapped into a scalar via a fixed random projection
  auto project = [](Tape& t, const Tensor& x) {
    std::vector<double> w = random_vec(numel(x.shape()), 1234, 1.0);
    Tensor c = t.constant(x.shape(), w);
    return reduce_sum_all(mul(x, c));
  };
  using G = std::function<Tensor(Tape&, const Tensor&)>;
  std::vector<std::pair<std::string, G>> cases;
  cases.push_back({"relu", [&](Tape& t, const Tensor& x) {
    return project(t, relu(x));
  }});
  cases.push_back({"leaky_relu", [&](Tape& t, const Tensor& x) {
    return project(t, leaky_relu(x));
  }});
  cases.push_back({"tanh", [&](Tape& t, const Tensor& x) {
    return project(t, tanh_t(x));
  }});
  cases.push_back({"sigmoid", [&](Tape& t, const Tensor& x) {
    return project(t, sigmoid(x));
  }});
  cases.push_back({"exp", [&](Tape& t, const Tensor& x) {
    return project(t, exp_t(x));
  }});
  cases.push_back({"softmax", [&](Tape& t, const Tensor& x) {
    return project(t, softmax_rows(x));
  }});
  cases.push_back({"matmul", [&](Tape& t, const Tensor& x) {
    Tensor b = t.constant({5, 4}, random_vec(20, 55));
    return project(t, matmul(x, b));
  }});
  cases.push_back({"linear", [&](Tape& t, const Tensor& x) {
    Tensor w = t.constant({2, 5}, random_vec(10, 56));
    return project(t, linear(x, w));
  }});
  cases.push_back({"add", [&](Tape& t, const Tensor& x) {
    Tensor b = t.constant(x.shape(), random_vec(numel(x.shape()), 57));
    return project(t, add(x, b));
  }});
  cases.push_back({"sub", [&](Tape& t, const Tensor& x) {
    Tensor b = t.constant(x.shape(), random_vec(numel(x.shape()), 58));
    return project(t, sub(x, b));
  }});
  cases.push_back({"mul", [&](Tape& t, const Tensor& x) {
    Tensor b = t.constant(x.shape(), random_vec(numel(x.shape()), 59));
    return project(t, mul(x, b));
  }});
  cases.push_back({"div", [&](Tape& t, const Tensor& x) {
    auto d = random_vec(numel(x.shape()), 60);
    for (auto& v : d) v = 2.0 + std::abs(v);
    Tensor b = t.constant(x.shape(), d);
    return project(t, div(x, b));
  }});
  cases.push_back({"add_rowvec", [&](Tape& t, const Tensor& x) {
    Tensor b = t.constant({5}, random_vec(5, 61));
    return project(t, add_rowvec(x, b));
  }});
  cases.push_back({"scale_rows", [&](Tape& t, const Tensor& x) {
    Tensor s = t.constant({4}, random_vec(4, 62));
    return project(t, scale_rows(x, s));
  }});
  cases.push_back({"concat_slice", [&](Tape& t, const Tensor& x) {
    Tensor c = concat_cols({x, x});
    return project(t, slice_cols(c, 2, 8));
  }});
  cases.push_back({"reshape", [&](Tape& t, const Tensor& x) {
    return project(t, reshape(x, {2, 10}));
  }});
  cases.push_back({"reduce_sum0", [&](Tape& t, const Tensor& x) {
    return project(t, reduce_sum_axis0(x));
  }});
  cases.push_back({"reduce_sum1", [&](Tape& t, const Tensor& x) {
    return project(t, reduce_sum_axis1(x));
  }});
  cases.push_back({"reduce_max0", [&](Tape& t, const Tensor& x) {
    return project(t, reduce_max_axis0(x));
  }});
  cases.push_back({"gather", [&](Tape& t, const Tensor& x) {
    return project(t, gather_rows(x, {3, 0, 1, 1}));
  }});
  cases.push_back({"segment_sum", [&](Tape& t, const Tensor& x) {
    return project(t, segment_sum(x, {0, 1, 0, 1}, 2));
  }});
  cases.push_back({"segment_max", [&](Tape& t, const Tensor& x) {
    return project(t, segment_max(x, {0, 1, 0, 1}, 2));
  }});
  cases.push_back({"slice_scale_x", [&](Tape& t, const Tensor& x) {
    // use the first column block as alpha source via constants
    Tensor alpha = t.constant({4, 5}, random_vec(20, 63));
    return project(t, slice_scale(x, alpha));
  }});
  cases.push_back({"masked_mse", [&](Tape& t, const Tensor& x) {
    auto target = random_vec(20, 64);
    std::vector<double> mask(20, 1.0);
    mask[3] = 0.0;
    mask[11] = 0.0;
    return masked_mse(x, target, mask);
  }});
  cases.push_back({"masked_bce", [&](Tape& t, const Tensor& x) {
    std::vector<double> target(20);
    CounterRng rng(3, 3);
    for (auto& v : target) v = rng.next_double() < 0.5 ? 0.0 : 1.0;
    std::vector<double> mask(20, 1.0);
    mask[0] = 0.0;
    return masked_bce_logits(x, target, mask);
  }});
  for (auto& [name, graph] : cases) {
    CAPTURE(name);
    uint64_t stream = stable_hash(name.c_str());
    double err = check_param_gradient({4, 5}, stream, graph);
    CHECK(err <= 1e-4);
  }
  // bilinear gets its own shapes, checking all three inputs
  double err_w = check_param_gradient({2, 6, 6}, 77, [&](Tape& t, const Tensor& w) {
    Tensor xi = t.constant({3, 6}, random_vec(18, 78));
    Tensor xj = t.constant({3, 6}, random_vec(18, 79));
    Tensor c = t.constant({3, 2}, random_vec(6, 80));
    return reduce_sum_all(mul(bilinear(xi, w, xj), c));
  });
  CHECK(err_w <= 1e-4);
  double err_xi = check_param_gradient({3, 6}, 81, [&](Tape& t, const Tensor& xi) {
    Tensor w = t.constant({2, 6, 6}, random_vec(72, 82));
    Tensor xj = t.constant({3, 6}, random_vec(18, 83));
    Tensor c = t.constant({3, 2}, random_vec(6, 84));
    return reduce_sum_all(mul(bilinear(xi, w, xj), c));
  });
  CHECK(err_xi <= 1e-4);
  double err_alpha = check_param_gradient({4, 2}, 85, [&](Tape& t, const Tensor& a) {
    Tensor x = t.constant({4, 6}, random_vec(24, 86));
    Tensor c = t.constant({4, 6}, random_vec(24, 87));
    return reduce_sum_all(mul(slice_scale(x, a), c));
  });
  CHECK(err_alpha <= 1e-4);
}

TEST_CASE("dropout determinism and eval identity") {
  Tape t;
  std::vector<double> v = random_vec(100, 5);
  Tensor x = t.constant({10, 10}, v);
  Tensor e = dropout(x, 0.5, false, 1, 2);
  CHECK(e.value() == v);
  Tensor d1 = dropout(x, 0.5, true, 1, 2);
  Tensor d2 = dropout(x, 0.5, true, 1, 2);
  CHECK(d1.value() == d2.value());
  Tensor d3 = dropout(x, 0.5, true, 1, 3);
  CHECK(d1.value() != d3.value());
  CHECK_THROWS_AS(dropout(x, 1.0, true, 1, 2), ConfigError);
}

TEST_CASE("deterministic forward and gradients") {
  auto run = [] {
    Param p;
    p.shape = {6, 6};
    p.resize();
    p.value = random_vec(36, 99);
    Tape t;
    Tensor w = t.param(p);
    Tensor y = tanh_t(matmul(w, w));
    Tensor loss = reduce_sum_all(mul(y, y));
    t.backward(loss);
    return std::make_pair(loss.scalar(), p.grad);
  };
  auto [l1, g1] = run();
  auto [l2, g2] = run();
  CHECK(std::memcmp(&l1, &l2, sizeof(double)) == 0);
  CHECK(g1 == g2);
}

TEST_CASE("all-masked loss throws") {
  Tape t;
  Tensor x = t.constant({2, 2}, {1, 2, 3, 4});
  std::vector<double> target(4, 0.0), mask(4, 0.0);
  CHECK_THROWS_AS(masked_mse(x, target, mask), AllMasked);
}
