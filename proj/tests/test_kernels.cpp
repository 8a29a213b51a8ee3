#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "hignn/kernels.hpp"
#include "hignn/rng.hpp"

using namespace hignn;
namespace K = hignn::kernels;

namespace {

std::vector<double> rvec(std::size_t n, uint64_t stream) {
  CounterRng rng(404, stream);
  std::vector<double> v(n);
  for (auto& x : v) x = rng.next_uniform(2.0);
  return v;
}

}  // namespace

// the OpenMP kernels must be bit-identical to the serial reference
TEST_CASE("matmul serial == openmp, all transpose combos") {
  int n = 37, k = 23, m = 41;
  auto A = rvec(static_cast<std::size_t>(n) * k, 1);
  auto B = rvec(static_cast<std::size_t>(k) * m, 2);
  auto At = rvec(static_cast<std::size_t>(k) * n, 3);
  auto Bt = rvec(static_cast<std::size_t>(m) * k, 4);
  for (bool ta : {false, true}) {
    for (bool tb : {false, true}) {
      for (bool acc : {false, true}) {
        std::vector<double> c1(static_cast<std::size_t>(n) * m, 0.5);
        std::vector<double> c2(c1);
        K::serial::matmul((ta ? At : A).data(), ta, (tb ? Bt : B).data(), tb,
                          c1.data(), n, k, m, acc);
        K::omp::matmul((ta ? At : A).data(), ta, (tb ? Bt : B).data(), tb,
                       c2.data(), n, k, m, acc);
        CHECK(c1 == c2);
      }
    }
  }
}

TEST_CASE("bilinear serial == openmp") {
  int n = 53, d = 16, a = 4;
  auto Xi = rvec(static_cast<std::size_t>(n) * d, 5);
  auto Xj = rvec(static_cast<std::size_t>(n) * d, 6);
  auto W = rvec(static_cast<std::size_t>(a) * d * d, 7);
  auto G = rvec(static_cast<std::size_t>(n) * a, 8);
  std::vector<double> o1(static_cast<std::size_t>(n) * a), o2(o1);
  K::serial::bilinear_fwd(Xi.data(), W.data(), Xj.data(), o1.data(), n, d, a);
  K::omp::bilinear_fwd(Xi.data(), W.data(), Xj.data(), o2.data(), n, d, a);
  CHECK(o1 == o2);

  std::vector<double> dXi1(Xi.size(), 0.1), dXi2(dXi1);
  std::vector<double> dXj1(Xj.size(), 0.2), dXj2(dXj1);
  std::vector<double> dW1(W.size(), 0.3), dW2(dW1);
  K::serial::bilinear_bwd(Xi.data(), W.data(), Xj.data(), G.data(),
                          dXi1.data(), dW1.data(), dXj1.data(), n, d, a);
  K::omp::bilinear_bwd(Xi.data(), W.data(), Xj.data(), G.data(), dXi2.data(),
                       dW2.data(), dXj2.data(), n, d, a);
  CHECK(dXi1 == dXi2);
  CHECK(dXj1 == dXj2);
  CHECK(dW1 == dW2);
}

TEST_CASE("slice_scale serial == openmp") {
  int n = 29, d = 24, a = 3;
  auto X = rvec(static_cast<std::size_t>(n) * d, 9);
  auto Al = rvec(static_cast<std::size_t>(n) * a, 10);
  auto G = rvec(static_cast<std::size_t>(n) * d, 11);
  std::vector<double> o1(X.size()), o2(X.size());
  K::serial::slice_scale_fwd(X.data(), Al.data(), o1.data(), n, d, a);
  K::omp::slice_scale_fwd(X.data(), Al.data(), o2.data(), n, d, a);
  CHECK(o1 == o2);
  std::vector<double> dX1(X.size(), 0.0), dX2(X.size(), 0.0);
  std::vector<double> dA1(Al.size(), 0.0), dA2(Al.size(), 0.0);
  K::serial::slice_scale_bwd(X.data(), Al.data(), G.data(), dX1.data(),
                             dA1.data(), n, d, a);
  K::omp::slice_scale_bwd(X.data(), Al.data(), G.data(), dX2.data(),
                          dA2.data(), n, d, a);
  CHECK(dX1 == dX2);
  CHECK(dA1 == dA2);
}

TEST_CASE("elementwise serial == openmp") {
  auto x = rvec(997, 12);
  auto y = rvec(997, 13);
  for (auto f : {K::Unary::Relu, K::Unary::LeakyRelu, K::Unary::Tanh,
                 K::Unary::Sigmoid, K::Unary::Exp}) {
    std::vector<double> a(x.size()), b(x.size());
    K::serial::vmap(f, x.data(), a.data(), x.size());
    K::omp::vmap(f, x.data(), b.data(), x.size());
    CHECK(a == b);
  }
  for (auto f : {K::Binary::Add, K::Binary::Sub, K::Binary::Mul}) {
    std::vector<double> a(x.size()), b(x.size());
    K::serial::vzip(f, x.data(), y.data(), a.data(), x.size());
    K::omp::vzip(f, x.data(), y.data(), b.data(), x.size());
    CHECK(a == b);
  }
  std::vector<double> acc1(x.size(), 1.0), acc2(x.size(), 1.0);
  K::serial::vacc_mul(x.data(), y.data(), acc1.data(), x.size());
  K::omp::vacc_mul(x.data(), y.data(), acc2.data(), x.size());
  CHECK(acc1 == acc2);
}

TEST_CASE("backend switch changes dispatch, not results") {
  auto A = rvec(64, 20);
  auto B = rvec(64, 21);
  std::vector<double> c1(64), c2(64);
  K::Backend prev = K::backend();
  K::set_backend(K::Backend::Serial);
  K::matmul(A.data(), false, B.data(), false, c1.data(), 8, 8, 8, false);
  K::set_backend(K::Backend::OpenMP);
  K::matmul(A.data(), false, B.data(), false, c2.data(), 8, 8, 8, false);
  K::set_backend(prev);
  CHECK(c1 == c2);
}
