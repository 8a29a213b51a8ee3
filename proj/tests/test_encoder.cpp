#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "hignn/brics.hpp"
#include "hignn/mol.hpp"
#include "reference_loops.hpp"
#include "test_util.hpp"

using namespace hignn;
using namespace hignn::nn;
using namespace hignn::tensor;

namespace {

EncoderConfig small_cfg() {
  EncoderConfig cfg;
  cfg.d = 8;
  cfg.depth = 2;
  cfg.slices = 2;
  cfg.reduction = 2;
  cfg.dropout = 0.0;
  cfg.atom_dim = feat::kAtomDimExtras;
  return cfg;
}

GraphBatch one(const feat::GraphData& g) { return make_batch({&g}); }

}  // namespace

TEST_CASE("interaction scores: zero parameters give zero") {
  EncoderConfig cfg = small_cfg();
  EncoderParams p;
  p.init(cfg, 1);
  for (auto* prm : p.all()) std::fill(prm->value.begin(), prm->value.end(), 0.0);
  Tape t;
  EncoderBind b = bind_encoder(t, p);
  Tensor hi = t.constant({3, 8}, std::vector<double>(24, 0.7));
  Tensor hj = t.constant({3, 8}, std::vector<double>(24, -0.3));
  Tensor e = t.constant({3, 8}, std::vector<double>(24, 0.1));
  Tensor alpha = interaction_scores(hi, hj, e, b.layers[0],
                                    MessageScheme::Atom);
  for (double v : alpha.value()) CHECK(v == 0.0);
}

TEST_CASE("interaction scores: identity slice on basis vectors") {
  EncoderConfig cfg = small_cfg();
  cfg.slices = 1;
  cfg.d = 3;
  cfg.reduction = 1;
  EncoderParams p;
  p.init(cfg, 1);
  for (auto* prm : p.all()) std::fill(prm->value.begin(), prm->value.end(), 0.0);
  // W1 slice = identity
  for (int i = 0; i < 3; ++i) p.layers[0].w1.value[i * 3 + i] = 1.0;
  Tape t;
  EncoderBind b = bind_encoder(t, p);
  Tensor e1 = t.constant({1, 3}, {1.0, 0.0, 0.0});
  Tensor e = t.constant({1, 3}, {0.0, 0.0, 0.0});
  Tensor alpha = interaction_scores(e1, e1, e, b.layers[0],
                                    MessageScheme::Atom);
  CHECK(alpha.value()[0] == doctest::Approx(std::tanh(1.0)).epsilon(1e-12));
}

TEST_CASE("message pass: saturated scores reduce to relu of neighbor") {
  EncoderConfig cfg = small_cfg();
  cfg.depth = 1;
  EncoderParams p;
  p.init(cfg, 2);
  std::fill(p.layers[0].w1.value.begin(), p.layers[0].w1.value.end(), 0.0);
  std::fill(p.layers[0].w2.value.begin(), p.layers[0].w2.value.end(), 0.0);
  std::fill(p.layers[0].b.value.begin(), p.layers[0].b.value.end(), 50.0);
  // tanh(50) rounds to exactly 1.0, so slice scaling is the identity
  feat::GraphData g = testutil::random_graph(2, cfg.atom_dim, 3);
  g.edge_src = {1};
  g.edge_dst = {0};
  g.e.resize(feat::kBondDim, 0.25);
  GraphBatch batch = one(g);
  Tape t;
  EncoderBind b = bind_encoder(t, p);
  Tensor x = t.constant({2, cfg.atom_dim}, batch.x);
  Tensor h = relu(linear(x, b.w_in));
  Tensor eb = t.constant({1, feat::kBondDim}, batch.e);
  Tensor ep = linear(eb, b.w_e);
  Tensor m = message_pass(h, ep, batch, b.layers[0], MessageScheme::Atom,
                          cfg.slices);
  // atom 0's message equals relu(h_1); atom 1 is isolated -> zero
  const auto& hv = h.value();
  for (int k = 0; k < 8; ++k) {
    CHECK(m.value()[k] == std::max(0.0, hv[8 + k]));
    CHECK(m.value()[8 + k] == 0.0);
  }
}

TEST_CASE("gated update endpoints and midpoint") {
  Tape t;
  Tensor h = t.constant({1, 1}, {2.0});
  Tensor m = t.constant({1, 1}, {0.0});
  // w3 columns: z = [h, m, h-m]; huge positive weight -> beta = 1
  Tensor w3_pos = t.constant({3, 1}, {1e4, 0.0, 0.0});
  CHECK(gated_update(h, m, w3_pos).value()[0] == 2.0);
  Tensor w3_neg = t.constant({3, 1}, {-1e4, 0.0, 0.0});
  CHECK(gated_update(h, m, w3_neg).value()[0] == 0.0);
  Tensor w3_zero = t.constant({3, 1}, {0.0, 0.0, 0.0});
  CHECK(gated_update(h, m, w3_zero).value()[0] == doctest::Approx(1.0));
}

TEST_CASE("gate sandwich property") {
  CounterRng rng(8, 8);
  Tape t;
  std::vector<double> hv(40), mv(40), wv(3 * 8 * 8);
  for (auto& v : hv) v = rng.next_uniform(2.0);
  for (auto& v : mv) v = rng.next_uniform(2.0);
  for (auto& v : wv) v = rng.next_uniform(2.0);
  Tensor h = t.constant({5, 8}, hv);
  Tensor m = t.constant({5, 8}, mv);
  Tensor w3 = t.constant({24, 8}, wv);
  Tensor hp = gated_update(h, m, w3);
  for (size_t i = 0; i < hv.size(); ++i) {
    CHECK(hp.value()[i] >= std::min(hv[i], mv[i]) - 1e-12);
    CHECK(hp.value()[i] <= std::max(hv[i], mv[i]) + 1e-12);
  }
}

TEST_CASE("fa recalibrate: zero weights halve the states") {
  Tape t;
  CounterRng rng(9, 9);
  std::vector<double> hv(32);
  for (auto& v : hv) v = rng.next_uniform(1.0);
  Tensor hp = t.constant({4, 8}, hv);
  Tensor w4 = t.constant({4, 8}, std::vector<double>(32, 0.0));
  Tensor w5 = t.constant({8, 4}, std::vector<double>(32, 0.0));
  Tensor out = fa_recalibrate(hp, w4, w5, {0, 0, 0, 0}, 1);
  for (size_t i = 0; i < hv.size(); ++i)
    CHECK(out.value()[i] == doctest::Approx(0.5 * hv[i]).epsilon(1e-14));
}

TEST_CASE("fa scale vector is shared across atoms and lies in (0,1)") {
  Tape t;
  CounterRng rng(10, 10);
  std::vector<double> hv(48), w4v(32), w5v(32);
  for (auto& v : hv) v = 0.5 + rng.next_double();  // strictly positive
  for (auto& v : w4v) v = rng.next_uniform(1.0);
  for (auto& v : w5v) v = rng.next_uniform(1.0);
  Tensor hp = t.constant({6, 8}, hv);
  Tensor w4 = t.constant({4, 8}, w4v);
  Tensor w5 = t.constant({8, 4}, w5v);
  Tensor out = fa_recalibrate(hp, w4, w5, {0, 0, 0, 0, 0, 0}, 1);
  // recover the implied per-column scale from each atom; must agree
  for (int col = 0; col < 8; ++col) {
    double c0 = out.value()[col] / hv[col];
    CHECK(c0 > 0.0);
    CHECK(c0 < 1.0);
    for (int row = 1; row < 6; ++row) {
      double c = out.value()[row * 8 + col] / hv[row * 8 + col];
      CHECK(c == doctest::Approx(c0).epsilon(1e-12));
    }
  }
}

TEST_CASE("single atom, depth 1: encode equals fa(gate(h0, 0))") {
  EncoderConfig cfg = small_cfg();
  cfg.depth = 1;
  EncoderParams p;
  p.init(cfg, 11);
  feat::GraphData g = testutil::random_graph(1, cfg.atom_dim, 12);
  GraphBatch batch = one(g);
  Tape t;
  EncoderBind b = bind_encoder(t, p);
  Tensor hg = encode(t, b, cfg, batch, false, 0, 0);

  Tape t2;
  EncoderBind b2 = bind_encoder(t2, p);
  Tensor x = t2.constant({1, cfg.atom_dim}, g.x);
  Tensor h0 = relu(linear(x, b2.w_in));
  Tensor zero = t2.constant({1, 8}, std::vector<double>(8, 0.0));
  Tensor expect = fa_recalibrate(gated_update(h0, zero, b2.w3), b2.w4, b2.w5,
                                 {0}, 1);
  CHECK(testutil::max_abs_diff(hg.value(), expect.value()) == 0.0);
}

TEST_CASE("encode matches the straight-line loop reference") {
  EncoderConfig cfg = small_cfg();
  EncoderParams p;
  p.init(cfg, 13);
  const char* smiles[] = {"CC(=O)Nc1ccc(O)cc1", "c1ccncc1", "CC(C)CC(N)C(=O)O",
                          "C", "CSc1ccc(Br)cc1"};
  for (const char* s : smiles) {
    CAPTURE(s);
    mol::Molecule m = mol::parse_smiles(s);
    feat::GraphData g = feat::featurize_graph(m, {}, true);
    GraphBatch batch = one(g);
    Tape t;
    EncoderBind b = bind_encoder(t, p);
    Tensor hg = encode(t, b, cfg, batch, false, 0, 0);
    auto ref = refloops::encode_graph(g, p, cfg);
    CHECK(testutil::max_abs_diff(hg.value(), ref) <= 1e-10);
  }
}

TEST_CASE("every message scheme matches the loop reference") {
  for (auto scheme : {MessageScheme::Atom, MessageScheme::Bond,
                      MessageScheme::Att, MessageScheme::Max,
                      MessageScheme::Mean, MessageScheme::Sum,
                      MessageScheme::Mul, MessageScheme::Mix}) {
    CAPTURE(scheme_to_string(scheme));
    EncoderConfig cfg = small_cfg();
    cfg.scheme = scheme;
    EncoderParams p;
    p.init(cfg, 17);
    mol::Molecule m = mol::parse_smiles("CCOC(=O)c1ccc(N)cc1");
    feat::GraphData g = feat::featurize_graph(m, {}, true);
    GraphBatch batch = one(g);
    Tape t;
    EncoderBind b = bind_encoder(t, p);
    Tensor hg = encode(t, b, cfg, batch, false, 0, 0);
    auto ref = refloops::encode_graph(g, p, cfg);
    CHECK(testutil::max_abs_diff(hg.value(), ref) <= 1e-10);
  }
}

TEST_CASE("permutation invariance of the readout") {
  EncoderConfig cfg = small_cfg();
  EncoderParams p;
  p.init(cfg, 19);
  mol::Molecule m = mol::parse_smiles("COc1ccc2cc(C(C)C(=O)O)ccc2c1");
  feat::GraphData g = feat::featurize_graph(m, {}, true);
  CounterRng rng(20, 0);
  std::vector<int> perm(g.n_atoms);
  std::iota(perm.begin(), perm.end(), 0);
  for (int rep = 0; rep < 5; ++rep) {
    for (int i = g.n_atoms - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.next_below(i + 1)]);
    feat::GraphData pg = testutil::permute_graph(g, perm);
    GraphBatch b1 = one(g), b2 = one(pg);
    Tape t1, t2;
    Tensor h1 = encode(t1, bind_encoder(t1, p), cfg, b1, false, 0, 0);
    Tensor h2 = encode(t2, bind_encoder(t2, p), cfg, b2, false, 0, 0);
    CHECK(testutil::max_abs_diff(h1.value(), h2.value()) <= 1e-9);
  }
}

TEST_CASE("ATT scheme ignores bond features") {
  EncoderConfig cfg = small_cfg();
  cfg.scheme = MessageScheme::Att;
  EncoderParams p;
  p.init(cfg, 23);
  feat::GraphData g = testutil::random_graph(6, cfg.atom_dim, 24);
  feat::GraphData g2 = g;
  CounterRng rng(25, 0);
  for (auto& v : g2.e) v = rng.next_uniform(3.0);  // different bond features
  Tape t1, t2;
  Tensor h1 = encode(t1, bind_encoder(t1, p), cfg, one(g), false, 0, 0);
  Tensor h2 = encode(t2, bind_encoder(t2, p), cfg, one(g2), false, 0, 0);
  CHECK(h1.value() == h2.value());
}

TEST_CASE("batching is bit-identical to separate encoding") {
  EncoderConfig cfg = small_cfg();
  EncoderParams p;
  p.init(cfg, 29);
  feat::GraphData g1 = testutil::random_graph(5, cfg.atom_dim, 30);
  feat::GraphData g2 = testutil::random_graph(3, cfg.atom_dim, 31);
  GraphBatch both = make_batch({&g1, &g2});
  Tape t;
  Tensor h = encode(t, bind_encoder(t, p), cfg, both, false, 0, 0);
  Tape ta, tb;
  Tensor ha = encode(ta, bind_encoder(ta, p), cfg, one(g1), false, 0, 0);
  Tensor hb = encode(tb, bind_encoder(tb, p), cfg, one(g2), false, 0, 0);
  for (int k = 0; k < 8; ++k) {
    CHECK(h.value()[k] == ha.value()[k]);
    CHECK(h.value()[8 + k] == hb.value()[k]);
  }
}

TEST_CASE("whole-encoder gradient check") {
  EncoderConfig cfg = small_cfg();
  EncoderParams p;
  p.init(cfg, 37);
  mol::Molecule m = mol::parse_smiles("CC(=O)O");
  feat::GraphData g = feat::featurize_graph(m, {}, true);
  GraphBatch batch = one(g);
  std::vector<double> proj(8);
  CounterRng rng(38, 0);
  for (auto& v : proj) v = rng.next_uniform(1.0);

  auto loss_value = [&]() -> double {
    Tape t;
    EncoderBind b = bind_encoder(t, p);
    Tensor hg = encode(t, b, cfg, batch, false, 0, 0);
    Tensor c = t.constant({1, 8}, proj);
    return reduce_sum_all(mul(hg, c)).scalar();
  };
  for (auto* prm : p.all()) prm->zero_grad();
  {
    Tape t;
    EncoderBind b = bind_encoder(t, p);
    Tensor hg = encode(t, b, cfg, batch, false, 0, 0);
    Tensor c = t.constant({1, 8}, proj);
    t.backward(reduce_sum_all(mul(hg, c)));
  }
  const double h = 1e-6;
  for (auto* prm : p.all()) {
    CAPTURE(prm->name);
    for (size_t k = 0; k < prm->value.size(); k += 7) {  // sample entries
      double save = prm->value[k];
      prm->value[k] = save + h;
      double up = loss_value();
      prm->value[k] = save - h;
      double dn = loss_value();
      prm->value[k] = save;
      double num = (up - dn) / (2 * h);
      double denom = std::max({std::abs(num), std::abs(prm->grad[k]), 1e-8});
      CHECK(std::abs(num - prm->grad[k]) / denom <= 1e-4);
    }
  }
}
