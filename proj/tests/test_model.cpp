#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "hignn/brics.hpp"
#include "hignn/checkpoint.hpp"
#include "hignn/mol.hpp"
#include "reference_loops.hpp"
#include "test_util.hpp"

using namespace hignn;
using namespace hignn::nn;
using namespace hignn::tensor;

namespace {

ModelConfig small_model_cfg(Mode mode = Mode::Full) {
  ModelConfig cfg;
  cfg.encoder.d = 8;
  cfg.encoder.depth = 2;
  cfg.encoder.slices = 2;
  cfg.encoder.reduction = 2;
  cfg.encoder.dropout = 0.0;
  cfg.mode = mode;
  cfg.encoder.fa_enabled = mode == Mode::Full || mode == Mode::NoHi;
  cfg.n_tasks = 1;
  return cfg;
}

struct MolInput {
  feat::GraphData mol;
  std::vector<feat::GraphData> frags;
};

MolInput featurize_with_fragments(const std::string& smiles) {
  MolInput in;
  mol::Molecule m = mol::parse_smiles(smiles);
  in.mol = feat::featurize_graph(m, {}, true);
  auto fs = brics::fragment(m);
  for (const auto& f : fs.fragments)
    in.frags.push_back(feat::featurize_graph(m, f, true));
  return in;
}

Forward run(HignnModel& model, Tape& tape, const MolInput& in,
            bool training = false) {
  GraphBatch mols = make_batch({&in.mol});
  std::vector<const feat::GraphData*> fp;
  for (const auto& f : in.frags) fp.push_back(&f);
  GraphBatch frags = make_batch(fp);
  std::vector<int> seg(in.frags.size(), 0);
  return forward(tape, model, mols, &frags, seg, training, 7, 0);
}

}  // namespace

TEST_CASE("uncleavable molecule: fragment encoding equals molecule encoding") {
  HignnModel model;
  model.cfg = small_model_cfg();
  model.init(42);
  MolInput in = featurize_with_fragments("CC");  // single fragment
  REQUIRE(in.frags.size() == 1);
  Tape t;
  Forward f = run(model, t, in);
  CHECK(f.h_g.value() == f.s_list.value());  // bitwise under weight sharing
}

TEST_CASE("combiner: single fragment gives softmax of one") {
  HignnModel model;
  model.cfg = small_model_cfg();
  model.init(43);
  MolInput in = featurize_with_fragments("c1ccccc1");
  Tape t;
  Forward f = run(model, t, in);
  // s_G must equal the concatenated per-head projections of s_1
  const auto& s1 = f.s_list.value();
  for (int h = 0; h < 4; ++h) {
    const auto& w6 = model.heads[h].w6.value;
    for (int r = 0; r < 2; ++r) {
      double acc = 0.0;
      for (int c = 0; c < 8; ++c) acc += w6[r * 8 + c] * s1[c];
      CHECK(f.s_g.value()[h * 2 + r] == doctest::Approx(acc).epsilon(1e-12));
    }
  }
}

TEST_CASE("combiner: fragment order does not change s_G") {
  HignnModel model;
  model.cfg = small_model_cfg();
  model.init(44);
  MolInput in = featurize_with_fragments("CCOC(=O)c1ccc(N)cc1");
  REQUIRE(in.frags.size() >= 3);
  Tape t1;
  Forward f1 = run(model, t1, in);
  std::reverse(in.frags.begin(), in.frags.end());
  Tape t2;
  Forward f2 = run(model, t2, in);
  CHECK(testutil::max_abs_diff(f1.s_g.value(), f2.s_g.value()) <= 1e-12);
  CHECK(testutil::max_abs_diff(f1.y.value(), f2.y.value()) <= 1e-12);
}

TEST_CASE("combiner matches the loop reference") {
  HignnModel model;
  model.cfg = small_model_cfg();
  model.init(45);
  MolInput in = featurize_with_fragments("CC(=O)Oc1ccccc1C(=O)O");
  REQUIRE(in.frags.size() >= 2);
  Tape t;
  Forward f = run(model, t, in);
  // reference path
  auto hg = refloops::encode_graph(in.mol, model.encoder, model.cfg.encoder);
  std::vector<refloops::Vec> frag_vecs;
  for (const auto& fg : in.frags)
    frag_vecs.push_back(
        refloops::encode_graph(fg, model.encoder, model.cfg.encoder));
  auto sg = refloops::combine(hg, frag_vecs, model);
  CHECK(testutil::max_abs_diff(f.s_g.value(), sg) <= 1e-12);
  refloops::Vec input(hg);
  input.insert(input.end(), sg.begin(), sg.end());
  auto y = refloops::predict(input, model);
  CHECK(testutil::max_abs_diff(f.y.value(), y) <= 1e-10);
}

TEST_CASE("no_all forward equals plain encoder plus predictor") {
  HignnModel model;
  model.cfg = small_model_cfg(Mode::NoAll);
  model.init(46);
  MolInput in = featurize_with_fragments("CC(C)Cc1ccc(C(C)C(=O)O)cc1");
  Tape t;
  GraphBatch mols = make_batch({&in.mol});
  Forward f = forward(t, model, mols, nullptr, {}, false, 0, 0);
  auto hg = refloops::encode_graph(in.mol, model.encoder, model.cfg.encoder);
  auto y = refloops::predict(hg, model);
  CHECK(testutil::max_abs_diff(f.y.value(), y) <= 1e-10);
  CHECK(f.y.shape()[1] == 1);
  CHECK_FALSE(f.s_g.valid());
}

TEST_CASE("weight sharing: one encoder drives both paths") {
  HignnModel model;
  model.cfg = small_model_cfg();
  model.init(47);
  MolInput in = featurize_with_fragments("CC(=O)Nc1ccccc1");
  Tape t1;
  Forward before = run(model, t1, in);
  model.encoder.w_in.value[1] += 0.25;  // weight on the carbon one-hot
  Tape t2;
  Forward after = run(model, t2, in);
  CHECK(before.h_g.value() != after.h_g.value());
  CHECK(before.s_list.value() != after.s_list.value());
}

TEST_CASE("empty fragment set is rejected") {
  HignnModel model;
  model.cfg = small_model_cfg();
  model.init(48);
  MolInput in = featurize_with_fragments("CC");
  GraphBatch mols = make_batch({&in.mol});
  GraphBatch frags = make_batch({&in.frags[0]});
  Tape t0;
  CHECK_THROWS_AS(forward(t0, model, mols, nullptr, {}, false, 0, 0),
                  EmptyFragmentSet);
  Tape t;
  CHECK_THROWS_AS(forward(t, model, mols, &frags, {}, false, 0, 0),
                  ShapeMismatch);
}

TEST_CASE("multitask output width") {
  HignnModel model;
  model.cfg = small_model_cfg();
  model.cfg.task = TaskType::BinaryMultitask;
  model.cfg.n_tasks = 5;
  model.init(49);
  MolInput in = featurize_with_fragments("c1ccncc1");
  Tape t;
  Forward f = run(model, t, in);
  CHECK(f.y.shape() == Shape({1, 5}));
}

TEST_CASE("checkpoint round trip is bit-exact and byte-stable") {
  HignnModel model;
  model.cfg = small_model_cfg();
  model.cfg.target_mean = {1.25};
  model.cfg.target_std = {2.5};
  model.init(50);
  const std::string p1 = "/tmp/hignn_test_ckpt1.json";
  const std::string p2 = "/tmp/hignn_test_ckpt2.json";
  save_checkpoint(p1, model);
  HignnModel loaded = load_checkpoint(p1);
  for (size_t k = 0; k < model.all_params().size(); ++k) {
    CHECK(model.all_params()[k]->value == loaded.all_params()[k]->value);
  }
  CHECK(loaded.cfg.target_mean == model.cfg.target_mean);
  save_checkpoint(p2, loaded);
  std::ifstream f1(p1), f2(p2);
  std::string s1((std::istreambuf_iterator<char>(f1)),
                 std::istreambuf_iterator<char>());
  std::string s2((std::istreambuf_iterator<char>(f2)),
                 std::istreambuf_iterator<char>());
  CHECK(s1 == s2);
  // forward agreement
  MolInput in = featurize_with_fragments("CCO");
  Tape ta, tb;
  Forward fa = run(model, ta, in);
  Forward fb = run(loaded, tb, in);
  CHECK(fa.y.value() == fb.y.value());
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("corrupt checkpoints are rejected") {
  const std::string p = "/tmp/hignn_test_ckpt_bad.json";
  {
    std::ofstream f(p);
    f << "{\"format_version\": 9}";
  }
  CHECK_THROWS_AS(load_checkpoint(p), DataError);
  {
    std::ofstream f(p);
    f << "not json";
  }
  CHECK_THROWS_AS(load_checkpoint(p), DataError);
  std::remove(p.c_str());
}

TEST_CASE("end-to-end gradient check") {
  HignnModel model;
  model.cfg = small_model_cfg();
  model.init(51);
  MolInput in = featurize_with_fragments("CC(=O)Nc1ccccc1");  // T = 2
  REQUIRE(in.frags.size() == 2);
  auto loss_of = [&]() -> double {
    Tape t;
    Forward f = run(model, t, in);
    return reduce_sum_all(mul(f.y, f.y)).scalar();
  };
  for (auto* prm : model.all_params()) prm->zero_grad();
  {
    Tape t;
    Forward f = run(model, t, in);
    t.backward(reduce_sum_all(mul(f.y, f.y)));
  }
  const double h = 1e-6;
  for (auto* prm : model.all_params()) {
    CAPTURE(prm->name);
    for (size_t k = 0; k < prm->value.size(); k += 9) {
      double save = prm->value[k];
      prm->value[k] = save + h;
      double up = loss_of();
      prm->value[k] = save - h;
      double dn = loss_of();
      prm->value[k] = save;
      double num = (up - dn) / (2 * h);
      double denom = std::max({std::abs(num), std::abs(prm->grad[k]), 1e-8});
      CHECK(std::abs(num - prm->grad[k]) / denom <= 1e-4);
    }
  }
}
