#include "hignn/model.hpp"

#include <cmath>

#include "hignn/rng.hpp"

namespace hignn::nn {

using tensor::Param;
using tensor::Tape;
using tensor::Tensor;

Mode mode_from_string(const std::string& s) {
  if (s == "full") return Mode::Full;
  if (s == "no_hi") return Mode::NoHi;
  if (s == "no_fa") return Mode::NoFa;
  if (s == "no_all") return Mode::NoAll;
  throw ConfigError("unknown mode '" + s + "'");
}

std::string mode_to_string(Mode m) {
  switch (m) {
    case Mode::Full: return "full";
    case Mode::NoHi: return "no_hi";
    case Mode::NoFa: return "no_fa";
    case Mode::NoAll: return "no_all";
  }
  return "full";
}

TaskType task_from_string(const std::string& s) {
  if (s == "regression") return TaskType::Regression;
  if (s == "binary") return TaskType::BinaryMultitask;
  throw ConfigError("unknown task type '" + s + "'");
}

std::string task_to_string(TaskType t) {
  return t == TaskType::Regression ? "regression" : "binary";
}

void ModelConfig::validate() const {
  encoder.validate();
  if (n_tasks < 1) throw ConfigError("n_tasks must be >= 1");
  if (heads < 1) throw ConfigError("heads must be >= 1");
  if (uses_fragments() && encoder.d % heads != 0)
    throw ConfigError("head count must divide hidden width");
  bool fa_wanted = mode == Mode::Full || mode == Mode::NoHi;
  if (encoder.fa_enabled != fa_wanted)
    throw ConfigError("fa_enabled flag inconsistent with mode");
}

namespace {

void glorot(Param& p, const std::string& name, int fan_in, int fan_out,
            uint64_t seed) {
  p.name = name;
  p.resize();
  double w = std::sqrt(6.0 / (fan_in + fan_out));
  CounterRng rng(seed, stable_hash(name.c_str()));
  for (auto& v : p.value) v = rng.next_uniform(w);
}

}  // namespace

void HignnModel::init(uint64_t seed) {
  cfg.validate();
  encoder.init(cfg.encoder, seed);
  int d = cfg.encoder.d;
  heads.clear();
  if (cfg.uses_fragments()) {
    int d4 = d / cfg.heads;
    for (int h = 0; h < cfg.heads; ++h) {
      Head head;
      std::string base = "combiner.head" + std::to_string(h);
      head.w6.shape = {d4, d};
      glorot(head.w6, base + ".W6", d, d4, seed);
      head.attn.shape = {2 * d4};
      glorot(head.attn, base + ".attn", 2 * d4, 1, seed);
      heads.push_back(std::move(head));
    }
  }
  pred_w1.shape = {d, cfg.predictor_in()};
  glorot(pred_w1, "predictor.W1", cfg.predictor_in(), d, seed);
  pred_b1.shape = {d};
  pred_b1.name = "predictor.b1";
  pred_b1.resize();
  pred_w2.shape = {cfg.n_tasks, d};
  glorot(pred_w2, "predictor.W2", d, cfg.n_tasks, seed);
  pred_b2.shape = {cfg.n_tasks};
  pred_b2.name = "predictor.b2";
  pred_b2.resize();
}

std::vector<Param*> HignnModel::all_params() {
  std::vector<Param*> out = encoder.all();
  for (auto& h : heads) {
    out.push_back(&h.w6);
    out.push_back(&h.attn);
  }
  out.push_back(&pred_w1);
  out.push_back(&pred_b1);
  out.push_back(&pred_w2);
  out.push_back(&pred_b2);
  return out;
}

ModelBind bind_model(Tape& tape, HignnModel& model) {
  ModelBind b;
  b.encoder = bind_encoder(tape, model.encoder);
  for (auto& h : model.heads) {
    ModelBind::Head hb;
    hb.w6 = tape.param(h.w6);
    hb.attn = tape.param(h.attn);
    b.heads.push_back(hb);
  }
  b.pred_w1 = tape.param(model.pred_w1);
  b.pred_b1 = tape.param(model.pred_b1);
  b.pred_w2 = tape.param(model.pred_w2);
  b.pred_b2 = tape.param(model.pred_b2);
  return b;
}

Tensor combine(Tape& tape, const ModelBind& bind, const Tensor& h_g,
               const Tensor& s_list, const std::vector<int>& frag_seg,
               int n_graphs) {
  using namespace tensor;
  if (s_list.rows() < 1) throw EmptyFragmentSet("no fragments to combine");
  if (static_cast<int>(frag_seg.size()) != s_list.rows())
    throw ShapeMismatch("fragment segment ids do not match fragment count");
  std::vector<bool> covered(n_graphs, false);
  for (int s : frag_seg) covered[s] = true;
  for (int gidx = 0; gidx < n_graphs; ++gidx)
    if (!covered[gidx])
      throw EmptyFragmentSet("molecule " + std::to_string(gidx) +
                             " has no fragments");
  std::vector<Tensor> head_outs;
  for (const auto& head : bind.heads) {
    Tensor q = linear(h_g, head.w6);                 // [G, d4]
    Tensor keys = linear(s_list, head.w6);           // [F, d4]
    Tensor qf = gather_rows(q, frag_seg);            // [F, d4]
    int d4 = q.shape()[1];
    Tensor attn_col = reshape(head.attn, {2 * d4, 1});
    Tensor scores = leaky_relu(matmul(concat_cols({qf, keys}), attn_col));
    // softmax over each molecule's fragment set
    Tensor mx = segment_max(scores, frag_seg, n_graphs);
    Tensor shifted = sub(scores, gather_rows(mx, frag_seg));
    Tensor ex = exp_t(shifted);
    Tensor denom = segment_sum(ex, frag_seg, n_graphs);
    Tensor alpha = div(ex, gather_rows(denom, frag_seg));  // [F, 1]
    Tensor weighted = scale_rows(keys, reshape(alpha, {alpha.rows()}));
    head_outs.push_back(segment_sum(weighted, frag_seg, n_graphs));
  }
  return concat_cols(head_outs);
}

Forward forward(Tape& tape, HignnModel& model, const GraphBatch& mols,
                const GraphBatch* frags, const std::vector<int>& frag_seg,
                bool training, uint64_t seed, uint64_t step) {
  using namespace tensor;
  ModelBind bind = bind_model(tape, model);
  Forward out;
  out.h_g = encode(tape, bind.encoder, model.cfg.encoder, mols, training,
                   seed, step);
  Tensor input = out.h_g;
  if (model.cfg.uses_fragments()) {
    if (frags == nullptr) throw EmptyFragmentSet("fragment batch missing");
    out.s_list = encode(tape, bind.encoder, model.cfg.encoder, *frags,
                        training, seed, step ^ 0x5eedULL);
    out.s_g = combine(tape, bind, out.h_g, out.s_list, frag_seg,
                      mols.n_graphs);
    input = concat_cols({out.h_g, out.s_g});
  }
  Tensor hidden = relu(add_rowvec(linear(input, bind.pred_w1), bind.pred_b1));
  hidden = dropout(hidden, model.cfg.encoder.dropout, training, seed,
                   (step << 8) ^ 0xffULL);
  out.y = add_rowvec(linear(hidden, bind.pred_w2), bind.pred_b2);
  return out;
}

}  // namespace hignn::nn
