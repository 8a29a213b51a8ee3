#pragma once

#include <string>
#include <vector>

#include "hignn/encoder.hpp"

namespace hignn::nn {

// ablation variants: NoHi drops the fragment path, NoFa drops feature-wise
// attention, NoAll drops both
enum class Mode { Full, NoHi, NoFa, NoAll };
enum class TaskType { Regression, BinaryMultitask };

Mode mode_from_string(const std::string& s);
std::string mode_to_string(Mode m);
TaskType task_from_string(const std::string& s);
std::string task_to_string(TaskType t);

struct ModelConfig {
  EncoderConfig encoder;
  Mode mode = Mode::Full;
  TaskType task = TaskType::Regression;
  int n_tasks = 1;
  int heads = 4;
  std::string metric = "rmse";           // rmse | roc_auc | prc_auc
  std::vector<double> target_mean, target_std;  // regression normalization

  bool uses_fragments() const {
    return mode == Mode::Full || mode == Mode::NoFa;
  }
  int predictor_in() const {
    return uses_fragments() ? 2 * encoder.d : encoder.d;
  }
  void validate() const;
};

struct HignnModel {
  ModelConfig cfg;
  EncoderParams encoder;  // one parameter set shared by both paths
  struct Head {
    tensor::Param w6;    // {d/heads, d}
    tensor::Param attn;  // {2 * d/heads}
  };
  std::vector<Head> heads;
  tensor::Param pred_w1, pred_b1, pred_w2, pred_b2;

  void init(uint64_t seed);
  std::vector<tensor::Param*> all_params();
};

struct ModelBind {
  EncoderBind encoder;
  struct Head {
    tensor::Tensor w6, attn;
  };
  std::vector<Head> heads;
  tensor::Tensor pred_w1, pred_b1, pred_w2, pred_b2;
};
ModelBind bind_model(tensor::Tape& tape, HignnModel& model);

// four-head additive inter-attention over each molecule's fragments;
// returns s_G [n_graphs, d] (heads concatenated)
tensor::Tensor combine(tensor::Tape& tape, const ModelBind& bind,
                       const tensor::Tensor& h_g, const tensor::Tensor& s_list,
                       const std::vector<int>& frag_seg, int n_graphs);

struct Forward {
  tensor::Tensor y;       // [n_graphs, n_tasks]
  tensor::Tensor h_g;     // [n_graphs, d]
  tensor::Tensor s_g;     // [n_graphs, d] (fragment path only)
  tensor::Tensor s_list;  // [n_fragments, d] (fragment path only)
};

// frags may be null in NoHi / NoAll mode; frag_seg maps fragment graph ->
// parent molecule index
Forward forward(tensor::Tape& tape, HignnModel& model, const GraphBatch& mols,
                const GraphBatch* frags, const std::vector<int>& frag_seg,
                bool training, uint64_t seed, uint64_t step);

}  // namespace hignn::nn
