#pragma once

#include <map>
#include <string>
#include <vector>

#include "hignn/data.hpp"
#include "hignn/metrics.hpp"
#include "hignn/model.hpp"

namespace hignn::train {

struct TrainConfig {
  nn::ModelConfig model;
  double lr = 1e-3;
  double weight_decay = 1e-5;
  int batch_size = 32;
  int epochs = 100;
  uint64_t seed = 1;
  static constexpr int kEvalBatch = 256;  // fixed so metrics reproduce

  static const std::vector<std::string>& config_keys();
  // build from key=value pairs (file contents); n_tasks comes from the data
  static TrainConfig from_map(const std::map<std::string, std::string>& kv);
  std::map<std::string, std::string> to_map() const;
};

// featurized molecule plus its fragment subgraphs
struct FeaturizedRow {
  feat::GraphData mol;
  std::vector<feat::GraphData> frags;
};

// parallel featurization (bounded by HIGNN_THREADS); deterministic output
std::vector<FeaturizedRow> featurize_dataset(const Dataset& data,
                                             bool extras);

struct HistoryRow {
  int epoch;
  double train_loss;
  double val_metric;
  double test_metric;
};

struct TrainResult {
  nn::HignnModel model;      // best-validation parameters
  std::vector<HistoryRow> history;
  int best_epoch = -1;
  double best_val = 0.0;
  double test_metric = 0.0;  // of the best-validation model
};

// minibatch Adam with decoupled weight decay (beta1 0.9, beta2 0.999,
// eps 1e-8); deterministic given the seed; NaN loss aborts
TrainResult train_model(const Dataset& data, const Split& split,
                        const TrainConfig& cfg);

// metric on the given dataset rows (positions into data.rows)
EvalResult evaluate(nn::HignnModel& model,
                    const std::vector<FeaturizedRow>& feats,
                    const Dataset& data, const std::vector<int>& rows);

void save_history(const std::string& path,
                  const std::vector<HistoryRow>& history);

}  // namespace hignn::train
