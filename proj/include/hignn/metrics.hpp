#pragma once

#include <string>
#include <vector>

#include "hignn/errors.hpp"

namespace hignn::train {

double rmse(const std::vector<double>& pred, const std::vector<double>& truth);

// normalized Mann-Whitney U with tie correction (average ranks); requires
// both classes present
double roc_auc(const std::vector<double>& scores,
               const std::vector<double>& labels);

// area under the precision-recall curve as average precision
double prc_auc(const std::vector<double>& scores,
               const std::vector<double>& labels);

struct EvalResult {
  std::vector<double> per_task;   // NaN for skipped tasks
  std::vector<int> skipped;       // tasks without both classes / any label
  double mean = 0.0;              // unweighted mean over valid tasks
  std::string metric;
};

}  // namespace hignn::train
