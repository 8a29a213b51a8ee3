#include "hignn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hignn::train {

double rmse(const std::vector<double>& pred,
            const std::vector<double>& truth) {
  if (pred.size() != truth.size() || pred.empty())
    throw NoValidTask("rmse needs matching non-empty inputs");
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    double d = pred[i] - truth[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(pred.size()));
}

double roc_auc(const std::vector<double>& scores,
               const std::vector<double>& labels) {
  std::size_t n = scores.size();
  if (n != labels.size() || n == 0)
    throw NoValidTask("roc_auc needs matching non-empty inputs");
  std::size_t n1 = 0;
  for (double y : labels)
    if (y > 0.5) ++n1;
  std::size_t n0 = n - n1;
  if (n1 == 0 || n0 == 0)
    throw NoValidTask("roc_auc needs both classes");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return scores[a] < scores[b]; });
  // average ranks over tie blocks, 1-based
  double rank_pos = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    double avg_rank = 0.5 * (static_cast<double>(i + 1) +
                             static_cast<double>(j + 1));
    for (std::size_t k = i; k <= j; ++k)
      if (labels[order[k]] > 0.5) rank_pos += avg_rank;
    i = j + 1;
  }
  double u = rank_pos - 0.5 * static_cast<double>(n1) *
                            static_cast<double>(n1 + 1);
  return u / (static_cast<double>(n1) * static_cast<double>(n0));
}

double prc_auc(const std::vector<double>& scores,
               const std::vector<double>& labels) {
  std::size_t n = scores.size();
  if (n != labels.size() || n == 0)
    throw NoValidTask("prc_auc needs matching non-empty inputs");
  std::size_t n1 = 0;
  for (double y : labels)
    if (y > 0.5) ++n1;
  if (n1 == 0) throw NoValidTask("prc_auc needs positives");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return scores[a] > scores[b]; });
  // average precision over distinct-score thresholds
  double ap = 0.0;
  double tp = 0.0, fp = 0.0, prev_recall = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) {
      if (labels[order[k]] > 0.5)
        tp += 1.0;
      else
        fp += 1.0;
    }
    double recall = tp / static_cast<double>(n1);
    double precision = tp / (tp + fp);
    ap += (recall - prev_recall) * precision;
    prev_recall = recall;
    i = j + 1;
  }
  return ap;
}

}  // namespace hignn::train
