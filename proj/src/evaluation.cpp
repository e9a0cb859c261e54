#include "hap/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "hap/errors.hpp"

namespace hap {

double roc_auc(const Vector& scores, const Vector& labels) {
  if (scores.size() != labels.size())
    throw DimensionMismatch("score and label lengths differ");
  const Index k = scores.size();
  Index npos = 0;
  for (Index i = 0; i < k; ++i) {
    if (labels(i) != 0.0 && labels(i) != 1.0)
      throw NonBinaryEntry("AUC labels must be binary");
    if (labels(i) == 1.0) ++npos;
  }
  const Index nneg = k - npos;
  if (npos == 0 || nneg == 0)
    throw DegenerateLabels("labels contain a single class");

  std::vector<Index> order(static_cast<size_t>(k));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return scores(a) < scores(b); });

  // average ranks over tie groups, then Mann-Whitney
  double pos_rank_sum = 0.0;
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j + 1 < order.size() &&
           scores(order[j + 1]) == scores(order[i]))
      ++j;
    const double avg_rank = (static_cast<double>(i + 1) +
                             static_cast<double>(j + 1)) /
                            2.0;
    for (size_t t = i; t <= j; ++t)
      if (labels(order[t]) == 1.0) pos_rank_sum += avg_rank;
    i = j + 1;
  }
  const double np = static_cast<double>(npos), nn = static_cast<double>(nneg);
  return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

MetricReport attribute_auc_report(const Matrix& S, const Matrix& labels) {
  if (S.rows() != labels.rows() || S.cols() != labels.cols())
    throw DimensionMismatch("score and label matrices differ in shape");
  MetricReport report;
  report.per_attribute_auc = Vector::Constant(
      S.cols(), std::numeric_limits<double>::quiet_NaN());
  double sum = 0.0;
  int defined = 0;
  for (Index j = 0; j < S.cols(); ++j) {
    try {
      const double auc = roc_auc(S.col(j), labels.col(j));
      report.per_attribute_auc(j) = auc;
      sum += auc;
      ++defined;
    } catch (const DegenerateLabels&) {
      report.skipped_attributes.push_back(static_cast<int>(j));
    }
  }
  report.mean_auc = defined > 0 ? sum / defined : 0.0;
  return report;
}

double class_averaged_accuracy(const std::vector<int>& pred,
                               const std::vector<int>& truth) {
  if (truth.empty()) throw EmptyInput("no samples");
  if (pred.size() != truth.size())
    throw DimensionMismatch("prediction and truth lengths differ");
  std::map<int, std::pair<int, int>> per_class;  // class -> (correct, total)
  for (size_t i = 0; i < truth.size(); ++i) {
    auto& [correct, total] = per_class[truth[i]];
    ++total;
    if (pred[i] == truth[i]) ++correct;
  }
  double sum = 0.0;
  for (const auto& [cls, ct] : per_class)
    sum += static_cast<double>(ct.first) / ct.second;
  return sum / static_cast<double>(per_class.size());
}

double absolute_accuracy(const std::vector<int>& pred,
                         const std::vector<int>& truth) {
  if (truth.empty()) throw EmptyInput("no samples");
  if (pred.size() != truth.size())
    throw DimensionMismatch("prediction and truth lengths differ");
  size_t hits = 0;
  for (size_t i = 0; i < truth.size(); ++i)
    if (pred[i] == truth[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

std::vector<std::pair<double, double>> roc_points(const Vector& scores,
                                                  const Vector& labels) {
  const Index k = scores.size();
  if (labels.size() != k)
    throw DimensionMismatch("score and label lengths differ");
  Index npos = 0;
  for (Index i = 0; i < k; ++i)
    if (labels(i) == 1.0) ++npos;
  const Index nneg = k - npos;
  if (npos == 0 || nneg == 0)
    throw DegenerateLabels("labels contain a single class");

  std::vector<Index> order(static_cast<size_t>(k));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return scores(a) > scores(b); });

  std::vector<std::pair<double, double>> points{{0.0, 0.0}};
  Index tp = 0, fp = 0;
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j + 1 < order.size() && scores(order[j + 1]) == scores(order[i]))
      ++j;
    for (size_t t = i; t <= j; ++t) {
      if (labels(order[t]) == 1.0)
        ++tp;
      else
        ++fp;
    }
    points.emplace_back(static_cast<double>(fp) / static_cast<double>(nneg),
                        static_cast<double>(tp) / static_cast<double>(npos));
    i = j + 1;
  }
  return points;
}

}  // namespace hap
