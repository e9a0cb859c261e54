#ifndef HAP_EVALUATION_HPP
#define HAP_EVALUATION_HPP

#include <utility>
#include <vector>

#include "hap/types.hpp"

namespace hap {

struct MetricReport {
  Vector per_attribute_auc;          // NaN where undefined
  std::vector<int> skipped_attributes;  // single-class label columns
  double mean_auc = 0;               // mean over defined attributes
  double class_averaged_accuracy = 0;
  double absolute_accuracy = 0;
};

/// Mann-Whitney rank AUC; ties contribute 1/2. Labels must contain both
/// classes (DegenerateLabels otherwise).
double roc_auc(const Vector& scores, const Vector& labels);

/// Per-attribute AUC of score columns against binary label columns.
/// Single-class columns are excluded from the mean and listed.
MetricReport attribute_auc_report(const Matrix& S, const Matrix& labels);

double class_averaged_accuracy(const std::vector<int>& pred,
                               const std::vector<int>& truth);

double absolute_accuracy(const std::vector<int>& pred,
                         const std::vector<int>& truth);

/// (FPR, TPR) points of the ROC curve, threshold from +inf downwards.
std::vector<std::pair<double, double>> roc_points(const Vector& scores,
                                                  const Vector& labels);

}  // namespace hap

#endif  // HAP_EVALUATION_HPP
