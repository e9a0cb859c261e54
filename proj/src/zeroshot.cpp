#include "hap/zeroshot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "hap/errors.hpp"

namespace hap {

namespace {

double sigmoid(double t) {
  // branch keeps exp arguments nonpositive so extremes saturate cleanly
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

int argbest(const Eigen::RowVectorXd& row, bool higher_is_better) {
  int best = 0;
  for (int j = 1; j < row.size(); ++j) {
    if (higher_is_better ? row(j) > row(best) : row(j) < row(best)) best = j;
  }
  return best;
}

}  // namespace

NormalizedConfidences sigmoid_normalize(const Matrix& S, double rho) {
  if (rho <= 0) throw NonPositiveRho("rho must be positive");
  if (!S.allFinite()) throw NonFiniteInput("scores contain non-finite values");
  Matrix R(S.rows(), S.cols());
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < S.cols(); ++j)
    for (Index i = 0; i < S.rows(); ++i) R(i, j) = sigmoid(S(i, j) / rho);
  return NormalizedConfidences{std::move(R), rho};
}

ClassTemplateSet build_templates_from_samples(
    const Matrix& R, const std::vector<int>& class_labels) {
  if (static_cast<Index>(class_labels.size()) != R.rows())
    throw DimensionMismatch("class label count != confidence rows");
  std::map<int, std::vector<Index>> rows_of;
  for (Index i = 0; i < R.rows(); ++i)
    rows_of[class_labels[static_cast<size_t>(i)]].push_back(i);
  if (rows_of.empty()) throw EmptyClass("no classes present");

  Matrix T(static_cast<Index>(rows_of.size()), R.cols());
  std::vector<int> ids;
  Index r = 0;
  for (const auto& [id, rows] : rows_of) {
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(R.cols());
    for (Index i : rows) mean += R.row(i);
    T.row(r++) = mean / static_cast<double>(rows.size());
    ids.push_back(id);
  }
  return ClassTemplateSet{std::move(T), std::move(ids),
                          TemplateSource::PerSampleMean};
}

ClassTemplateSet templates_from_signatures(const Matrix& signatures,
                                           const std::vector<int>& class_ids) {
  if (static_cast<Index>(class_ids.size()) != signatures.rows())
    throw DimensionMismatch("class id count != signature rows");
  return ClassTemplateSet{signatures, class_ids,
                          TemplateSource::ClassSignature};
}

ClassDecision template_classify(const NormalizedConfidences& R,
                                const ClassTemplateSet& T) {
  if (R.R.cols() != T.T.cols())
    throw DimensionMismatch("attribute counts differ");
  if (T.T.rows() < 1) throw EmptyClass("template set is empty");
  const Index k = R.R.rows(), c = T.T.rows();
  Matrix dist(k, c);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < c; ++j)
      dist(i, j) = (R.R.row(i) - T.T.row(j)).squaredNorm();
  std::vector<int> predicted(static_cast<size_t>(k));
  for (Index i = 0; i < k; ++i)
    predicted[static_cast<size_t>(i)] =
        T.class_ids[static_cast<size_t>(argbest(dist.row(i), false))];
  return ClassDecision{std::move(predicted), std::move(dist), false};
}

Vector dap_priors_from_signatures(const Matrix& signatures) {
  Vector p = signatures.colwise().mean();
  return p.cwiseMax(0.05).cwiseMin(0.95);
}

ClassDecision dap_classify(const NormalizedConfidences& R,
                           const Matrix& signatures,
                           const std::vector<int>& class_ids,
                           const Vector& priors) {
  const Index k = R.R.rows(), c = signatures.rows(), m = signatures.cols();
  if (R.R.cols() != m) throw DimensionMismatch("attribute counts differ");
  if (static_cast<Index>(class_ids.size()) != c)
    throw DimensionMismatch("class id count != signature rows");
  if (priors.size() != m) throw DimensionMismatch("prior length != attributes");
  for (Index j = 0; j < m; ++j)
    if (priors(j) <= 0 || priors(j) >= 1)
      throw PriorOutOfRange("attribute priors must lie in (0,1)");
  for (Index i = 0; i < c; ++i)
    for (Index j = 0; j < m; ++j)
      if (signatures(i, j) != 0.0 && signatures(i, j) != 1.0)
        throw NonBinaryEntry("class signatures must be binary");

  Matrix logpost(k, c);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < k; ++i)
    for (Index ci = 0; ci < c; ++ci) {
      double s = 0.0;
      for (Index j = 0; j < m; ++j) {
        const bool on = signatures(ci, j) != 0.0;
        const double q = on ? R.R(i, j) : 1.0 - R.R(i, j);
        const double p = on ? priors(j) : 1.0 - priors(j);
        s += std::log(q) - std::log(p);
      }
      logpost(i, ci) = s;
    }
  std::vector<int> predicted(static_cast<size_t>(k));
  for (Index i = 0; i < k; ++i)
    predicted[static_cast<size_t>(i)] =
        class_ids[static_cast<size_t>(argbest(logpost.row(i), true))];
  return ClassDecision{std::move(predicted), std::move(logpost), true};
}

SampleSplit nshot_augment(const SampleSplit& split,
                          const std::vector<int>& sample_classes,
                          const std::vector<int>& test_classes, int n_shot,
                          std::uint64_t seed) {
  if (n_shot < 0) throw ValidationError("N must be nonnegative");
  if (n_shot == 0) return split;

  SampleSplit out = split;
  std::mt19937_64 rng(seed);
  for (int cls : test_classes) {
    std::vector<int> pool;
    for (int idx : split.test_idx)
      if (sample_classes[static_cast<size_t>(idx)] == cls) pool.push_back(idx);
    if (static_cast<int>(pool.size()) <= n_shot)
      throw InsufficientSamples("test class " + std::to_string(cls) +
                                " has <= N samples");
    // Fisher-Yates with an explicit draw for cross-platform determinism
    for (size_t i = pool.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(rng() % i);
      std::swap(pool[i - 1], pool[j]);
    }
    for (int t = 0; t < n_shot; ++t) {
      const int moved = pool[static_cast<size_t>(t)];
      out.train_idx.push_back(moved);
      out.test_idx.erase(
          std::find(out.test_idx.begin(), out.test_idx.end(), moved));
    }
  }
  return out;
}

}  // namespace hap
