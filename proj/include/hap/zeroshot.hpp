#ifndef HAP_ZEROSHOT_HPP
#define HAP_ZEROSHOT_HPP

#include <cstdint>
#include <vector>

#include "hap/predictor.hpp"
#include "hap/types.hpp"

namespace hap {

struct NormalizedConfidences {
  Matrix R;  // k x m, entries strictly in (0,1)
  double rho;
};

enum class TemplateSource { PerSampleMean, ClassSignature };

struct ClassTemplateSet {
  Matrix T;  // c x m, row j is template t_j, entries in [0,1]
  std::vector<int> class_ids;
  TemplateSource source = TemplateSource::PerSampleMean;
};

struct ClassDecision {
  std::vector<int> predicted;  // class id per test sample
  Matrix scores;               // k x c distances or log-posteriors
  bool higher_is_better = false;
};

/// r = 1/(1+exp(-s/rho)), elementwise, with a guarded exponential so
/// extreme scores saturate instead of overflowing.
NormalizedConfidences sigmoid_normalize(const Matrix& S, double rho);

/// Template t_j = mean of rows of R belonging to class j. Rows ordered
/// by ascending class id. Every listed class must have >= 1 sample.
ClassTemplateSet build_templates_from_samples(
    const Matrix& R, const std::vector<int>& class_labels);

ClassTemplateSet templates_from_signatures(const Matrix& signatures,
                                           const std::vector<int>& class_ids);

/// Nearest template in squared Euclidean distance; ties go to the
/// lowest class index.
ClassDecision template_classify(const NormalizedConfidences& R,
                                const ClassTemplateSet& T);

/// DAP-style Bayes posterior against binary class signatures, computed
/// in log space:
///   score(z,c) = sum_j log(q_j/p_j),
///   q_j = R_zj or 1-R_zj, p_j = prior_j or 1-prior_j per signature bit.
/// Argmax wins; ties go to the lowest class index.
ClassDecision dap_classify(const NormalizedConfidences& R,
                           const Matrix& signatures,
                           const std::vector<int>& class_ids,
                           const Vector& priors);

/// Empirical attribute priors: mean of each signature column, clamped
/// to [0.05, 0.95].
Vector dap_priors_from_signatures(const Matrix& signatures);

struct SampleSplit {
  std::vector<int> train_idx;
  std::vector<int> test_idx;
};

/// Moves N seeded-random samples of each test class from the test side
/// to the train side. N = 0 returns the split unchanged. Every test
/// class must keep at least one test sample.
SampleSplit nshot_augment(const SampleSplit& split,
                          const std::vector<int>& sample_classes,
                          const std::vector<int>& test_classes, int n_shot,
                          std::uint64_t seed);

}  // namespace hap

#endif  // HAP_ZEROSHOT_HPP
