#ifndef HAP_HYPERGRAPH_HPP
#define HAP_HYPERGRAPH_HPP

#include <cstdint>
#include <vector>

#include "hap/types.hpp"

namespace hap {

/// Binary vertex-by-hyperedge incidence matrix. For the attribute
/// hypergraph this is exactly the sample-by-attribute label matrix.
struct IncidenceMatrix {
  Matrix H;  // n x m, entries in {0,1}
  Index vertices() const { return H.rows(); }
  Index edges() const { return H.cols(); }
};

struct HyperedgeWeights {
  Vector w;   // length m, nonnegative
  double mu;  // heat-kernel bandwidth used to produce w (0 if explicit)
};

struct DegreeVectors {
  IntVector edge_degrees;   // delta(e), column sums of H
  Vector vertex_degrees;    // d(v) = sum_e w(e) h(v,e)
};

/// Validates a {0,1} label matrix and adopts it as the incidence matrix.
IncidenceMatrix build_attribute_hypergraph(const Matrix& labels);

/// One hyperedge per distinct class id; columns ordered by ascending id.
/// Each row sums to exactly 1.
IncidenceMatrix build_class_hypergraph(const std::vector<int>& class_labels);

IntVector edge_degrees(const IncidenceMatrix& H);

/// Mean pairwise heat-kernel similarity over each hyperedge clique:
///   w(e) = 1/(delta(e)(delta(e)-1)) * sum_{i != j in e} exp(-||x_i-x_j||^2/mu)
/// Hyperedges with delta(e) <= 1 get weight 0. X is d x n, column per sample.
HyperedgeWeights heat_kernel_weights(const Matrix& X, const IncidenceMatrix& H,
                                     double mu);

Vector vertex_degrees(const IncidenceMatrix& H, const HyperedgeWeights& w);

DegreeVectors degrees(const IncidenceMatrix& H, const HyperedgeWeights& w);

/// Data-scaled bandwidth default: mean squared distance over up to
/// `max_pairs` seeded uniform random sample pairs.
double default_bandwidth(const Matrix& X, std::uint64_t seed = 0,
                         int max_pairs = 1000);

/// Full n x n matrix of exp(-||x_i - x_j||^2 / mu). Shared by the
/// hyperedge weighting and the class graph; OpenMP-parallel over columns.
Matrix pairwise_heat_similarity(const Matrix& X, double mu);

namespace ref {

/// Serial reference: per-edge triple loop with distances computed
/// directly from the feature columns. Kept for tests and benchmarks.
HyperedgeWeights heat_kernel_weights(const Matrix& X, const IncidenceMatrix& H,
                                     double mu);

Matrix pairwise_heat_similarity(const Matrix& X, double mu);

}  // namespace ref

}  // namespace hap

#endif  // HAP_HYPERGRAPH_HPP
