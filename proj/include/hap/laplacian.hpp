#ifndef HAP_LAPLACIAN_HPP
#define HAP_LAPLACIAN_HPP

#include <utility>
#include <vector>

#include "hap/hypergraph.hpp"
#include "hap/types.hpp"

namespace hap {

enum class LaplacianKind { HypergraphNormalized, GraphUnnormalized, Combined };

struct Laplacian {
  Matrix L;  // n x n symmetric PSD
  LaplacianKind kind;
  Index size() const { return L.rows(); }
};

/// Normalized hypergraph Laplacian
///   L = I - D_v^{-1/2} H W D_e^{-1} H^T D_v^{-1/2}.
/// Vertices with d(v) = 0 get an all-zero row/column (including the
/// identity entry), so isolated vertices contribute no loss; edges with
/// delta(e) = 0 or w(e) = 0 contribute nothing.
Laplacian hypergraph_laplacian(const IncidenceMatrix& H,
                               const HyperedgeWeights& w);

/// Supervised pairwise-graph Laplacian L = D - A with
/// A_ij = exp(-||x_i-x_j||^2/mu) for i != j in the same class, else 0.
Laplacian pairwise_class_graph_laplacian(const Matrix& X,
                                         const std::vector<int>& class_labels,
                                         double mu);

/// Class hypergraph -> heat-kernel weights -> normalized Laplacian.
Laplacian class_hypergraph_laplacian(const std::vector<int>& class_labels,
                                     const Matrix& X, double mu);

/// base + sum_i gamma_i * extra_i.
Laplacian combine(const Laplacian& base,
                  const std::vector<std::pair<Laplacian, double>>& extras);

/// Literal pairwise relation loss
///   1/2 sum_e sum_{(u,v) in e} w(e)/delta(e) ||F_u/sqrt(d(u)) - F_v/sqrt(d(v))||^2
/// evaluated by triple loop with the same zero-degree conventions as
/// hypergraph_laplacian. Oracle for the identity with Tr(F^T L_H F).
double relation_loss_direct(const Matrix& F, const IncidenceMatrix& H,
                            const HyperedgeWeights& w);

}  // namespace hap

#endif  // HAP_LAPLACIAN_HPP
