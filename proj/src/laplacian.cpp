#include "hap/laplacian.hpp"

#include <cmath>

#include "hap/errors.hpp"

namespace hap {

Laplacian hypergraph_laplacian(const IncidenceMatrix& H,
                               const HyperedgeWeights& w) {
  if (w.w.size() != H.edges())
    throw DimensionMismatch("weight vector length != hyperedge count");
  if ((w.w.array() < 0).any())
    throw NegativeWeight("hyperedge weights must be nonnegative");

  const Index n = H.vertices();
  const IntVector delta = edge_degrees(H);
  const Vector dv = vertex_degrees(H, w);

  Vector inv_root_dv(n);
  for (Index v = 0; v < n; ++v)
    inv_root_dv(v) = dv(v) > 0 ? 1.0 / std::sqrt(dv(v)) : 0.0;

  Vector edge_scale(H.edges());
  for (Index e = 0; e < H.edges(); ++e)
    edge_scale(e) =
        (delta(e) > 0 && w.w(e) > 0) ? std::sqrt(w.w(e) / delta(e)) : 0.0;

  // Theta = G G^T with G = D_v^{-1/2} H (W D_e^{-1})^{1/2}
  const Matrix G =
      inv_root_dv.asDiagonal() * H.H * edge_scale.asDiagonal();
  Matrix L = -(G * G.transpose());
  for (Index v = 0; v < n; ++v)
    if (dv(v) > 0) L(v, v) += 1.0;  // isolated vertices stay all-zero
  L = ((L + L.transpose()) * 0.5).eval();
  return Laplacian{std::move(L), LaplacianKind::HypergraphNormalized};
}

Laplacian pairwise_class_graph_laplacian(const Matrix& X,
                                         const std::vector<int>& class_labels,
                                         double mu) {
  const Index n = X.cols();
  if (static_cast<Index>(class_labels.size()) != n)
    throw DimensionMismatch("class label count != sample count");
  if (mu <= 0) throw NonPositiveBandwidth("mu must be positive");

  const Vector sq = X.colwise().squaredNorm();
  const Matrix gram = X.transpose() * X;
  Matrix A = Matrix::Zero(n, n);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      if (i == j ||
          class_labels[static_cast<size_t>(i)] !=
              class_labels[static_cast<size_t>(j)])
        continue;
      const double d2 = std::max(0.0, sq(i) + sq(j) - 2.0 * gram(i, j));
      // Snapping similarities to a 2^-40 grid makes every degree sum
      // exact, so each row of L sums to exactly zero in any summation
      // order and constant vectors lie in the kernel bit-for-bit.
      A(i, j) = std::nearbyint(std::exp(-d2 / mu) * 0x1p40) * 0x1p-40;
    }
  Matrix L = -A;
  L.diagonal() += A.rowwise().sum();
  return Laplacian{std::move(L), LaplacianKind::GraphUnnormalized};
}

Laplacian class_hypergraph_laplacian(const std::vector<int>& class_labels,
                                     const Matrix& X, double mu) {
  const IncidenceMatrix Hc = build_class_hypergraph(class_labels);
  if (X.cols() != Hc.vertices())
    throw DimensionMismatch("feature columns != class label count");
  return hypergraph_laplacian(Hc, heat_kernel_weights(X, Hc, mu));
}

Laplacian combine(const Laplacian& base,
                  const std::vector<std::pair<Laplacian, double>>& extras) {
  if (extras.empty()) return base;
  Matrix L = base.L;
  for (const auto& [extra, gamma] : extras) {
    if (extra.size() != base.size())
      throw DimensionMismatch("combined Laplacians must share the sample set");
    if (gamma < 0) throw NegativeGamma("gamma must be nonnegative");
    if (gamma != 0) L += gamma * extra.L;
  }
  return Laplacian{std::move(L), LaplacianKind::Combined};
}

double relation_loss_direct(const Matrix& F, const IncidenceMatrix& H,
                            const HyperedgeWeights& w) {
  if (F.rows() != H.vertices())
    throw DimensionMismatch("F rows != vertex count");
  if (w.w.size() != H.edges())
    throw DimensionMismatch("weight vector length != hyperedge count");

  const IntVector delta = edge_degrees(H);
  const Vector dv = vertex_degrees(H, w);
  Vector inv_root_dv(dv.size());
  for (Index v = 0; v < dv.size(); ++v)
    inv_root_dv(v) = dv(v) > 0 ? 1.0 / std::sqrt(dv(v)) : 0.0;

  double loss = 0.0;
  for (Index e = 0; e < H.edges(); ++e) {
    if (delta(e) == 0 || w.w(e) == 0) continue;
    const double scale = w.w(e) / delta(e);
    for (Index u = 0; u < H.vertices(); ++u) {
      if (H.H(u, e) == 0.0) continue;
      for (Index v = 0; v < H.vertices(); ++v) {
        if (H.H(v, e) == 0.0 || u == v) continue;
        loss += 0.5 * scale *
                (F.row(u) * inv_root_dv(u) - F.row(v) * inv_root_dv(v))
                    .squaredNorm();
      }
    }
  }
  return loss;
}

}  // namespace hap
