#include "hap/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "hap/errors.hpp"

namespace hap {

namespace {

void check_binary(const Matrix& M) {
  for (Index j = 0; j < M.cols(); ++j)
    for (Index i = 0; i < M.rows(); ++i) {
      const double v = M(i, j);
      if (v != 0.0 && v != 1.0)
        throw NonBinaryEntry("incidence entry (" + std::to_string(i) + "," +
                             std::to_string(j) + ") = " + std::to_string(v) +
                             " is not in {0,1}");
    }
}

std::vector<std::vector<Index>> edge_members(const IncidenceMatrix& H) {
  std::vector<std::vector<Index>> members(H.edges());
  for (Index e = 0; e < H.edges(); ++e)
    for (Index v = 0; v < H.vertices(); ++v)
      if (H.H(v, e) != 0.0) members[e].push_back(v);
  return members;
}

}  // namespace

IncidenceMatrix build_attribute_hypergraph(const Matrix& labels) {
  if (labels.rows() == 0 || labels.cols() == 0)
    throw EmptyInput("attribute label matrix is empty");
  check_binary(labels);
  return IncidenceMatrix{labels};
}

IncidenceMatrix build_class_hypergraph(const std::vector<int>& class_labels) {
  if (class_labels.empty()) throw EmptyInput("no class labels given");
  std::map<int, Index> column_of;
  for (int id : class_labels) column_of.emplace(id, 0);
  Index c = 0;
  for (auto& [id, col] : column_of) col = c++;
  Matrix H = Matrix::Zero(static_cast<Index>(class_labels.size()), c);
  for (Index v = 0; v < H.rows(); ++v)
    H(v, column_of.at(class_labels[static_cast<size_t>(v)])) = 1.0;
  return IncidenceMatrix{std::move(H)};
}

IntVector edge_degrees(const IncidenceMatrix& H) {
  return H.H.colwise().sum().cast<int>();
}

Matrix pairwise_heat_similarity(const Matrix& X, double mu) {
  if (mu <= 0) throw NonPositiveBandwidth("mu must be positive");
  const Index n = X.cols();
  const Vector sq = X.colwise().squaredNorm();
  Matrix S = X.transpose() * X;  // Gram; turned into exp(-dist^2/mu) in place
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      const double d2 = std::max(0.0, sq(i) + sq(j) - 2.0 * S(i, j));
      S(i, j) = std::exp(-d2 / mu);
    }
  return S;
}

HyperedgeWeights heat_kernel_weights(const Matrix& X, const IncidenceMatrix& H,
                                     double mu) {
  if (X.cols() != H.vertices())
    throw DimensionMismatch("feature columns != incidence rows");
  if (mu <= 0) throw NonPositiveBandwidth("mu must be positive");
  const Matrix S = pairwise_heat_similarity(X, mu);
  const auto members = edge_members(H);
  Vector w = Vector::Zero(H.edges());
#pragma omp parallel for schedule(dynamic)
  for (Index e = 0; e < H.edges(); ++e) {
    const auto& mem = members[static_cast<size_t>(e)];
    const auto delta = static_cast<double>(mem.size());
    if (mem.size() < 2) continue;  // no pairwise relation to average
    double sum = 0.0;
    for (size_t a = 0; a < mem.size(); ++a)
      for (size_t b = 0; b < mem.size(); ++b)
        if (a != b) sum += S(mem[a], mem[b]);
    w(e) = sum / (delta * (delta - 1.0));
  }
  return HyperedgeWeights{std::move(w), mu};
}

Vector vertex_degrees(const IncidenceMatrix& H, const HyperedgeWeights& w) {
  if (w.w.size() != H.edges())
    throw DimensionMismatch("weight vector length != hyperedge count");
  return H.H * w.w;
}

DegreeVectors degrees(const IncidenceMatrix& H, const HyperedgeWeights& w) {
  return DegreeVectors{edge_degrees(H), vertex_degrees(H, w)};
}

double default_bandwidth(const Matrix& X, std::uint64_t seed, int max_pairs) {
  const Index n = X.cols();
  if (n < 2) return 1.0;
  std::mt19937_64 rng(seed);
  double sum = 0.0;
  int used = 0;
  for (int p = 0; p < max_pairs; ++p) {
    const Index i = static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
    const Index j = static_cast<Index>(rng() % static_cast<std::uint64_t>(n));
    if (i == j) continue;
    sum += (X.col(i) - X.col(j)).squaredNorm();
    ++used;
  }
  if (used == 0 || sum == 0.0) return 1.0;
  return sum / used;
}

namespace ref {

Matrix pairwise_heat_similarity(const Matrix& X, double mu) {
  if (mu <= 0) throw NonPositiveBandwidth("mu must be positive");
  const Index n = X.cols();
  Matrix S(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      S(i, j) = std::exp(-(X.col(i) - X.col(j)).squaredNorm() / mu);
  return S;
}

HyperedgeWeights heat_kernel_weights(const Matrix& X, const IncidenceMatrix& H,
                                     double mu) {
  if (X.cols() != H.vertices())
    throw DimensionMismatch("feature columns != incidence rows");
  if (mu <= 0) throw NonPositiveBandwidth("mu must be positive");
  Vector w = Vector::Zero(H.edges());
  for (Index e = 0; e < H.edges(); ++e) {
    std::vector<Index> mem;
    for (Index v = 0; v < H.vertices(); ++v)
      if (H.H(v, e) != 0.0) mem.push_back(v);
    if (mem.size() < 2) continue;
    double sum = 0.0;
    for (Index u : mem)
      for (Index v : mem)
        if (u != v)
          sum += std::exp(-(X.col(u) - X.col(v)).squaredNorm() / mu);
    const auto delta = static_cast<double>(mem.size());
    w(e) = sum / (delta * (delta - 1.0));
  }
  return HyperedgeWeights{std::move(w), mu};
}

}  // namespace ref

}  // namespace hap
