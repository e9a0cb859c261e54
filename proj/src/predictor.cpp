#include "hap/predictor.hpp"

#include <Eigen/Cholesky>

#include "hap/errors.hpp"

namespace hap {

namespace {

// SPD solve with one jitter retry (1e-10 * trace/d) when eta > 0.
Matrix spd_solve(Matrix M, const Matrix& rhs, double eta) {
  Eigen::LLT<Matrix> llt(M);
  if (llt.info() != Eigen::Success) {
    if (eta <= 0)
      throw SingularSystem(
          "system matrix is not positive definite (eta = 0)");
    const double jitter = 1e-10 * M.trace() / static_cast<double>(M.rows());
    M.diagonal().array() += jitter;
    llt.compute(M);
    if (llt.info() != Eigen::Success)
      throw SingularSystem("Cholesky factorization failed after jitter");
  }
  return llt.solve(rhs);
}

}  // namespace

ShiftedLabels shift_labels(const IncidenceMatrix& H) {
  return ShiftedLabels{2.0 * H.H - Matrix::Ones(H.vertices(), H.edges())};
}

Matrix sign_scores(const Matrix& S) {
  return (S.array() >= 0).select(Matrix::Ones(S.rows(), S.cols()),
                                 -Matrix::Ones(S.rows(), S.cols()));
}

ProjectionMatrix train(const Matrix& X, const ShiftedLabels& Y,
                       const Laplacian& L, double lambda, double eta) {
  const Index d = X.rows(), n = X.cols();
  if (Y.Y.rows() != n) throw DimensionMismatch("label rows != sample count");
  if (L.size() != n) throw DimensionMismatch("Laplacian size != sample count");
  if (lambda <= 0) throw ValidationError("lambda must be positive");
  if (eta < 0) throw ValidationError("eta must be nonnegative");

  Matrix M = X * (L.L * X.transpose());
  M.noalias() += lambda * (X * X.transpose());
  M.diagonal().array() += eta;
  M = ((M + M.transpose()) * 0.5).eval();

  Matrix B = spd_solve(std::move(M), lambda * (X * Y.Y), eta);
  if (!B.allFinite()) throw NonFiniteResult("trained B has non-finite entries");
  return ProjectionMatrix{std::move(B), lambda, eta, {}};
}

ProjectionMatrix train_cshap(
    const Matrix& X, const IncidenceMatrix& H_attr,
    const std::vector<std::pair<Laplacian, double>>& side, double lambda,
    double eta, double mu) {
  const Laplacian L_H =
      hypergraph_laplacian(H_attr, heat_kernel_weights(X, H_attr, mu));
  const Laplacian L_W = combine(L_H, side);
  ProjectionMatrix model = train(X, shift_labels(H_attr), L_W, lambda, eta);
  for (const auto& [extra, gamma] : side) model.gammas.push_back(gamma);
  return model;
}

double objective_value(const Matrix& B, const Matrix& X, const ShiftedLabels& Y,
                       const Laplacian& L, double lambda, double eta) {
  if (B.rows() != X.rows()) throw DimensionMismatch("B rows != feature dim");
  if (Y.Y.rows() != X.cols() || L.size() != X.cols())
    throw DimensionMismatch("label/Laplacian size != sample count");
  const Matrix F = X.transpose() * B;
  const double relation = (F.transpose() * (L.L * F)).trace();
  const double prediction = (F - Y.Y).squaredNorm();
  return relation + lambda * prediction + eta * B.squaredNorm();
}

AttributeScores predict(const ProjectionMatrix& B, const Matrix& Z) {
  if (Z.rows() != B.B.rows())
    throw DimensionMismatch("test feature dim != model feature dim");
  if (!Z.allFinite()) throw NonFiniteInput("test features contain non-finite values");
  Matrix S = Z.transpose() * B.B;
  Matrix P = sign_scores(S);
  return AttributeScores{std::move(S), std::move(P)};
}

}  // namespace hap
