#include "hap/kernel.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "hap/errors.hpp"

namespace hap {

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "gaussian") return KernelFamily::Gaussian;
  if (name == "cauchy") return KernelFamily::Cauchy;
  if (name == "linear") return KernelFamily::Linear;
  throw ValidationError("unknown kernel family: " + name);
}

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::Gaussian: return "gaussian";
    case KernelFamily::Cauchy: return "cauchy";
    case KernelFamily::Linear: return "linear";
  }
  return "unknown";
}

namespace {

double kernel_from_d2(const KernelSpec& spec, double d2) {
  switch (spec.family) {
    case KernelFamily::Gaussian: return std::exp(-d2 / spec.scale);
    case KernelFamily::Cauchy: return 1.0 / (1.0 + d2 / spec.scale);
    case KernelFamily::Linear: break;
  }
  return 0.0;
}

void check_scale(const KernelSpec& spec) {
  if (spec.family != KernelFamily::Linear && spec.scale <= 0)
    throw NonPositiveScale("kernel scale must be positive");
}

}  // namespace

GramMatrix gram(const Matrix& X, const KernelSpec& spec) {
  check_scale(spec);
  const Index n = X.cols();
  Matrix K = X.transpose() * X;
  if (spec.family != KernelFamily::Linear) {
    const Vector sq = X.colwise().squaredNorm();
#pragma omp parallel for schedule(static)
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) {
        const double d2 = std::max(0.0, sq(i) + sq(j) - 2.0 * K(i, j));
        K(i, j) = kernel_from_d2(spec, d2);
      }
  }
  K = ((K + K.transpose()) * 0.5).eval();
  return GramMatrix{std::move(K), spec, X};
}

Matrix kernel_cross(const KernelSpec& spec, const Matrix& Xtrain,
                    const Matrix& Z) {
  check_scale(spec);
  if (Z.rows() != Xtrain.rows())
    throw DimensionMismatch("test feature dim != training feature dim");
  Matrix C = Xtrain.transpose() * Z;  // n x k
  if (spec.family != KernelFamily::Linear) {
    const Vector sqx = Xtrain.colwise().squaredNorm();
    const Vector sqz = Z.colwise().squaredNorm();
#pragma omp parallel for schedule(static)
    for (Index j = 0; j < C.cols(); ++j)
      for (Index i = 0; i < C.rows(); ++i) {
        const double d2 = std::max(0.0, sqx(i) + sqz(j) - 2.0 * C(i, j));
        C(i, j) = kernel_from_d2(spec, d2);
      }
  }
  return C;
}

KernelProjection train_kernel(const GramMatrix& K, const ShiftedLabels& Y,
                              const Laplacian& L_A, double lambda, double eta) {
  const Index n = K.K.rows();
  if (Y.Y.rows() != n || L_A.size() != n)
    throw DimensionMismatch("labels/Laplacian size != Gram size");
  if (lambda <= 0) throw ValidationError("lambda must be positive");
  if (eta <= 0) throw ValidationError("eta must be positive");

  Matrix M = K.K * (L_A.L * K.K);
  M.noalias() += lambda * (K.K * K.K);
  M.diagonal().array() += eta;
  M = ((M + M.transpose()) * 0.5).eval();

  Eigen::LLT<Matrix> llt(M);
  if (llt.info() != Eigen::Success) {
    const double jitter = 1e-10 * M.trace() / static_cast<double>(n);
    M.diagonal().array() += jitter;
    llt.compute(M);
    if (llt.info() != Eigen::Success)
      throw SingularSystem("kernel system factorization failed after jitter");
  }
  Matrix B = llt.solve(lambda * (K.K * Y.Y));
  if (!B.allFinite())
    throw NonFiniteResult("trained kernel B has non-finite entries");
  return KernelProjection{std::move(B), lambda, eta, K.spec, K.Xtrain};
}

AttributeScores predict_kernel(const KernelProjection& model, const Matrix& Z) {
  const Matrix C = kernel_cross(model.spec, model.Xtrain, Z);  // n x k
  Matrix S = C.transpose() * model.B;
  Matrix P = sign_scores(S);
  return AttributeScores{std::move(S), std::move(P)};
}

namespace ref {

GramMatrix gram(const Matrix& X, const KernelSpec& spec) {
  check_scale(spec);
  const Index n = X.cols();
  Matrix K(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      if (spec.family == KernelFamily::Linear) {
        K(i, j) = X.col(i).dot(X.col(j));
      } else {
        K(i, j) = kernel_from_d2(spec, (X.col(i) - X.col(j)).squaredNorm());
      }
    }
  return GramMatrix{std::move(K), spec, X};
}

}  // namespace ref

}  // namespace hap
