#ifndef HAP_KERNEL_HPP
#define HAP_KERNEL_HPP

#include <string>

#include "hap/laplacian.hpp"
#include "hap/predictor.hpp"
#include "hap/types.hpp"

namespace hap {

enum class KernelFamily { Gaussian, Cauchy, Linear };

KernelFamily kernel_family_from_string(const std::string& name);
std::string to_string(KernelFamily family);

struct KernelSpec {
  KernelFamily family = KernelFamily::Gaussian;
  double scale = 1.0;  // sigma^2 applied to squared distance; unused for linear
};

struct GramMatrix {
  Matrix K;  // n x n symmetric PSD
  KernelSpec spec;
  Matrix Xtrain;  // d x n, retained for test-time kernel evaluation
};

struct KernelProjection {
  Matrix B;  // n x m coefficient matrix
  double lambda = 0;
  double eta = 0;
  KernelSpec spec;
  Matrix Xtrain;
};

/// gaussian: K_ij = exp(-||x_i-x_j||^2/sigma^2)
/// cauchy:   K_ij = 1/(1+||x_i-x_j||^2/sigma^2)
/// linear:   K_ij = x_i^T x_j
GramMatrix gram(const Matrix& X, const KernelSpec& spec);

/// Kernel-space closed form, derived from the gradient of
///   Tr(B^T K L_A K B) + lambda ||K B - Y||^2 + eta ||B||^2:
///   B = (K L_A K + lambda K^2 + eta I)^{-1} (lambda K Y).
KernelProjection train_kernel(const GramMatrix& K, const ShiftedLabels& Y,
                              const Laplacian& L_A, double lambda, double eta);

/// Row for test sample z: k(z)^T B with k(z) = [k(z,x_1),...,k(z,x_n)].
AttributeScores predict_kernel(const KernelProjection& model, const Matrix& Z);

/// Cross-kernel matrix k(z_j, x_i), n x k, between stored training
/// features and test columns.
Matrix kernel_cross(const KernelSpec& spec, const Matrix& Xtrain,
                    const Matrix& Z);

namespace ref {

/// Serial double-loop Gram construction for tests and benchmarks.
GramMatrix gram(const Matrix& X, const KernelSpec& spec);

}  // namespace ref

}  // namespace hap

#endif  // HAP_KERNEL_HPP
