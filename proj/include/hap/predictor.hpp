#ifndef HAP_PREDICTOR_HPP
#define HAP_PREDICTOR_HPP

#include <utility>
#include <vector>

#include "hap/hypergraph.hpp"
#include "hap/laplacian.hpp"
#include "hap/types.hpp"

namespace hap {

/// Attribute labels remapped to {-1,+1}: Y = 2H - 1.
struct ShiftedLabels {
  Matrix Y;
};

struct ProjectionMatrix {
  Matrix B;  // d x m, column j is the predictor of attribute j
  double lambda = 0;
  double eta = 0;
  std::vector<double> gammas;
};

struct AttributeScores {
  Matrix S;  // k x m raw confidences
  Matrix P;  // k x m signs in {-1,+1}, sign(0) = +1
};

ShiftedLabels shift_labels(const IncidenceMatrix& H);

/// Closed-form HAP training:
///   B = (X L X^T + lambda X X^T + eta I)^{-1} (lambda X Y),
/// via an SPD Cholesky solve. eta = 0 is allowed only when the system
/// factorizes; with eta > 0 a failed factorization is retried once with
/// a diagonal jitter of 1e-10 * trace/d.
ProjectionMatrix train(const Matrix& X, const ShiftedLabels& Y,
                       const Laplacian& L, double lambda, double eta);

/// CSHAP: builds L_H from (X, H_attr, mu), adds the side Laplacians
/// weighted by their gammas, then trains as above.
ProjectionMatrix train_cshap(
    const Matrix& X, const IncidenceMatrix& H_attr,
    const std::vector<std::pair<Laplacian, double>>& side, double lambda,
    double eta, double mu);

/// Tr(B^T X L X^T B) + lambda ||X^T B - Y||^2 + eta ||B||^2.
double objective_value(const Matrix& B, const Matrix& X, const ShiftedLabels& Y,
                       const Laplacian& L, double lambda, double eta);

/// S = Z^T B, P = sign(S). Z is d x k, one column per test sample.
AttributeScores predict(const ProjectionMatrix& B, const Matrix& Z);

/// Elementwise sign with sign(0) = +1.
Matrix sign_scores(const Matrix& S);

}  // namespace hap

#endif  // HAP_PREDICTOR_HPP
