#ifndef HAP_TYPES_HPP
#define HAP_TYPES_HPP

#include <Eigen/Dense>

namespace hap {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntVector = Eigen::VectorXi;
using Index = Eigen::Index;

}  // namespace hap

#endif  // HAP_TYPES_HPP
