#ifndef HAP_ERRORS_HPP
#define HAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hap {

// Error categories map onto CLI exit codes:
//   ValidationError -> 2, DataError -> 3, NumericError -> 4.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonBinaryEntry : ValidationError {
  using ValidationError::ValidationError;
};
struct EmptyInput : ValidationError {
  using ValidationError::ValidationError;
};
struct DimensionMismatch : ValidationError {
  using ValidationError::ValidationError;
};
struct NonPositiveBandwidth : ValidationError {
  using ValidationError::ValidationError;
};
struct NonPositiveScale : ValidationError {
  using ValidationError::ValidationError;
};
struct NonPositiveRho : ValidationError {
  using ValidationError::ValidationError;
};
struct NegativeWeight : ValidationError {
  using ValidationError::ValidationError;
};
struct NegativeGamma : ValidationError {
  using ValidationError::ValidationError;
};
struct EmptyClass : ValidationError {
  using ValidationError::ValidationError;
};
struct PriorOutOfRange : ValidationError {
  using ValidationError::ValidationError;
};
struct InsufficientSamples : ValidationError {
  using ValidationError::ValidationError;
};
struct OverlapError : ValidationError {
  using ValidationError::ValidationError;
};
struct InvalidCounts : ValidationError {
  using ValidationError::ValidationError;
};
struct DegenerateLabels : ValidationError {
  using ValidationError::ValidationError;
};

struct ParseError : DataError {
  using DataError::DataError;
};
struct DimensionError : DataError {
  using DataError::DataError;
};
struct MagicMismatch : DataError {
  using DataError::DataError;
};
struct VersionMismatch : DataError {
  using DataError::DataError;
};
struct CorruptFile : DataError {
  using DataError::DataError;
};

struct SingularSystem : NumericError {
  using NumericError::NumericError;
};
struct NonFiniteResult : NumericError {
  using NumericError::NumericError;
};
struct NonFiniteInput : NumericError {
  using NumericError::NumericError;
};

}  // namespace hap

#endif  // HAP_ERRORS_HPP
