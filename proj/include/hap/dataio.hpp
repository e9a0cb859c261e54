#ifndef HAP_DATAIO_HPP
#define HAP_DATAIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hap/hypergraph.hpp"
#include "hap/kernel.hpp"
#include "hap/predictor.hpp"
#include "hap/types.hpp"

namespace hap {

enum class MatrixFormat { Csv, Binary };

/// csv: comma-separated decimal rows, optional single '#' header line.
/// binary: "HAPM" magic, u32 LE version=1, u64 LE rows, u64 LE cols,
/// then rows*cols little-endian IEEE-754 doubles in row-major order.
Matrix load_matrix(const std::string& path, MatrixFormat format);
void save_matrix(const std::string& path, const Matrix& M,
                 MatrixFormat format);

/// Picks the format by sniffing the magic bytes.
Matrix load_matrix_auto(const std::string& path);

std::vector<int> load_class_labels(const std::string& path);
void save_class_labels(const std::string& path, const std::vector<int>& ids);

enum class ModelKind { Linear, Kernel };

struct ModelArtifact {
  ModelKind kind = ModelKind::Linear;
  ProjectionMatrix linear;
  KernelProjection kernel;
};

void save_model(const std::string& path, const ModelArtifact& model);
ModelArtifact load_model(const std::string& path);

struct DatasetBundle {
  Matrix features;  // d x n, column per sample
  std::optional<IncidenceMatrix> attribute_labels;  // n x m
  std::optional<std::vector<int>> class_labels;     // length n
  std::optional<Matrix> class_signatures;           // c x m binary
  std::vector<std::string> attribute_names;
  std::vector<std::string> class_names;
};

/// Seeded synthetic dataset: pairwise-distinct random binary class
/// signatures, Gaussian cluster centers scaled by `separation`, unit
/// Gaussian sample noise, per-sample attribute labels = class signature.
DatasetBundle synth_generate(std::uint64_t seed, int n_classes,
                             int samples_per_class, int d, int m,
                             double separation);

}  // namespace hap

#endif  // HAP_DATAIO_HPP
