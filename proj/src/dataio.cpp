#include "hap/dataio.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "hap/errors.hpp"

namespace hap {

namespace {

constexpr char kMatrixMagic[4] = {'H', 'A', 'P', 'M'};
constexpr std::uint32_t kMatrixVersion = 1;
constexpr const char* kModelMagic = "HAPMODEL";
constexpr int kModelVersion = 1;

void write_matrix_block(std::ostream& out, const Matrix& M) {
  out.write(kMatrixMagic, 4);
  const std::uint32_t version = kMatrixVersion;
  const std::uint64_t rows = static_cast<std::uint64_t>(M.rows());
  const std::uint64_t cols = static_cast<std::uint64_t>(M.cols());
  out.write(reinterpret_cast<const char*>(&version), sizeof version);
  out.write(reinterpret_cast<const char*>(&rows), sizeof rows);
  out.write(reinterpret_cast<const char*>(&cols), sizeof cols);
  for (Index i = 0; i < M.rows(); ++i)
    for (Index j = 0; j < M.cols(); ++j) {
      const double v = M(i, j);
      out.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
}

Matrix read_matrix_block(std::istream& in, const std::string& path) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMatrixMagic, 4) != 0)
    throw MagicMismatch(path + ": bad magic bytes");
  std::uint32_t version = 0;
  std::uint64_t rows = 0, cols = 0;
  if (!in.read(reinterpret_cast<char*>(&version), sizeof version))
    throw CorruptFile(path + ": truncated header");
  if (version != kMatrixVersion)
    throw VersionMismatch(path + ": unsupported matrix version " +
                          std::to_string(version));
  if (!in.read(reinterpret_cast<char*>(&rows), sizeof rows) ||
      !in.read(reinterpret_cast<char*>(&cols), sizeof cols))
    throw CorruptFile(path + ": truncated header");
  Matrix M(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::uint64_t i = 0; i < rows; ++i)
    for (std::uint64_t j = 0; j < cols; ++j) {
      double v;
      if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
        throw CorruptFile(path + ": truncated matrix data");
      M(static_cast<Index>(i), static_cast<Index>(j)) = v;
    }
  return M;
}

Matrix load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open");
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (lineno == 1) continue;  // single optional header line
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": unexpected comment line");
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    int col = 0;
    while (std::getline(ss, cell, ',')) {
      ++col;
      try {
        size_t used = 0;
        const double v = std::stod(cell, &used);
        while (used < cell.size() &&
               (cell[used] == ' ' || cell[used] == '\t'))
          ++used;
        if (used != cell.size()) throw std::invalid_argument(cell);
        row.push_back(v);
      } catch (const std::exception&) {
        throw ParseError(path + ":" + std::to_string(lineno) + ":" +
                         std::to_string(col) + ": cannot parse '" + cell +
                         "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw DimensionError(path + ":" + std::to_string(lineno) +
                           ": ragged row (" + std::to_string(row.size()) +
                           " vs " + std::to_string(rows.front().size()) +
                           " columns)");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path + ": no data rows");
  Matrix M(static_cast<Index>(rows.size()),
           static_cast<Index>(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      M(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return M;
}

void save_csv(const std::string& path, const Matrix& M) {
  std::ofstream out(path);
  if (!out) throw DataError(path + ": cannot open for writing");
  char buf[40];
  for (Index i = 0; i < M.rows(); ++i) {
    for (Index j = 0; j < M.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", M(i, j));
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Matrix load_matrix(const std::string& path, MatrixFormat format) {
  if (format == MatrixFormat::Csv) return load_csv(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path + ": cannot open");
  Matrix M = read_matrix_block(in, path);
  return M;
}

void save_matrix(const std::string& path, const Matrix& M,
                 MatrixFormat format) {
  if (format == MatrixFormat::Csv) {
    save_csv(path, M);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path + ": cannot open for writing");
  write_matrix_block(out, M);
}

Matrix load_matrix_auto(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path + ": cannot open");
  char magic[4] = {0, 0, 0, 0};
  in.read(magic, 4);
  if (in.gcount() == 4 && std::memcmp(magic, kMatrixMagic, 4) == 0)
    return load_matrix(path, MatrixFormat::Binary);
  return load_matrix(path, MatrixFormat::Csv);
}

std::vector<int> load_class_labels(const std::string& path) {
  const Matrix M = load_matrix_auto(path);
  if (M.cols() != 1)
    throw DimensionError(path + ": class label file must have one column");
  std::vector<int> ids;
  ids.reserve(static_cast<size_t>(M.rows()));
  for (Index i = 0; i < M.rows(); ++i) {
    const double v = M(i, 0);
    if (v != std::floor(v))
      throw ParseError(path + ": class id " + std::to_string(v) +
                       " is not an integer");
    ids.push_back(static_cast<int>(v));
  }
  return ids;
}

void save_class_labels(const std::string& path, const std::vector<int>& ids) {
  std::ofstream out(path);
  if (!out) throw DataError(path + ": cannot open for writing");
  for (int id : ids) out << id << '\n';
}

void save_model(const std::string& path, const ModelArtifact& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path + ": cannot open for writing");
  out << kModelMagic << '\n';
  out << "version=" << kModelVersion << '\n';
  const bool linear = model.kind == ModelKind::Linear;
  out << "kind=" << (linear ? "linear" : "kernel") << '\n';
  const double lambda = linear ? model.linear.lambda : model.kernel.lambda;
  const double eta = linear ? model.linear.eta : model.kernel.eta;
  out << "lambda=" << format_double(lambda) << '\n';
  out << "eta=" << format_double(eta) << '\n';
  out << "gammas=";
  if (linear) {
    for (size_t i = 0; i < model.linear.gammas.size(); ++i)
      out << (i ? "," : "") << format_double(model.linear.gammas[i]);
  }
  out << '\n';
  if (!linear) {
    out << "kernel=" << to_string(model.kernel.spec.family) << '\n';
    out << "kernel_scale=" << format_double(model.kernel.spec.scale) << '\n';
  }
  out << "data\n";
  if (linear) {
    write_matrix_block(out, model.linear.B);
  } else {
    write_matrix_block(out, model.kernel.B);
    write_matrix_block(out, model.kernel.Xtrain);
  }
}

ModelArtifact load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path + ": cannot open");
  std::string line;
  if (!std::getline(in, line) || line != kModelMagic)
    throw MagicMismatch(path + ": not a model file");

  std::map<std::string, std::string> kv;
  while (std::getline(in, line)) {
    if (line == "data") break;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CorruptFile(path + ": malformed header line '" + line + "'");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  if (line != "data") throw CorruptFile(path + ": missing data section");
  if (!kv.count("version") || !kv.count("kind") || !kv.count("lambda") ||
      !kv.count("eta"))
    throw CorruptFile(path + ": incomplete header");
  if (std::stoi(kv.at("version")) != kModelVersion)
    throw VersionMismatch(path + ": unsupported model version " +
                          kv.at("version"));

  ModelArtifact model;
  const double lambda = std::stod(kv.at("lambda"));
  const double eta = std::stod(kv.at("eta"));
  if (kv.at("kind") == "linear") {
    model.kind = ModelKind::Linear;
    model.linear.lambda = lambda;
    model.linear.eta = eta;
    std::stringstream gs(kv.count("gammas") ? kv.at("gammas") : "");
    std::string g;
    while (std::getline(gs, g, ','))
      if (!g.empty()) model.linear.gammas.push_back(std::stod(g));
    model.linear.B = read_matrix_block(in, path);
  } else if (kv.at("kind") == "kernel") {
    model.kind = ModelKind::Kernel;
    model.kernel.lambda = lambda;
    model.kernel.eta = eta;
    model.kernel.spec.family = kernel_family_from_string(kv.at("kernel"));
    model.kernel.spec.scale = std::stod(kv.at("kernel_scale"));
    model.kernel.B = read_matrix_block(in, path);
    model.kernel.Xtrain = read_matrix_block(in, path);
  } else {
    throw CorruptFile(path + ": unknown model kind '" + kv.at("kind") + "'");
  }
  return model;
}

DatasetBundle synth_generate(std::uint64_t seed, int n_classes,
                             int samples_per_class, int d, int m,
                             double separation) {
  if (n_classes < 1 || samples_per_class < 1 || d < 1 || m < 1)
    throw InvalidCounts("all synth counts must be >= 1");
  if (separation < 0) throw InvalidCounts("separation must be nonnegative");
  if (m < 63 && (1LL << m) < n_classes)
    throw InvalidCounts("cannot draw " + std::to_string(n_classes) +
                        " distinct signatures from " + std::to_string(m) +
                        " attributes");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // pairwise-distinct random binary class signatures
  Matrix signatures(n_classes, m);
  std::set<std::vector<int>> seen;
  for (int c = 0; c < n_classes; ++c) {
    std::vector<int> row(static_cast<size_t>(m));
    int attempts = 0;
    do {
      if (++attempts > 10000)
        throw InvalidCounts("failed to draw distinct class signatures");
      for (int j = 0; j < m; ++j) row[static_cast<size_t>(j)] =
          static_cast<int>(rng() & 1u);
    } while (seen.count(row));
    seen.insert(row);
    for (int j = 0; j < m; ++j)
      signatures(c, j) = row[static_cast<size_t>(j)];
  }

  // Centers are a fixed random linear image of the +/-1 signature, so
  // attributes stay linearly decodable from features for classes the
  // predictor never saw; separation scales all pairwise distances.
  Matrix mix(d, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < d; ++i) mix(i, j) = gauss(rng);
  mix /= std::sqrt(static_cast<double>(m));
  Matrix centers(d, n_classes);
  for (int c = 0; c < n_classes; ++c)
    centers.col(c) =
        separation *
        (mix * (2.0 * signatures.row(c).transpose() - Vector::Ones(m)));

  const int n = n_classes * samples_per_class;
  Matrix X(d, n);
  Matrix labels(n, m);
  std::vector<int> class_labels(static_cast<size_t>(n));
  int col = 0;
  for (int c = 0; c < n_classes; ++c)
    for (int s = 0; s < samples_per_class; ++s, ++col) {
      for (int i = 0; i < d; ++i) X(i, col) = centers(i, c) + gauss(rng);
      labels.row(col) = signatures.row(c);
      class_labels[static_cast<size_t>(col)] = c;
    }

  DatasetBundle bundle;
  bundle.features = std::move(X);
  bundle.attribute_labels = build_attribute_hypergraph(labels);
  bundle.class_labels = std::move(class_labels);
  bundle.class_signatures = std::move(signatures);
  return bundle;
}

}  // namespace hap
