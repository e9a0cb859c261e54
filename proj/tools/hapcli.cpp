// hapcli: train / predict / evaluate hypergraph-regularized attribute
// predictors, run zero-shot and N-shot experiments, sweep hyperparameters
// and generate synthetic datasets.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hap/dataio.hpp"
#include "hap/errors.hpp"
#include "hap/evaluation.hpp"
#include "hap/kernel.hpp"
#include "hap/laplacian.hpp"
#include "hap/predictor.hpp"
#include "hap/zeroshot.hpp"

namespace {

using hap::Index;
using hap::Matrix;
using hap::Vector;

struct RunConfig {
  std::string mode = "hap";
  double mu = -1;  // <= 0 means "use the data-scaled default"
  double lambda = 1.0;
  double eta = 0.1;
  double gamma = 0.1;
  double rho = 0.1;
  std::string kernel = "gaussian";
  double kernel_scale = -1;
  std::uint64_t seed = 0;
  std::string classifier = "template";
  int n_shot = 0;
  double subsample_frac = 1.0;

  std::string features_path, attributes_path, class_labels_path,
      signatures_path;
};

bool is_kernel_mode(const std::string& mode) { return mode.front() == 'k'; }

void validate(const RunConfig& cfg, bool needs_class_labels_checked = true) {
  static const std::set<std::string> modes = {"hap",  "cshap_h",  "cshap_g",
                                              "khap", "kcshap_h", "kcshap_g"};
  if (!modes.count(cfg.mode))
    throw hap::ValidationError("unknown mode: " + cfg.mode);
  if (cfg.lambda <= 0) throw hap::ValidationError("lambda must be positive");
  if (cfg.eta <= 0) throw hap::ValidationError("eta must be positive");
  if (cfg.gamma < 0) throw hap::ValidationError("gamma must be nonnegative");
  if (cfg.rho <= 0) throw hap::ValidationError("rho must be positive");
  if (cfg.subsample_frac <= 0 || cfg.subsample_frac > 1)
    throw hap::ValidationError("subsample fraction must be in (0,1]");
  const bool needs_classes =
      cfg.mode == "cshap_h" || cfg.mode == "cshap_g" ||
      cfg.mode == "kcshap_h" || cfg.mode == "kcshap_g";
  if (needs_classes && needs_class_labels_checked &&
      cfg.class_labels_path.empty())
    throw hap::ValidationError("mode " + cfg.mode +
                               " requires --class-labels");
}

struct TrainingData {
  Matrix X;  // d x n
  hap::IncidenceMatrix H;
  std::vector<int> class_labels;  // empty if absent
};

hap::ModelArtifact train_model(const RunConfig& cfg, const TrainingData& data,
                               double* objective_out = nullptr,
                               double* residual_out = nullptr) {
  const double mu =
      cfg.mu > 0 ? cfg.mu : hap::default_bandwidth(data.X, cfg.seed);
  const hap::Laplacian L_H = hap::hypergraph_laplacian(
      data.H, hap::heat_kernel_weights(data.X, data.H, mu));

  std::vector<std::pair<hap::Laplacian, double>> side;
  if (cfg.mode == "cshap_h" || cfg.mode == "kcshap_h") {
    side.emplace_back(
        hap::class_hypergraph_laplacian(data.class_labels, data.X, mu),
        cfg.gamma);
  } else if (cfg.mode == "cshap_g" || cfg.mode == "kcshap_g") {
    side.emplace_back(
        hap::pairwise_class_graph_laplacian(data.X, data.class_labels, mu),
        cfg.gamma);
  }
  const hap::Laplacian L_W = hap::combine(L_H, side);
  const hap::ShiftedLabels Y = hap::shift_labels(data.H);

  hap::ModelArtifact artifact;
  if (is_kernel_mode(cfg.mode)) {
    hap::KernelSpec spec;
    spec.family = hap::kernel_family_from_string(cfg.kernel);
    spec.scale = cfg.kernel_scale > 0
                     ? cfg.kernel_scale
                     : hap::default_bandwidth(data.X, cfg.seed);
    const hap::GramMatrix K = hap::gram(data.X, spec);
    artifact.kind = hap::ModelKind::Kernel;
    artifact.kernel = hap::train_kernel(K, Y, L_W, cfg.lambda, cfg.eta);
    if (objective_out) {
      const Matrix F = K.K * artifact.kernel.B;
      *objective_out =
          (artifact.kernel.B.transpose() * (K.K * (L_W.L * (K.K * artifact.kernel.B))))
              .trace() +
          cfg.lambda * (F - Y.Y).squaredNorm() +
          cfg.eta * artifact.kernel.B.squaredNorm();
    }
    if (residual_out) {
      const Matrix& B = artifact.kernel.B;
      const Matrix lhs = K.K * (L_W.L * (K.K * B)) +
                         cfg.lambda * (K.K * (K.K * B)) + cfg.eta * B;
      const Matrix rhs = cfg.lambda * (K.K * Y.Y);
      *residual_out = (lhs - rhs).norm() / (1.0 + rhs.norm());
    }
  } else {
    artifact.kind = hap::ModelKind::Linear;
    if (side.empty()) {
      artifact.linear = hap::train(data.X, Y, L_W, cfg.lambda, cfg.eta);
    } else {
      artifact.linear =
          hap::train_cshap(data.X, data.H, side, cfg.lambda, cfg.eta, mu);
    }
    if (objective_out)
      *objective_out = hap::objective_value(artifact.linear.B, data.X, Y, L_W,
                                            cfg.lambda, cfg.eta);
    if (residual_out) {
      const Matrix& B = artifact.linear.B;
      const Matrix lhs = data.X * (L_W.L * (data.X.transpose() * B)) +
                         cfg.lambda * (data.X * (data.X.transpose() * B)) +
                         cfg.eta * B;
      const Matrix rhs = cfg.lambda * (data.X * Y.Y);
      *residual_out = (lhs - rhs).norm() / (1.0 + rhs.norm());
    }
  }
  return artifact;
}

hap::AttributeScores score_model(const hap::ModelArtifact& model,
                                 const Matrix& Z) {
  if (model.kind == hap::ModelKind::Linear)
    return hap::predict(model.linear, Z);
  return hap::predict_kernel(model.kernel, Z);
}

TrainingData load_training_data(const RunConfig& cfg) {
  TrainingData data;
  data.X = hap::load_matrix_auto(cfg.features_path).transpose();  // file: n x d
  Matrix labels;
  if (!cfg.attributes_path.empty()) {
    labels = hap::load_matrix_auto(cfg.attributes_path);
  } else if (!cfg.signatures_path.empty() && !cfg.class_labels_path.empty()) {
    // expand per-class signatures to per-sample labels
    const Matrix sig = hap::load_matrix_auto(cfg.signatures_path);
    const auto classes = hap::load_class_labels(cfg.class_labels_path);
    labels.resize(static_cast<Index>(classes.size()), sig.cols());
    for (size_t i = 0; i < classes.size(); ++i) {
      const int c = classes[i];
      if (c < 0 || c >= sig.rows())
        throw hap::DimensionError("class id " + std::to_string(c) +
                                  " outside signature table");
      labels.row(static_cast<Index>(i)) = sig.row(c);
    }
  } else {
    throw hap::ValidationError(
        "need --attributes, or --signatures with --class-labels");
  }
  if (labels.rows() != data.X.cols())
    throw hap::DimensionError("attribute rows != feature rows");
  data.H = hap::build_attribute_hypergraph(labels);
  if (!cfg.class_labels_path.empty())
    data.class_labels = hap::load_class_labels(cfg.class_labels_path);
  return data;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// zsl / nshot experiment

struct ZslResult {
  hap::MetricReport metrics;
  std::vector<int> predicted;
  std::vector<int> truth;
};

std::vector<int> parse_class_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  return out;
}

Matrix select_cols(const Matrix& M, const std::vector<int>& idx) {
  Matrix out(M.rows(), static_cast<Index>(idx.size()));
  for (size_t i = 0; i < idx.size(); ++i) out.col(static_cast<Index>(i)) = M.col(idx[i]);
  return out;
}

Matrix select_rows(const Matrix& M, const std::vector<int>& idx) {
  Matrix out(static_cast<Index>(idx.size()), M.cols());
  for (size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Index>(i)) = M.row(idx[i]);
  return out;
}

std::vector<int> subsample_per_class(const std::vector<int>& idx,
                                     const std::vector<int>& sample_classes,
                                     double frac, std::mt19937_64& rng) {
  if (frac >= 1.0) return idx;
  std::map<int, std::vector<int>> by_class;
  for (int i : idx) by_class[sample_classes[static_cast<size_t>(i)]].push_back(i);
  std::vector<int> kept;
  for (auto& [cls, members] : by_class) {
    for (size_t i = members.size(); i > 1; --i)
      std::swap(members[i - 1], members[static_cast<size_t>(rng() % i)]);
    const auto keep = std::max<size_t>(
        1, static_cast<size_t>(frac * static_cast<double>(members.size()) + 0.5));
    members.resize(std::min(keep, members.size()));
    kept.insert(kept.end(), members.begin(), members.end());
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

ZslResult run_zsl(const RunConfig& cfg, const std::vector<int>& test_classes,
                  const std::vector<int>& train_classes_flag) {
  const Matrix X_all = hap::load_matrix_auto(cfg.features_path).transpose();
  const Matrix labels_all = hap::load_matrix_auto(cfg.attributes_path);
  const auto classes = hap::load_class_labels(cfg.class_labels_path);
  if (static_cast<Index>(classes.size()) != X_all.cols() ||
      labels_all.rows() != X_all.cols())
    throw hap::DimensionError("feature/attribute/class file sizes disagree");

  const std::set<int> test_set(test_classes.begin(), test_classes.end());
  std::set<int> train_set;
  if (!train_classes_flag.empty()) {
    train_set.insert(train_classes_flag.begin(), train_classes_flag.end());
    for (int c : train_set)
      if (test_set.count(c))
        throw hap::OverlapError("class " + std::to_string(c) +
                                " appears in both train and test sets");
  } else {
    for (int c : classes)
      if (!test_set.count(c)) train_set.insert(c);
  }

  hap::SampleSplit split;
  for (size_t i = 0; i < classes.size(); ++i) {
    if (test_set.count(classes[i]))
      split.test_idx.push_back(static_cast<int>(i));
    else if (train_set.count(classes[i]))
      split.train_idx.push_back(static_cast<int>(i));
  }
  if (split.train_idx.empty()) throw hap::EmptyInput("no training samples");
  if (split.test_idx.empty()) throw hap::EmptyInput("no test samples");

  std::mt19937_64 subsample_rng(cfg.seed + 0x5eed);
  split.train_idx =
      subsample_per_class(split.train_idx, classes, cfg.subsample_frac,
                          subsample_rng);
  split.test_idx = subsample_per_class(split.test_idx, classes,
                                       cfg.subsample_frac, subsample_rng);

  split = hap::nshot_augment(split, classes, test_classes, cfg.n_shot,
                             cfg.seed);

  TrainingData data;
  data.X = select_cols(X_all, split.train_idx);
  data.H = hap::build_attribute_hypergraph(select_rows(labels_all, split.train_idx));
  for (int i : split.train_idx)
    data.class_labels.push_back(classes[static_cast<size_t>(i)]);

  const hap::ModelArtifact model = train_model(cfg, data);

  const Matrix Z = select_cols(X_all, split.test_idx);
  const hap::AttributeScores scores = score_model(model, Z);
  const hap::NormalizedConfidences R =
      hap::sigmoid_normalize(scores.S, cfg.rho);

  std::vector<int> test_truth;
  for (int i : split.test_idx)
    test_truth.push_back(classes[static_cast<size_t>(i)]);

  // per-test-class attribute templates / signatures from the annotation
  std::vector<int> tmpl_ids;
  Matrix tmpl;
  {
    std::map<int, std::pair<Eigen::RowVectorXd, int>> acc;
    for (Index i = 0; i < labels_all.rows(); ++i) {
      const int c = classes[static_cast<size_t>(i)];
      if (!test_set.count(c)) continue;
      auto it = acc.find(c);
      if (it == acc.end())
        acc.emplace(c, std::make_pair(Eigen::RowVectorXd(labels_all.row(i)), 1));
      else {
        it->second.first += labels_all.row(i);
        ++it->second.second;
      }
    }
    tmpl.resize(static_cast<Index>(acc.size()), labels_all.cols());
    Index r = 0;
    for (const auto& [c, sum_count] : acc) {
      tmpl.row(r++) = sum_count.first / sum_count.second;
      tmpl_ids.push_back(c);
    }
  }

  hap::ClassDecision decision{{}, {}, false};
  if (cfg.classifier == "template") {
    decision = hap::template_classify(
        R, hap::ClassTemplateSet{tmpl, tmpl_ids,
                                 hap::TemplateSource::PerSampleMean});
  } else if (cfg.classifier == "dap") {
    Matrix sig = tmpl;
    for (Index i = 0; i < sig.rows(); ++i)
      for (Index j = 0; j < sig.cols(); ++j)
        sig(i, j) = sig(i, j) >= 0.5 ? 1.0 : 0.0;
    // priors from the training-class attribute annotation
    Matrix train_sig;
    {
      std::map<int, Eigen::RowVectorXd> first_row;
      std::map<int, int> counts;
      std::map<int, Eigen::RowVectorXd> sums;
      for (Index i = 0; i < labels_all.rows(); ++i) {
        const int c = classes[static_cast<size_t>(i)];
        if (!train_set.count(c)) continue;
        if (!counts.count(c)) sums[c] = Eigen::RowVectorXd::Zero(labels_all.cols());
        sums[c] += labels_all.row(i);
        ++counts[c];
      }
      train_sig.resize(static_cast<Index>(counts.size()), labels_all.cols());
      Index r = 0;
      for (const auto& [c, count] : counts) {
        Eigen::RowVectorXd mean = sums[c] / count;
        for (Index j = 0; j < mean.size(); ++j)
          train_sig(r, j) = mean(j) >= 0.5 ? 1.0 : 0.0;
        ++r;
      }
    }
    decision = hap::dap_classify(R, sig, tmpl_ids,
                                 hap::dap_priors_from_signatures(train_sig));
  } else {
    throw hap::ValidationError("unknown classifier: " + cfg.classifier);
  }

  ZslResult result;
  result.predicted = decision.predicted;
  result.truth = test_truth;
  result.metrics =
      hap::attribute_auc_report(scores.S, select_rows(labels_all, split.test_idx));
  result.metrics.class_averaged_accuracy =
      hap::class_averaged_accuracy(decision.predicted, test_truth);
  result.metrics.absolute_accuracy =
      hap::absolute_accuracy(decision.predicted, test_truth);
  return result;
}

void write_zsl_outputs(const std::string& out_dir, const ZslResult& result) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream report(out_dir + "/report.csv");
    report << "metric,value\n";
    report << "mean_auc," << format_double(result.metrics.mean_auc) << '\n';
    report << "class_averaged_accuracy,"
           << format_double(result.metrics.class_averaged_accuracy) << '\n';
    report << "absolute_accuracy,"
           << format_double(result.metrics.absolute_accuracy) << '\n';
  }
  {
    std::ofstream dec(out_dir + "/decisions.csv");
    dec << "predicted,truth\n";
    for (size_t i = 0; i < result.predicted.size(); ++i)
      dec << result.predicted[i] << ',' << result.truth[i] << '\n';
  }
}

// ---------------------------------------------------------------------------

std::string trim_ws(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

/// Splices `key = value` lines from a --config file into the argument
/// list. Keys already given on the command line are skipped, so flags
/// always win over config values.
std::vector<std::string> expand_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (size_t i = 0; i < args.size();) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size())
        throw hap::ValidationError("--config requires a file path");
      config_path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i),
                 args.begin() + static_cast<long>(i) + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
  if (config_path.empty()) return args;

  std::ifstream in(config_path);
  if (!in) throw hap::DataError(config_path + ": cannot open config file");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim_ws(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    const std::string key =
        eq == std::string::npos ? "" : trim_ws(stripped.substr(0, eq));
    if (key.empty())
      throw hap::ValidationError(config_path + ":" + std::to_string(lineno) +
                                 ": expected key = value");
    const std::string value = trim_ws(stripped.substr(eq + 1));
    const std::string flag = "--" + key;
    const bool given = std::any_of(
        args.begin(), args.end(), [&flag](const std::string& a) {
          return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    if (!given) {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Hypergraph-regularized attribute predictors"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string out_path = "out";
  std::string test_classes_csv, train_classes_csv;
  std::string config_doc;  // consumed before parsing; listed for --help

  auto add_common = [&](CLI::App* sub, bool with_hyper = true) {
    sub->add_option("--config", config_doc,
                    "key = value file; command-line flags win");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    if (with_hyper) {
      sub->add_option("--mode", cfg.mode,
                      "hap|cshap_h|cshap_g|khap|kcshap_h|kcshap_g");
      sub->add_option("--mu", cfg.mu, "heat-kernel bandwidth (<=0: data-scaled)");
      sub->add_option("--lambda", cfg.lambda, "prediction-loss weight");
      sub->add_option("--eta", cfg.eta, "ridge weight");
      sub->add_option("--gamma", cfg.gamma, "side-information weight");
      sub->add_option("--rho", cfg.rho, "sigmoid scaling");
      sub->add_option("--kernel", cfg.kernel, "gaussian|cauchy|linear");
      sub->add_option("--kernel-scale", cfg.kernel_scale,
                      "sigma^2 (<=0: data-scaled)");
    }
  };
  auto add_data = [&](CLI::App* sub, bool features_required = true) {
    auto* f = sub->add_option("--features", cfg.features_path,
                              "feature matrix, one row per sample");
    if (features_required) f->required();
    sub->add_option("--attributes", cfg.attributes_path,
                    "binary sample-by-attribute matrix");
    sub->add_option("--class-labels", cfg.class_labels_path,
                    "one integer class id per line");
    sub->add_option("--signatures", cfg.signatures_path,
                    "binary class-by-attribute matrix");
  };

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  int n_classes = 5, per_class = 40, dim = 16, n_attrs = 12;
  double separation = 6.0;
  std::string synth_dir = "synth";
  synth->add_option("--config", config_doc,
                    "key = value file; command-line flags win");
  synth->add_option("--seed", cfg.seed, "RNG seed");
  synth->add_option("--classes", n_classes, "number of classes");
  synth->add_option("--per-class", per_class, "samples per class");
  synth->add_option("--dim", dim, "feature dimension");
  synth->add_option("--attributes", n_attrs, "number of attributes");
  synth->add_option("--separation", separation, "cluster center scale");
  synth->add_option("--out", synth_dir, "output directory")->required();

  // train
  auto* train_cmd = app.add_subcommand("train", "train a predictor");
  add_common(train_cmd);
  add_data(train_cmd);
  train_cmd->add_option("--out", out_path, "model output path")->required();

  // predict
  auto* predict_cmd = app.add_subcommand("predict", "score samples");
  std::string model_path;
  predict_cmd->add_option("--config", config_doc,
                          "key = value file; command-line flags win");
  predict_cmd->add_option("--model", model_path, "trained model")->required();
  predict_cmd->add_option("--features", cfg.features_path, "feature matrix")
      ->required();
  predict_cmd->add_option("--out", out_path, "output prefix")->required();

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "compute metrics from files");
  std::string scores_path, pred_path, truth_path, roc_out;
  int roc_attribute = -1;
  eval_cmd->add_option("--config", config_doc,
                       "key = value file; command-line flags win");
  eval_cmd->add_option("--scores", scores_path, "attribute score matrix");
  eval_cmd->add_option("--attributes", cfg.attributes_path,
                       "binary attribute labels matching --scores");
  eval_cmd->add_option("--pred", pred_path, "predicted class ids");
  eval_cmd->add_option("--truth", truth_path, "true class ids");
  eval_cmd->add_option("--roc-out", roc_out, "write ROC points table");
  eval_cmd->add_option("--roc-attribute", roc_attribute,
                       "attribute column for --roc-out");

  // zsl / nshot
  auto* zsl_cmd = app.add_subcommand("zsl", "zero-shot experiment");
  auto* nshot_cmd = app.add_subcommand("nshot", "N-shot experiment");
  for (CLI::App* sub : {zsl_cmd, nshot_cmd}) {
    add_common(sub);
    add_data(sub);
    sub->add_option("--test-classes", test_classes_csv,
                    "comma-separated held-out class ids")
        ->required();
    sub->add_option("--train-classes", train_classes_csv,
                    "comma-separated training class ids (default: the rest)");
    sub->add_option("--classifier", cfg.classifier, "template|dap");
    sub->add_option("--subsample-frac", cfg.subsample_frac,
                    "per-class subsample fraction");
    sub->add_option("--out", out_path, "output directory")->required();
  }
  nshot_cmd->add_option("--n-shot", cfg.n_shot,
                        "test-class samples moved to training");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "one-parameter grid sweep");
  std::string sweep_param = "lambda", grid_csv;
  add_common(sweep_cmd);
  add_data(sweep_cmd);
  sweep_cmd->add_option("--param", sweep_param, "mu|lambda|eta|gamma|rho")
      ->required();
  sweep_cmd->add_option("--grid", grid_csv, "comma-separated values")
      ->required();
  sweep_cmd->add_option("--test-classes", test_classes_csv,
                        "held-out classes for the ZSL column");
  sweep_cmd->add_option("--classifier", cfg.classifier, "template|dap");
  sweep_cmd->add_option("--out", out_path, "output table path")->required();

  try {
    std::vector<std::string> args = expand_config_args(argc, argv);
    std::reverse(args.begin(), args.end());  // CLI11 consumes back-to-front
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (*synth) {
    const hap::DatasetBundle bundle = hap::synth_generate(
        cfg.seed, n_classes, per_class, dim, n_attrs, separation);
    std::filesystem::create_directories(synth_dir);
    hap::save_matrix(synth_dir + "/features.csv",
                     bundle.features.transpose(), hap::MatrixFormat::Csv);
    hap::save_matrix(synth_dir + "/attributes.csv",
                     bundle.attribute_labels->H, hap::MatrixFormat::Csv);
    hap::save_matrix(synth_dir + "/signatures.csv", *bundle.class_signatures,
                     hap::MatrixFormat::Csv);
    hap::save_class_labels(synth_dir + "/class_labels.csv",
                           *bundle.class_labels);
    std::cout << "wrote " << synth_dir << " (n="
              << bundle.features.cols() << ", d=" << bundle.features.rows()
              << ", m=" << n_attrs << ")\n";
    return 0;
  }

  if (*train_cmd) {
    validate(cfg);
    const TrainingData data = load_training_data(cfg);
    double objective = 0, residual = 0;
    const auto t0 = std::chrono::steady_clock::now();
    const hap::ModelArtifact model =
        train_model(cfg, data, &objective, &residual);
    const auto t1 = std::chrono::steady_clock::now();
    hap::save_model(out_path, model);
    std::cout << "mode=" << cfg.mode << '\n'
              << "objective=" << format_double(objective) << '\n'
              << "stationarity_residual=" << format_double(residual) << '\n'
              << "train_seconds="
              << std::chrono::duration<double>(t1 - t0).count() << '\n'
              << "model=" << out_path << '\n';
    return 0;
  }

  if (*predict_cmd) {
    const hap::ModelArtifact model = hap::load_model(model_path);
    const Matrix Z = hap::load_matrix_auto(cfg.features_path).transpose();
    const hap::AttributeScores scores = score_model(model, Z);
    hap::save_matrix(out_path + "_scores.csv", scores.S,
                     hap::MatrixFormat::Csv);
    hap::save_matrix(out_path + "_signs.csv", scores.P,
                     hap::MatrixFormat::Csv);
    std::cout << "wrote " << out_path << "_scores.csv and " << out_path
              << "_signs.csv\n";
    return 0;
  }

  if (*eval_cmd) {
    if (!scores_path.empty()) {
      if (cfg.attributes_path.empty())
        throw hap::ValidationError("--scores requires --attributes");
      const Matrix S = hap::load_matrix_auto(scores_path);
      const Matrix labels = hap::load_matrix_auto(cfg.attributes_path);
      const hap::MetricReport report = hap::attribute_auc_report(S, labels);
      std::cout << "mean_auc=" << format_double(report.mean_auc) << '\n';
      for (Index j = 0; j < report.per_attribute_auc.size(); ++j)
        std::cout << "auc[" << j
                  << "]=" << format_double(report.per_attribute_auc(j))
                  << '\n';
      if (!roc_out.empty()) {
        if (roc_attribute < 0 || roc_attribute >= S.cols())
          throw hap::ValidationError("--roc-attribute out of range");
        const auto points =
            hap::roc_points(S.col(roc_attribute), labels.col(roc_attribute));
        std::ofstream out(roc_out);
        out << "fpr,tpr\n";
        for (const auto& [fpr, tpr] : points)
          out << format_double(fpr) << ',' << format_double(tpr) << '\n';
      }
    }
    if (!pred_path.empty()) {
      if (truth_path.empty())
        throw hap::ValidationError("--pred requires --truth");
      const auto pred = hap::load_class_labels(pred_path);
      const auto truth = hap::load_class_labels(truth_path);
      std::cout << "class_averaged_accuracy="
                << format_double(hap::class_averaged_accuracy(pred, truth))
                << '\n'
                << "absolute_accuracy="
                << format_double(hap::absolute_accuracy(pred, truth)) << '\n';
    }
    if (scores_path.empty() && pred_path.empty())
      throw hap::ValidationError("eval needs --scores or --pred");
    return 0;
  }

  if (*zsl_cmd || *nshot_cmd) {
    if (*zsl_cmd) cfg.n_shot = 0;
    validate(cfg, false);
    if (cfg.class_labels_path.empty())
      throw hap::ValidationError("zsl/nshot requires --class-labels");
    if (cfg.attributes_path.empty())
      throw hap::ValidationError("zsl/nshot requires --attributes");
    const auto test_classes = parse_class_list(test_classes_csv);
    if (test_classes.empty())
      throw hap::ValidationError("--test-classes is empty");
    const ZslResult result =
        run_zsl(cfg, test_classes, parse_class_list(train_classes_csv));
    write_zsl_outputs(out_path, result);
    std::cout << "mean_auc=" << format_double(result.metrics.mean_auc) << '\n'
              << "class_averaged_accuracy="
              << format_double(result.metrics.class_averaged_accuracy) << '\n'
              << "absolute_accuracy="
              << format_double(result.metrics.absolute_accuracy) << '\n';
    return 0;
  }

  if (*sweep_cmd) {
    validate(cfg, false);
    static const std::set<std::string> params = {"mu", "lambda", "eta",
                                                 "gamma", "rho"};
    if (!params.count(sweep_param))
      throw hap::ValidationError("unknown sweep parameter: " + sweep_param);
    std::vector<double> grid;
    {
      std::stringstream ss(grid_csv);
      std::string tok;
      while (std::getline(ss, tok, ','))
        if (!tok.empty()) grid.push_back(std::stod(tok));
    }
    if (grid.empty()) throw hap::ValidationError("--grid is empty");
    for (double v : grid) {  // validate the whole grid before any run
      if (sweep_param == "gamma" ? v < 0 : v <= 0)
        throw hap::ValidationError("invalid " + sweep_param + " value " +
                                   format_double(v));
    }

    std::ofstream table(out_path);
    if (!table) throw hap::DataError(out_path + ": cannot open for writing");
    table << sweep_param << ",mean_auc,zsl_accuracy,b_fro_norm\n";
    for (double v : grid) {
      RunConfig run = cfg;
      if (sweep_param == "mu") run.mu = v;
      else if (sweep_param == "lambda") run.lambda = v;
      else if (sweep_param == "eta") run.eta = v;
      else if (sweep_param == "gamma") run.gamma = v;
      else run.rho = v;

      double mean_auc = 0, zsl_acc = 0, b_norm = 0;
      if (!test_classes_csv.empty()) {
        const ZslResult result =
            run_zsl(run, parse_class_list(test_classes_csv), {});
        mean_auc = result.metrics.mean_auc;
        zsl_acc = result.metrics.class_averaged_accuracy;
        const TrainingData data = load_training_data(run);
        const hap::ModelArtifact model = train_model(run, data);
        b_norm = model.kind == hap::ModelKind::Linear
                     ? model.linear.B.norm()
                     : model.kernel.B.norm();
      } else {
        const TrainingData data = load_training_data(run);
        const hap::ModelArtifact model = train_model(run, data);
        const hap::AttributeScores scores = score_model(model, data.X);
        mean_auc = hap::attribute_auc_report(scores.S, data.H.H).mean_auc;
        b_norm = model.kind == hap::ModelKind::Linear
                     ? model.linear.B.norm()
                     : model.kernel.B.norm();
      }
      table << format_double(v) << ',' << format_double(mean_auc) << ','
            << format_double(zsl_acc) << ',' << format_double(b_norm) << '\n';
    }
    std::cout << "wrote " << out_path << '\n';
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const hap::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const hap::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const hap::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
