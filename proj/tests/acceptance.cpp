// Acceptance suite: one pass/fail line per criterion. Exit code is the
// number of failed criteria.
#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hap/dataio.hpp"
#include "hap/evaluation.hpp"
#include "hap/kernel.hpp"
#include "hap/laplacian.hpp"
#include "hap/predictor.hpp"
#include "hap/zeroshot.hpp"
#include "oracles.hpp"

using hap::Index;
using hap::Matrix;
using hap::Vector;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int criterion, const std::string& name, bool ok,
            const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << criterion << ". " << name
            << " — " << detail << '\n';
  if (!ok) ++failures;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(4);
  ss << v;
  return ss.str();
}

// ---------------------------------------------------------------------------
// 1. Laplacian identity: direct pairwise loss == Tr(F^T L F)

void criterion_laplacian_identity() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  int instances = 0;
  while (instances < 200) {
    const Index n = 2 + static_cast<Index>(rng() % 19);
    const Index m = 1 + static_cast<Index>(rng() % 6);
    const hap::IncidenceMatrix H{
        oracles::random_binary_matrix(rng, n, m, 0.4)};
    Vector w(m);
    for (Index e = 0; e < m; ++e)
      w(e) = (rng() % 5 == 0) ? 0.0
                              : static_cast<double>(rng() % 1000) / 250.0;
    const hap::HyperedgeWeights weights{w, 0.0};
    const Matrix F = oracles::random_matrix(rng, n, 1 + (rng() % 4));

    const double direct = hap::relation_loss_direct(F, H, weights);
    const hap::Laplacian L = hap::hypergraph_laplacian(H, weights);
    const double quad = (F.transpose() * L.L * F).trace();
    worst = std::max(worst,
                     std::abs(direct - quad) / (1.0 + std::abs(direct)));
    ++instances;
  }
  const double dt = seconds_since(t0);
  report(1, "Laplacian identity oracle", worst <= 1e-8 && dt < 10.0,
         "200 instances, worst relative gap " + fmt(worst) + ", " + fmt(dt) +
             " s");
}

// ---------------------------------------------------------------------------
// 2. Closed-form training matches an iterative minimizer; perturbations
//    never improve the objective. Linear, combined-Laplacian, and kernel.

void criterion_closed_form() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2002);
  double worst_linear = 0.0, worst_kernel = 0.0;
  int improving = 0;

  for (int trial = 0; trial < 50; ++trial) {
    const Index d = 3 + static_cast<Index>(rng() % 18);
    const Index n = 4 + static_cast<Index>(rng() % 27);
    const Index m = 1 + static_cast<Index>(rng() % 5);
    const Matrix X = oracles::random_matrix(rng, d, n);
    hap::IncidenceMatrix H{oracles::random_binary_matrix(rng, n, m)};
    const hap::ShiftedLabels Y = hap::shift_labels(H);
    const double mu = 0.5 + static_cast<double>(rng() % 100) / 50.0;
    const double lambda = 0.5 + static_cast<double>(rng() % 100) / 66.0;
    const double eta = 0.05 + static_cast<double>(rng() % 100) / 220.0;

    hap::Laplacian L = hap::hypergraph_laplacian(
        H, hap::heat_kernel_weights(X, H, mu));
    if (trial % 2 == 1) {  // alternate plain HAP and combined CSHAP systems
      std::vector<int> classes(static_cast<size_t>(n));
      for (Index i = 0; i < n; ++i)
        classes[static_cast<size_t>(i)] = static_cast<int>(rng() % 3);
      const double gamma = static_cast<double>(rng() % 100) / 100.0;
      L = hap::combine(
          L, {{hap::pairwise_class_graph_laplacian(X, classes, mu), gamma}});
    }

    const hap::ProjectionMatrix model = hap::train(X, Y, L, lambda, eta);
    const auto [A, C] =
        oracles::linear_objective_system(X, Y.Y, L.L, lambda, eta);
    const Matrix Bstar = oracles::minimize_quadratic(A, C);
    worst_linear =
        std::max(worst_linear, (model.B - Bstar).cwiseAbs().maxCoeff());

    if (trial < 10) {  // 10 perturbations x 10 trials = 100 total
      const double f0 =
          hap::objective_value(model.B, X, Y, L, lambda, eta);
      for (int p = 0; p < 10; ++p) {
        const Matrix P =
            oracles::random_matrix(rng, d, m, 1e-3 * (1.0 + model.B.norm()));
        if (hap::objective_value(model.B + P, X, Y, L, lambda, eta) <
            f0 - 1e-12 * (1.0 + std::abs(f0)))
          ++improving;
      }
    }

    const hap::KernelSpec spec{
        trial % 3 == 0 ? hap::KernelFamily::Linear
                       : (trial % 3 == 1 ? hap::KernelFamily::Gaussian
                                         : hap::KernelFamily::Cauchy),
        1.0 + static_cast<double>(rng() % 100) / 25.0};
    const hap::GramMatrix K = hap::gram(X, spec);
    const hap::KernelProjection kmodel =
        hap::train_kernel(K, Y, L, lambda, eta);
    const auto [Ak, Ck] =
        oracles::kernel_objective_system(K.K, Y.Y, L.L, lambda, eta);
    const Matrix Bk = oracles::minimize_quadratic(Ak, Ck);
    worst_kernel =
        std::max(worst_kernel, (kmodel.B - Bk).cwiseAbs().maxCoeff());
  }

  const double dt = seconds_since(t0);
  report(2, "closed-form optimality vs iterative minimizer",
         worst_linear <= 1e-6 && worst_kernel <= 1e-6 && improving == 0 &&
             dt < 60.0,
         "50 instances, linear gap " + fmt(worst_linear) + ", kernel gap " +
             fmt(worst_kernel) + ", " + std::to_string(improving) +
             " improving perturbations, " + fmt(dt) + " s");
}

// ---------------------------------------------------------------------------
// CLI helpers (criteria 3 and 8)

namespace fs = std::filesystem;

struct CliDir {
  fs::path dir;
  CliDir() {
    dir = fs::temp_directory_path() /
          ("hap_acc_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
  }
  ~CliDir() { fs::remove_all(dir); }
  std::string p(const std::string& name) const { return (dir / name).string(); }
  int run(const std::string& args) const {
    const std::string cmd = std::string(HAPCLI_PATH) + " " + args +
                            " >/dev/null 2>" + p("stderr.txt");
    return WEXITSTATUS(std::system(cmd.c_str()));
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// 3. Reduction identities

void criterion_reductions() {
  std::mt19937_64 rng(3003);
  const Index d = 8, n = 24, m = 4;
  const Matrix X = oracles::random_matrix(rng, d, n);
  hap::IncidenceMatrix H{oracles::random_binary_matrix(rng, n, m)};
  const hap::ShiftedLabels Y = hap::shift_labels(H);
  std::vector<int> classes(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i)
    classes[static_cast<size_t>(i)] = static_cast<int>(i % 3);

  const hap::Laplacian LH =
      hap::hypergraph_laplacian(H, hap::heat_kernel_weights(X, H, 1.0));
  const hap::ProjectionMatrix plain = hap::train(X, Y, LH, 1.0, 0.1);
  const hap::ProjectionMatrix gamma0 = hap::train_cshap(
      X, H, {{hap::pairwise_class_graph_laplacian(X, classes, 1.0), 0.0}},
      1.0, 0.1, 1.0);
  const bool cshap_identity = plain.B == gamma0.B;

  const hap::Laplacian combined = hap::combine(LH, {});
  const bool combine_identity = combined.L == LH.L;

  CliDir cli;
  bool nshot_identity = false;
  if (cli.run("synth --seed 11 --classes 5 --per-class 10 --dim 6 "
              "--attributes 8 --separation 4 --out " + cli.p("data")) == 0) {
    const std::string common =
        " --mode hap --features " + cli.p("data/features.csv") +
        " --attributes " + cli.p("data/attributes.csv") + " --class-labels " +
        cli.p("data/class_labels.csv") +
        " --mu 1 --lambda 1 --eta 0.1 --rho 0.1 --seed 7 --test-classes 3,4";
    if (cli.run("zsl" + common + " --out " + cli.p("z")) == 0 &&
        cli.run("nshot" + common + " --n-shot 0 --out " + cli.p("n")) == 0)
      nshot_identity =
          slurp(cli.p("z/report.csv")) == slurp(cli.p("n/report.csv")) &&
          slurp(cli.p("z/decisions.csv")) == slurp(cli.p("n/decisions.csv"));
  }

  report(3, "reduction identities",
         cshap_identity && combine_identity && nshot_identity,
         std::string("CSHAP(gamma=0)==HAP: ") +
             (cshap_identity ? "yes" : "no") + ", combine(empty)==id: " +
             (combine_identity ? "yes" : "no") + ", nshot(0)==zsl: " +
             (nshot_identity ? "yes" : "no"));
}

// ---------------------------------------------------------------------------
// 4. PSD and spectral checks

void criterion_spectra() {
  std::mt19937_64 rng(4004);
  double min_eig = 0.0, max_hyper_eig = 1.0, worst_rowsum = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 5 + static_cast<Index>(rng() % 26);
    const Index m = 1 + static_cast<Index>(rng() % 8);
    const Matrix X = oracles::random_matrix(rng, 4, n);
    const hap::IncidenceMatrix H{
        oracles::random_binary_matrix(rng, n, m, 0.4)};
    const double mu = 0.5 + static_cast<double>(rng() % 100) / 50.0;

    const hap::Laplacian LH =
        hap::hypergraph_laplacian(H, hap::heat_kernel_weights(X, H, mu));
    Eigen::SelfAdjointEigenSolver<Matrix> hyper(LH.L);
    min_eig = std::min(min_eig, hyper.eigenvalues().minCoeff());
    max_hyper_eig = std::max(max_hyper_eig, hyper.eigenvalues().maxCoeff());

    std::vector<int> classes(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i)
      classes[static_cast<size_t>(i)] = static_cast<int>(rng() % 4);
    const hap::Laplacian LG =
        hap::pairwise_class_graph_laplacian(X, classes, mu);
    Eigen::SelfAdjointEigenSolver<Matrix> graph(LG.L);
    min_eig = std::min(min_eig, graph.eigenvalues().minCoeff());
    for (Index i = 0; i < n; ++i) {
      double s = 0.0;
      for (Index j = 0; j < n; ++j) s += LG.L(i, j);
      worst_rowsum = std::max(worst_rowsum, std::abs(s));
    }
  }
  report(4, "PSD and spectral checks",
         min_eig >= -1e-8 && max_hyper_eig <= 1.0 + 1e-8 &&
             worst_rowsum == 0.0,
         "min eigenvalue " + fmt(min_eig) + ", max hypergraph eigenvalue " +
             fmt(max_hyper_eig) + ", worst class-graph row sum " +
             fmt(worst_rowsum));
}

// ---------------------------------------------------------------------------
// 5. Synthetic zero-shot end to end

void criterion_zero_shot() {
  const auto t0 = Clock::now();
  // 25 seen + 5 unseen classes: the seen signatures span the attribute
  // space, which unseen-class prediction needs.
  const hap::DatasetBundle bundle = hap::synth_generate(5005, 30, 25, 15, 12,
                                                        8.0);
  const Index n = bundle.features.cols();
  std::vector<int> train_idx, test_idx;
  for (Index i = 0; i < n; ++i)
    ((*bundle.class_labels)[static_cast<size_t>(i)] < 25 ? train_idx
                                                         : test_idx)
        .push_back(static_cast<int>(i));

  Matrix Xtr(bundle.features.rows(), static_cast<Index>(train_idx.size()));
  Matrix Htr(static_cast<Index>(train_idx.size()),
             bundle.attribute_labels->H.cols());
  for (size_t k = 0; k < train_idx.size(); ++k) {
    Xtr.col(static_cast<Index>(k)) = bundle.features.col(train_idx[k]);
    Htr.row(static_cast<Index>(k)) =
        bundle.attribute_labels->H.row(train_idx[k]);
  }
  Matrix Xte(bundle.features.rows(), static_cast<Index>(test_idx.size()));
  Matrix Hte(static_cast<Index>(test_idx.size()), Htr.cols());
  std::vector<int> truth;
  for (size_t k = 0; k < test_idx.size(); ++k) {
    Xte.col(static_cast<Index>(k)) = bundle.features.col(test_idx[k]);
    Hte.row(static_cast<Index>(k)) =
        bundle.attribute_labels->H.row(test_idx[k]);
    truth.push_back((*bundle.class_labels)[static_cast<size_t>(test_idx[k])]);
  }

  const hap::IncidenceMatrix H = hap::build_attribute_hypergraph(Htr);
  const hap::Laplacian L =
      hap::hypergraph_laplacian(H, hap::heat_kernel_weights(Xtr, H, 1.0));
  const hap::ProjectionMatrix model =
      hap::train(Xtr, hap::shift_labels(H), L, 1.0, 0.1);
  const hap::AttributeScores scores = hap::predict(model, Xte);
  const hap::NormalizedConfidences R = hap::sigmoid_normalize(scores.S, 0.1);

  const hap::ClassTemplateSet T = hap::build_templates_from_samples(Hte, truth);
  const hap::ClassDecision decision = hap::template_classify(R, T);
  const double acc = hap::class_averaged_accuracy(decision.predicted, truth);
  const double auc = hap::attribute_auc_report(scores.S, Hte).mean_auc;

  const double dt = seconds_since(t0);
  report(5, "synthetic zero-shot end-to-end",
         acc >= 0.90 && auc >= 0.95 && dt < 5.0,
         "5 unseen classes: class-averaged accuracy " + fmt(acc) +
             ", mean AUC " + fmt(auc) + ", " + fmt(dt) + " s");
}

// ---------------------------------------------------------------------------
// 6. Metric oracles

void criterion_metric_oracles() {
  std::mt19937_64 rng(6006);
  double worst = 0.0, worst_mono = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const Index k = 2 + static_cast<Index>(rng() % 199);
    Vector labels(k), scores(k);
    bool has0 = false, has1 = false;
    for (Index i = 0; i < k; ++i) {
      labels(i) = static_cast<double>(rng() & 1u);
      (labels(i) == 1.0 ? has1 : has0) = true;
      scores(i) = static_cast<double>(rng() % 40);  // forces tie groups
    }
    if (!has0 || !has1) continue;
    worst = std::max(worst,
                     std::abs(hap::roc_auc(scores, labels) -
                              oracles::brute_force_auc(scores, labels)));
  }

  Vector labels(80), scores(80);
  for (Index i = 0; i < 80; ++i) {
    labels(i) = static_cast<double>(rng() & 1u);
    scores(i) = oracles::random_matrix(rng, 1, 1)(0, 0);
  }
  labels(0) = 0;
  labels(1) = 1;
  const double base = hap::roc_auc(scores, labels);
  for (int t = 0; t < 100; ++t) {
    const double a = 0.1 + static_cast<double>(rng() % 1000) / 100.0;
    const double b = oracles::random_matrix(rng, 1, 1)(0, 0);
    Vector transformed(80);
    for (Index i = 0; i < 80; ++i) {
      const double s = a * scores(i) + b;  // strictly increasing affine core
      transformed(i) = (t % 3 == 0) ? s
                       : (t % 3 == 1) ? s + std::tanh(s)
                                      : s * s * s;
    }
    worst_mono = std::max(
        worst_mono, std::abs(hap::roc_auc(transformed, labels) - base));
  }
  report(6, "metric oracles", worst <= 1e-12 && worst_mono <= 1e-12,
         "brute-force gap " + fmt(worst) + ", monotone-transform gap " +
             fmt(worst_mono));
}

// ---------------------------------------------------------------------------
// 7. Scaled performance

void criterion_performance() {
  std::mt19937_64 rng(7007);
  const Index n = 5994, d = 4096, m = 312, k = 5974;
  const Matrix X = oracles::random_matrix(rng, d, n);
  const hap::IncidenceMatrix H{oracles::random_binary_matrix(rng, n, m, 0.1)};

  auto t0 = Clock::now();
  const double mu = hap::default_bandwidth(X);
  const hap::Laplacian L =
      hap::hypergraph_laplacian(H, hap::heat_kernel_weights(X, H, mu));
  const hap::ProjectionMatrix model =
      hap::train(X, hap::shift_labels(H), L, 1.0, 0.1);
  const double train_s = seconds_since(t0);

  const Matrix Z = oracles::random_matrix(rng, d, k);
  t0 = Clock::now();
  const hap::AttributeScores scores = hap::predict(model, Z);
  const double predict_s = seconds_since(t0);
  const bool sane = scores.S.rows() == k && scores.S.allFinite();

  // prediction cost vs feature dimension: best-of-3 per size
  const std::vector<Index> dims = {512, 1024, 2048, 4096};
  double min_rate = 1e300, max_rate = 0.0;
  for (const Index dd : dims) {
    hap::ProjectionMatrix small;
    small.B = oracles::random_matrix(rng, dd, m);
    const Matrix Zd = oracles::random_matrix(rng, dd, k);
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      t0 = Clock::now();
      (void)hap::predict(small, Zd);
      best = std::min(best, seconds_since(t0));
    }
    const double per_dim = best / static_cast<double>(dd);
    min_rate = std::min(min_rate, per_dim);
    max_rate = std::max(max_rate, per_dim);
  }
  const double spread = max_rate / min_rate;

  report(7, "scaled performance",
         sane && train_s < 300.0 && predict_s < 5.0 && spread <= 2.0,
         "312 predictors on 5994x4096: train " + fmt(train_s) +
             " s, predict 5974 samples " + fmt(predict_s) +
             " s, per-dimension cost spread " + fmt(spread) + "x");
}

// ---------------------------------------------------------------------------
// 8. CLI determinism

void criterion_determinism() {
  CliDir cli;
  bool ok = true;
  std::string detail = "all outputs byte-identical";

  auto pipeline = [&cli](const std::string& tag) {
    const std::string data = cli.p(tag + "/data");
    std::vector<std::string> produced;
    auto must = [&](const std::string& args) {
      if (cli.run(args) != 0)
        throw std::runtime_error("command failed: " + args);
    };
    must("synth --seed 21 --classes 5 --per-class 12 --dim 7 --attributes 9 "
         "--separation 4 --out " + data);
    for (const char* f :
         {"features.csv", "attributes.csv", "signatures.csv",
          "class_labels.csv"})
      produced.push_back(data + "/" + f);

    const std::string common = " --features " + data + "/features.csv" +
                               " --attributes " + data + "/attributes.csv" +
                               " --mu 1 --lambda 1 --eta 0.1";
    must("train --mode cshap_g --gamma 0.1 --class-labels " + data +
         "/class_labels.csv" + common + " --out " + cli.p(tag + "/m.hap"));
    produced.push_back(cli.p(tag + "/m.hap"));
    must("predict --model " + cli.p(tag + "/m.hap") + " --features " + data +
         "/features.csv --out " + cli.p(tag + "/pred"));
    produced.push_back(cli.p(tag + "/pred_scores.csv"));
    produced.push_back(cli.p(tag + "/pred_signs.csv"));

    const std::string zsl_common =
        common + " --class-labels " + data + "/class_labels.csv" +
        " --rho 0.1 --seed 9 --test-classes 3,4";
    must("zsl --mode hap" + zsl_common + " --classifier dap --signatures " +
         data + "/signatures.csv --subsample-frac 0.8 --out " +
         cli.p(tag + "/zsl"));
    produced.push_back(cli.p(tag + "/zsl/report.csv"));
    produced.push_back(cli.p(tag + "/zsl/decisions.csv"));
    must("nshot --mode hap" + zsl_common + " --n-shot 2 --out " +
         cli.p(tag + "/nshot"));
    produced.push_back(cli.p(tag + "/nshot/report.csv"));
    produced.push_back(cli.p(tag + "/nshot/decisions.csv"));

    must("sweep --param eta --grid 0.05,0.5" + common + " --out " +
         cli.p(tag + "/sweep.csv"));
    produced.push_back(cli.p(tag + "/sweep.csv"));
    return produced;
  };

  try {
    const auto a = pipeline("a");
    const auto b = pipeline("b");
    for (size_t i = 0; i < a.size(); ++i) {
      const std::string bytes = slurp(a[i]);
      if (bytes.empty() || bytes != slurp(b[i])) {
        ok = false;
        detail = "mismatch or empty output: " +
                 fs::path(a[i]).lexically_relative(cli.dir).string();
        break;
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(8, "CLI determinism across repeated runs", ok, detail);
}

// ---------------------------------------------------------------------------
// 9. Kernel formula regression: the printed form fails the minimizer
//    oracle, the gradient-derived form passes.

void criterion_kernel_correction() {
  std::mt19937_64 rng(9009);
  double printed_gap = 0.0, corrected_gap = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const Index d = 6, n = 18, m = 3;
    const Matrix X = oracles::random_matrix(rng, d, n);
    hap::IncidenceMatrix H{oracles::random_binary_matrix(rng, n, m)};
    const hap::ShiftedLabels Y = hap::shift_labels(H);
    const hap::Laplacian L =
        hap::hypergraph_laplacian(H, hap::heat_kernel_weights(X, H, 1.0));
    const hap::GramMatrix K = hap::gram(X, {hap::KernelFamily::Gaussian, 4.0});
    const double lambda = 1.0, eta = 0.1;

    const auto [A, C] =
        oracles::kernel_objective_system(K.K, Y.Y, L.L, lambda, eta);
    const Matrix Bstar = oracles::minimize_quadratic(A, C);

    // the formula as printed:
    //   B = (K L K)^T + lambda (K^2 + eta I)^{-1} (lambda K Y)
    Matrix ridge = K.K * K.K;
    ridge.diagonal().array() += eta;
    const Matrix printed =
        (K.K * L.L * K.K).transpose() +
        lambda * ridge.ldlt().solve(lambda * K.K * Y.Y);
    printed_gap =
        std::max(printed_gap, (printed - Bstar).cwiseAbs().maxCoeff());

    const hap::KernelProjection corrected =
        hap::train_kernel(K, Y, L, lambda, eta);
    corrected_gap =
        std::max(corrected_gap, (corrected.B - Bstar).cwiseAbs().maxCoeff());
  }
  report(9, "kernel closed-form regression check",
         corrected_gap <= 1e-6 && printed_gap > 1e-3,
         "derived form gap " + fmt(corrected_gap) +
             ", as-printed form gap " + fmt(printed_gap));
}

}  // namespace

int main() {
  criterion_laplacian_identity();
  criterion_closed_form();
  criterion_reductions();
  criterion_spectra();
  criterion_zero_shot();
  criterion_metric_oracles();
  criterion_performance();
  criterion_determinism();
  criterion_kernel_correction();
  std::cout << (failures == 0 ? "ALL CRITERIA PASSED"
                              : std::to_string(failures) + " CRITERIA FAILED")
            << '\n';
  return failures;
}
