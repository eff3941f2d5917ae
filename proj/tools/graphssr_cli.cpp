// graphssr command line: dataset generation, contraction sweeps, slope surfaces, checks.

#include "graphssr/contraction.hpp"
#include "graphssr/csvio.hpp"
#include "graphssr/experiment.hpp"
#include "graphssr/idx.hpp"
#include "graphssr/svg.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace graphssr;

namespace {

struct DatasetOptions {
  int clusters = 3;
  Index size = 100;
  int hmax = 3;
  std::uint64_t seed = 1;
  bool offblock_only = false;
  std::string graph;
  std::string clustering;
};

void add_dataset_options(CLI::App* app, DatasetOptions& o) {
  app->add_option("--clusters", o.clusters, "Synthetic cluster count")->capture_default_str();
  app->add_option("--size", o.size, "Synthetic cluster size")->capture_default_str();
  app->add_option("--hmax", o.hmax, "Synthetic expansion order")->capture_default_str();
  app->add_option("--seed", o.seed, "Master seed (synthetic family and Monte Carlo)")
      ->capture_default_str();
  app->add_flag("--offblock-only", o.offblock_only,
                "Zero the synthetic corrections inside diagonal blocks");
  app->add_option("--graph", o.graph,
                  "Weight matrix CSV (dense, or edge list with i,j,weight header); its "
                  "inter-cluster edges are scaled by eps");
  app->add_option("--clustering", o.clustering, "Clustering CSV for --graph");
}

WeightMatrix read_graph(const fs::path& path) {
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  if (first.rfind("i,j,weight", 0) == 0) return csv::read_edge_list(path);
  return WeightMatrix(csv::read_matrix(path));
}

Dataset load_dataset(const DatasetOptions& o) {
  if (!o.graph.empty()) {
    if (o.clustering.empty()) throw Error("--graph needs --clustering");
    return ScaledGraphDataset{read_graph(o.graph), csv::read_clustering(o.clustering)};
  }
  SyntheticSpec spec;
  spec.clusters = o.clusters;
  spec.cluster_size = o.size;
  spec.h_max = o.hmax;
  spec.seed = o.seed;
  spec.offblock_only = o.offblock_only;
  SyntheticData d = generate_synthetic(spec);
  return FamilyDataset{std::move(d.family), std::move(d.clustering)};
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::ostringstream o;
  o << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
  return o.str();
}

std::string hex(std::uint64_t v) {
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << v;
  return o.str();
}

int cmd_synth(const DatasetOptions& o, const std::string& out_dir) {
  SyntheticSpec spec;
  spec.clusters = o.clusters;
  spec.cluster_size = o.size;
  spec.h_max = o.hmax;
  spec.seed = o.seed;
  spec.offblock_only = o.offblock_only;
  const SyntheticData d = generate_synthetic(spec);
  fs::create_directories(out_dir);
  csv::write_matrix(fs::path(out_dir) / "W0.csv", d.family.base().matrix());
  for (int h = 0; h < d.family.order(); ++h)
    csv::write_matrix(fs::path(out_dir) / ("W" + std::to_string(h + 1) + ".csv"),
                      d.family.corrections()[static_cast<std::size_t>(h)]);
  csv::write_clustering(fs::path(out_dir) / "clustering.csv", d.clustering);
  std::cout << "family " << hex(d.family.hash()) << " N=" << d.family.size()
            << " K=" << d.clustering.clusters() << " h_max=" << d.family.order() << '\n';
  return 0;
}

struct MnistArgs {
  std::string images, labels, out = "mnist_out";
  std::vector<int> digits{1, 4, 7};
  Index per_digit = 100;
  int knn = 15;
  std::uint64_t seed = 1;
  double p = 0.0;
  std::optional<std::uint64_t> label_seed;
};

int cmd_mnist(const MnistArgs& a) {
  const MnistSubset subset = load_mnist(a.images, a.labels);
  MnistOptions opt;
  opt.digits = a.digits;
  opt.per_digit = a.per_digit;
  opt.k_nn = a.knn;
  opt.seed = a.seed;
  opt.p = a.p;
  opt.label_seed = a.label_seed;
  const MnistExperiment e = build_mnist_experiment(subset, opt);
  const fs::path dir(a.out);
  fs::create_directories(dir);
  csv::write_matrix(dir / "weights.csv", e.weights.matrix());
  csv::write_clustering(dir / "clustering.csv", e.clustering);
  std::vector<Index> all(static_cast<std::size_t>(e.weights.size()));
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<Index>(v);
  csv::write_vertex_matrix(dir / "truth.csv", e.truth.values(), all);
  {
    std::ofstream out(dir / "labels.csv");
    out << "vertex\n";
    for (Index v : e.labels.indices()) out << v << '\n';
  }
  {
    std::ofstream out(dir / "source.csv");
    out << "vertex,image_index\n";
    for (std::size_t v = 0; v < e.source.size(); ++v) out << v << ',' << e.source[v] << '\n';
  }
  std::cout << "selected " << e.weights.size() << " images, K=" << e.clustering.clusters()
            << ", weights hash " << hex(hash_matrix(e.weights.matrix())) << '\n';
  return 0;
}

struct SweepArgs {
  std::vector<double> alpha{0.5, 1.0, 5.0};
  std::string eps_decades = "-1:-15:0.25";
  std::string gamma_decades = "-1:-7.5:0.25";
  double p = 0.0;
  std::string out = "sweep_out";
  Index mc_samples = 0;
  Index mc_cells = 8;
  bool no_meta = false;
  bool serial = false;
  std::optional<std::uint64_t> label_seed;
};

int cmd_sweep(const DatasetOptions& o, const SweepArgs& a) {
  const Dataset data = load_dataset(o);
  SweepSpec spec;
  spec.eps = parse_decades(a.eps_decades);
  spec.gamma = parse_decades(a.gamma_decades);
  spec.alpha = a.alpha;
  spec.p = a.p;
  spec.label_seed = a.label_seed;

  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult r = run_sweep(spec, data, a.serial ? Execution::serial : Execution::parallel);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const fs::path dir(a.out);
  fs::create_directories(dir);
  std::string meta;
  if (!a.no_meta) {
    std::ostringstream m;
    m << "graphssr sweep generated " << timestamp() << " seed " << o.seed << " p "
      << csv::format(a.p) << " dataset " << hex(r.dataset_hash);
    meta = m.str();
  }
  {
    std::ofstream out(dir / "sweep.csv");
    if (!out) throw Error("cannot write " + (dir / "sweep.csv").string());
    csv::write_sweep(out, r.cells, meta);
  }
  Index errors = 0, floor = 0;
  for (const auto& c : r.cells) {
    errors += c.error.empty() ? 0 : 1;
    floor += c.precision_floor ? 1 : 0;
  }
  std::cerr << r.cells.size() << " cells in " << std::fixed << std::setprecision(2) << secs
            << " s, " << errors << " failed, " << floor
            << " below the tau^2 precision floor; dataset " << hex(r.dataset_hash) << '\n';

  if (a.mc_samples > 0) {
    const auto rows = mc_check(spec, data, a.mc_cells, a.mc_samples, o.seed);
    csv::write_mc_check(dir / "mc_check.csv", rows);
    int outside = 0;
    for (const auto& row : rows)
      if (std::abs(row.exact - row.estimate.mean) > 3.0 * row.estimate.std_error) ++outside;
    std::cerr << "mc-check: " << rows.size() << " cells, " << outside
              << " outside 3 standard errors\n";
  }
  return errors == 0 ? 0 : 3;
}

std::string alpha_tag(double alpha) {
  std::string s = csv::format(alpha);
  for (char& c : s)
    if (c == '.') c = 'p';
  return s;
}

int cmd_slopes(const std::string& in_path, const std::string& out_dir, bool svg) {
  std::ifstream in(in_path);
  if (!in) throw Error("cannot read " + in_path);
  const std::vector<SweepCell> cells = csv::read_sweep(in);
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  std::cout << "alpha,c_gamma_plateau,c_gamma_cells,c_eps_plateau,c_eps_cells\n";
  for (double alpha : distinct_alphas(cells)) {
    const SweepGrid grid = sweep_grid(cells, alpha);
    const SlopeSurface ce = slope_surface(grid, Axis::eps);
    const SlopeSurface cg = slope_surface(grid, Axis::gamma);
    const std::string tag = alpha_tag(alpha);
    csv::write_slopes(dir / ("c_eps_alpha" + tag + ".csv"), ce);
    csv::write_slopes(dir / ("c_gamma_alpha" + tag + ".csv"), cg);
    if (svg) {
      write_heatmap_svg(dir / ("c_eps_alpha" + tag + ".svg"), ce, alpha,
                        "c_eps, alpha = " + csv::format(alpha));
      write_heatmap_svg(dir / ("c_gamma_alpha" + tag + ".svg"), cg, alpha,
                        "c_gamma, alpha = " + csv::format(alpha));
    }
    const Plateau pg = gamma_plateau(cg, alpha);
    const Plateau pe = eps_plateau(ce, alpha);
    std::cout << csv::format(alpha) << ',' << csv::format(pg.median) << ',' << pg.cells << ','
              << csv::format(pe.median) << ',' << pe.cells << '\n';
  }
  return 0;
}

struct Checker {
  int failures = 0;
  void operator()(bool ok, const std::string& what) {
    std::cout << (ok ? "PASS  " : "FAIL  ") << what << '\n';
    failures += ok ? 0 : 1;
  }
};

int cmd_verify(const DatasetOptions& o, double p, const std::vector<double>& eps_list) {
  Checker check;
  const Dataset data = load_dataset(o);
  const Clustering& clustering = dataset_clustering(data);
  const WeightMatrix w0 = weights_at(data, 0.0);
  const int k = clustering.clusters();

  try {
    const AssumptionReport rep = check_assumptions(w0, clustering, p);
    check(true, "W0 block-diagonal with connected blocks, theta = " + csv::format(rep.theta));
  } catch (const std::exception& e) {
    check(false, std::string("cluster assumptions: ") + e.what());
    return 1;
  }

  const SweepProblem prob = sweep_problem(data, p, std::nullopt);
  check(true, "one label per cluster");

  const Laplacian l0 = degree_and_laplacian(w0, p);
  const Spectrum s0 = eigendecompose(l0);
  const double scale = s0.values.cwiseAbs().maxCoeff();
  int zeros = 0;
  for (Index j = 0; j < s0.size(); ++j) zeros += s0.values(j) <= 1e-8 * scale ? 1 : 0;
  check(zeros == k, "L0 has " + std::to_string(zeros) + " zero eigenvalues for K = " +
                        std::to_string(k));
  const double kernel_res = (l0.matrix * prob.setfns.vectors).colwise().norm().maxCoeff();
  check(kernel_res <= 1e-8, "set functions lie in ker L0 (max |L0 chi| = " +
                                csv::format(kernel_res) + ")");

  const auto* fam = std::get_if<FamilyDataset>(&data);
  std::vector<double> norms;
  if (fam) norms = expansion_norms(fam->family, p, 12);

  for (double eps : eps_list) {
    const std::string at = " at eps = " + csv::format(eps);
    try {
      const WeightMatrix w = weights_at(data, eps);
      const Laplacian l = degree_and_laplacian(w, p);
      const Spectrum s = eigendecompose(l);
      check(true, "W_eps symmetric, nonnegative, L_eps PSD" + at);
      std::optional<PerturbationBound> bound;
      if (fam) bound = PerturbationBound{s0.values(k), eps, norms};
      const PerturbReport pr = perturbation_diagnostics(s0, s, k, prob.setfns, bound);
      if (pr.lower_bound)
        check(pr.sigma_next >= *pr.lower_bound,
              "sigma_{K+1} = " + csv::format(pr.sigma_next) + " >= bound " +
                  csv::format(*pr.lower_bound) + at);
      const double alpha = 1.0;
      const PriorModel prior(std::make_shared<const Spectrum>(s), coupled_tau(eps, alpha), alpha);
      for (double gamma : {1e-1, 1e-3, 1e-5}) {
        const PosteriorCovariance cov(prior, prob.labels, gamma);
        const ContractionReport r = contraction_exact(cov, prob.truth);
        const double slack = r.trace_term - r.variance_term;
        check(slack >= -1e-10, "variance term <= trace term" + at + ", gamma = " +
                                   csv::format(gamma));
      }
    } catch (const std::exception& e) {
      check(false, e.what() + at);
    }
  }
  std::cout << (check.failures == 0 ? "all checks passed" : "some checks failed") << '\n';
  return check.failures == 0 ? 0 : 1;
}

void apply_thread_env() {
  if (const char* env = std::getenv("GRAPHSSR_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_env();
  CLI::App app{"Graph-based Bayesian semi-supervised regression and posterior contraction"};
  app.require_subcommand(1);

  DatasetOptions synth_opt;
  std::string synth_out = "synth_out";
  auto* synth = app.add_subcommand("synth", "Sample a synthetic perturbation family");
  add_dataset_options(synth, synth_opt);
  synth->add_option("--out", synth_out, "Output directory")->capture_default_str();

  MnistArgs mnist_args;
  auto* mnist = app.add_subcommand("mnist", "Build the MNIST graph experiment from IDX files");
  mnist->add_option("--images", mnist_args.images, "IDX image file (uncompressed)")->required();
  mnist->add_option("--labels", mnist_args.labels, "IDX label file (uncompressed)")->required();
  mnist->add_option("--digits", mnist_args.digits, "Digits to keep")->delimiter(',');
  mnist->add_option("--per-digit", mnist_args.per_digit, "Images per digit")->capture_default_str();
  mnist->add_option("--knn", mnist_args.knn, "Neighbor rank for the bandwidth")->capture_default_str();
  mnist->add_option("--seed", mnist_args.seed, "Sampling seed")->capture_default_str();
  mnist->add_option("--p", mnist_args.p, "Normalization used for the ground truth")
      ->capture_default_str();
  mnist->add_option("--label-seed", mnist_args.label_seed, "Random label vertex per cluster");
  mnist->add_option("--out", mnist_args.out, "Output directory")->capture_default_str();

  DatasetOptions sweep_opt;
  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Evaluate the contraction functional on a grid");
  add_dataset_options(sweep, sweep_opt);
  sweep->add_option("--alpha", sweep_args.alpha, "Regularity exponents")->delimiter(',');
  sweep->add_option("--eps-decades", sweep_args.eps_decades, "log10 eps start:stop:step")
      ->capture_default_str();
  sweep->add_option("--gamma-decades", sweep_args.gamma_decades, "log10 gamma start:stop:step")
      ->capture_default_str();
  sweep->add_option("--p", sweep_args.p, "Laplacian normalization exponent")->capture_default_str();
  sweep->add_option("--out", sweep_args.out, "Output directory")->capture_default_str();
  sweep->add_option("--mc-check", sweep_args.mc_samples,
                    "Cross-check a subsample of cells by Monte Carlo with this many samples");
  sweep->add_option("--mc-cells", sweep_args.mc_cells, "Cells in the Monte Carlo cross-check")
      ->capture_default_str();
  sweep->add_flag("--no-meta", sweep_args.no_meta, "Omit the timestamped comment line");
  sweep->add_flag("--serial", sweep_args.serial, "Use the serial reference loop");
  sweep->add_option("--label-seed", sweep_args.label_seed, "Random label vertex per cluster");

  std::string slopes_in, slopes_out = "slopes_out";
  bool slopes_svg = false;
  auto* slopes = app.add_subcommand("slopes", "Slope surfaces and plateaus from a sweep CSV");
  slopes->add_option("--in", slopes_in, "Sweep CSV")->required();
  slopes->add_option("--out", slopes_out, "Output directory")->capture_default_str();
  slopes->add_flag("--svg", slopes_svg, "Also write SVG heatmaps");

  DatasetOptions verify_opt;
  double verify_p = 0.0;
  std::vector<double> verify_eps{1e-2, 1e-4, 1e-6};
  auto* verify = app.add_subcommand("verify", "Assumption checks and invariants for a dataset");
  add_dataset_options(verify, verify_opt);
  verify->add_option("--p", verify_p, "Laplacian normalization exponent")->capture_default_str();
  verify->add_option("--eps", verify_eps, "Perturbation sizes to test")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) return cmd_synth(synth_opt, synth_out);
    if (*mnist) return cmd_mnist(mnist_args);
    if (*sweep) return cmd_sweep(sweep_opt, sweep_args);
    if (*slopes) return cmd_slopes(slopes_in, slopes_out, slopes_svg);
    if (*verify) return cmd_verify(verify_opt, verify_p, verify_eps);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
