#pragma once

#include "graphssr/contraction.hpp"
#include "graphssr/graph.hpp"
#include "graphssr/inference.hpp"
#include "graphssr/spectral.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace graphssr {

struct SyntheticSpec {
  int clusters = 3;
  Index cluster_size = 100;
  int h_max = 3;
  std::uint64_t seed = 1;
  bool offblock_only = false;  // zero the corrections inside diagonal blocks
};

struct SyntheticData {
  PerturbationFamily family;
  Clustering clustering;
};

SyntheticData generate_synthetic(const SyntheticSpec& spec);

// A perturbation family W_eps, or a fixed graph whose inter-cluster edges get scaled by eps.
struct FamilyDataset {
  PerturbationFamily family;
  Clustering clustering;
};
struct ScaledGraphDataset {
  WeightMatrix weights;
  Clustering clustering;
};
using Dataset = std::variant<FamilyDataset, ScaledGraphDataset>;

WeightMatrix weights_at(const Dataset& data, double eps);
const Clustering& dataset_clustering(const Dataset& data);
std::uint64_t dataset_hash(const Dataset& data);

// tau = eps^(1 / max(2, 2 alpha))
double coupled_tau(double eps, double alpha);

// 10^x for x = start, start +- step, ..., stop (direction taken from start/stop).
std::vector<double> log_grid(double start, double stop, double step);
// "start:stop:step" in decades.
std::vector<double> parse_decades(const std::string& text);

struct SweepSpec {
  std::vector<double> eps;
  std::vector<double> gamma;
  std::vector<double> alpha;
  double p = 0.0;
  std::optional<std::uint64_t> label_seed;  // unset: lowest-index vertex per cluster
};

SweepSpec default_sweep_spec();

// One labeled vertex per cluster.
LabelSet cluster_labels(const Clustering& clustering, std::optional<std::uint64_t> seed);

struct SweepProblem {
  LabelSet labels;
  GroundTruth truth;  // rows chi_k built from the eps = 0 degrees
  SetFunctions setfns;
};

SweepProblem sweep_problem(const Dataset& data, double p,
                           std::optional<std::uint64_t> label_seed);

struct SweepCell {
  ContractionReport report;
  bool precision_floor = false;  // tau^2 < 1e-14 sigma_max
  std::string error;
};

struct SweepResult {
  std::vector<SweepCell> cells;  // sorted by (eps, gamma, alpha)
  std::uint64_t dataset_hash = 0;
};

SweepResult run_sweep(const SweepSpec& spec, const Dataset& data,
                      Execution exec = Execution::parallel);

enum class Quantity { total, trace, variance, bias, row_bias };

// Rectangular eps x gamma table for one alpha; throws on missing or failed cells.
SweepGrid sweep_grid(const std::vector<SweepCell>& cells, double alpha,
                     Quantity q = Quantity::total, std::size_t row = 0);

std::vector<double> distinct_alphas(const std::vector<SweepCell>& cells);

struct McCheckRow {
  double eps = 0.0;
  double gamma = 0.0;
  double alpha = 0.0;
  double exact = 0.0;
  McEstimate estimate;
};

// Re-evaluates about `cells` evenly spaced sweep cells by Rao-Blackwellized Monte Carlo.
std::vector<McCheckRow> mc_check(const SweepSpec& spec, const Dataset& data, Index cells,
                                 Index samples, std::uint64_t seed);

}  // namespace graphssr
