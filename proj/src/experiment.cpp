#include "graphssr/experiment.hpp"

#include "graphssr/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

namespace graphssr {

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
  if (spec.clusters < 1) throw Error("synthetic spec needs at least one cluster");
  if (spec.cluster_size < 2) throw Error("synthetic clusters need at least 2 vertices");
  if (spec.h_max < 0) throw Error("synthetic spec needs h_max >= 0");
  const Index nk = spec.cluster_size;
  const Index n = nk * spec.clusters;
  Clustering clustering =
      Clustering::blocks(std::vector<Index>(static_cast<std::size_t>(spec.clusters), nk));
  Rng rng(spec.seed);

  auto symmetric = [](const Matrix& a) {
    Matrix s = 0.5 * (a + a.transpose());
    s.diagonal().setZero();
    return s;
  };

  Matrix w0 = Matrix::Zero(n, n);
  for (int k = 0; k < spec.clusters; ++k)
    w0.block(k * nk, k * nk, nk, nk) = symmetric(uniform01(nk, nk, rng));

  std::vector<Matrix> corrections;
  for (int h = 1; h <= spec.h_max; ++h) {
    Matrix c = symmetric(uniform01(n, n, rng));
    if (spec.offblock_only)
      for (int k = 0; k < spec.clusters; ++k) c.block(k * nk, k * nk, nk, nk).setZero();
    corrections.push_back(std::move(c));
  }
  return SyntheticData{PerturbationFamily(WeightMatrix(std::move(w0)), std::move(corrections)),
                       std::move(clustering)};
}

WeightMatrix weights_at(const Dataset& data, double eps) {
  return std::visit(
      [eps](const auto& d) -> WeightMatrix {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, FamilyDataset>)
          return assemble_perturbed(d.family, eps);
        else
          return scale_intercluster(d.weights, d.clustering, eps);
      },
      data);
}

const Clustering& dataset_clustering(const Dataset& data) {
  return std::visit([](const auto& d) -> const Clustering& { return d.clustering; }, data);
}

std::uint64_t dataset_hash(const Dataset& data) {
  return std::visit(
      [](const auto& d) -> std::uint64_t {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, FamilyDataset>)
          return d.family.hash();
        else
          return hash_matrix(d.weights.matrix());
      },
      data);
}

double coupled_tau(double eps, double alpha) {
  return std::pow(eps, 1.0 / std::max(2.0, 2.0 * alpha));
}

std::vector<double> log_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw Error("grid step must be positive");
  const double span = std::abs(stop - start) / step;
  const auto count = static_cast<Index>(std::floor(span + 1e-9)) + 1;
  const double dir = stop >= start ? 1.0 : -1.0;
  std::vector<double> out;
  for (Index i = 0; i < count; ++i)
    out.push_back(std::pow(10.0, start + dir * static_cast<double>(i) * step));
  return out;
}

std::vector<double> parse_decades(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw Error("");
    } catch (...) {
      throw Error("bad decade range '" + text + "', expected start:stop:step");
    }
  }
  if (parts.size() != 3) throw Error("bad decade range '" + text + "', expected start:stop:step");
  return log_grid(parts[0], parts[1], parts[2]);
}

SweepSpec default_sweep_spec() {
  SweepSpec s;
  s.eps = log_grid(-1.0, -15.0, 0.25);
  s.gamma = log_grid(-1.0, -7.5, 0.25);
  s.alpha = {0.5, 1.0, 5.0};
  return s;
}

LabelSet cluster_labels(const Clustering& clustering, std::optional<std::uint64_t> seed) {
  std::vector<Index> picks;
  std::optional<Rng> rng;
  if (seed) rng.emplace(*seed);
  for (int k = 0; k < clustering.clusters(); ++k) {
    const std::vector<Index> members = clustering.members(k);
    if (!rng) {
      picks.push_back(members.front());
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
      picks.push_back(members[pick(*rng)]);
    }
  }
  return LabelSet(std::move(picks), clustering.size());
}

SweepProblem sweep_problem(const Dataset& data, double p,
                           std::optional<std::uint64_t> label_seed) {
  const Clustering& clustering = dataset_clustering(data);
  const WeightMatrix w0 = weights_at(data, 0.0);
  w0.require_positive_degrees();
  SetFunctions setfns = set_functions(w0.degrees(), clustering, p);
  LabelSet labels = cluster_labels(clustering, label_seed);
  labels.require_covers(clustering);
  GroundTruth truth(setfns.vectors.transpose());
  return SweepProblem{std::move(labels), std::move(truth), std::move(setfns)};
}

namespace {

struct EpsBatch {
  std::vector<SweepCell> cells;
};

EpsBatch evaluate_eps(const SweepSpec& spec, const Dataset& data, const SweepProblem& prob,
                      double eps) {
  EpsBatch batch;
  auto blank = [&](double alpha, double gamma) {
    SweepCell c;
    c.report.eps = eps;
    c.report.alpha = alpha;
    c.report.gamma = gamma;
    c.report.tau = coupled_tau(eps, alpha);
    return c;
  };

  std::shared_ptr<const Spectrum> spectrum;
  std::string failure;
  try {
    const Laplacian l = degree_and_laplacian(weights_at(data, eps), spec.p);
    spectrum = std::make_shared<const Spectrum>(eigendecompose(l));
  } catch (const std::exception& e) {
    failure = e.what();
  }
  const double sigma_max = spectrum ? spectrum->values.maxCoeff() : 0.0;

  for (double alpha : spec.alpha) {
    std::optional<PriorModel> prior;
    std::string prior_failure = failure;
    if (spectrum) {
      try {
        prior.emplace(spectrum, coupled_tau(eps, alpha), alpha);
      } catch (const std::exception& e) {
        prior_failure = e.what();
      }
    }
    for (double gamma : spec.gamma) {
      SweepCell c = blank(alpha, gamma);
      if (!prior) {
        c.error = prior_failure;
      } else {
        try {
          c.report = contraction_exact(*prior, prob.labels, prob.truth, gamma);
          c.report.eps = eps;
          c.precision_floor = prior->tau() * prior->tau() < 1e-14 * sigma_max;
        } catch (const std::exception& e) {
          c.error = e.what();
        }
      }
      batch.cells.push_back(std::move(c));
    }
  }
  return batch;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, const Dataset& data, Execution exec) {
  if (spec.eps.empty() || spec.gamma.empty() || spec.alpha.empty())
    throw Error("sweep grids must be nonempty");
  for (double a : spec.alpha)
    if (!(a > 0.0)) throw Error("sweep alpha values must be positive");
  const SweepProblem prob = sweep_problem(data, spec.p, spec.label_seed);

  const auto ne = static_cast<Index>(spec.eps.size());
  std::vector<EpsBatch> batches(static_cast<std::size_t>(ne));
  if (exec == Execution::serial) {
    for (Index e = 0; e < ne; ++e)
      batches[static_cast<std::size_t>(e)] = evaluate_eps(spec, data, prob, spec.eps[static_cast<std::size_t>(e)]);
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (Index e = 0; e < ne; ++e)
      batches[static_cast<std::size_t>(e)] = evaluate_eps(spec, data, prob, spec.eps[static_cast<std::size_t>(e)]);
  }

  SweepResult result;
  result.dataset_hash = dataset_hash(data);
  for (auto& b : batches)
    for (auto& c : b.cells) result.cells.push_back(std::move(c));
  std::stable_sort(result.cells.begin(), result.cells.end(), [](const auto& a, const auto& b) {
    return std::tie(a.report.eps, a.report.gamma, a.report.alpha) <
           std::tie(b.report.eps, b.report.gamma, b.report.alpha);
  });
  return result;
}

std::vector<double> distinct_alphas(const std::vector<SweepCell>& cells) {
  std::vector<double> out;
  for (const auto& c : cells) out.push_back(c.report.alpha);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SweepGrid sweep_grid(const std::vector<SweepCell>& cells, double alpha, Quantity q,
                     std::size_t row) {
  std::map<double, std::map<double, const SweepCell*>> table;
  for (const auto& c : cells) {
    if (c.report.alpha != alpha) continue;
    auto& slot = table[c.report.eps][c.report.gamma];
    if (slot) throw Error("non-rectangular grid: duplicate cell");
    slot = &c;
  }
  if (table.empty()) throw Error("no sweep cells for the requested alpha");

  SweepGrid g;
  for (const auto& [e, cols] : table) g.eps.push_back(e);
  for (const auto& [gm, c] : table.begin()->second) g.gamma.push_back(gm);
  g.values.resize(static_cast<Index>(g.eps.size()), static_cast<Index>(g.gamma.size()));
  Index i = 0;
  for (const auto& [e, cols] : table) {
    if (cols.size() != g.gamma.size()) throw Error("non-rectangular grid: ragged gamma axis");
    Index j = 0;
    for (const auto& [gm, cell] : cols) {
      if (gm != g.gamma[static_cast<std::size_t>(j)])
        throw Error("non-rectangular grid: gamma values differ between rows");
      if (!cell->error.empty()) throw Error("sweep cell failed: " + cell->error);
      const ContractionReport& r = cell->report;
      double v = 0.0;
      switch (q) {
        case Quantity::total: v = r.total; break;
        case Quantity::trace: v = r.trace_term; break;
        case Quantity::variance: v = r.variance_term; break;
        case Quantity::bias: v = r.bias_term; break;
        case Quantity::row_bias:
          if (row >= r.row_bias.size()) throw Error("sweep cell lacks the requested bias row");
          v = r.row_bias[row];
          break;
      }
      g.values(i, j) = v;
      ++j;
    }
    g.tau.push_back(cols.begin()->second->report.tau);
    ++i;
  }
  return g;
}

std::vector<McCheckRow> mc_check(const SweepSpec& spec, const Dataset& data, Index cells,
                                 Index samples, std::uint64_t seed) {
  std::vector<McCheckRow> out;
  if (cells <= 0) return out;
  const SweepProblem prob = sweep_problem(data, spec.p, spec.label_seed);
  const Index na = static_cast<Index>(spec.alpha.size());
  const Index ng = static_cast<Index>(spec.gamma.size());
  const Index total = static_cast<Index>(spec.eps.size()) * na * ng;
  const Index stride = std::max<Index>(1, total / cells);

  for (Index idx = stride / 2; idx < total; idx += stride) {
    const auto e = static_cast<std::size_t>(idx / (na * ng));
    const auto a = static_cast<std::size_t>((idx / ng) % na);
    const auto g = static_cast<std::size_t>(idx % ng);
    McCheckRow row;
    row.eps = spec.eps[e];
    row.alpha = spec.alpha[a];
    row.gamma = spec.gamma[g];
    const Laplacian l = degree_and_laplacian(weights_at(data, row.eps), spec.p);
    const PriorModel prior(std::make_shared<const Spectrum>(eigendecompose(l)),
                           coupled_tau(row.eps, row.alpha), row.alpha);
    row.exact = contraction_exact(prior, prob.labels, prob.truth, row.gamma).total;
    row.estimate = contraction_monte_carlo(prior, prob.labels, prob.truth, row.gamma, samples,
                                           derive_seed(seed, static_cast<std::uint64_t>(idx)));
    out.push_back(row);
  }
  return out;
}

}  // namespace graphssr
