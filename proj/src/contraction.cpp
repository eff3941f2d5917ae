#include "graphssr/contraction.hpp"

#include "graphssr/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace graphssr {

ContractionReport contraction_exact(const PosteriorCovariance& cov, const GroundTruth& truth) {
  if (truth.vertices() != cov.size()) throw Error("contraction: truth has the wrong width");
  const auto m = static_cast<double>(truth.rows());
  ContractionReport r;
  r.gamma = cov.gamma();
  r.alpha = cov.prior().alpha();
  r.tau = cov.prior().tau();
  r.trace_term = m * cov.trace();
  r.variance_term = m * cov.variance_trace();
  for (Index row = 0; row < truth.rows(); ++row) {
    const double b = cov.bias(truth.values().row(row).transpose()).squaredNorm();
    r.row_bias.push_back(b);
    r.bias_term += b;
  }
  r.total = r.trace_term + r.variance_term + r.bias_term;
  return r;
}

ContractionReport contraction_exact(const PriorModel& prior, const LabelSet& labels,
                                    const GroundTruth& truth, double gamma) {
  return contraction_exact(PosteriorCovariance(prior, labels, gamma), truth);
}

McEstimate contraction_monte_carlo(const PriorModel& prior, const LabelSet& labels,
                                   const GroundTruth& truth, double gamma, Index samples,
                                   std::uint64_t seed, McVariant variant, Execution exec) {
  if (samples < 2) throw Error("Monte Carlo needs at least 2 samples");
  const PosteriorCovariance cov(prior, labels, gamma);
  const Matrix& u = truth.values();
  const Matrix u_lab = labels.gather_columns(u);
  const double inner = static_cast<double>(u.rows()) * cov.trace();
  const Matrix root = variant == McVariant::full ? posterior_sqrt(cov) : Matrix();

  std::vector<double> values(static_cast<std::size_t>(samples));
  auto draw = [&](Index s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    const Matrix y = u_lab + gamma * standard_normal(u.rows(), labels.count(), rng);
    const Matrix mean = cov.mean(y);
    if (variant == McVariant::rao) return inner + (mean - u).squaredNorm();
    const Matrix draw_u = mean + standard_normal(u.rows(), u.cols(), rng) * root;
    return (draw_u - u).squaredNorm();
  };
  if (exec == Execution::serial) {
    for (Index s = 0; s < samples; ++s) values[static_cast<std::size_t>(s)] = draw(s);
  } else {
#pragma omp parallel for schedule(static)
    for (Index s = 0; s < samples; ++s) values[static_cast<std::size_t>(s)] = draw(s);
  }

  const double n = static_cast<double>(samples);
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return McEstimate{mean, std::sqrt(ss / (n - 1.0) / n), samples};
}

TermDiagnostics term_diagnostics(const PriorModel& prior, const LabelSet& labels,
                                 const GroundTruth& truth, double gamma) {
  const PosteriorCovariance cov(prior, labels, gamma);
  TermDiagnostics d;
  d.trace = cov.trace();
  d.variance_trace = cov.variance_trace();
  for (Index row = 0; row < truth.rows(); ++row)
    d.bias_norms.push_back(cov.bias(truth.values().row(row).transpose()).norm());
  return d;
}

double tail_bound(const ContractionReport& report, double delta) {
  if (!(delta > 0.0)) throw Error("tail bound needs delta > 0");
  return report.total / (delta * delta);
}

namespace {

void require_monotone(const std::vector<double>& v, const char* name) {
  if (v.size() < 2) return;
  const bool up = v[1] > v[0];
  for (std::size_t i = 1; i < v.size(); ++i)
    if (up ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1]))
      throw Error(std::string("slope grid axis not strictly monotone: ") + name);
}

double derivative(const std::vector<double>& x, const std::vector<double>& f, std::size_t i) {
  const std::size_t n = x.size();
  if (i == 0) return (f[1] - f[0]) / (x[1] - x[0]);
  if (i == n - 1) return (f[n - 1] - f[n - 2]) / (x[n - 1] - x[n - 2]);
  return (f[i + 1] - f[i - 1]) / (x[i + 1] - x[i - 1]);
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t h = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(h), v.end());
  if (v.size() % 2 == 1) return v[h];
  const double hi = v[h];
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(h));
  return 0.5 * (lo + hi);
}

}  // namespace

SlopeSurface slope_surface(const SweepGrid& grid, Axis axis) {
  const std::size_t ne = grid.eps.size();
  const std::size_t ng = grid.gamma.size();
  if (grid.values.rows() != static_cast<Index>(ne) || grid.values.cols() != static_cast<Index>(ng))
    throw Error("non-rectangular grid: value table does not match the axes");
  require_monotone(grid.eps, "eps");
  require_monotone(grid.gamma, "gamma");
  if (axis == Axis::tau) {
    if (grid.tau.size() != ne) throw Error("tau axis missing from grid");
    require_monotone(grid.tau, "tau");
  }
  const std::size_t along = axis == Axis::gamma ? ng : ne;
  if (along < 3) throw Error("slope grid needs at least 3 points along the differentiated axis");

  Matrix logv(static_cast<Index>(ne), static_cast<Index>(ng));
  for (Index i = 0; i < logv.rows(); ++i) {
    for (Index j = 0; j < logv.cols(); ++j) {
      const double v = grid.values(i, j);
      if (!(v > 0.0) || !std::isfinite(v))
        throw Error("slope grid needs positive finite values at every cell");
      logv(i, j) = std::log10(v);
    }
  }
  auto logs = [](const std::vector<double>& a) {
    std::vector<double> out;
    for (double x : a) out.push_back(std::log10(x));
    return out;
  };

  SlopeSurface s;
  s.axis = axis;
  s.eps = grid.eps;
  s.gamma = grid.gamma;
  s.slope.resize(static_cast<Index>(ne), static_cast<Index>(ng));
  if (axis == Axis::gamma) {
    const std::vector<double> x = logs(grid.gamma);
    for (std::size_t i = 0; i < ne; ++i) {
      std::vector<double> f(ng);
      for (std::size_t j = 0; j < ng; ++j) f[j] = logv(static_cast<Index>(i), static_cast<Index>(j));
      for (std::size_t j = 0; j < ng; ++j)
        s.slope(static_cast<Index>(i), static_cast<Index>(j)) = derivative(x, f, j);
    }
  } else {
    const std::vector<double> x = logs(axis == Axis::eps ? grid.eps : grid.tau);
    for (std::size_t j = 0; j < ng; ++j) {
      std::vector<double> f(ne);
      for (std::size_t i = 0; i < ne; ++i) f[i] = logv(static_cast<Index>(i), static_cast<Index>(j));
      for (std::size_t i = 0; i < ne; ++i)
        s.slope(static_cast<Index>(i), static_cast<Index>(j)) = derivative(x, f, i);
    }
  }
  return s;
}

double regime_indicator(double eps, double gamma, double alpha) {
  return 2.0 * std::log10(gamma) - std::min(1.0, alpha) * std::log10(eps);
}

namespace {

double min_log(const std::vector<double>& v) {
  double m = std::numeric_limits<double>::infinity();
  for (double x : v) m = std::min(m, std::log10(x));
  return m;
}

constexpr double kDecadeSlack = 1e-9;

}  // namespace

Plateau gamma_plateau(const SlopeSurface& s, double alpha, double margin) {
  const double floor = min_log(s.eps) + 1.0 + kDecadeSlack;
  std::vector<double> picked;
  for (std::size_t i = 0; i < s.eps.size(); ++i) {
    if (std::log10(s.eps[i]) > floor) continue;
    for (std::size_t j = 0; j < s.gamma.size(); ++j)
      if (regime_indicator(s.eps[i], s.gamma[j], alpha) >= margin - kDecadeSlack)
        picked.push_back(s.slope(static_cast<Index>(i), static_cast<Index>(j)));
  }
  return Plateau{median(picked), static_cast<Index>(picked.size())};
}

Plateau eps_plateau(const SlopeSurface& s, double alpha, double margin) {
  const double floor = min_log(s.gamma) + 1.0 + kDecadeSlack;
  std::vector<double> picked;
  for (std::size_t j = 0; j < s.gamma.size(); ++j) {
    if (std::log10(s.gamma[j]) > floor) continue;
    for (std::size_t i = 0; i < s.eps.size(); ++i)
      if (regime_indicator(s.eps[i], s.gamma[j], alpha) <= -margin + kDecadeSlack)
        picked.push_back(s.slope(static_cast<Index>(i), static_cast<Index>(j)));
  }
  return Plateau{median(picked), static_cast<Index>(picked.size())};
}

std::vector<TransitionPoint> transition_points(const SlopeSurface& s, double alpha,
                                               double plateau, double inset) {
  std::vector<std::size_t> order(s.eps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return s.eps[a] < s.eps[b]; });
  const double lo = std::log10(s.eps[order.front()]);
  const double hi = std::log10(s.eps[order.back()]);
  const double half = 0.5 * plateau;

  std::vector<TransitionPoint> out;
  for (std::size_t j = 0; j < s.gamma.size(); ++j) {
    TransitionPoint tp;
    tp.gamma = s.gamma[j];
    tp.predicted_log_eps = 2.0 * std::log10(s.gamma[j]) / std::min(1.0, alpha);
    if (tp.predicted_log_eps < lo + inset || tp.predicted_log_eps > hi - inset) continue;
    for (std::size_t q = 0; q < order.size(); ++q) {
      const double c = s.slope(static_cast<Index>(order[q]), static_cast<Index>(j));
      if (c < half) continue;
      const double x1 = std::log10(s.eps[order[q]]);
      if (q == 0) {
        tp.observed_log_eps = x1;
      } else {
        const double c0 = s.slope(static_cast<Index>(order[q - 1]), static_cast<Index>(j));
        const double x0 = std::log10(s.eps[order[q - 1]]);
        tp.observed_log_eps = x0 + (half - c0) / (c - c0) * (x1 - x0);
      }
      break;
    }
    out.push_back(tp);
  }
  return out;
}

}  // namespace graphssr
