#pragma once

#include "graphssr/inference.hpp"
#include "graphssr/spectral.hpp"
#include "graphssr/types.hpp"

#include <limits>
#include <optional>
#include <vector>

namespace graphssr {

struct ContractionReport {
  double trace_term = 0.0;     // M Tr(C*)
  double variance_term = 0.0;  // (M / gamma^2) Tr(C* B C*)
  double bias_term = 0.0;      // sum_m |(1/gamma^2) C* B u_m - u_m|^2
  double total = 0.0;
  double gamma = 0.0;
  double alpha = 0.0;
  double tau = 0.0;
  double eps = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> row_bias;  // squared bias norm per row
};

ContractionReport contraction_exact(const PriorModel& prior, const LabelSet& labels,
                                    const GroundTruth& truth, double gamma);
ContractionReport contraction_exact(const PosteriorCovariance& cov, const GroundTruth& truth);

enum class McVariant { full, rao };

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  Index samples = 0;
};

// Nested Monte Carlo over Y ~ label model and U ~ posterior (full), or with the inner
// expectation evaluated exactly per Y (rao). Sample s uses derive_seed(seed, s).
McEstimate contraction_monte_carlo(const PriorModel& prior, const LabelSet& labels,
                                   const GroundTruth& truth, double gamma, Index samples,
                                   std::uint64_t seed, McVariant variant = McVariant::rao,
                                   Execution exec = Execution::parallel);

struct TermDiagnostics {
  double trace = 0.0;           // Tr(C*)
  double variance_trace = 0.0;  // Tr(C* B C*) / gamma^2
  std::vector<double> bias_norms;
};

TermDiagnostics term_diagnostics(const PriorModel& prior, const LabelSet& labels,
                                 const GroundTruth& truth, double gamma);

double tail_bound(const ContractionReport& report, double delta);

// Values on an eps x gamma grid; tau holds the coupled tau for each eps row.
struct SweepGrid {
  std::vector<double> eps;
  std::vector<double> gamma;
  std::vector<double> tau;
  Matrix values;  // rows follow eps, columns follow gamma
};

enum class Axis { eps, gamma, tau };

struct SlopeSurface {
  Axis axis = Axis::gamma;
  std::vector<double> eps;
  std::vector<double> gamma;
  Matrix slope;
};

// d log10(value) / d log10(axis): central differences inside, one-sided at the ends.
SlopeSurface slope_surface(const SweepGrid& grid, Axis axis);

// 2 log10(gamma) - min(1, alpha) log10(eps): positive where the gamma term dominates.
double regime_indicator(double eps, double gamma, double alpha);

struct Plateau {
  double median = std::numeric_limits<double>::quiet_NaN();
  Index cells = 0;
};

// Median gamma-slope over the smallest decade of eps, restricted to cells at least
// `margin` decades inside the gamma-dominated regime.
Plateau gamma_plateau(const SlopeSurface& s, double alpha, double margin = 1.0);
// Median eps- or tau-slope over the smallest decade of gamma, at least `margin`
// decades inside the eps-dominated regime.
Plateau eps_plateau(const SlopeSurface& s, double alpha, double margin = 1.0);

struct TransitionPoint {
  double gamma = 0.0;
  double predicted_log_eps = 0.0;
  double observed_log_eps = std::numeric_limits<double>::quiet_NaN();
};

// For each gamma column whose predicted transition eps = gamma^(2/min(1,alpha)) lies at
// least `inset` decades inside the eps range, locates where the eps-slope first reaches
// half of `plateau` when scanning up from the smallest eps.
std::vector<TransitionPoint> transition_points(const SlopeSurface& eps_slopes, double alpha,
                                               double plateau, double inset = 2.0);

}  // namespace graphssr
