#pragma once

#include "graphssr/graph.hpp"
#include "graphssr/spectral.hpp"
#include "graphssr/types.hpp"

#include <vector>

namespace graphssr {

// Labeled vertex ids Z'. The selection operator H is only ever applied as a gather.
class LabelSet {
 public:
  LabelSet(std::vector<Index> indices, Index vertices);
  const std::vector<Index>& indices() const { return indices_; }
  Index count() const { return static_cast<Index>(indices_.size()); }
  Index vertices() const { return vertices_; }
  // Throws AssumptionError if some cluster carries no label.
  void require_covers(const Clustering& clustering) const;
  // Columns of m at the labeled vertices (the product m H^T).
  Matrix gather_columns(const Matrix& m) const;
  Matrix gather_rows(const Matrix& m) const;

 private:
  std::vector<Index> indices_;
  Index vertices_;
};

class GroundTruth {
 public:
  explicit GroundTruth(Matrix rows);
  const Matrix& values() const { return u_; }
  Index rows() const { return u_.rows(); }
  Index vertices() const { return u_.cols(); }
  // Throws if some row has a component outside span{chi_k} larger than tol.
  void certify_in_span(const SetFunctions& setfns, double tol = 1e-8) const;

 private:
  Matrix u_;
};

struct Observations {
  Matrix y;  // M x J, column j belongs to vertex Z'[j]
  double gamma = 0.0;
};

Observations generate_labels(const GroundTruth& truth, const LabelSet& labels, double gamma,
                             std::uint64_t seed);

double likelihood_potential(const Matrix& u, const Observations& obs, const LabelSet& labels);

// C* = (C_tau^-1 + B / gamma^2)^-1 in the eigenbasis of L. The J leading eigen-directions
// T are handled through their Schur complement, the remaining directions R through the
// covariance-form update, so no term is formed as a difference of nearly equal numbers.
class PosteriorCovariance {
 public:
  PosteriorCovariance(const PriorModel& prior, const LabelSet& labels, double gamma);

  const PriorModel& prior() const { return prior_; }
  const LabelSet& labels() const { return labels_; }
  double gamma() const { return gamma_; }
  Index size() const { return prior_.size(); }

  double trace() const { return trace_; }
  // Tr(C* B C*) / gamma^2.
  double variance_trace() const;
  // C* H^T / gamma^2 in vertex coordinates (N x J); the posterior mean is gain() y.
  Matrix gain() const;
  // Posterior means for the rows of y (M x J), returned as M x N.
  Matrix mean(const Matrix& y) const;
  // (1/gamma^2) C* B u - u = -C* C_tau^-1 u, in vertex coordinates.
  Vector bias(const Vector& truth_row) const;
  Matrix dense_eigen() const;
  Matrix dense() const;

 private:
  PriorModel prior_;
  LabelSet labels_;
  double gamma_;
  Index t_;           // size of the leading block T
  Matrix g_;          // Phi rows at the labels, J x N
  Vector inv_lambda_t_;
  Matrix x_;          // (gamma^2 I + G_R Lambda_R G_R^T)^-1
  Matrix ctt_;        // C*_TT
  Matrix v_;          // Lambda_R G_R^T X
  Matrix gain_eig_;   // C* G^T / gamma^2 in eigen coordinates, N x J
  Matrix gain_;       // the same in vertex coordinates
  double trace_ = 0.0;
};

struct Posterior {
  PosteriorCovariance covariance;
  Matrix mean;  // M x N
};

Posterior posterior(const PriorModel& prior, const LabelSet& labels, const Observations& obs);

inline constexpr double kIndefiniteTol = 1e-10;

// Draws with rows independently N(u*_m, C*).
std::vector<Matrix> sample_posterior(const Posterior& post, Index count, std::uint64_t seed);

// Symmetric square root of C*, throwing if C* is numerically indefinite.
Matrix posterior_sqrt(const PosteriorCovariance& cov);

}  // namespace graphssr
