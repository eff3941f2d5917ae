#pragma once

#include "graphssr/graph.hpp"
#include "graphssr/rng.hpp"
#include "graphssr/types.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace graphssr {

// Ascending eigenvalues with orthonormal eigenvectors as columns.
struct Spectrum {
  Vector values;
  Matrix vectors;
  Index size() const { return values.size(); }
};

inline constexpr double kPsdTol = 1e-8;

// Symmetric eigendecomposition; each eigenvector's first nonzero entry is positive.
Spectrum eigendecompose(const Matrix& symmetric);
// Same, plus a PSD check on the smallest eigenvalue (tol kPsdTol * ||L||).
Spectrum eigendecompose(const Laplacian& laplacian);

// Prior N(0, C_tau) with C_tau = tau^(2 alpha) (L + tau^2 I)^(-alpha), held in the
// eigenbasis of L. Copies share the spectrum.
class PriorModel {
 public:
  PriorModel(std::shared_ptr<const Spectrum> spectrum, double tau, double alpha);

  const Spectrum& spectrum() const { return *spectrum_; }
  const std::shared_ptr<const Spectrum>& shared_spectrum() const { return spectrum_; }
  double tau() const { return tau_; }
  double alpha() const { return alpha_; }
  Index size() const { return lambda_.size(); }

  const Vector& eigenvalues() const { return lambda_; }
  // tau^(-2 alpha) (sigma_j + tau^2)^alpha, evaluated directly rather than as 1/lambda.
  Vector inverse_eigenvalues() const;
  Matrix covariance() const;

 private:
  std::shared_ptr<const Spectrum> spectrum_;
  double tau_;
  double alpha_;
  Vector lambda_;
};

PriorModel prior_covariance(std::shared_ptr<const Spectrum> spectrum, double tau,
                            double alpha);
PriorModel prior_covariance(const Spectrum& spectrum, double tau, double alpha);

// Columns chi_k = D0^p 1_k / |D0^p 1_k|.
struct SetFunctions {
  Matrix vectors;  // N x K
  int count() const { return static_cast<int>(vectors.cols()); }
};

SetFunctions set_functions(const Vector& degrees, const Clustering& clustering, double p);

// M x N matrix whose rows are i.i.d. N(0, C_tau).
Matrix sample_prior(const PriorModel& model, Index rows, std::uint64_t seed);

struct PerturbationBound {
  double theta = 0.0;
  double eps = 0.0;
  std::vector<double> expansion_norms;  // ||L^(h)||_2 for h = 1, 2, ...
};

struct PerturbReport {
  double eps = 0.0;
  double subspace_distance = 0.0;  // ||P0 - P_eps||_F
  double sigma_next = 0.0;         // (K+1)-th smallest eigenvalue of L_eps
  std::optional<double> lower_bound;
  std::vector<double> residuals;   // sum over j > K of <phi_j, chi_k>^2
};

PerturbReport perturbation_diagnostics(const Spectrum& spec0, const Spectrum& spec_eps, int k,
                                       const SetFunctions& setfns,
                                       const std::optional<PerturbationBound>& bound = {});

// Spectral norms of the expansion coefficients L^(1..order).
std::vector<double> expansion_norms(const PerturbationFamily& family, double p, int order);

}  // namespace graphssr
