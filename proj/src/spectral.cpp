#include "graphssr/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <sstream>

namespace graphssr {

namespace {

void fix_signs(Matrix& vectors) {
  for (Index c = 0; c < vectors.cols(); ++c) {
    auto v = vectors.col(c);
    const double thresh = 1e-10 * v.cwiseAbs().maxCoeff();
    for (Index i = 0; i < v.size(); ++i) {
      if (std::abs(v(i)) > thresh) {
        if (v(i) < 0.0) v = -v;
        break;
      }
    }
  }
}

}  // namespace

Spectrum eigendecompose(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw Error("eigendecompose: matrix must be square");
  if (!a.allFinite()) throw Error("eigendecompose: matrix has non-finite entries");
  const double norm = a.norm();
  const double asym = (a - a.transpose()).norm();
  if (asym > 1e-12 * std::max(norm, 1.0)) {
    std::ostringstream msg;
    msg << "eigendecompose: matrix not symmetric (||A - A^T||_F = " << asym << ")";
    throw Error(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eigendecompose: solver did not converge (N = " << a.rows()
        << ", ||A||_F = " << norm << ", ||A - A^T||_F = " << asym << ")";
    throw Error(msg.str());
  }
  Spectrum s{es.eigenvalues(), es.eigenvectors()};
  fix_signs(s.vectors);
  return s;
}

Spectrum eigendecompose(const Laplacian& laplacian) {
  Spectrum s = eigendecompose(laplacian.matrix);
  const double scale = s.values.cwiseAbs().maxCoeff();
  if (s.values(0) < -kPsdTol * scale) {
    std::ostringstream msg;
    msg << "Laplacian is not positive semi-definite: smallest eigenvalue " << s.values(0)
        << ", norm " << scale;
    throw Error(msg.str());
  }
  return s;
}

PriorModel::PriorModel(std::shared_ptr<const Spectrum> spectrum, double tau, double alpha)
    : spectrum_(std::move(spectrum)), tau_(tau), alpha_(alpha) {
  if (!spectrum_) throw Error("prior needs a spectrum");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw Error("prior needs tau > 0");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error("prior needs alpha > 0");
  const Vector& sigma = spectrum_->values;
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  const double t2 = tau * tau;
  lambda_.resize(sigma.size());
  for (Index j = 0; j < sigma.size(); ++j) {
    if (sigma(j) < -kPsdTol * scale) {
      std::ostringstream msg;
      msg << "prior: eigenvalue " << sigma(j) << " is negative beyond tolerance";
      throw Error(msg.str());
    }
    const double s = std::max(sigma(j), 0.0);
    const double v = std::pow(t2 / (s + t2), alpha);
    if (!(v >= std::numeric_limits<double>::min()) || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << "prior eigenvalue out of range for sigma = " << sigma(j) << ", tau = " << tau
          << ", alpha = " << alpha;
      throw Error(msg.str());
    }
    lambda_(j) = v;
  }
}

Vector PriorModel::inverse_eigenvalues() const {
  const Vector& sigma = spectrum_->values;
  const double t2 = tau_ * tau_;
  Vector out(sigma.size());
  for (Index j = 0; j < sigma.size(); ++j) {
    const double v = std::pow((std::max(sigma(j), 0.0) + t2) / t2, alpha_);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "inverse prior eigenvalue overflows for sigma = " << sigma(j) << ", tau = " << tau_
          << ", alpha = " << alpha_;
      throw Error(msg.str());
    }
    out(j) = v;
  }
  return out;
}

Matrix PriorModel::covariance() const {
  const Matrix& phi = spectrum_->vectors;
  return phi * lambda_.asDiagonal() * phi.transpose();
}

PriorModel prior_covariance(std::shared_ptr<const Spectrum> spectrum, double tau,
                            double alpha) {
  return PriorModel(std::move(spectrum), tau, alpha);
}

PriorModel prior_covariance(const Spectrum& spectrum, double tau, double alpha) {
  return PriorModel(std::make_shared<const Spectrum>(spectrum), tau, alpha);
}

SetFunctions set_functions(const Vector& degrees, const Clustering& clustering, double p) {
  if (degrees.size() != clustering.size()) throw Error("set_functions: size mismatch");
  for (Index i = 0; i < degrees.size(); ++i)
    if (!(degrees(i) > 0.0))
      throw Error("set_functions: vertex " + std::to_string(i) + " has nonpositive degree");
  SetFunctions out{Matrix::Zero(degrees.size(), clustering.clusters())};
  for (Index i = 0; i < degrees.size(); ++i)
    out.vectors(i, clustering.cluster_of(i)) = std::pow(degrees(i), p);
  for (Index k = 0; k < out.vectors.cols(); ++k) {
    const double nrm = out.vectors.col(k).norm();
    if (!(nrm > 0.0)) throw Error("set_functions: cluster " + std::to_string(k + 1) + " is empty");
    out.vectors.col(k) /= nrm;
  }
  return out;
}

Matrix sample_prior(const PriorModel& model, Index rows, std::uint64_t seed) {
  if (rows < 0) throw Error("sample_prior: negative row count");
  Rng rng(seed);
  const Matrix xi = standard_normal(rows, model.size(), rng);
  return xi * model.eigenvalues().cwiseSqrt().asDiagonal() *
         model.spectrum().vectors.transpose();
}

PerturbReport perturbation_diagnostics(const Spectrum& spec0, const Spectrum& spec_eps, int k,
                                       const SetFunctions& setfns,
                                       const std::optional<PerturbationBound>& bound) {
  const Index n = spec_eps.size();
  if (spec0.size() != n) throw Error("perturbation_diagnostics: spectra differ in size");
  if (k < 1 || k > n) throw Error("perturbation_diagnostics: K out of range");
  if (setfns.count() != k || setfns.vectors.rows() != n)
    throw Error("perturbation_diagnostics: set functions do not match K and N");

  PerturbReport r;
  r.eps = bound ? bound->eps : 0.0;
  // tail sums avoid the cancellation in 1 - sum_{j <= K} <phi_j, chi_k>^2
  const Matrix tail = spec_eps.vectors.rightCols(n - k).transpose() * setfns.vectors;
  double total = 0.0;
  for (Index c = 0; c < k; ++c) {
    const double rc = tail.col(c).squaredNorm();
    r.residuals.push_back(rc);
    total += rc;
  }
  // both projectors have rank K, so ||P0 - Pe||_F^2 = 2 sum_k residual_k
  r.subspace_distance = std::sqrt(2.0 * total);
  r.sigma_next = k < n ? spec_eps.values(k) : std::numeric_limits<double>::infinity();
  if (bound) {
    double drop = 0.0;
    double e = 1.0;
    for (double nrm : bound->expansion_norms) {
      e *= bound->eps;
      drop += e * nrm;
    }
    r.lower_bound = bound->theta - drop;
  }
  return r;
}

std::vector<double> expansion_norms(const PerturbationFamily& family, double p, int order) {
  const std::vector<Matrix> coeffs = laplacian_expansion(family, p, order);
  std::vector<double> out;
  for (std::size_t h = 1; h < coeffs.size(); ++h) {
    const Matrix sym = 0.5 * (coeffs[h] + coeffs[h].transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("expansion_norms: eigensolver failed");
    out.push_back(es.eigenvalues().cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace graphssr
