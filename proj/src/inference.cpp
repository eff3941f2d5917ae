#include "graphssr/inference.hpp"

#include "graphssr/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace graphssr {

namespace {

Matrix spd_inverse(const Matrix& a, const char* what) {
  Eigen::LDLT<Matrix> ldlt(a);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().minCoeff() <= 0.0)
    throw Error(std::string("singular or indefinite ") + what);
  Matrix inv = ldlt.solve(Matrix::Identity(a.rows(), a.cols()));
  return 0.5 * (inv + inv.transpose());
}

}  // namespace

LabelSet::LabelSet(std::vector<Index> indices, Index vertices)
    : indices_(std::move(indices)), vertices_(vertices) {
  if (indices_.empty()) throw Error("label set must contain at least one vertex");
  if (static_cast<Index>(indices_.size()) > vertices_)
    throw Error("label set larger than the vertex count");
  std::set<Index> seen;
  for (Index v : indices_) {
    if (v < 0 || v >= vertices_) throw Error("label vertex " + std::to_string(v) + " out of range");
    if (!seen.insert(v).second) throw Error("label vertex " + std::to_string(v) + " repeated");
  }
}

void LabelSet::require_covers(const Clustering& clustering) const {
  if (clustering.size() != vertices_) throw Error("clustering size does not match labels");
  std::vector<bool> hit(static_cast<std::size_t>(clustering.clusters()), false);
  for (Index v : indices_) hit[static_cast<std::size_t>(clustering.cluster_of(v))] = true;
  for (std::size_t k = 0; k < hit.size(); ++k)
    if (!hit[k]) throw AssumptionError("cluster " + std::to_string(k + 1) + " has no label");
}

Matrix LabelSet::gather_columns(const Matrix& m) const {
  Matrix out(m.rows(), count());
  for (Index j = 0; j < count(); ++j) out.col(j) = m.col(indices_[static_cast<std::size_t>(j)]);
  return out;
}

Matrix LabelSet::gather_rows(const Matrix& m) const {
  Matrix out(count(), m.cols());
  for (Index j = 0; j < count(); ++j) out.row(j) = m.row(indices_[static_cast<std::size_t>(j)]);
  return out;
}

GroundTruth::GroundTruth(Matrix rows) : u_(std::move(rows)) {
  if (!u_.allFinite()) throw Error("ground truth has non-finite entries");
}

void GroundTruth::certify_in_span(const SetFunctions& setfns, double tol) const {
  const Matrix& x = setfns.vectors;
  for (Index m = 0; m < u_.rows(); ++m) {
    const Vector u = u_.row(m).transpose();
    const double off = (u - x * (x.transpose() * u)).norm();
    if (off > tol) {
      std::ostringstream msg;
      msg << "ground-truth row " << m << " lies outside span{chi_k} by " << off;
      throw AssumptionError(msg.str());
    }
  }
}

Observations generate_labels(const GroundTruth& truth, const LabelSet& labels, double gamma,
                             std::uint64_t seed) {
  if (!(gamma >= 0.0)) throw Error("noise level gamma must be >= 0");
  if (truth.vertices() != labels.vertices()) throw Error("labels and truth differ in N");
  Rng rng(seed);
  Observations obs;
  obs.gamma = gamma;
  obs.y = labels.gather_columns(truth.values()) +
          gamma * standard_normal(truth.rows(), labels.count(), rng);
  return obs;
}

double likelihood_potential(const Matrix& u, const Observations& obs, const LabelSet& labels) {
  if (!(obs.gamma > 0.0)) throw Error("likelihood potential needs gamma > 0");
  if (u.cols() != labels.vertices() || u.rows() != obs.y.rows() || obs.y.cols() != labels.count())
    throw Error("likelihood potential: shape mismatch");
  return (labels.gather_columns(u) - obs.y).squaredNorm() / (2.0 * obs.gamma * obs.gamma);
}

PosteriorCovariance::PosteriorCovariance(const PriorModel& prior, const LabelSet& labels,
                                         double gamma)
    : prior_(prior), labels_(labels), gamma_(gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw Error("posterior needs gamma > 0");
  const Index n = prior_.size();
  if (labels_.vertices() != n) throw Error("labels and prior differ in N");
  const Index j = labels_.count();
  t_ = std::min(j, n);
  const Index r = n - t_;

  const Vector& lambda = prior_.eigenvalues();
  g_ = labels_.gather_rows(prior_.spectrum().vectors);
  inv_lambda_t_ = prior_.inverse_eigenvalues().head(t_);
  const auto gt = g_.leftCols(t_);
  const auto gr = g_.rightCols(r);
  const auto lam_r = lambda.tail(r);

  const double g2 = gamma * gamma;
  const Matrix a = g2 * Matrix::Identity(j, j) + gr * lam_r.asDiagonal() * gr.transpose();
  x_ = spd_inverse(a, "inner label system");

  Matrix s = gt.transpose() * x_ * gt;
  s.diagonal() += inv_lambda_t_;
  ctt_ = spd_inverse(s, "leading-block Schur complement");

  v_ = lam_r.asDiagonal() * gr.transpose() * x_;

  // leading rows of the gain: C*_TT G_T^T X; trailing rows: V A (A + G_T Lambda_T G_T^T)^-1
  gain_eig_.resize(n, j);
  gain_eig_.topRows(t_) = ctt_ * gt.transpose() * x_;
  if (r > 0) {
    const Matrix full = a + gt * lambda.head(t_).asDiagonal() * gt.transpose();
    const Matrix e = Eigen::LDLT<Matrix>(full).solve(a.transpose()).transpose();
    gain_eig_.bottomRows(r) = v_ * e;
  }

  gain_ = prior_.spectrum().vectors * gain_eig_;

  double tr = ctt_.trace();
  if (r > 0) {
    const Matrix vgr = v_ * gr;
    const Matrix vgt = v_ * gt;
    for (Index q = 0; q < r; ++q) tr += lam_r(q) * (1.0 - vgr(q, q));
    tr += (vgt * ctt_).cwiseProduct(vgt).sum();
  }
  trace_ = tr;
}

double PosteriorCovariance::variance_trace() const {
  return gamma_ * gamma_ * gain_eig_.squaredNorm();
}

Matrix PosteriorCovariance::gain() const { return gain_; }

Matrix PosteriorCovariance::mean(const Matrix& y) const {
  if (y.cols() != labels_.count()) throw Error("posterior mean: observation width mismatch");
  // row by row, so a row's mean does not depend on which other rows are present
  Matrix out(y.rows(), size());
  for (Index m = 0; m < y.rows(); ++m) out.row(m).noalias() = (gain_ * y.row(m).transpose()).transpose();
  return out;
}

Vector PosteriorCovariance::bias(const Vector& truth_row) const {
  const Index n = size();
  if (truth_row.size() != n) throw Error("bias: truth row has the wrong length");
  const Index r = n - t_;
  const Matrix& phi = prior_.spectrum().vectors;
  const Vector u = phi.transpose() * truth_row;
  const auto gt = g_.leftCols(t_);
  const auto gr = g_.rightCols(r);

  const Vector ur = u.tail(r);
  const Vector gu = gr * ur;
  const Vector z = u.head(t_).cwiseProduct(inv_lambda_t_) - gt.transpose() * (x_ * gu);
  Vector b(n);
  b.head(t_) = -(ctt_ * z);
  if (r > 0) b.tail(r) = -ur + v_ * (gu - gt * b.head(t_));
  return phi * b;
}

Matrix PosteriorCovariance::dense_eigen() const {
  const Index n = size();
  const Index r = n - t_;
  const auto gt = g_.leftCols(t_);
  const auto gr = g_.rightCols(r);
  Matrix c(n, n);
  c.topLeftCorner(t_, t_) = ctt_;
  if (r > 0) {
    const Vector lam_r = prior_.eigenvalues().tail(r);
    const Matrix vgt = v_ * gt;
    const Matrix crt = -vgt * ctt_;
    c.bottomLeftCorner(r, t_) = crt;
    c.topRightCorner(t_, r) = crt.transpose();
    Matrix crr = -(v_ * gr) * lam_r.asDiagonal();
    crr += vgt * ctt_ * vgt.transpose();
    crr.diagonal() += lam_r;
    c.bottomRightCorner(r, r) = crr;
  }
  return 0.5 * (c + c.transpose());
}

Matrix PosteriorCovariance::dense() const {
  const Matrix& phi = prior_.spectrum().vectors;
  Matrix c = phi * dense_eigen() * phi.transpose();
  return 0.5 * (c + c.transpose());
}

Posterior posterior(const PriorModel& prior, const LabelSet& labels, const Observations& obs) {
  PosteriorCovariance cov(prior, labels, obs.gamma);
  Matrix mean = cov.mean(obs.y);
  return Posterior{std::move(cov), std::move(mean)};
}

Matrix posterior_sqrt(const PosteriorCovariance& cov) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(cov.dense());
  if (es.info() != Eigen::Success) throw Error("posterior square root: eigensolver failed");
  const Vector& mu = es.eigenvalues();
  const double top = mu.cwiseAbs().maxCoeff();
  if (mu(0) < -kIndefiniteTol * top) {
    std::ostringstream msg;
    msg << "posterior covariance is numerically indefinite: smallest eigenvalue " << mu(0)
        << ", largest " << top;
    throw Error(msg.str());
  }
  const Vector root = mu.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
}

std::vector<Matrix> sample_posterior(const Posterior& post, Index count, std::uint64_t seed) {
  if (count < 0) throw Error("sample_posterior: negative count");
  std::vector<Matrix> out;
  if (count == 0) return out;
  const Matrix f = posterior_sqrt(post.covariance);
  Rng rng(seed);
  out.reserve(static_cast<std::size_t>(count));
  for (Index s = 0; s < count; ++s) {
    const Matrix xi = standard_normal(post.mean.rows(), post.mean.cols(), rng);
    out.push_back(post.mean + xi * f);
  }
  return out;
}

}  // namespace graphssr
