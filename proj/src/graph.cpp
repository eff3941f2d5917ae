#include "graphssr/graph.hpp"

#include "graphssr/kernels.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstring>
#include <sstream>

namespace graphssr {

PointCloud::PointCloud(Matrix points) : points_(std::move(points)) {
  if (points_.rows() < 2) throw Error("point cloud needs at least 2 points");
  if (points_.cols() < 1) throw Error("point cloud needs dimension >= 1");
  if (!points_.allFinite()) throw Error("point cloud contains non-finite coordinates");
}

WeightMatrix::WeightMatrix(Matrix w) : w_(std::move(w)) {
  if (w_.rows() != w_.cols() || w_.rows() == 0)
    throw Error("weight matrix must be square and nonempty");
  const Index n = w_.rows();
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const double v = w_(i, j);
      if (!std::isfinite(v)) throw Error("weight matrix has a non-finite entry");
      if (v < 0.0) {
        std::ostringstream msg;
        msg << "negative weight w(" << i << "," << j << ") = " << v;
        throw Error(msg.str());
      }
      if (v != w_(j, i)) {
        std::ostringstream msg;
        msg << "weight matrix not symmetric at (" << i << "," << j << ")";
        throw Error(msg.str());
      }
    }
  }
}

Vector WeightMatrix::degrees() const { return w_.rowwise().sum(); }

void WeightMatrix::require_positive_degrees() const {
  const Vector d = degrees();
  for (Index i = 0; i < d.size(); ++i) {
    if (!(d(i) > 0.0)) {
      std::ostringstream msg;
      msg << "vertex " << i << " has nonpositive degree " << d(i) << " (isolated vertex)";
      throw Error(msg.str());
    }
  }
}

Clustering::Clustering(std::vector<int> assignment, int clusters)
    : assignment_(std::move(assignment)), clusters_(clusters) {
  if (clusters_ < 1) throw Error("clustering needs at least one cluster");
  std::vector<Index> count(static_cast<std::size_t>(clusters_), 0);
  for (int c : assignment_) {
    if (c < 0 || c >= clusters_) throw Error("cluster id out of range");
    ++count[static_cast<std::size_t>(c)];
  }
  for (int k = 0; k < clusters_; ++k)
    if (count[static_cast<std::size_t>(k)] == 0)
      throw Error("cluster " + std::to_string(k + 1) + " is empty");
}

Clustering Clustering::blocks(const std::vector<Index>& sizes) {
  std::vector<int> a;
  for (std::size_t k = 0; k < sizes.size(); ++k)
    a.insert(a.end(), static_cast<std::size_t>(sizes[k]), static_cast<int>(k));
  return Clustering(std::move(a), static_cast<int>(sizes.size()));
}

std::vector<Index> Clustering::members(int k) const {
  std::vector<Index> out;
  for (std::size_t v = 0; v < assignment_.size(); ++v)
    if (assignment_[v] == k) out.push_back(static_cast<Index>(v));
  return out;
}

std::vector<Index> Clustering::sizes() const {
  std::vector<Index> out(static_cast<std::size_t>(clusters_), 0);
  for (int c : assignment_) ++out[static_cast<std::size_t>(c)];
  return out;
}

WeightMatrix build_weights(const PointCloud& cloud, const Kernel& kernel, Execution exec) {
  const double r = std::visit([](const auto& k) { return k.r; }, kernel);
  if (!(r > 0.0)) throw Error("kernel radius must be positive");
  const Matrix sq = kernels::pairwise_sq_distances(cloud.points(), exec);
  const bool gaussian = std::holds_alternative<GaussianKernel>(kernel);
  Matrix w = sq.unaryExpr([&](double s) {
    if (gaussian) return std::exp(-s / (r * r));
    return std::sqrt(s) <= r ? 1.0 : 0.0;
  });
  w.diagonal().setZero();
  WeightMatrix out(std::move(w));
  out.require_positive_degrees();
  return out;
}

WeightMatrix zelnik_perona_weights(const PointCloud& cloud, int k, Execution exec) {
  if (k < 1 || k > cloud.size() - 1)
    throw Error("neighbor rank k must lie in [1, N-1], got " + std::to_string(k));
  const Matrix sq = kernels::pairwise_sq_distances(cloud.points(), exec);
  const Vector r = kernels::kth_neighbor_radius(sq, k, exec);
  for (Index i = 0; i < r.size(); ++i) {
    if (!(r(i) > 0.0)) {
      std::ostringstream msg;
      msg << "point " << i << " has zero distance to its " << k
          << "-th neighbor (duplicate points)";
      throw Error(msg.str());
    }
  }
  WeightMatrix out(kernels::self_tuning_weights(sq, r, exec));
  out.require_positive_degrees();
  return out;
}

Laplacian degree_and_laplacian(const WeightMatrix& w, double p) {
  w.require_positive_degrees();
  Laplacian l;
  l.p = p;
  l.degrees = w.degrees();
  l.matrix = kernels::normalized_laplacian(w.matrix(), l.degrees, p, Execution::parallel);
  return l;
}

PerturbationFamily::PerturbationFamily(WeightMatrix base, std::vector<Matrix> corrections)
    : base_(std::move(base)), corrections_(std::move(corrections)) {
  const Index n = base_.size();
  for (std::size_t h = 0; h < corrections_.size(); ++h) {
    const Matrix& c = corrections_[h];
    const std::string tag = "correction " + std::to_string(h + 1);
    if (c.rows() != n || c.cols() != n) throw Error(tag + " has the wrong size");
    if (!c.allFinite()) throw Error(tag + " has non-finite entries");
    if (c != c.transpose()) throw Error(tag + " is not symmetric");
    if (c.diagonal().cwiseAbs().maxCoeff() != 0.0) throw Error(tag + " has a nonzero diagonal");
  }
}

std::uint64_t hash_matrix(const Matrix& m, std::uint64_t seed) {
  std::uint64_t h = seed;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* b = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= b[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::int64_t dims[2] = {m.rows(), m.cols()};
  mix(dims, sizeof dims);
  mix(m.data(), sizeof(double) * static_cast<std::size_t>(m.size()));
  return h;
}

std::uint64_t PerturbationFamily::hash() const {
  std::uint64_t h = hash_matrix(base_.matrix());
  for (const Matrix& c : corrections_) h = hash_matrix(c, h);
  return h;
}

WeightMatrix assemble_perturbed(const PerturbationFamily& family, double eps) {
  if (!(eps >= 0.0)) throw Error("perturbation size eps must be >= 0");
  Matrix w = family.base().matrix();
  if (eps > 0.0) {
    double e = 1.0;
    for (const Matrix& c : family.corrections()) {
      e *= eps;
      w += e * c;
    }
    w = 0.5 * (w + w.transpose()).eval();
  }
  for (Index j = 0; j < w.cols(); ++j) {
    for (Index i = 0; i < w.rows(); ++i) {
      double& v = w(i, j);
      if (v < -kNegativeWeightTol) {
        std::ostringstream msg;
        msg << "eps too large for nonnegative weights: w(" << i << "," << j << ") = " << v
            << " at eps = " << eps;
        throw Error(msg.str());
      }
      if (v < 0.0) v = 0.0;
    }
  }
  return WeightMatrix(std::move(w));
}

WeightMatrix scale_intercluster(const WeightMatrix& w, const Clustering& clustering,
                                double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw Error("inter-cluster scale must lie in [0, 1]");
  if (clustering.size() != w.size()) throw Error("clustering size does not match graph");
  Matrix out = w.matrix();
  for (Index j = 0; j < out.cols(); ++j)
    for (Index i = 0; i < out.rows(); ++i)
      if (clustering.cluster_of(i) != clustering.cluster_of(j)) out(i, j) *= eps;
  return WeightMatrix(std::move(out));
}

AssumptionReport check_assumptions(const WeightMatrix& w0, const Clustering& clustering,
                                   double p) {
  if (clustering.size() != w0.size()) throw Error("clustering size does not match graph");
  const Matrix& w = w0.matrix();
  for (Index j = 0; j < w.cols(); ++j) {
    for (Index i = 0; i < w.rows(); ++i) {
      if (w(i, j) != 0.0 && clustering.cluster_of(i) != clustering.cluster_of(j)) {
        std::ostringstream msg;
        msg << "W0 is not block-diagonal: w(" << i << "," << j << ") = " << w(i, j)
            << " joins clusters " << clustering.cluster_of(i) + 1 << " and "
            << clustering.cluster_of(j) + 1;
        throw AssumptionError(msg.str());
      }
    }
  }

  AssumptionReport report;
  report.theta = std::numeric_limits<double>::infinity();
  for (int k = 0; k < clustering.clusters(); ++k) {
    const std::vector<Index> idx = clustering.members(k);
    const Index nk = static_cast<Index>(idx.size());
    Matrix block(nk, nk);
    for (Index a = 0; a < nk; ++a)
      for (Index b = 0; b < nk; ++b) block(a, b) = w(idx[a], idx[b]);
    const Vector deg = block.rowwise().sum();
    for (Index a = 0; a < nk; ++a) {
      if (!(deg(a) > 0.0)) {
        std::ostringstream msg;
        msg << "subgraph not connected: vertex " << idx[a] << " is isolated in cluster "
            << k + 1;
        throw AssumptionError(msg.str());
      }
    }
    const Matrix lk = kernels::serial::normalized_laplacian(block, deg, p);
    Eigen::SelfAdjointEigenSolver<Matrix> es(lk, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw Error("eigensolver failed on a cluster block");
    const Vector& ev = es.eigenvalues();
    const double gap = ev(1);
    const double tol = kConnectivityTol * std::max(1.0, ev.cwiseAbs().maxCoeff());
    if (!(gap > tol)) {
      std::ostringstream msg;
      msg << "subgraph not connected: cluster " << k + 1
          << " has second-smallest Laplacian eigenvalue " << gap;
      throw AssumptionError(msg.str());
    }
    report.block_gaps.push_back(gap);
    report.theta = std::min(report.theta, gap);
  }
  return report;
}

std::vector<Matrix> laplacian_expansion(const PerturbationFamily& family, double p,
                                        int order) {
  if (order < 0) throw Error("expansion order must be >= 0");
  const Index n = family.size();
  const int hm = family.order();
  const auto H = static_cast<std::size_t>(order);

  std::vector<const Matrix*> wc{&family.base().matrix()};
  for (const Matrix& c : family.corrections()) wc.push_back(&c);

  Matrix deg(n, hm + 1);  // deg(i, c): row sums of W^(c)
  for (int c = 0; c <= hm; ++c) deg.col(c) = wc[static_cast<std::size_t>(c)]->rowwise().sum();
  family.base().require_positive_degrees();

  // s_i(eps) = d_i(eps)^(-p) as a power series; Miller recurrence for g^a with g_0 = 1
  Matrix s(n, static_cast<Index>(H) + 1);
  for (Index i = 0; i < n; ++i) {
    const double d0 = deg(i, 0);
    std::vector<double> f(H + 1, 0.0);
    f[0] = 1.0;
    for (std::size_t m = 1; m <= H; ++m) {
      double acc = 0.0;
      for (std::size_t k = 1; k <= std::min<std::size_t>(m, static_cast<std::size_t>(hm)); ++k) {
        const double gk = deg(i, static_cast<Index>(k)) / d0;
        acc += (-p * static_cast<double>(k) - static_cast<double>(m) + static_cast<double>(k)) *
               gk * f[m - k];
      }
      f[m] = acc / static_cast<double>(m);
    }
    const double scale = std::pow(d0, -p);
    for (std::size_t m = 0; m <= H; ++m) s(i, static_cast<Index>(m)) = scale * f[m];
  }

  auto conv = [&](Index i, Index j, std::size_t m) {
    double t = 0.0;
    for (std::size_t a = 0; a <= m; ++a)
      t += s(i, static_cast<Index>(a)) * s(j, static_cast<Index>(m - a));
    return t;
  };

  std::vector<Matrix> out(H + 1, Matrix::Zero(n, n));
  for (std::size_t h = 0; h <= H; ++h) {
    Matrix& lh = out[h];
#pragma omp parallel for schedule(static)
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        double v = 0.0;
        for (std::size_t c = 0; c <= std::min<std::size_t>(h, static_cast<std::size_t>(hm)); ++c) {
          const Matrix& w = *wc[c];
          const double entry = i == j ? deg(i, static_cast<Index>(c)) - w(i, i) : -w(i, j);
          if (entry != 0.0) v += entry * conv(i, j, h - c);
        }
        lh(i, j) = v;
      }
    }
  }
  return out;
}

}  // namespace graphssr
