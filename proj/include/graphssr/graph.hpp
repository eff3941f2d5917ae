#pragma once

#include "graphssr/types.hpp"

#include <variant>
#include <vector>

namespace graphssr {

// N feature vectors stored as the rows of an N x d matrix.
class PointCloud {
 public:
  explicit PointCloud(Matrix points);
  const Matrix& points() const { return points_; }
  Index size() const { return points_.rows(); }
  Index dim() const { return points_.cols(); }

 private:
  Matrix points_;
};

// Symmetric nonnegative affinity matrix. Positive degrees are checked where
// they are needed (Laplacian construction), not at construction time.
class WeightMatrix {
 public:
  explicit WeightMatrix(Matrix w);
  const Matrix& matrix() const { return w_; }
  Index size() const { return w_.rows(); }
  double operator()(Index i, Index j) const { return w_(i, j); }
  Vector degrees() const;
  // Throws naming the first vertex whose row sum is not strictly positive.
  void require_positive_degrees() const;

 private:
  Matrix w_;
};

// Vertex -> cluster map. Cluster ids are 0-based in memory, 1-based in files.
class Clustering {
 public:
  Clustering(std::vector<int> assignment, int clusters);
  // Contiguous blocks of the given sizes, in vertex order.
  static Clustering blocks(const std::vector<Index>& sizes);

  int clusters() const { return clusters_; }
  Index size() const { return static_cast<Index>(assignment_.size()); }
  int cluster_of(Index v) const { return assignment_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& assignment() const { return assignment_; }
  std::vector<Index> members(int k) const;
  std::vector<Index> sizes() const;

 private:
  std::vector<int> assignment_;
  int clusters_;
};

struct GaussianKernel {
  double r;
};
struct IndicatorKernel {
  double r;
};
using Kernel = std::variant<GaussianKernel, IndicatorKernel>;

WeightMatrix build_weights(const PointCloud& cloud, const Kernel& kernel,
                           Execution exec = Execution::parallel);

WeightMatrix zelnik_perona_weights(const PointCloud& cloud, int k = 15,
                                   Execution exec = Execution::parallel);

struct Laplacian {
  Matrix matrix;
  double p = 0.0;
  Vector degrees;
};

Laplacian degree_and_laplacian(const WeightMatrix& w, double p);

// W_eps = W0 + sum_h eps^h W^(h).
class PerturbationFamily {
 public:
  PerturbationFamily(WeightMatrix base, std::vector<Matrix> corrections);
  const WeightMatrix& base() const { return base_; }
  const std::vector<Matrix>& corrections() const { return corrections_; }
  int order() const { return static_cast<int>(corrections_.size()); }
  Index size() const { return base_.size(); }
  std::uint64_t hash() const;

 private:
  WeightMatrix base_;
  std::vector<Matrix> corrections_;
};

inline constexpr double kNegativeWeightTol = 1e-12;

WeightMatrix assemble_perturbed(const PerturbationFamily& family, double eps);

WeightMatrix scale_intercluster(const WeightMatrix& w, const Clustering& clustering,
                                double eps);

struct AssumptionReport {
  std::vector<double> block_gaps;  // second-smallest eigenvalue per cluster
  double theta = 0.0;
};

inline constexpr double kConnectivityTol = 1e-10;

// Throws AssumptionError when W0 is not block-diagonal under the clustering or
// when a block is not connected.
AssumptionReport check_assumptions(const WeightMatrix& w0, const Clustering& clustering,
                                   double p = 0.0);

// Taylor coefficients L^(1..order) of eps -> L_eps for the family at normalization p.
// Exact for p = 0 (only h <= family order is nonzero); a truncated series otherwise.
std::vector<Matrix> laplacian_expansion(const PerturbationFamily& family, double p,
                                        int order);

std::uint64_t hash_matrix(const Matrix& m, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace graphssr
