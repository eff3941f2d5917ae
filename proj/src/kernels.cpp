#include "graphssr/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace graphssr::kernels {

namespace {

double sq_distance(const Matrix& x, Index i, Index j) {
  double s = 0.0;
  for (Index c = 0; c < x.cols(); ++c) {
    const double d = x(i, c) - x(j, c);
    s += d * d;
  }
  return s;
}

double kth_smallest_offdiag(const Matrix& sq, Index i, int k, std::vector<double>& buf) {
  buf.clear();
  for (Index j = 0; j < sq.cols(); ++j)
    if (j != i) buf.push_back(sq(i, j));
  std::nth_element(buf.begin(), buf.begin() + (k - 1), buf.end());
  return std::sqrt(buf[static_cast<std::size_t>(k - 1)]);
}

double self_tuning(const Matrix& sq, const Vector& r, Index i, Index j) {
  return std::exp(-sq(i, j) / (r(i) * r(j)));
}

}  // namespace

namespace serial {

Matrix pairwise_sq_distances(const Matrix& points) {
  const Index n = points.rows();
  Matrix out = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) out(i, j) = out(j, i) = sq_distance(points, i, j);
  return out;
}

Vector kth_neighbor_radius(const Matrix& sq_dist, int k) {
  Vector r(sq_dist.rows());
  std::vector<double> buf;
  for (Index i = 0; i < sq_dist.rows(); ++i) r(i) = kth_smallest_offdiag(sq_dist, i, k, buf);
  return r;
}

Matrix self_tuning_weights(const Matrix& sq_dist, const Vector& radius) {
  const Index n = sq_dist.rows();
  Matrix w = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) w(i, j) = w(j, i) = self_tuning(sq_dist, radius, i, j);
  return w;
}

Matrix normalized_laplacian(const Matrix& w, const Vector& degrees, double p) {
  const Index n = w.rows();
  Vector s = degrees.unaryExpr([p](double d) { return std::pow(d, -p); });
  Matrix l(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      l(i, j) = i == j ? (s(i) * s(i)) * (degrees(i) - w(i, i)) : -(s(i) * s(j)) * w(i, j);
  return l;
}

}  // namespace serial

namespace omp {

Matrix pairwise_sq_distances(const Matrix& points) {
  const Index n = points.rows();
  Matrix out = Matrix::Zero(n, n);
#pragma omp parallel for schedule(dynamic, 8)
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) out(i, j) = sq_distance(points, i, j);
  // mirror in a second pass so no two threads write the same column
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < n; ++j)
    for (Index i = j + 1; i < n; ++i) out(i, j) = out(j, i);
  return out;
}

Vector kth_neighbor_radius(const Matrix& sq_dist, int k) {
  Vector r(sq_dist.rows());
#pragma omp parallel
  {
    std::vector<double> buf;
#pragma omp for schedule(static)
    for (Index i = 0; i < sq_dist.rows(); ++i) r(i) = kth_smallest_offdiag(sq_dist, i, k, buf);
  }
  return r;
}

Matrix self_tuning_weights(const Matrix& sq_dist, const Vector& radius) {
  const Index n = sq_dist.rows();
  Matrix w(n, n);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      w(i, j) = i == j ? 0.0
                       : self_tuning(sq_dist, radius, std::min(i, j), std::max(i, j));
  return w;
}

Matrix normalized_laplacian(const Matrix& w, const Vector& degrees, double p) {
  const Index n = w.rows();
  Vector s = degrees.unaryExpr([p](double d) { return std::pow(d, -p); });
  Matrix l(n, n);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i)
      l(i, j) = i == j ? (s(i) * s(i)) * (degrees(i) - w(i, i)) : -(s(i) * s(j)) * w(i, j);
  return l;
}

}  // namespace omp

Matrix pairwise_sq_distances(const Matrix& points, Execution exec) {
  return exec == Execution::serial ? serial::pairwise_sq_distances(points)
                                   : omp::pairwise_sq_distances(points);
}

Vector kth_neighbor_radius(const Matrix& sq_dist, int k, Execution exec) {
  return exec == Execution::serial ? serial::kth_neighbor_radius(sq_dist, k)
                                   : omp::kth_neighbor_radius(sq_dist, k);
}

Matrix self_tuning_weights(const Matrix& sq_dist, const Vector& radius, Execution exec) {
  return exec == Execution::serial ? serial::self_tuning_weights(sq_dist, radius)
                                   : omp::self_tuning_weights(sq_dist, radius);
}

Matrix normalized_laplacian(const Matrix& w, const Vector& degrees, double p,
                            Execution exec) {
  return exec == Execution::serial ? serial::normalized_laplacian(w, degrees, p)
                                   : omp::normalized_laplacian(w, degrees, p);
}

}  // namespace graphssr::kernels
