#pragma once

// Dense data-parallel kernels. Each has a plain serial reference and an OpenMP
// version with the same per-element arithmetic, so results agree bit-for-bit.

#include "graphssr/types.hpp"

namespace graphssr::kernels {

namespace serial {
Matrix pairwise_sq_distances(const Matrix& points);
Vector kth_neighbor_radius(const Matrix& sq_dist, int k);
Matrix self_tuning_weights(const Matrix& sq_dist, const Vector& radius);
Matrix normalized_laplacian(const Matrix& w, const Vector& degrees, double p);
}  // namespace serial

namespace omp {
Matrix pairwise_sq_distances(const Matrix& points);
Vector kth_neighbor_radius(const Matrix& sq_dist, int k);
Matrix self_tuning_weights(const Matrix& sq_dist, const Vector& radius);
Matrix normalized_laplacian(const Matrix& w, const Vector& degrees, double p);
}  // namespace omp

Matrix pairwise_sq_distances(const Matrix& points, Execution exec);
Vector kth_neighbor_radius(const Matrix& sq_dist, int k, Execution exec);
Matrix self_tuning_weights(const Matrix& sq_dist, const Vector& radius, Execution exec);
Matrix normalized_laplacian(const Matrix& w, const Vector& degrees, double p,
                            Execution exec);

}  // namespace graphssr::kernels
