#pragma once

#include <cstdint>

#include "fbcs/types.hpp"

namespace fbcs {

// Seeded d x D sensing map with orthonormal rows (phi phi^T = I_d), so the
// adjoint is also the pseudo-inverse and the operator norm is exactly 1.
struct MeasurementOperator {
    Mat matrix; // d x D
    std::uint64_t seed = 0;

    int measurement_dim() const { return static_cast<int>(matrix.rows()); }
    int block_dim() const { return static_cast<int>(matrix.cols()); }
};

// Fills a d x D matrix with standard-normal draws (fixed row-major draw
// order, see Rng), then orthonormalizes the rows with modified Gram-Schmidt
// in row order. A numerically rank-deficient draw is retried with seed+1,
// at most 8 times.
MeasurementOperator make_operator(std::uint64_t seed, int block_dim, int measurement_dim);

// phi * x
Vec measure(const MeasurementOperator& op, const Vec& x);

// phi^T * z
Vec adjoint(const MeasurementOperator& op, const Vec& z);

// Column-wise measure/adjoint for batched pipelines.
Mat measure_cols(const MeasurementOperator& op, const Mat& x_cols);
Mat adjoint_cols(const MeasurementOperator& op, const Mat& z_cols);

// d = max(1, round(rate * block_dim)), half away from zero. rate in (0, 1].
int sampling_dims(double rate, int block_dim);

} // namespace fbcs
