#include "fbcs/sensing.hpp"

#include <cmath>
#include <stdexcept>

#include "fbcs/rng.hpp"

namespace fbcs {

namespace {

// Modified Gram-Schmidt over the columns of the transposed buffer (rows of
// phi), which keeps every vector contiguous. Returns false when a row
// collapses under projection (rank-deficient draw).
bool gram_schmidt(Mat& rows_as_cols) {
    const Eigen::Index count = rows_as_cols.cols();
    for (Eigen::Index i = 0; i < count; ++i) {
        auto current = rows_as_cols.col(i);
        for (Eigen::Index j = 0; j < i; ++j) {
            current -= current.dot(rows_as_cols.col(j)) * rows_as_cols.col(j);
        }
        const double norm = current.norm();
        if (norm < 1e-10) return false;
        current /= norm;
    }
    return true;
}

} // namespace

MeasurementOperator make_operator(std::uint64_t seed, int block_dim, int measurement_dim) {
    if (block_dim < 1 || measurement_dim < 1 || measurement_dim > block_dim) {
        throw std::invalid_argument("make_operator: need 1 <= d <= D");
    }
    Mat rows_as_cols(block_dim, measurement_dim);
    for (int attempt = 0; attempt <= 8; ++attempt) {
        Rng rng(seed + static_cast<std::uint64_t>(attempt));
        // fixed draw order: row-major over the d x D matrix
        for (int i = 0; i < measurement_dim; ++i) {
            for (int j = 0; j < block_dim; ++j) {
                rows_as_cols(j, i) = rng.normal();
            }
        }
        if (gram_schmidt(rows_as_cols)) {
            MeasurementOperator op;
            op.seed = seed;
            op.matrix = rows_as_cols.transpose();
            return op;
        }
    }
    throw std::runtime_error("make_operator: rank-deficient draw after 8 retries");
}

Vec measure(const MeasurementOperator& op, const Vec& x) {
    if (x.size() != op.matrix.cols()) {
        throw std::invalid_argument("measure: block dimension mismatch");
    }
    return op.matrix * x;
}

Vec adjoint(const MeasurementOperator& op, const Vec& z) {
    if (z.size() != op.matrix.rows()) {
        throw std::invalid_argument("adjoint: measurement dimension mismatch");
    }
    return op.matrix.transpose() * z;
}

Mat measure_cols(const MeasurementOperator& op, const Mat& x_cols) {
    if (x_cols.rows() != op.matrix.cols()) {
        throw std::invalid_argument("measure_cols: block dimension mismatch");
    }
    return op.matrix * x_cols;
}

Mat adjoint_cols(const MeasurementOperator& op, const Mat& z_cols) {
    if (z_cols.rows() != op.matrix.rows()) {
        throw std::invalid_argument("adjoint_cols: measurement dimension mismatch");
    }
    return op.matrix.transpose() * z_cols;
}

int sampling_dims(double rate, int block_dim) {
    if (!(rate > 0.0) || rate > 1.0) {
        throw std::invalid_argument("sampling_dims: rate must be in (0, 1]");
    }
    if (block_dim < 1) {
        throw std::invalid_argument("sampling_dims: block_dim must be >= 1");
    }
    const long d = std::lround(rate * block_dim);
    return static_cast<int>(std::max(1L, d));
}

} // namespace fbcs
