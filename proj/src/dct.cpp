#include "fbcs/dct.hpp"

#include <cmath>
#include <stdexcept>

namespace fbcs {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

int block_edge_of(Eigen::Index dim, const char* who) {
    const int edge = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
    if (edge < 1 || static_cast<Eigen::Index>(edge) * edge != dim) {
        throw std::invalid_argument(std::string(who) + ": dimension is not a perfect square");
    }
    return edge;
}

} // namespace

Dct2::Dct2(int block_edge) : edge_(block_edge) {
    if (block_edge < 1) {
        throw std::invalid_argument("Dct2: block edge must be >= 1");
    }
    basis_.resize(edge_, edge_);
    const double n = static_cast<double>(edge_);
    for (int k = 0; k < edge_; ++k) {
        const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
        for (int i = 0; i < edge_; ++i) {
            basis_(k, i) = scale * std::cos(M_PI * (2.0 * i + 1.0) * k / (2.0 * n));
        }
    }
}

Vec Dct2::forward(const Vec& block) const {
    if (block.size() != dim()) {
        throw std::invalid_argument("Dct2::forward: dimension mismatch");
    }
    Eigen::Map<const RowMat> x(block.data(), edge_, edge_);
    RowMat y = basis_ * x * basis_.transpose();
    return Eigen::Map<const Vec>(y.data(), dim());
}

Vec Dct2::inverse(const Vec& coeffs) const {
    if (coeffs.size() != dim()) {
        throw std::invalid_argument("Dct2::inverse: dimension mismatch");
    }
    Eigen::Map<const RowMat> c(coeffs.data(), edge_, edge_);
    RowMat y = basis_.transpose() * c * basis_;
    return Eigen::Map<const Vec>(y.data(), dim());
}

Mat Dct2::forward_cols(const Mat& blocks) const {
    if (blocks.rows() != dim()) {
        throw std::invalid_argument("Dct2::forward_cols: dimension mismatch");
    }
    Mat out(blocks.rows(), blocks.cols());
    for (Eigen::Index j = 0; j < blocks.cols(); ++j) {
        Eigen::Map<const RowMat> x(blocks.col(j).data(), edge_, edge_);
        RowMat y = basis_ * x * basis_.transpose();
        out.col(j) = Eigen::Map<const Vec>(y.data(), dim());
    }
    return out;
}

Mat Dct2::inverse_cols(const Mat& coeffs) const {
    if (coeffs.rows() != dim()) {
        throw std::invalid_argument("Dct2::inverse_cols: dimension mismatch");
    }
    Mat out(coeffs.rows(), coeffs.cols());
    for (Eigen::Index j = 0; j < coeffs.cols(); ++j) {
        Eigen::Map<const RowMat> c(coeffs.col(j).data(), edge_, edge_);
        RowMat y = basis_.transpose() * c * basis_;
        out.col(j) = Eigen::Map<const Vec>(y.data(), dim());
    }
    return out;
}

Vec dct2(const Vec& block) {
    return Dct2(block_edge_of(block.size(), "dct2")).forward(block);
}

Vec idct2(const Vec& coeffs) {
    return Dct2(block_edge_of(coeffs.size(), "idct2")).inverse(coeffs);
}

double soft_threshold(double v, double tau) {
    if (tau < 0.0) {
        throw std::invalid_argument("soft_threshold: tau must be >= 0");
    }
    const double mag = std::abs(v) - tau;
    if (mag <= 0.0) return 0.0;
    return v < 0.0 ? -mag : mag;
}

} // namespace fbcs
