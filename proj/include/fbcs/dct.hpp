#pragma once

#include "fbcs/types.hpp"

namespace fbcs {

// Orthonormal type-II 2-D DCT on square blocks, applied to row-major
// flattened block vectors. Energy preserving: ||forward(x)|| = ||x||.
class Dct2 {
public:
    explicit Dct2(int block_edge);

    int block_edge() const { return edge_; }
    int dim() const { return edge_ * edge_; }

    Vec forward(const Vec& block) const;
    Vec inverse(const Vec& coeffs) const;

    // Per-column transforms for batched pipelines.
    Mat forward_cols(const Mat& blocks) const;
    Mat inverse_cols(const Mat& coeffs) const;

private:
    int edge_;
    Mat basis_; // B x B 1-D orthonormal DCT-II matrix
};

// Convenience wrappers over a per-call plan; the block dimension must be a
// perfect square.
Vec dct2(const Vec& block);
Vec idct2(const Vec& coeffs);

// sign(v) * max(|v| - tau, 0)
double soft_threshold(double v, double tau);

} // namespace fbcs
