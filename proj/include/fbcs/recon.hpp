#pragma once

#include <vector>

#include "fbcs/sensing.hpp"
#include "fbcs/types.hpp"

namespace fbcs {

enum class ReconKind { pinv, ista };

struct ReconstructorSpec {
    ReconKind kind = ReconKind::pinv;
    int ista_iterations = 200;
    double ista_threshold = 10.0; // tau, on the 0-255 coefficient scale
};

// Optional per-iteration diagnostics from recover_ista: the objective
// 0.5*||phi*idct2(c) - z||^2 + tau*||c||_1 after every update.
struct IstaDiagnostics {
    std::vector<double> objective;
};

// Minimum-norm least-squares solution phi^T z (rows of phi orthonormal).
Vec recover_pinv(const MeasurementOperator& op, const Vec& z);

// ISTA over 2-D DCT coefficients with unit step size (valid: ||phi||_2 = 1).
// Starts from the back-projection dct2(phi^T z) and runs a fixed iteration
// count for reproducibility.
Vec recover_ista(const MeasurementOperator& op, const Vec& z, const ReconstructorSpec& spec,
                 IstaDiagnostics* diag = nullptr);

// Dispatch on spec.kind.
Vec recover(const MeasurementOperator& op, const Vec& z, const ReconstructorSpec& spec);

// Column-wise recovery of many measurement vectors at once; used by the
// image pipeline and the Jacobian prober to exploit matrix-matrix products.
Mat recover_cols(const MeasurementOperator& op, const Mat& z_cols, const ReconstructorSpec& spec);

} // namespace fbcs
