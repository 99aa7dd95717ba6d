#include "fbcs/recon.hpp"

#include <cmath>
#include <stdexcept>

#include "fbcs/dct.hpp"

namespace fbcs {

namespace {

void validate_spec(const ReconstructorSpec& spec, const char* who) {
    if (spec.ista_iterations < 1) {
        throw std::invalid_argument(std::string(who) + ": ista_iterations must be >= 1");
    }
    if (!(spec.ista_threshold >= 0.0)) {
        throw std::invalid_argument(std::string(who) + ": ista_threshold must be >= 0");
    }
}

int dct_edge_for(const MeasurementOperator& op, const char* who) {
    const int dim = op.block_dim();
    const int edge = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
    if (edge * edge != dim) {
        throw std::invalid_argument(std::string(who) + ": block dimension is not a perfect square");
    }
    return edge;
}

} // namespace

Vec recover_pinv(const MeasurementOperator& op, const Vec& z) {
    return adjoint(op, z);
}

Vec recover_ista(const MeasurementOperator& op, const Vec& z, const ReconstructorSpec& spec,
                 IstaDiagnostics* diag) {
    validate_spec(spec, "recover_ista");
    if (z.size() != op.matrix.rows()) {
        throw std::invalid_argument("recover_ista: measurement dimension mismatch");
    }
    const Dct2 dct(dct_edge_for(op, "recover_ista"));
    const double tau = spec.ista_threshold;

    Vec coeffs = dct.forward(adjoint(op, z));
    if (diag) diag->objective.clear();
    for (int iter = 0; iter < spec.ista_iterations; ++iter) {
        const Vec residual = z - measure(op, dct.inverse(coeffs));
        const Vec grad_step = coeffs + dct.forward(adjoint(op, residual));
        for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
            coeffs[i] = soft_threshold(grad_step[i], tau);
        }
        if (diag) {
            const double fit = 0.5 * (z - measure(op, dct.inverse(coeffs))).squaredNorm();
            diag->objective.push_back(fit + tau * coeffs.lpNorm<1>());
        }
    }
    return dct.inverse(coeffs);
}

Vec recover(const MeasurementOperator& op, const Vec& z, const ReconstructorSpec& spec) {
    switch (spec.kind) {
        case ReconKind::pinv: return recover_pinv(op, z);
        case ReconKind::ista: return recover_ista(op, z, spec);
    }
    throw std::invalid_argument("recover: unknown reconstructor kind");
}

Mat recover_cols(const MeasurementOperator& op, const Mat& z_cols, const ReconstructorSpec& spec) {
    if (z_cols.rows() != op.matrix.rows()) {
        throw std::invalid_argument("recover_cols: measurement dimension mismatch");
    }
    if (spec.kind == ReconKind::pinv) {
        return adjoint_cols(op, z_cols);
    }
    validate_spec(spec, "recover_cols");
    const Dct2 dct(dct_edge_for(op, "recover_cols"));
    const double tau = spec.ista_threshold;

    Mat coeffs = dct.forward_cols(adjoint_cols(op, z_cols));
    for (int iter = 0; iter < spec.ista_iterations; ++iter) {
        const Mat residual = z_cols - measure_cols(op, dct.inverse_cols(coeffs));
        Mat grad_step = coeffs + dct.forward_cols(adjoint_cols(op, residual));
        coeffs = grad_step.unaryExpr([tau](double v) { return soft_threshold(v, tau); });
    }
    return dct.inverse_cols(coeffs);
}

} // namespace fbcs
