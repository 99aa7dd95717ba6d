#include "fbcs/analysis.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "fbcs/rng.hpp"

namespace fbcs {

namespace {

constexpr int kJacobianDimGuard = 256;
constexpr int kDenseEigenLimit = 64;

Vec seeded_reference(std::uint64_t seed, int dim) {
    Rng rng(seed);
    Vec x(dim);
    for (int i = 0; i < dim; ++i) x[i] = rng.uniform(0.0, 255.0);
    return x;
}

} // namespace

JacobianEstimate estimate_jacobian(const MeasurementOperator& op, const ReconstructorSpec& spec,
                                   const Vec& x_ref, double probe_step) {
    const int dim = op.block_dim();
    if (x_ref.size() != dim) {
        throw std::invalid_argument("estimate_jacobian: reference point dimension mismatch");
    }
    if (!(probe_step > 0.0)) {
        throw std::invalid_argument("estimate_jacobian: probe step must be > 0");
    }
    if (dim > kJacobianDimGuard) {
        throw std::invalid_argument("estimate_jacobian: block dimension exceeds guard (256)");
    }

    // All 2D probes go through one batched recovery.
    Mat probes(dim, 2 * dim);
    probes.leftCols(dim).colwise() = x_ref;
    probes.rightCols(dim).colwise() = x_ref;
    for (int j = 0; j < dim; ++j) {
        probes(j, j) += probe_step;
        probes(j, dim + j) -= probe_step;
    }
    const Mat recovered = recover_cols(op, measure_cols(op, probes), spec);

    JacobianEstimate est;
    est.probe_step = probe_step;
    est.reference_point = x_ref;
    est.jacobian = (recovered.leftCols(dim) - recovered.rightCols(dim)) / (2.0 * probe_step);
    return est;
}

double contraction_factor(const Mat& jacobian, double lambda) {
    if (jacobian.rows() != jacobian.cols()) {
        throw std::invalid_argument("contraction_factor: matrix must be square");
    }
    Mat m = -lambda * jacobian;
    m.diagonal().array() += 1.0;
    return m.norm();
}

std::pair<double, double> admissible_lambda_interval(int dim) {
    if (dim < 1) {
        throw std::invalid_argument("admissible_lambda_interval: dimension must be >= 1");
    }
    const double half_width = 1.0 / std::sqrt(static_cast<double>(dim));
    return {1.0 - half_width, 1.0 + half_width};
}

double spectral_radius(const Mat& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("spectral_radius: matrix must be square");
    }
    const Eigen::Index n = m.rows();
    if (n == 0) {
        throw std::invalid_argument("spectral_radius: empty matrix");
    }

    Vec v = Vec::Ones(n);
    v /= v.norm();
    double estimate = 0.0;
    bool converged = false;
    bool degenerate = false;
    for (int it = 0; it < 1000; ++it) {
        const Vec w = m * v;
        const double norm = w.norm();
        if (norm == 0.0) {
            // Start vector annihilated; only the dense path can resolve this.
            estimate = 0.0;
            degenerate = true;
            break;
        }
        const double change = std::abs(norm - estimate);
        estimate = norm;
        v = w / norm;
        if (it > 0 && change <= 1e-12 * std::max(1.0, estimate)) {
            converged = true;
            break;
        }
    }

    if ((!converged || degenerate) && n <= kDenseEigenLimit) {
        Eigen::EigenSolver<Mat> solver(m, /*computeEigenvectors=*/false);
        return solver.eigenvalues().cwiseAbs().maxCoeff();
    }
    return estimate;
}

SteadyStateResult steady_state_error(const MeasurementOperator& op, double lambda, const Vec& y0,
                                     const Vec& x_init, int horizon) {
    if (horizon < 1) {
        throw std::invalid_argument("steady_state_error: horizon must be >= 1");
    }
    if (y0.size() != op.matrix.cols() || x_init.size() != op.matrix.cols()) {
        throw std::invalid_argument("steady_state_error: block dimension mismatch");
    }

    Vec u = y0 - adjoint(op, measure(op, x_init));
    const double u0_norm = u.norm();
    SteadyStateResult result;
    if (u0_norm == 0.0) {
        return result; // already at the fixed point
    }

    std::vector<double> norms;
    std::vector<double> deltas; // ||u_k - u_{k-1}||
    norms.reserve(horizon);
    deltas.reserve(horizon);
    for (int k = 0; k < horizon; ++k) {
        const Vec next = u - lambda * adjoint(op, measure(op, u));
        deltas.push_back((next - u).norm());
        u = next;
        norms.push_back(u.norm());
    }
    result.error_norm = norms.back();

    const std::size_t window = std::min<std::size_t>(10, norms.size());
    const double scale = std::max(u0_norm, result.error_norm);

    if (result.error_norm < 1e-9 * u0_norm) {
        result.status = SteadyStateStatus::converged;
        return result;
    }
    bool stable = true;
    for (std::size_t k = deltas.size() - window; k < deltas.size(); ++k) {
        if (deltas[k] > 1e-9 * scale) stable = false;
    }
    if (stable) {
        result.status = SteadyStateStatus::converged; // nonzero steady error
        return result;
    }
    bool growing = norms.size() >= 2;
    const std::size_t pairs = std::min<std::size_t>(10, norms.size() - 1);
    for (std::size_t k = norms.size() - pairs; k < norms.size(); ++k) {
        if (norms[k] <= norms[k - 1] * (1.0 + 1e-12)) growing = false;
    }
    result.status = growing ? SteadyStateStatus::divergent : SteadyStateStatus::oscillating;
    return result;
}

StabilityReport build_stability_report(const MeasurementOperator& op, const ReconstructorSpec& spec,
                                       double lambda, const ReportOptions& options) {
    if (!std::isfinite(lambda)) {
        throw std::invalid_argument("build_stability_report: lambda must be finite");
    }
    const int dim = op.block_dim();

    StabilityReport report;
    report.block_dim = dim;
    report.measurement_dim = op.measurement_dim();
    report.seed = op.seed;
    report.recon = spec.kind;
    report.lambda = lambda;
    report.admissible_interval = admissible_lambda_interval(dim);

    Mat jacobian;
    if (spec.kind == ReconKind::pinv) {
        report.jacobian_exact = true;
        jacobian = op.matrix.transpose() * op.matrix;
    } else {
        report.jacobian_exact = false;
        report.probe_step = options.probe_step;
        jacobian = estimate_jacobian(op, spec, seeded_reference(op.seed, dim), options.probe_step)
                       .jacobian;
    }

    report.contraction_frobenius = contraction_factor(jacobian, lambda);
    report.diagonal_dominance = jacobian.diagonal().norm() / jacobian.norm();

    Mat iteration = -lambda * jacobian;
    iteration.diagonal().array() += 1.0;
    report.spectral_radius = spectral_radius(iteration);

    if (spec.kind == ReconKind::pinv) {
        // In-range y0 from a zero start excites every loop mode.
        const Vec x_true = seeded_reference(op.seed, dim);
        const Vec y0 = recover_pinv(op, measure(op, x_true));
        report.has_steady_state = true;
        report.steady_state =
            steady_state_error(op, lambda, y0, Vec::Zero(dim), options.horizon);
    }
    return report;
}

const char* to_string(SteadyStateStatus status) {
    switch (status) {
        case SteadyStateStatus::converged: return "converged";
        case SteadyStateStatus::divergent: return "divergent";
        case SteadyStateStatus::oscillating: return "oscillating";
    }
    return "unknown";
}

namespace {

const char* recon_name(ReconKind kind) {
    return kind == ReconKind::pinv ? "pinv" : "ista";
}

} // namespace

void write_report(std::ostream& out, const StabilityReport& r) {
    out << "block_dim: " << r.block_dim << '\n'
        << "measurement_dim: " << r.measurement_dim << '\n'
        << "seed: " << r.seed << '\n'
        << "reconstructor: " << recon_name(r.recon) << '\n'
        << "lambda: " << r.lambda << '\n'
        << "jacobian: " << (r.jacobian_exact ? "exact" : "finite-difference") << '\n';
    if (!r.jacobian_exact) {
        out << "probe_step: " << r.probe_step << '\n';
    }
    out << "contraction_frobenius: " << r.contraction_frobenius << '\n'
        << "admissible_lambda_low: " << r.admissible_interval.first << '\n'
        << "admissible_lambda_high: " << r.admissible_interval.second << '\n'
        << "spectral_radius: " << r.spectral_radius << '\n'
        << "diagonal_dominance: " << r.diagonal_dominance << '\n';
    if (r.has_steady_state) {
        if (r.steady_state.status == SteadyStateStatus::divergent) {
            out << "steady_state_error_norm: divergent\n";
        } else {
            out << "steady_state_error_norm: " << r.steady_state.error_norm << '\n';
        }
        out << "steady_state_status: " << to_string(r.steady_state.status) << '\n';
    } else {
        out << "steady_state_error_norm: n/a\n"
            << "steady_state_status: n/a\n";
    }
}

void write_report_csv(std::ostream& out, const StabilityReport& r) {
    out << "block_dim,measurement_dim,seed,reconstructor,lambda,contraction_frobenius,"
           "admissible_low,admissible_high,spectral_radius,diagonal_dominance,"
           "steady_state_error_norm,steady_state_status\n";
    out << r.block_dim << ',' << r.measurement_dim << ',' << r.seed << ','
        << recon_name(r.recon) << ',' << r.lambda << ',' << r.contraction_frobenius << ','
        << r.admissible_interval.first << ',' << r.admissible_interval.second << ','
        << r.spectral_radius << ',' << r.diagonal_dominance << ',';
    if (!r.has_steady_state) {
        out << "n/a,n/a";
    } else if (r.steady_state.status == SteadyStateStatus::divergent) {
        out << "divergent," << to_string(r.steady_state.status);
    } else {
        out << r.steady_state.error_norm << ',' << to_string(r.steady_state.status);
    }
    out << '\n';
}

} // namespace fbcs
