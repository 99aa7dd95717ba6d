#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>

#include "fbcs/recon.hpp"
#include "fbcs/sensing.hpp"
#include "fbcs/types.hpp"

namespace fbcs {

struct JacobianEstimate {
    Mat jacobian; // D x D
    double probe_step = 0.0;
    Vec reference_point;
};

// Central-difference Jacobian of the recover(measure(.)) pipeline at x_ref:
// column j = [f(x + h e_j) - f(x - h e_j)] / (2h). Exact for linear
// pipelines up to roundoff. Guarded to D <= 256 (costs 2D pipeline
// evaluations and D^2 storage).
JacobianEstimate estimate_jacobian(const MeasurementOperator& op, const ReconstructorSpec& spec,
                                   const Vec& x_ref, double probe_step);

// Frobenius norm of I - lambda * G.
double contraction_factor(const Mat& jacobian, double lambda);

// (1 - D^{-1/2}, 1 + D^{-1/2}): the multiplier range whose limiting
// contraction factor |1 - lambda| * sqrt(D) stays below 1.
std::pair<double, double> admissible_lambda_interval(int dim);

// Largest eigenvalue modulus. Power iteration from the all-ones vector
// (1000 iterations or relative change < 1e-12), with a dense eigensolve
// fallback for matrices up to 64 x 64.
double spectral_radius(const Mat& m);

enum class SteadyStateStatus { converged, divergent, oscillating };

struct SteadyStateResult {
    double error_norm = 0.0; // ||u_n||_2 after the horizon
    SteadyStateStatus status = SteadyStateStatus::converged;
};

// Discrete error recursion of the linear (pinv) loop:
//   u_n = (I - lambda * phi^T phi) u_{n-1},  u_0 = y0 - phi^T phi x_init.
// The limit of u_n is the loop's steady-state error. Status is read from
// the trajectory: divergent when the norm grew monotonically over the last
// 10 steps, converged when the norm vanished relative to u_0 or the vector
// stopped changing, oscillating otherwise.
SteadyStateResult steady_state_error(const MeasurementOperator& op, double lambda, const Vec& y0,
                                     const Vec& x_init, int horizon);

struct StabilityReport {
    int block_dim = 0;
    int measurement_dim = 0;
    std::uint64_t seed = 0;
    ReconKind recon = ReconKind::pinv;
    double lambda = 1.0;
    bool jacobian_exact = false; // exact phi^T phi vs finite differences
    double probe_step = 0.0;     // 0 when exact
    double contraction_frobenius = 0.0;
    std::pair<double, double> admissible_interval{0.0, 0.0};
    double spectral_radius = 0.0; // of I - lambda * G
    double diagonal_dominance = 0.0;
    bool has_steady_state = false; // linear (pinv) pipelines only
    SteadyStateResult steady_state;
};

struct ReportOptions {
    double probe_step = 1e-3; // finite-difference step for ista pipelines
    int horizon = 200;        // steady-state recursion length
};

// Full diagnostic for one (operator, reconstructor, lambda) pipeline.
// pinv uses the exact Jacobian phi^T phi at any D; ista uses finite
// differences at a seeded reference point (D <= 256). The steady-state
// probe drives the loop with a seeded in-range y0 from a zero start so
// every mode of the error recursion is excited.
StabilityReport build_stability_report(const MeasurementOperator& op, const ReconstructorSpec& spec,
                                       double lambda, const ReportOptions& options = {});

const char* to_string(SteadyStateStatus status);

// Flat "key: value" block.
void write_report(std::ostream& out, const StabilityReport& report);

// One CSV row (with header): steady_state_error_norm prints the word
// "divergent" when the loop diverges, "n/a" when not applicable.
void write_report_csv(std::ostream& out, const StabilityReport& report);

} // namespace fbcs
