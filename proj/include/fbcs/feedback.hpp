#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fbcs/image.hpp"
#include "fbcs/recon.hpp"
#include "fbcs/sensing.hpp"
#include "fbcs/types.hpp"

namespace fbcs {

enum class InitMode { y0, zero, random };

struct FeedbackConfig {
    double lambda = 1.0;
    int n_max = 5; // total iterations, the initialization counts as n = 1
    InitMode init = InitMode::y0;
    std::uint64_t init_seed = 0; // used by InitMode::random
};

// One closed-loop iteration n. `error` is the e that produced x_n
// (e_n = y0 - y_{n-1}); for n = 1 it is evaluated at the initial estimate
// (e_1 = y0 - RC(MS(x_1))). correction = lambda * error, entrywise exact.
struct IterationRecord {
    Vec x;
    Vec error;
    Vec correction;
    double measurement_residual = 0.0; // ||MS(x_n) - z0||_2
    double recon_residual = 0.0;       // ||y0 - RC(MS(x_n))||_2
};

using IterationTrace = std::vector<IterationRecord>;

struct RecoveryResult {
    Vec y0;      // initial open-loop reconstruction
    Vec x_final; // x_{n_max}, the system output
    IterationTrace trace;
};

// Initial estimate x_1: a copy of y0, the zero vector, or seeded uniform
// draws in [0, 255).
Vec init_estimate(const FeedbackConfig& config, const Vec& y0, int dim);

// One update: e = y0 - RC(MS(x_prev)); x_next = x_prev + lambda * e.
// Returns (x_next, e).
std::pair<Vec, Vec> feedback_step(const MeasurementOperator& op, const ReconstructorSpec& spec,
                                  const Vec& y0, const Vec& x_prev, double lambda);

// Full closed-loop run on one block: z0 = MS(x0), y0 = RC(z0), then n_max
// traced iterations of the compensation loop.
RecoveryResult run_block(const MeasurementOperator& op, const ReconstructorSpec& spec,
                         const Vec& x0_block, const FeedbackConfig& config);

// Same loop for measurement-only inputs (precomputed z0, y0 pair).
RecoveryResult run_block_measured(const MeasurementOperator& op, const ReconstructorSpec& spec,
                                  const Vec& z0, const Vec& y0, const FeedbackConfig& config);

struct ImageRunResult {
    Image baseline;    // reassembled from the y0 blocks
    Image compensated; // reassembled from the x_final blocks
    std::vector<RecoveryResult> traces; // one per block, row-major block order
};

// Tiles the image, runs the loop on every block, reassembles and clips both
// outputs to [0, 255]. Blocks are processed in fixed-size column batches;
// results are bit-identical for any thread count (threads = 0 picks the
// hardware concurrency).
ImageRunResult run_on_image(const Image& image, const MeasurementOperator& op,
                            const ReconstructorSpec& spec, const FeedbackConfig& config,
                            int block_size, int threads = 0);

} // namespace fbcs
