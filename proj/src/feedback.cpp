#include "fbcs/feedback.hpp"

#include <cmath>
#include <stdexcept>

#include "fbcs/rng.hpp"
#include "parallel.hpp"

namespace fbcs {

namespace {

void validate_config(const FeedbackConfig& config, const char* who) {
    if (config.n_max < 1) {
        throw std::invalid_argument(std::string(who) + ": n_max must be >= 1");
    }
    if (!std::isfinite(config.lambda)) {
        throw std::invalid_argument(std::string(who) + ": lambda must be finite");
    }
}

} // namespace

Vec init_estimate(const FeedbackConfig& config, const Vec& y0, int dim) {
    if (y0.size() != dim) {
        throw std::invalid_argument("init_estimate: y0 dimension mismatch");
    }
    switch (config.init) {
        case InitMode::y0:
            return y0;
        case InitMode::zero:
            return Vec::Zero(dim);
        case InitMode::random: {
            Rng rng(config.init_seed);
            Vec x(dim);
            for (int i = 0; i < dim; ++i) x[i] = rng.uniform(0.0, 255.0);
            return x;
        }
    }
    throw std::invalid_argument("init_estimate: unknown init mode");
}

std::pair<Vec, Vec> feedback_step(const MeasurementOperator& op, const ReconstructorSpec& spec,
                                  const Vec& y0, const Vec& x_prev, double lambda) {
    if (y0.size() != op.matrix.cols() || x_prev.size() != op.matrix.cols()) {
        throw std::invalid_argument("feedback_step: block dimension mismatch");
    }
    Vec e = y0 - recover(op, measure(op, x_prev), spec);
    Vec x_next = x_prev + lambda * e;
    return {std::move(x_next), std::move(e)};
}

RecoveryResult run_block(const MeasurementOperator& op, const ReconstructorSpec& spec,
                         const Vec& x0_block, const FeedbackConfig& config) {
    const Vec z0 = measure(op, x0_block);
    const Vec y0 = recover(op, z0, spec);
    return run_block_measured(op, spec, z0, y0, config);
}

RecoveryResult run_block_measured(const MeasurementOperator& op, const ReconstructorSpec& spec,
                                  const Vec& z0, const Vec& y0, const FeedbackConfig& config) {
    validate_config(config, "run_block_measured");
    if (z0.size() != op.matrix.rows() || y0.size() != op.matrix.cols()) {
        throw std::invalid_argument("run_block_measured: dimension mismatch");
    }
    const int dim = op.block_dim();
    const double lambda = config.lambda;

    RecoveryResult result;
    result.y0 = y0;
    result.trace.reserve(config.n_max);

    Vec x = init_estimate(config, y0, dim);
    Vec m = measure(op, x);
    Vec y = recover(op, m, spec); // y_1

    IterationRecord first;
    first.x = x;
    first.error = y0 - y;
    first.correction = lambda * first.error;
    first.measurement_residual = (m - z0).norm();
    first.recon_residual = (y0 - y).norm();
    result.trace.push_back(std::move(first));

    for (int n = 2; n <= config.n_max; ++n) {
        IterationRecord rec;
        rec.error = y0 - y; // e_n = y0 - y_{n-1}
        rec.correction = lambda * rec.error;
        x += rec.correction;
        m = measure(op, x);
        y = recover(op, m, spec);
        rec.x = x;
        rec.measurement_residual = (m - z0).norm();
        rec.recon_residual = (y0 - y).norm();
        result.trace.push_back(std::move(rec));
    }

    result.x_final = result.trace.back().x;
    return result;
}

namespace {

// Columns per batch. Fixed so that results never depend on the thread count.
constexpr int kBatchColumns = 16;

void run_batch(const MeasurementOperator& op, const ReconstructorSpec& spec,
               const FeedbackConfig& config, const std::vector<Vec>& blocks,
               std::size_t begin, std::size_t end, std::vector<RecoveryResult>& out) {
    const int dim = op.block_dim();
    const int nb = static_cast<int>(end - begin);
    const double lambda = config.lambda;

    Mat x0(dim, nb);
    for (int j = 0; j < nb; ++j) x0.col(j) = blocks[begin + j];

    const Mat z0 = measure_cols(op, x0);
    const Mat y0 = recover_cols(op, z0, spec);

    Mat x(dim, nb);
    switch (config.init) {
        case InitMode::y0:
            x = y0;
            break;
        case InitMode::zero:
            x.setZero();
            break;
        case InitMode::random: {
            // Same draw as init_estimate, shared by every block of the run.
            const Vec v = init_estimate(config, Vec::Zero(dim), dim);
            x.colwise() = v;
            break;
        }
    }

    for (int j = 0; j < nb; ++j) {
        RecoveryResult& r = out[begin + j];
        r.y0 = y0.col(j);
        r.trace.reserve(config.n_max);
    }

    Mat m = measure_cols(op, x);
    Mat y = recover_cols(op, m, spec); // y_1
    for (int j = 0; j < nb; ++j) {
        IterationRecord rec;
        rec.x = x.col(j);
        rec.error = y0.col(j) - y.col(j);
        rec.correction = lambda * rec.error;
        rec.measurement_residual = (m.col(j) - z0.col(j)).norm();
        rec.recon_residual = rec.error.norm();
        out[begin + j].trace.push_back(std::move(rec));
    }

    for (int n = 2; n <= config.n_max; ++n) {
        const Mat e = y0 - y;
        x += lambda * e;
        m = measure_cols(op, x);
        y = recover_cols(op, m, spec);
        for (int j = 0; j < nb; ++j) {
            IterationRecord rec;
            rec.x = x.col(j);
            rec.error = e.col(j);
            rec.correction = lambda * rec.error;
            rec.measurement_residual = (m.col(j) - z0.col(j)).norm();
            rec.recon_residual = (y0.col(j) - y.col(j)).norm();
            out[begin + j].trace.push_back(std::move(rec));
        }
    }

    for (int j = 0; j < nb; ++j) {
        out[begin + j].x_final = out[begin + j].trace.back().x;
    }
}

} // namespace

ImageRunResult run_on_image(const Image& image, const MeasurementOperator& op,
                            const ReconstructorSpec& spec, const FeedbackConfig& config,
                            int block_size, int threads) {
    validate_config(config, "run_on_image");
    if (op.block_dim() != block_size * block_size) {
        throw std::invalid_argument("run_on_image: operator block dimension != block_size^2");
    }

    BlockSet set = to_blocks(image, block_size);
    const std::size_t nb = set.blocks.size();
    std::vector<RecoveryResult> traces(nb);

    const int tasks = static_cast<int>((nb + kBatchColumns - 1) / kBatchColumns);
    detail::run_tasks(
        tasks,
        [&](int t) {
            const std::size_t begin = static_cast<std::size_t>(t) * kBatchColumns;
            const std::size_t end = std::min(nb, begin + kBatchColumns);
            run_batch(op, spec, config, set.blocks, begin, end, traces);
        },
        threads);

    BlockSet baseline_set{set.layout, {}};
    BlockSet compensated_set{set.layout, {}};
    baseline_set.blocks.reserve(nb);
    compensated_set.blocks.reserve(nb);
    for (const RecoveryResult& r : traces) {
        baseline_set.blocks.push_back(r.y0);
        compensated_set.blocks.push_back(r.x_final);
    }

    ImageRunResult result;
    result.baseline = from_blocks(baseline_set);
    result.compensated = from_blocks(compensated_set);
    clip(result.baseline);
    clip(result.compensated);
    result.traces = std::move(traces);
    return result;
}

} // namespace fbcs
