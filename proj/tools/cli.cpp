#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "fbcs/analysis.hpp"
#include "fbcs/bench.hpp"
#include "fbcs/feedback.hpp"
#include "fbcs/metrics.hpp"
#include "fbcs/recon.hpp"
#include "fbcs/sensing.hpp"

namespace fbcs {

namespace {

struct CommonOptions {
    std::vector<double> rates;
    std::string recon = "pinv";
    int ista_iters = 200;
    double ista_tau = 10.0;
    double lambda = 1.0;
    int iters = 5;
    std::string init = "y0";
    int block = 32;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out;
    std::string format = "csv";
};

void add_recon_flags(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--recon", o.recon, "Reconstructor")
        ->check(CLI::IsMember({"pinv", "ista"}));
    cmd->add_option("--ista-iters", o.ista_iters, "ISTA iteration count")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--ista-tau", o.ista_tau, "ISTA soft threshold (0-255 scale)")
        ->check(CLI::NonNegativeNumber);
}

void add_feedback_flags(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--lambda", o.lambda, "Feedback multiplier");
    cmd->add_option("--iters", o.iters, "Total loop iterations (n_max)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--init", o.init, "Initial estimate")
        ->check(CLI::IsMember({"y0", "zero", "random"}));
}

ReconstructorSpec make_spec(const CommonOptions& o) {
    ReconstructorSpec spec;
    spec.kind = o.recon == "ista" ? ReconKind::ista : ReconKind::pinv;
    spec.ista_iterations = o.ista_iters;
    spec.ista_threshold = o.ista_tau;
    return spec;
}

FeedbackConfig make_feedback(const CommonOptions& o) {
    FeedbackConfig config;
    config.lambda = o.lambda;
    config.n_max = o.iters;
    config.init = o.init == "zero"     ? InitMode::zero
                  : o.init == "random" ? InitMode::random
                                       : InitMode::y0;
    config.init_seed = o.seed;
    return config;
}

double single_rate(const CommonOptions& o, const char* cmd) {
    if (o.rates.size() != 1) {
        throw std::invalid_argument(std::string(cmd) + ": exactly one --rates value expected");
    }
    return o.rates.front();
}

int cmd_recover(const CommonOptions& o, const std::string& image_path) {
    const double rate = single_rate(o, "recover");
    const Image original = load_pgm(image_path);

    const int dim = o.block * o.block;
    const MeasurementOperator op = make_operator(o.seed, dim, sampling_dims(rate, dim));
    const ImageRunResult run =
        run_on_image(original, op, make_spec(o), make_feedback(o), o.block, o.threads);

    const std::string prefix =
        o.out.empty() ? std::filesystem::path(image_path).stem().string() : o.out;
    const std::string baseline_path = prefix + "_baseline.pgm";
    const std::string compensated_path = prefix + "_compensated.pgm";
    save_pgm(run.baseline, baseline_path);
    save_pgm(run.compensated, compensated_path);

    const QualityScore q0 = quality(original, run.baseline);
    const QualityScore q1 = quality(original, run.compensated);
    std::printf("baseline:    %s  psnr=%.4f ssim=%.4f\n", baseline_path.c_str(), q0.psnr_db,
                q0.ssim);
    std::printf("compensated: %s  psnr=%.4f ssim=%.4f\n", compensated_path.c_str(), q1.psnr_db,
                q1.ssim);
    return 0;
}

int cmd_bench(const CommonOptions& o, const std::string& dataset_dir) {
    BenchConfig config;
    config.dataset_dir = dataset_dir;
    config.rates = o.rates;
    config.recon = make_spec(o);
    config.feedback = make_feedback(o);
    config.block_size = o.block;
    config.seed = o.seed;
    config.threads = o.threads;

    const std::vector<BenchRow> rows = run_benchmark(config);
    const std::vector<SummaryRow> summaries = summarize(rows);

    std::string out_path = o.out;
    if (o.format == "md") {
        if (out_path.empty()) out_path = "bench.md";
        emit_markdown(summaries, out_path);
    } else {
        if (out_path.empty()) out_path = "bench.csv";
        emit_csv(rows, out_path);
    }
    std::cout << to_markdown(summaries);
    std::cerr << "wrote " << out_path << " (" << rows.size() << " rows)\n";
    return 0;
}

int cmd_analyze(const CommonOptions& o) {
    const double rate = single_rate(o, "analyze");
    const int dim = o.block * o.block;
    const MeasurementOperator op = make_operator(o.seed, dim, sampling_dims(rate, dim));
    const StabilityReport report = build_stability_report(op, make_spec(o), o.lambda);

    if (o.out.empty()) {
        if (o.format == "csv") {
            write_report_csv(std::cout, report);
        } else {
            write_report(std::cout, report);
        }
    } else {
        std::ofstream out(o.out, std::ios::trunc);
        if (!out) {
            throw std::runtime_error("analyze: cannot open " + o.out + " for writing");
        }
        if (o.format == "csv") {
            write_report_csv(out, report);
        } else {
            write_report(out, report);
        }
    }

    if (report.has_steady_state && report.steady_state.status == SteadyStateStatus::divergent) {
        std::cerr << "analyze: loop diverges for lambda=" << o.lambda << "\n";
        return 3;
    }
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Block compressive sensing with closed-loop feedback compensation"};
    app.require_subcommand(1);

    CommonOptions recover_opts, bench_opts, analyze_opts;
    std::string image_path, dataset_dir;

    CLI::App* recover = app.add_subcommand(
        "recover", "Reconstruct one image; writes baseline and compensated PGMs");
    recover->add_option("--image", image_path, "Input PGM (P5)")->required();
    recover_opts.rates = {0.25};
    recover->add_option("--rates", recover_opts.rates, "Sampling rate (one value)")
        ->delimiter(',');
    add_recon_flags(recover, recover_opts);
    add_feedback_flags(recover, recover_opts);
    recover->add_option("--block", recover_opts.block, "Block size")->check(CLI::PositiveNumber);
    recover->add_option("--seed", recover_opts.seed, "Operator seed");
    recover->add_option("--out", recover_opts.out, "Output path prefix");
    recover->add_option("--threads", recover_opts.threads, "Worker threads (0 = auto)");

    CLI::App* bench = app.add_subcommand(
        "bench", "Run the (image x rate) grid over a dataset; writes CSV or Markdown");
    bench->add_option("--dataset", dataset_dir, "Directory of *.pgm images")->required();
    bench_opts.rates = {0.1, 0.25, 0.5};
    bench->add_option("--rates", bench_opts.rates, "Comma list of sampling rates")
        ->delimiter(',');
    add_recon_flags(bench, bench_opts);
    add_feedback_flags(bench, bench_opts);
    bench->add_option("--block", bench_opts.block, "Block size")->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_opts.seed, "Operator seed");
    bench->add_option("--out", bench_opts.out, "Output file");
    bench->add_option("--format", bench_opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "md"}));
    bench->add_option("--threads", bench_opts.threads, "Worker threads (0 = auto)");

    CLI::App* analyze = app.add_subcommand(
        "analyze", "Stability report for one (seed, block, rate, lambda, recon) pipeline");
    analyze_opts.rates = {0.25};
    analyze->add_option("--rates", analyze_opts.rates, "Sampling rate (one value)")
        ->delimiter(',');
    add_recon_flags(analyze, analyze_opts);
    analyze->add_option("--lambda", analyze_opts.lambda, "Feedback multiplier");
    analyze->add_option("--block", analyze_opts.block, "Block size")->check(CLI::PositiveNumber);
    analyze->add_option("--seed", analyze_opts.seed, "Operator seed");
    analyze->add_option("--out", analyze_opts.out, "Output file (default stdout)");
    analyze_opts.format = "text";
    analyze->add_option("--format", analyze_opts.format, "Output format")
        ->check(CLI::IsMember({"text", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (recover->parsed()) return cmd_recover(recover_opts, image_path);
        if (bench->parsed()) return cmd_bench(bench_opts, dataset_dir);
        return cmd_analyze(analyze_opts);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace fbcs
