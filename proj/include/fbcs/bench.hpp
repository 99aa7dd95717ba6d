#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fbcs/feedback.hpp"
#include "fbcs/image.hpp"
#include "fbcs/recon.hpp"

namespace fbcs {

struct BenchConfig {
    std::string dataset_dir;
    std::vector<double> rates; // each in (0, 1]
    ReconstructorSpec recon;
    FeedbackConfig feedback;
    int block_size = 32;
    std::uint64_t seed = 1;
    int threads = 0; // 0 = hardware concurrency
};

// One (image, rate) cell. baseline ("original") and compensated ("proposed")
// metrics are computed against the same source image from the same z0.
struct BenchRow {
    std::string dataset;
    std::string image;
    double rate = 0.0;
    double psnr_original = 0.0;
    double psnr_proposed = 0.0;
    double ssim_original = 0.0;
    double ssim_proposed = 0.0;
    double lambda = 1.0;
    int n_max = 5;
    std::uint64_t seed = 0;
};

struct SummaryRow {
    std::string dataset;
    double rate = 0.0;
    double psnr_original = 0.0;
    double psnr_proposed = 0.0;
    double ssim_original = 0.0;
    double ssim_proposed = 0.0;
    int image_count = 0;
};

// Loads every *.pgm in dir (non-recursive), sorted by filename bytewise.
// Non-PGM files are skipped; a malformed .pgm is a hard error; an empty
// result is an error. Returned names are the file stems.
std::vector<std::pair<std::string, Image>> scan_dataset(const std::string& dir);

// Runs the full (image x rate) grid: one operator per rate from
// (seed, D = B^2, d = sampling_dims(rate, D)), shared by all images.
// Rows are ordered by (dataset, image name, rate ascending); output is
// fully deterministic for a fixed config.
std::vector<BenchRow> run_benchmark(const BenchConfig& config);

// Arithmetic means over images, grouped by (dataset, rate).
std::vector<SummaryRow> summarize(const std::vector<BenchRow>& rows);

std::string to_csv(const std::vector<BenchRow>& rows);
std::string to_csv(const std::vector<SummaryRow>& rows);
std::string to_markdown(const std::vector<SummaryRow>& rows);

void emit_csv(const std::vector<BenchRow>& rows, const std::string& path);
void emit_csv(const std::vector<SummaryRow>& rows, const std::string& path);
void emit_markdown(const std::vector<SummaryRow>& rows, const std::string& path);

} // namespace fbcs
