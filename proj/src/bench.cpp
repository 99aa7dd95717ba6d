#include "fbcs/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "fbcs/metrics.hpp"
#include "fbcs/sensing.hpp"

namespace fbcs {

namespace fs = std::filesystem;

std::vector<std::pair<std::string, Image>> scan_dataset(const std::string& dir) {
    const fs::path root(dir);
    if (!fs::is_directory(root)) {
        throw std::runtime_error("scan_dataset: not a directory: " + dir);
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
        return a.filename().string() < b.filename().string();
    });

    std::vector<std::pair<std::string, Image>> images;
    images.reserve(files.size());
    for (const fs::path& file : files) {
        // a malformed .pgm is a hard error, never a skip
        images.emplace_back(file.stem().string(), load_pgm(file.string()));
    }
    if (images.empty()) {
        throw std::runtime_error("scan_dataset: no images in " + dir);
    }
    return images;
}

namespace {

std::string dataset_name(const std::string& dir) {
    fs::path p = fs::path(dir).lexically_normal();
    if (!p.has_filename()) p = p.parent_path();
    const std::string name = p.filename().string();
    return name.empty() ? dir : name;
}

} // namespace

std::vector<BenchRow> run_benchmark(const BenchConfig& config) {
    if (config.rates.empty()) {
        throw std::invalid_argument("run_benchmark: rates must be non-empty");
    }
    if (config.block_size < 1) {
        throw std::invalid_argument("run_benchmark: block size must be >= 1");
    }
    std::vector<double> rates = config.rates;
    std::sort(rates.begin(), rates.end());

    const int dim = config.block_size * config.block_size;
    std::vector<MeasurementOperator> ops;
    ops.reserve(rates.size());
    for (double rate : rates) {
        ops.push_back(make_operator(config.seed, dim, sampling_dims(rate, dim)));
    }

    const auto images = scan_dataset(config.dataset_dir);
    const std::string dataset = dataset_name(config.dataset_dir);

    std::vector<BenchRow> rows;
    rows.reserve(images.size() * rates.size());
    for (const auto& [name, image] : images) {
        for (std::size_t k = 0; k < rates.size(); ++k) {
            const ImageRunResult run = run_on_image(image, ops[k], config.recon, config.feedback,
                                                    config.block_size, config.threads);
            BenchRow row;
            row.dataset = dataset;
            row.image = name;
            row.rate = rates[k];
            row.psnr_original = psnr(image, run.baseline);
            row.psnr_proposed = psnr(image, run.compensated);
            row.ssim_original = ssim(image, run.baseline);
            row.ssim_proposed = ssim(image, run.compensated);
            row.lambda = config.feedback.lambda;
            row.n_max = config.feedback.n_max;
            row.seed = config.seed;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<SummaryRow> summarize(const std::vector<BenchRow>& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("summarize: no rows");
    }
    std::vector<SummaryRow> summaries;
    for (const BenchRow& row : rows) {
        auto it = std::find_if(summaries.begin(), summaries.end(), [&](const SummaryRow& s) {
            return s.dataset == row.dataset && s.rate == row.rate;
        });
        if (it == summaries.end()) {
            summaries.push_back(SummaryRow{row.dataset, row.rate, 0, 0, 0, 0, 0});
            it = std::prev(summaries.end());
        }
        it->psnr_original += row.psnr_original;
        it->psnr_proposed += row.psnr_proposed;
        it->ssim_original += row.ssim_original;
        it->ssim_proposed += row.ssim_proposed;
        it->image_count += 1;
    }
    for (SummaryRow& s : summaries) {
        s.psnr_original /= s.image_count;
        s.psnr_proposed /= s.image_count;
        s.ssim_original /= s.image_count;
        s.ssim_proposed /= s.image_count;
    }
    std::sort(summaries.begin(), summaries.end(), [](const SummaryRow& a, const SummaryRow& b) {
        return a.dataset != b.dataset ? a.dataset < b.dataset : a.rate < b.rate;
    });
    return summaries;
}

namespace {

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

void write_file(const std::string& text, const std::string& path, const char* who) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error(std::string(who) + ": cannot open " + path + " for writing");
    }
    out << text;
    if (!out) {
        throw std::runtime_error(std::string(who) + ": write failed: " + path);
    }
}

} // namespace

std::string to_csv(const std::vector<BenchRow>& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("to_csv: no rows");
    }
    std::string out = "dataset,image,rate,psnr_original,psnr_proposed,"
                      "ssim_original,ssim_proposed,lambda,n_max,seed\n";
    for (const BenchRow& r : rows) {
        out += r.dataset + ',' + r.image + ',' + fixed4(r.rate) + ',' +
               fixed4(r.psnr_original) + ',' + fixed4(r.psnr_proposed) + ',' +
               fixed4(r.ssim_original) + ',' + fixed4(r.ssim_proposed) + ',' +
               fixed4(r.lambda) + ',' + std::to_string(r.n_max) + ',' +
               std::to_string(r.seed) + '\n';
    }
    return out;
}

std::string to_csv(const std::vector<SummaryRow>& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("to_csv: no summary rows");
    }
    std::string out = "dataset,rate,psnr_original,psnr_proposed,ssim_original,ssim_proposed,images\n";
    for (const SummaryRow& r : rows) {
        out += r.dataset + ',' + fixed4(r.rate) + ',' + fixed4(r.psnr_original) + ',' +
               fixed4(r.psnr_proposed) + ',' + fixed4(r.ssim_original) + ',' +
               fixed4(r.ssim_proposed) + ',' + std::to_string(r.image_count) + '\n';
    }
    return out;
}

std::string to_markdown(const std::vector<SummaryRow>& rows) {
    if (rows.empty()) {
        throw std::invalid_argument("to_markdown: no summary rows");
    }
    std::string out = "| dataset | r | PSNR-orig | PSNR-prop | SSIM-orig | SSIM-prop |\n"
                      "|---|---|---|---|---|---|\n";
    for (const SummaryRow& r : rows) {
        out += "| " + r.dataset + " | " + fixed4(r.rate) + " | " + fixed4(r.psnr_original) +
               " | " + fixed4(r.psnr_proposed) + " | " + fixed4(r.ssim_original) + " | " +
               fixed4(r.ssim_proposed) + " |\n";
    }
    return out;
}

void emit_csv(const std::vector<BenchRow>& rows, const std::string& path) {
    write_file(to_csv(rows), path, "emit_csv");
}

void emit_csv(const std::vector<SummaryRow>& rows, const std::string& path) {
    write_file(to_csv(rows), path, "emit_csv");
}

void emit_markdown(const std::vector<SummaryRow>& rows, const std::string& path) {
    write_file(to_markdown(rows), path, "emit_markdown");
}

} // namespace fbcs
