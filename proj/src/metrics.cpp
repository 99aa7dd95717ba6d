#include "fbcs/metrics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace fbcs {

double psnr(const Image& reference, const Image& test) {
    if (!reference.same_size(test)) {
        throw std::invalid_argument("psnr: image dimensions differ");
    }
    if (reference.pixel_count() == 0) {
        throw std::invalid_argument("psnr: empty image");
    }
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < reference.data.size(); ++i) {
        const double diff = reference.data[i] - test.data[i];
        sum_sq += diff * diff;
    }
    const double mse = sum_sq / static_cast<double>(reference.pixel_count());
    if (mse == 0.0) return kPsnrCap;
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

std::array<double, kWindow * kWindow> gaussian_window() {
    std::array<double, kWindow * kWindow> w{};
    const int half = kWindow / 2;
    double sum = 0.0;
    for (int y = 0; y < kWindow; ++y) {
        for (int x = 0; x < kWindow; ++x) {
            const double dy = y - half;
            const double dx = x - half;
            const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * kSigma * kSigma));
            w[y * kWindow + x] = v;
            sum += v;
        }
    }
    for (double& v : w) v /= sum;
    return w;
}

} // namespace

double ssim(const Image& reference, const Image& test) {
    if (!reference.same_size(test)) {
        throw std::invalid_argument("ssim: image dimensions differ");
    }
    if (reference.width < kWindow || reference.height < kWindow) {
        throw std::invalid_argument("ssim: image smaller than the 11x11 window");
    }
    static const std::array<double, kWindow * kWindow> window = gaussian_window();

    double total = 0.0;
    long count = 0;
    for (int wy = 0; wy + kWindow <= reference.height; ++wy) {
        for (int wx = 0; wx + kWindow <= reference.width; ++wx) {
            double mu_x = 0.0, mu_y = 0.0;
            double xx = 0.0, yy = 0.0, xy = 0.0;
            for (int y = 0; y < kWindow; ++y) {
                for (int x = 0; x < kWindow; ++x) {
                    const double w = window[y * kWindow + x];
                    const double a = reference.at(wy + y, wx + x);
                    const double b = test.at(wy + y, wx + x);
                    mu_x += w * a;
                    mu_y += w * b;
                    xx += w * a * a;
                    yy += w * b * b;
                    xy += w * a * b;
                }
            }
            const double var_x = xx - mu_x * mu_x;
            const double var_y = yy - mu_y * mu_y;
            const double cov = xy - mu_x * mu_y;
            const double num = (2.0 * mu_x * mu_y + kC1) * (2.0 * cov + kC2);
            const double den = (mu_x * mu_x + mu_y * mu_y + kC1) * (var_x + var_y + kC2);
            total += num / den;
            ++count;
        }
    }
    return total / static_cast<double>(count);
}

QualityScore quality(const Image& reference, const Image& test) {
    return {psnr(reference, test), ssim(reference, test)};
}

} // namespace fbcs
