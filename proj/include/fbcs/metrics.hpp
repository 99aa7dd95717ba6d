#pragma once

#include "fbcs/image.hpp"

namespace fbcs {

inline constexpr double kPsnrCap = 99.0; // returned when MSE is exactly 0

struct QualityScore {
    double psnr_db = 0.0;
    double ssim = 0.0;
};

// 10 * log10(255^2 / MSE) on the 0-255 scale; kPsnrCap for identical images.
double psnr(const Image& reference, const Image& test);

// Single-scale SSIM: 11x11 Gaussian window (sigma 1.5, normalized to sum 1),
// C1 = (0.01*255)^2, C2 = (0.03*255)^2, valid-region windows only, mean over
// window positions. Requires min(width, height) >= 11.
double ssim(const Image& reference, const Image& test);

QualityScore quality(const Image& reference, const Image& test);

} // namespace fbcs
