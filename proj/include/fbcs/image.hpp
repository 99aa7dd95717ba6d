#pragma once

#include <string>
#include <vector>

#include "fbcs/types.hpp"

namespace fbcs {

// Grayscale raster on the 0-255 real scale, row-major.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> data; // size = width * height

    double& at(int y, int x) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int y, int x) const { return data[static_cast<std::size_t>(y) * width + x]; }
    std::size_t pixel_count() const { return data.size(); }
    bool same_size(const Image& other) const {
        return width == other.width && height == other.height;
    }
};

Image make_image(int width, int height, double fill = 0.0);

// Binary PGM (P5), maxval 255 only. Pixel bytes are converted to reals
// without scaling. Header "#" comments are skipped.
Image load_pgm(const std::string& path);

// Writes canonical "P5\n<w> <h>\n255\n" followed by the payload. Each value
// is rounded to the nearest integer (half away from zero) and clipped
// to [0, 255].
void save_pgm(const Image& image, const std::string& path);

// Clamps all pixel values to [0, 255].
void clip(Image& image);

struct BlockLayout {
    int block_size = 0;
    int padded_width = 0;
    int padded_height = 0;
    int original_width = 0;
    int original_height = 0;
    int blocks_x = 0;
    int blocks_y = 0;
};

// Blocks are flattened row-major within the block; block order is row-major
// over the padded grid. Every block vector has dimension block_size^2.
struct BlockSet {
    BlockLayout layout;
    std::vector<Vec> blocks;
};

// Pads to multiples of block_size by edge reflection (mirror about the last
// pixel, border not repeated). When a dimension is too small for reflection
// the pad falls back to edge replication.
BlockSet to_blocks(const Image& image, int block_size);

// Inverse of to_blocks: reassembles the padded raster and crops to the
// original size. Exact round trip for every image and block size.
Image from_blocks(const BlockSet& set);

} // namespace fbcs
