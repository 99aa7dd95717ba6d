#include "fbcs/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace fbcs {

Image make_image(int width, int height, double fill) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("make_image: dimensions must be positive");
    }
    Image img;
    img.width = width;
    img.height = height;
    img.data.assign(static_cast<std::size_t>(width) * height, fill);
    return img;
}

namespace {

// Reads one whitespace-delimited header token, skipping "#" comment lines.
std::string next_token(std::istream& in, const char* field) {
    std::string tok;
    int ch = in.get();
    for (;;) {
        if (ch == EOF) {
            throw std::runtime_error(std::string("load_pgm: unexpected end of header while reading ") + field);
        }
        if (ch == '#') {
            while (ch != '\n' && ch != EOF) ch = in.get();
            ch = in.get();
        } else if (std::isspace(ch)) {
            ch = in.get();
        } else {
            break;
        }
    }
    while (ch != EOF && !std::isspace(ch) && ch != '#') {
        tok.push_back(static_cast<char>(ch));
        ch = in.get();
    }
    if (ch != EOF) in.unget();
    return tok;
}

long parse_positive(const std::string& tok, const char* field) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
        throw std::runtime_error(std::string("load_pgm: non-numeric ") + field + " token \"" + tok + "\"");
    }
    long value = 0;
    try {
        value = std::stol(tok);
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("load_pgm: ") + field + " out of range");
    }
    if (value < 1 || value > (1L << 20)) {
        throw std::runtime_error(std::string("load_pgm: ") + field + " out of range");
    }
    return value;
}

} // namespace

Image load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("load_pgm: cannot open " + path);
    }

    const std::string magic = next_token(in, "magic");
    if (magic != "P5") {
        throw std::runtime_error("load_pgm: bad magic \"" + magic + "\" (want P5): " + path);
    }
    const long width = parse_positive(next_token(in, "width"), "width");
    const long height = parse_positive(next_token(in, "height"), "height");
    const std::string maxval_tok = next_token(in, "maxval");
    if (maxval_tok.empty() || maxval_tok.find_first_not_of("0123456789") != std::string::npos) {
        throw std::runtime_error("load_pgm: non-numeric maxval token \"" + maxval_tok + "\"");
    }
    if (maxval_tok != "255") {
        throw std::runtime_error("load_pgm: unsupported maxval " + maxval_tok + " (want 255): " + path);
    }
    // Exactly one whitespace byte separates the maxval from the payload.
    const int sep = in.get();
    if (sep == EOF || !std::isspace(sep)) {
        throw std::runtime_error("load_pgm: missing whitespace after maxval: " + path);
    }

    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (count > (1u << 26)) {
        throw std::runtime_error("load_pgm: image too large: " + path);
    }
    std::vector<std::uint8_t> bytes(count);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in.gcount()) != count) {
        throw std::runtime_error("load_pgm: truncated pixel data: " + path);
    }

    Image img;
    img.width = static_cast<int>(width);
    img.height = static_cast<int>(height);
    img.data.resize(count);
    std::transform(bytes.begin(), bytes.end(), img.data.begin(),
                   [](std::uint8_t b) { return static_cast<double>(b); });
    return img;
}

void save_pgm(const Image& image, const std::string& path) {
    if (image.width < 1 || image.height < 1 ||
        image.data.size() != static_cast<std::size_t>(image.width) * image.height) {
        throw std::invalid_argument("save_pgm: malformed image");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("save_pgm: cannot open " + path + " for writing");
    }
    out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
    std::vector<std::uint8_t> bytes(image.data.size());
    std::transform(image.data.begin(), image.data.end(), bytes.begin(), [](double v) {
        const long r = std::lround(v);
        return static_cast<std::uint8_t>(std::clamp(r, 0L, 255L));
    });
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw std::runtime_error("save_pgm: write failed: " + path);
    }
}

void clip(Image& image) {
    for (double& v : image.data) v = std::clamp(v, 0.0, 255.0);
}

namespace {

// Maps a padded coordinate back into [0, n). Reflection mirrors about the
// last pixel (index n-1+k -> n-1-k); replication clamps. Reflection needs
// pad <= n-1 distinct source pixels, otherwise the whole axis replicates.
int pad_source_index(int i, int n, bool reflect) {
    if (i < n) return i;
    if (reflect) return 2 * (n - 1) - i;
    return n - 1;
}

} // namespace

BlockSet to_blocks(const Image& image, int block_size) {
    if (block_size < 1) {
        throw std::invalid_argument("to_blocks: block_size must be >= 1");
    }
    if (image.width < 1 || image.height < 1 ||
        image.data.size() != static_cast<std::size_t>(image.width) * image.height) {
        throw std::invalid_argument("to_blocks: malformed image");
    }

    BlockLayout layout;
    layout.block_size = block_size;
    layout.original_width = image.width;
    layout.original_height = image.height;
    layout.blocks_x = (image.width + block_size - 1) / block_size;
    layout.blocks_y = (image.height + block_size - 1) / block_size;
    layout.padded_width = layout.blocks_x * block_size;
    layout.padded_height = layout.blocks_y * block_size;

    const bool reflect_x = layout.padded_width - image.width <= image.width - 1;
    const bool reflect_y = layout.padded_height - image.height <= image.height - 1;

    BlockSet set;
    set.layout = layout;
    set.blocks.reserve(static_cast<std::size_t>(layout.blocks_x) * layout.blocks_y);
    const int b = block_size;
    for (int by = 0; by < layout.blocks_y; ++by) {
        for (int bx = 0; bx < layout.blocks_x; ++bx) {
            Vec block(b * b);
            for (int y = 0; y < b; ++y) {
                const int sy = pad_source_index(by * b + y, image.height, reflect_y);
                for (int x = 0; x < b; ++x) {
                    const int sx = pad_source_index(bx * b + x, image.width, reflect_x);
                    block[y * b + x] = image.at(sy, sx);
                }
            }
            set.blocks.push_back(std::move(block));
        }
    }
    return set;
}

Image from_blocks(const BlockSet& set) {
    const BlockLayout& l = set.layout;
    const int b = l.block_size;
    if (b < 1 || l.blocks_x < 1 || l.blocks_y < 1 ||
        l.padded_width != l.blocks_x * b || l.padded_height != l.blocks_y * b ||
        l.original_width < 1 || l.original_width > l.padded_width ||
        l.original_height < 1 || l.original_height > l.padded_height) {
        throw std::invalid_argument("from_blocks: inconsistent layout");
    }
    if (set.blocks.size() != static_cast<std::size_t>(l.blocks_x) * l.blocks_y) {
        throw std::invalid_argument("from_blocks: blocks count does not match layout");
    }
    for (const Vec& block : set.blocks) {
        if (block.size() != static_cast<Eigen::Index>(b) * b) {
            throw std::invalid_argument("from_blocks: block dimension does not match layout");
        }
    }

    Image img = make_image(l.original_width, l.original_height);
    for (int by = 0; by < l.blocks_y; ++by) {
        for (int bx = 0; bx < l.blocks_x; ++bx) {
            const Vec& block = set.blocks[static_cast<std::size_t>(by) * l.blocks_x + bx];
            const int y_hi = std::min(b, l.original_height - by * b);
            const int x_hi = std::min(b, l.original_width - bx * b);
            for (int y = 0; y < y_hi; ++y) {
                for (int x = 0; x < x_hi; ++x) {
                    img.at(by * b + y, bx * b + x) = block[y * b + x];
                }
            }
        }
    }
    return img;
}

} // namespace fbcs
