#pragma once

#include <cstdint>
#include <vector>

#include "paltile/matrix.hpp"

namespace paltile {

// RGB888 image with both dimensions divisible by 4.
struct PatchImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;  // 3 bytes per pixel, row-major

    PatchImage() = default;
    PatchImage(std::size_t w, std::size_t h) : width(w), height(h), pixels(3 * w * h, 0) {}
};

// One transaction per 4x4 block (blocks row-major over the image): pixels
// row-major inside the block, channels R, G, B, each 8 bits MSB first.
// 16 pixels * 24 bits = 384 columns.
BinaryMatrix encode_image(const PatchImage& img);

// Exact inverse of encode_image's bit layout.
PatchImage decode_matrix(const BinaryMatrix& m, std::size_t width, std::size_t height);

struct RenderResult {
    std::vector<PatchImage> tiles;  // top_k tiles by covered cells, descending
    PatchImage reconstruction;      // decode of the full Boolean product
};

RenderResult render_tiles(const BinaryMatrix& x, const BinaryMatrix& y, std::size_t width,
                          std::size_t height, std::size_t top_k);

}  // namespace paltile
