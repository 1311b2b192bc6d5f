#include "paltile/imageio.hpp"

#include <algorithm>
#include <numeric>

#include "paltile/errors.hpp"

namespace paltile {

namespace {

constexpr std::size_t kPatchCols = 384;

void check_dims(std::size_t width, std::size_t height) {
    if (width == 0 || height == 0 || width % 4 != 0 || height % 4 != 0)
        throw DataError("image dimensions must be positive multiples of 4");
}

}  // namespace

BinaryMatrix encode_image(const PatchImage& img) {
    check_dims(img.width, img.height);
    if (img.pixels.size() != 3 * img.width * img.height)
        throw DataError("pixel buffer size does not match image dimensions");
    const std::size_t bw = img.width / 4, bh = img.height / 4;
    BinaryMatrix m(bw * bh, kPatchCols);
    for (std::size_t by = 0; by < bh; ++by)
        for (std::size_t bx = 0; bx < bw; ++bx) {
            const std::size_t row = by * bw + bx;
            for (std::size_t p = 0; p < 16; ++p) {
                const std::size_t py = by * 4 + p / 4;
                const std::size_t px = bx * 4 + p % 4;
                const std::uint8_t* rgb = &img.pixels[3 * (py * img.width + px)];
                for (std::size_t ch = 0; ch < 3; ++ch)
                    for (std::size_t b = 0; b < 8; ++b)
                        if (rgb[ch] >> (7 - b) & 1)
                            m.set(row, p * 24 + ch * 8 + b, 1);
            }
        }
    return m;
}

PatchImage decode_matrix(const BinaryMatrix& m, std::size_t width, std::size_t height) {
    check_dims(width, height);
    const std::size_t bw = width / 4, bh = height / 4;
    if (m.cols() != kPatchCols || m.rows() != bw * bh)
        throw DataError("matrix shape does not match the image dimensions");
    PatchImage img(width, height);
    for (std::size_t by = 0; by < bh; ++by)
        for (std::size_t bx = 0; bx < bw; ++bx) {
            const std::size_t row = by * bw + bx;
            for (std::size_t p = 0; p < 16; ++p) {
                const std::size_t py = by * 4 + p / 4;
                const std::size_t px = bx * 4 + p % 4;
                std::uint8_t* rgb = &img.pixels[3 * (py * width + px)];
                for (std::size_t ch = 0; ch < 3; ++ch) {
                    std::uint8_t v = 0;
                    for (std::size_t b = 0; b < 8; ++b)
                        v = static_cast<std::uint8_t>(v << 1 | m(row, p * 24 + ch * 8 + b));
                    rgb[ch] = v;
                }
            }
        }
    return img;
}

RenderResult render_tiles(const BinaryMatrix& x, const BinaryMatrix& y, std::size_t width,
                          std::size_t height, std::size_t top_k) {
    check_dims(width, height);
    if (x.cols() != y.cols())
        throw DataError("render_tiles: factors have different column counts");
    if (x.rows() != kPatchCols)
        throw DataError("render_tiles: pattern matrix must have 384 rows");
    if (y.rows() != (width / 4) * (height / 4))
        throw DataError("render_tiles: usage matrix does not match the image dimensions");

    const std::size_t r = x.cols();
    const auto& xcs = x.col_sums();
    const auto& ycs = y.col_sums();
    std::vector<std::size_t> order(r);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return xcs[a] * ycs[a] > xcs[b] * ycs[b];
    });

    RenderResult out;
    const std::size_t count = std::min(top_k, r);
    out.tiles.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t s = order[k];
        BinaryMatrix tile(y.rows(), kPatchCols);
        for (std::size_t j = 0; j < y.rows(); ++j) {
            if (!y(j, s)) continue;
            for (std::size_t i = 0; i < kPatchCols; ++i)
                if (x(i, s)) tile.set(j, i, 1);
        }
        out.tiles.push_back(decode_matrix(tile, width, height));
    }
    out.reconstruction = decode_matrix(bool_product(y, x), width, height);
    return out;
}

}  // namespace paltile
