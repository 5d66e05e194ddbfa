#pragma once

#include <cstdint>
#include <vector>

#include "railgen/image.hpp"

namespace railgen {

/// Boolean edge mask produced by canny(); dimensions match the source image.
class EdgeMap {
public:
    EdgeMap() = default;
    EdgeMap(int width, int height)
        : width_(width), height_(height),
          mask_(static_cast<std::size_t>(width) * height, 0) {}

    int width() const { return width_; }
    int height() const { return height_; }

    bool at(int x, int y) const {
        return mask_[static_cast<std::size_t>(y) * width_ + x] != 0;
    }
    void set(int x, int y, bool v) {
        mask_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0;
    }

    std::size_t edge_count() const;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> mask_;
};

struct CannyParams {
    double low = 50.0;      // hysteresis: keep pixels with magnitude >= low ...
    double high = 150.0;    // ... when 8-connected to a pixel with magnitude >= high
    double blur_sigma = 1.4;
    int blur_radius = 2;
};

/// Canny edge detector: Gaussian blur, Sobel 3x3 gradients, non-maximum
/// suppression with the gradient direction quantized to four sectors,
/// double-threshold hysteresis with 8-connectivity. All convolutions use
/// clamp-to-edge borders.
///
/// When `magnitude_out` is non-null it receives the post-blur gradient
/// magnitude raster (useful for threshold tuning and debug dumps).
/// Throws ConfigError unless 0 < low < high.
EdgeMap canny(const GrayImage& img, const CannyParams& params,
              GrayImage* magnitude_out = nullptr);

} // namespace railgen
