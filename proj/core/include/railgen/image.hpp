#pragma once

#include <cstdint>
#include <vector>

#include "railgen/error.hpp"

namespace railgen {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Axis-aligned pixel rectangle, top-left anchored.
struct Rect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    bool contains(int px, int py) const {
        return px >= x && px < x + w && py >= y && py < y + h;
    }
    friend bool operator==(const Rect&, const Rect&) = default;
};

/// 8-bit RGB raster, row-major, no padding. Immutable by convention:
/// every operation returns a new image.
class RgbImage {
public:
    RgbImage() = default;
    RgbImage(int width, int height, Rgb fill = {0, 0, 0});

    int width() const { return width_; }
    int height() const { return height_; }
    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }

    Rgb at(int x, int y) const {
        const std::size_t i = index(x, y);
        return {pixels_[i], pixels_[i + 1], pixels_[i + 2]};
    }
    void set(int x, int y, Rgb c) {
        const std::size_t i = index(x, y);
        pixels_[i] = c.r;
        pixels_[i + 1] = c.g;
        pixels_[i + 2] = c.b;
    }

    const std::vector<std::uint8_t>& bytes() const { return pixels_; }
    std::vector<std::uint8_t>& bytes() { return pixels_; }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;

private:
    std::size_t index(int x, int y) const {
        return (static_cast<std::size_t>(y) * width_ + x) * 3;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

/// Single-channel raster holding real intensities in [0, 255]. Values stay
/// floating point through the filter chain; gradient math needs sub-integer
/// precision.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, double fill = 0.0);

    int width() const { return width_; }
    int height() const { return height_; }
    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }

    double at(int x, int y) const {
        return pixels_[static_cast<std::size_t>(y) * width_ + x];
    }
    void set(int x, int y, double v) {
        pixels_[static_cast<std::size_t>(y) * width_ + x] = v;
    }

    /// Clamp-to-edge fetch, the border policy of every convolution here.
    double at_clamped(int x, int y) const;

    const std::vector<double>& values() const { return pixels_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> pixels_;
};

/// Rec.601 luma: 0.299 r + 0.587 g + 0.114 b.
GrayImage to_grayscale(const RgbImage& img);

/// Quantize a gray raster back to displayable RGB (round + clamp).
RgbImage to_rgb(const GrayImage& img);

/// Separable Gaussian convolution, kernel size 2*radius+1, weights
/// normalized to sum 1, clamp-to-edge borders.
/// Throws ConfigError if the kernel exceeds the image or radius < 1.
GrayImage gaussian_blur(const GrayImage& img, double sigma, int radius);

/// The normalized 1-D kernel gaussian_blur convolves with: exp(-k^2 / 2 sigma^2)
/// for k in [-radius, radius], scaled to sum 1.
std::vector<double> gaussian_kernel(double sigma, int radius);

/// Throws ConfigError if roi is empty or extends past the image.
RgbImage crop(const RgbImage& img, const Rect& roi);

RgbImage flip_horizontal(const RgbImage& img);

/// Per-channel c -> clamp(c + delta, 0, 255); delta in [-255, 255].
RgbImage adjust_brightness(const RgbImage& img, int delta);

} // namespace railgen
