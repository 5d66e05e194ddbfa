#include "railgen/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace railgen {

RgbImage::RgbImage(int width, int height, Rgb fill) : width_(width), height_(height) {
    if (width <= 0 || height <= 0)
        throw ConfigError("image dimensions must be positive");
    pixels_.resize(static_cast<std::size_t>(width) * height * 3);
    for (std::size_t i = 0; i < pixels_.size(); i += 3) {
        pixels_[i] = fill.r;
        pixels_[i + 1] = fill.g;
        pixels_[i + 2] = fill.b;
    }
}

GrayImage::GrayImage(int width, int height, double fill) : width_(width), height_(height) {
    if (width <= 0 || height <= 0)
        throw ConfigError("image dimensions must be positive");
    pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

double GrayImage::at_clamped(int x, int y) const {
    x = std::clamp(x, 0, width_ - 1);
    y = std::clamp(y, 0, height_ - 1);
    return at(x, y);
}

GrayImage to_grayscale(const RgbImage& img) {
    GrayImage out(img.width(), img.height());
    const auto& src = img.bytes();
    std::size_t p = 0;
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x, p += 3) {
            out.set(x, y, 0.299 * src[p] + 0.587 * src[p + 1] + 0.114 * src[p + 2]);
        }
    }
    return out;
}

RgbImage to_rgb(const GrayImage& img) {
    RgbImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const double v = std::clamp(img.at(x, y), 0.0, 255.0);
            const auto b = static_cast<std::uint8_t>(std::lround(v));
            out.set(x, y, {b, b, b});
        }
    }
    return out;
}

std::vector<double> gaussian_kernel(double sigma, int radius) {
    if (sigma <= 0.0) throw ConfigError("gaussian sigma must be positive");
    if (radius < 1) throw ConfigError("gaussian radius must be at least 1");
    std::vector<double> k(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        const double w = std::exp(-(static_cast<double>(i) * i) / (2.0 * sigma * sigma));
        k[i + radius] = w;
        sum += w;
    }
    for (double& w : k) w /= sum;
    return k;
}

GrayImage gaussian_blur(const GrayImage& img, double sigma, int radius) {
    const std::vector<double> kernel = gaussian_kernel(sigma, radius);
    const int size = 2 * radius + 1;
    if (size > img.width() || size > img.height())
        throw ConfigError("kernel exceeds image: " + std::to_string(size) + "x" +
                          std::to_string(size) + " on " + std::to_string(img.width()) + "x" +
                          std::to_string(img.height()));

    // Horizontal pass, then vertical. Clamp-to-edge on both.
    GrayImage tmp(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * img.at_clamped(x + i, y);
            tmp.set(x, y, acc);
        }
    }
    GrayImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += kernel[i + radius] * tmp.at_clamped(x, y + i);
            out.set(x, y, acc);
        }
    }
    return out;
}

RgbImage crop(const RgbImage& img, const Rect& roi) {
    if (roi.w <= 0 || roi.h <= 0) throw ConfigError("crop rect must have positive extent");
    if (roi.x < 0 || roi.y < 0 || roi.x + roi.w > img.width() || roi.y + roi.h > img.height())
        throw ConfigError("crop rect out of bounds");
    RgbImage out(roi.w, roi.h);
    for (int y = 0; y < roi.h; ++y)
        for (int x = 0; x < roi.w; ++x)
            out.set(x, y, img.at(roi.x + x, roi.y + y));
    return out;
}

RgbImage flip_horizontal(const RgbImage& img) {
    RgbImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            out.set(img.width() - 1 - x, y, img.at(x, y));
    return out;
}

RgbImage adjust_brightness(const RgbImage& img, int delta) {
    RgbImage out = img;
    for (std::uint8_t& c : out.bytes())
        c = static_cast<std::uint8_t>(std::clamp(static_cast<int>(c) + delta, 0, 255));
    return out;
}

} // namespace railgen
