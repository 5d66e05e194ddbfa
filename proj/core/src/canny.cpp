#include "railgen/canny.hpp"

#include <cmath>
#include <numeric>
#include <utility>

namespace railgen {

std::size_t EdgeMap::edge_count() const {
    return static_cast<std::size_t>(std::accumulate(mask_.begin(), mask_.end(), std::size_t{0}));
}

namespace {

// NMS axis per gradient-direction sector: 0 = E/W, 1 = SE/NW, 2 = S/N, 3 = SW/NE
// (image coordinates, y down).
constexpr int kSectorDx[4] = {1, 1, 0, -1};
constexpr int kSectorDy[4] = {0, 1, 1, 1};

int gradient_sector(double gx, double gy) {
    double angle = std::atan2(gy, gx); // (-pi, pi]
    if (angle < 0.0) angle += 3.14159265358979323846; // fold to [0, pi)
    const int sector = static_cast<int>(std::lround(angle / (3.14159265358979323846 / 4.0)));
    return sector & 3; // lround(pi / (pi/4)) == 4 folds back to sector 0
}

} // namespace

EdgeMap canny(const GrayImage& img, const CannyParams& params, GrayImage* magnitude_out) {
    if (!(params.low > 0.0) || !(params.low < params.high))
        throw ConfigError("canny thresholds require 0 < low < high");

    const GrayImage smoothed = gaussian_blur(img, params.blur_sigma, params.blur_radius);
    const int w = img.width();
    const int h = img.height();

    GrayImage mag(w, h);
    std::vector<std::uint8_t> sector(static_cast<std::size_t>(w) * h, 0);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            // Sobel 3x3, clamp-to-edge.
            const double tl = smoothed.at_clamped(x - 1, y - 1);
            const double tc = smoothed.at_clamped(x, y - 1);
            const double tr = smoothed.at_clamped(x + 1, y - 1);
            const double ml = smoothed.at_clamped(x - 1, y);
            const double mr = smoothed.at_clamped(x + 1, y);
            const double bl = smoothed.at_clamped(x - 1, y + 1);
            const double bc = smoothed.at_clamped(x, y + 1);
            const double br = smoothed.at_clamped(x + 1, y + 1);
            const double gx = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
            const double gy = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
            mag.set(x, y, std::sqrt(gx * gx + gy * gy));
            sector[static_cast<std::size_t>(y) * w + x] =
                static_cast<std::uint8_t>(gradient_sector(gx, gy));
        }
    }

    // Non-maximum suppression along the quantized gradient axis. The rule is
    // strict against the negative-axis neighbor and non-strict against the
    // positive one, so a two-pixel magnitude tie keeps exactly one pixel.
    auto mag_at = [&](int x, int y) -> double {
        return (x < 0 || x >= w || y < 0 || y >= h) ? 0.0 : mag.at(x, y);
    };
    std::vector<std::uint8_t> candidate(static_cast<std::size_t>(w) * h, 0);
    std::vector<std::pair<int, int>> strong;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double m = mag.at(x, y);
            if (m < params.low) continue;
            const int s = sector[static_cast<std::size_t>(y) * w + x];
            const double m_neg = mag_at(x - kSectorDx[s], y - kSectorDy[s]);
            const double m_pos = mag_at(x + kSectorDx[s], y + kSectorDy[s]);
            if (m > m_neg && m >= m_pos) {
                candidate[static_cast<std::size_t>(y) * w + x] = 1;
                if (m >= params.high) strong.emplace_back(x, y);
            }
        }
    }

    // Hysteresis: flood from strong pixels through candidates, 8-connected.
    EdgeMap edges(w, h);
    std::vector<std::pair<int, int>> stack = std::move(strong);
    for (auto& [sx, sy] : stack) edges.set(sx, sy, true);
    while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                const int nx = cx + dx;
                const int ny = cy + dy;
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                if (!candidate[static_cast<std::size_t>(ny) * w + nx]) continue;
                if (edges.at(nx, ny)) continue;
                edges.set(nx, ny, true);
                stack.emplace_back(nx, ny);
            }
        }
    }

    if (magnitude_out) *magnitude_out = std::move(mag);
    return edges;
}

} // namespace railgen
