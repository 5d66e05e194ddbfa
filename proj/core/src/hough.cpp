#include "railgen/hough.hpp"

#include <algorithm>
#include <cmath>

namespace railgen {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

HoughAccumulator hough_accumulate(const EdgeMap& edges, double rho_res, double theta_res) {
    if (!(rho_res > 0.0)) throw ConfigError("hough rho_res must be positive");
    if (!(theta_res > 0.0) || theta_res > kPi / 2.0 + 1e-12)
        throw ConfigError("hough theta_res must be in (0, pi/2]");

    const int w = edges.width();
    const int h = edges.height();
    const double diag = std::sqrt(static_cast<double>(w) * w + static_cast<double>(h) * h);
    const double rho_max = std::ceil(diag);
    const int n_theta = static_cast<int>(std::ceil(kPi / theta_res - 1e-9));
    const int n_rho = static_cast<int>(std::floor(2.0 * rho_max / rho_res)) + 1;

    HoughAccumulator acc(n_theta, n_rho, theta_res, rho_res, rho_max);

    std::vector<double> cos_t(n_theta), sin_t(n_theta);
    for (int k = 0; k < n_theta; ++k) {
        cos_t[k] = std::cos(k * theta_res);
        sin_t[k] = std::sin(k * theta_res);
    }

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!edges.at(x, y)) continue;
            for (int k = 0; k < n_theta; ++k) {
                const double rho = x * cos_t[k] + y * sin_t[k];
                const int r = acc.rho_bin(rho);
                if (r >= 0 && r < n_rho) acc.add(k, r);
            }
        }
    }
    return acc;
}

std::vector<HoughLine> hough_peaks(const HoughAccumulator& acc, std::uint32_t vote_threshold) {
    const int nt = acc.n_theta();
    const int nr = acc.n_rho();
    std::vector<HoughLine> peaks;

    for (int t = 0; t < nt; ++t) {
        for (int r = 0; r < nr; ++r) {
            const std::uint32_t v = acc.at(t, r);
            if (v < vote_threshold || v == 0) continue;
            bool is_peak = true;
            for (int dt = -1; dt <= 1 && is_peak; ++dt) {
                for (int dr = -1; dr <= 1 && is_peak; ++dr) {
                    if (dt == 0 && dr == 0) continue;
                    const int t2 = t + dt;
                    const int r2 = r + dr;
                    if (t2 < 0 || t2 >= nt || r2 < 0 || r2 >= nr) continue;
                    const std::uint32_t v2 = acc.at(t2, r2);
                    // Ties go to the cell with smaller theta, then smaller rho.
                    if (v2 > v || (v2 == v && (t2 < t || (t2 == t && r2 < r))))
                        is_peak = false;
                }
            }
            if (is_peak) peaks.push_back({acc.rho_of(r), acc.theta_of(t), v});
        }
    }

    std::stable_sort(peaks.begin(), peaks.end(), [](const HoughLine& a, const HoughLine& b) {
        if (a.votes != b.votes) return a.votes > b.votes;
        if (a.theta != b.theta) return a.theta < b.theta;
        return a.rho < b.rho;
    });
    return peaks;
}

std::vector<HoughLine> hough_lines(const EdgeMap& edges, double rho_res, double theta_res,
                                   std::uint32_t vote_threshold) {
    return hough_peaks(hough_accumulate(edges, rho_res, theta_res), vote_threshold);
}

} // namespace railgen
