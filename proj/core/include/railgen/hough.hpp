#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "railgen/canny.hpp"

namespace railgen {

/// A detected line in normal form: x cos(theta) + y sin(theta) = rho,
/// theta in [0, pi), rho in pixels (signed).
struct HoughLine {
    double rho = 0.0;
    double theta = 0.0;
    std::uint32_t votes = 0;

    friend bool operator==(const HoughLine&, const HoughLine&) = default;
};

/// The raw vote grid. Exposed so callers can dump it for debugging and so
/// an independent recount can be compared cell-for-cell.
class HoughAccumulator {
public:
    HoughAccumulator() = default;
    HoughAccumulator(int n_theta, int n_rho, double theta_res, double rho_res, double rho_offset)
        : n_theta_(n_theta), n_rho_(n_rho), theta_res_(theta_res), rho_res_(rho_res),
          rho_offset_(rho_offset), cells_(static_cast<std::size_t>(n_theta) * n_rho, 0) {}

    int n_theta() const { return n_theta_; }
    int n_rho() const { return n_rho_; }
    double theta_res() const { return theta_res_; }
    double rho_res() const { return rho_res_; }
    /// D such that rho bins cover [-D, D].
    double rho_offset() const { return rho_offset_; }

    std::uint32_t at(int theta_idx, int rho_idx) const {
        return cells_[static_cast<std::size_t>(theta_idx) * n_rho_ + rho_idx];
    }
    void add(int theta_idx, int rho_idx) {
        ++cells_[static_cast<std::size_t>(theta_idx) * n_rho_ + rho_idx];
    }

    double theta_of(int theta_idx) const { return theta_idx * theta_res_; }
    double rho_of(int rho_idx) const { return rho_idx * rho_res_ - rho_offset_; }

    /// Bin a real rho value: bin k covers [k*rho_res - D, (k+1)*rho_res - D).
    int rho_bin(double rho) const {
        return static_cast<int>(std::floor((rho + rho_offset_) / rho_res_));
    }

    const std::vector<std::uint32_t>& cells() const { return cells_; }

private:
    int n_theta_ = 0;
    int n_rho_ = 0;
    double theta_res_ = 0.0;
    double rho_res_ = 0.0;
    double rho_offset_ = 0.0;
    std::vector<std::uint32_t> cells_;
};

/// Fills the accumulator: every edge pixel casts exactly one vote per theta
/// bin, at the rho bin of x cos(theta) + y sin(theta). Theta bins are
/// k * theta_res for k in [0, ceil(pi/theta_res)); rho spans [-D, D] with
/// D = ceil(sqrt(w^2 + h^2)).
/// Throws ConfigError unless rho_res > 0 and 0 < theta_res <= pi/2.
HoughAccumulator hough_accumulate(const EdgeMap& edges, double rho_res, double theta_res);

/// Runs the accumulator and extracts peaks: cells with votes >= vote_threshold
/// that are strict maxima over their 3x3 accumulator neighborhood, ties broken
/// toward smaller theta then smaller rho. Result is sorted by votes descending
/// (same tie order), so the strongest line comes first.
std::vector<HoughLine> hough_lines(const EdgeMap& edges, double rho_res, double theta_res,
                                   std::uint32_t vote_threshold);

/// Peak extraction on an already-filled accumulator.
std::vector<HoughLine> hough_peaks(const HoughAccumulator& acc, std::uint32_t vote_threshold);

} // namespace railgen
