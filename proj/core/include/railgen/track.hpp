#pragma once

#include <optional>
#include <vector>

#include "railgen/geometry.hpp"
#include "railgen/hough.hpp"
#include "railgen/image.hpp"

namespace railgen {

/// Everything the detection stage needs; serialized as a flat JSON object.
struct DetectConfig {
    double blur_sigma = 1.4;
    int blur_radius = 2;
    double canny_low = 50.0;
    double canny_high = 150.0;
    double hough_rho_res = 1.0;
    double hough_theta_res_deg = 1.0;
    std::uint32_t hough_votes = 80;
    double horizontal_tolerance_deg = 5.0;
    int roi_w = 600;
    int roi_h = 300;
};

/// The detected track: two rail segments running from the frame bottom up to
/// their intersection, plus the derived region of interest.
struct TrackGeometry {
    LineSegment left_rail;  // negative image slope (y grows downward)
    LineSegment right_rail; // positive image slope
    Rect roi;
    Vec2 vanishing_point;
};

struct SlopeGroups {
    std::vector<HoughLine> positive;
    std::vector<HoughLine> negative;
    std::vector<HoughLine> discarded;
};

/// Image-coordinate slope of a line given in normal form. Vertical lines
/// (sin theta == 0) return +/- infinity.
double line_slope(const HoughLine& line);

/// Partitions lines by slope sign. Lines whose direction lies within
/// horizontal_tolerance radians of horizontal are discarded (ties and other
/// cross-track clutter); near-vertical lines are assigned by the sign limit
/// of their slope. Order is preserved within each group.
SlopeGroups group_by_slope(const std::vector<HoughLine>& lines, double horizontal_tolerance);

struct RailSelection {
    LineSegment left;
    LineSegment right;
    Vec2 vanishing_point;
};

/// Picks the highest-voted line from each slope group (ties: larger absolute
/// slope, then smaller rho) and clips both to segments running from the
/// bottom edge of the frame up to their mutual intersection.
/// Throws DetectError("rail not found") on an empty group and
/// DetectError("no convergence") when the chosen lines are parallel or meet
/// outside [0, frame_h) vertically.
RailSelection select_track_lines(const std::vector<HoughLine>& positive,
                                 const std::vector<HoughLine>& negative, int frame_w,
                                 int frame_h);

/// Fixed-size ROI: horizontally centered on the midpoint of the rails'
/// bottom-edge intersections, bottom-aligned with the frame, clamped into
/// frame bounds. Throws ConfigError when the ROI exceeds the frame.
Rect compute_roi(const LineSegment& left_rail, const LineSegment& right_rail, int roi_w,
                 int roi_h, int frame_w, int frame_h);

/// Full pipeline: grayscale, Canny, Hough, slope grouping, rail selection,
/// ROI. When prior_roi is given, detection runs inside that sub-rectangle
/// only and the resulting geometry is reported in full-frame coordinates.
/// Deterministic: identical pixels and config produce identical geometry.
TrackGeometry detect_track(const RgbImage& img, const DetectConfig& config,
                           std::optional<Rect> prior_roi = std::nullopt);

} // namespace railgen
