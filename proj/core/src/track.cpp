#include "railgen/track.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace railgen {

namespace {

constexpr double kPi = 3.14159265358979323846;

double abs_slope(const HoughLine& line) {
    const double s = std::sin(line.theta);
    if (s == 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(std::cos(line.theta) / s);
}

/// true when a should be preferred over b as the representative rail.
/// Total order, so the choice is independent of input permutation.
bool better_rail(const HoughLine& a, const HoughLine& b) {
    if (a.votes != b.votes) return a.votes > b.votes;
    const double sa = abs_slope(a);
    const double sb = abs_slope(b);
    if (sa != sb) return sa > sb;
    if (a.rho != b.rho) return a.rho < b.rho;
    return a.theta < b.theta;
}

double bottom_intersection_x(const HoughLine& line, int frame_h) {
    // x cos(theta) + y sin(theta) = rho at y = frame_h - 1.
    const double c = std::cos(line.theta);
    const double y = static_cast<double>(frame_h - 1);
    return (line.rho - y * std::sin(line.theta)) / c;
}

} // namespace

double line_slope(const HoughLine& line) {
    const double s = std::sin(line.theta);
    const double c = std::cos(line.theta);
    if (s == 0.0)
        return c > 0.0 ? -std::numeric_limits<double>::infinity()
                       : std::numeric_limits<double>::infinity();
    return -c / s;
}

SlopeGroups group_by_slope(const std::vector<HoughLine>& lines, double horizontal_tolerance) {
    SlopeGroups groups;
    for (const HoughLine& line : lines) {
        // Line direction is perpendicular to the normal angle; its inclination
        // from horizontal is |theta - pi/2|.
        const double from_horizontal = std::abs(line.theta - kPi / 2.0);
        if (from_horizontal <= horizontal_tolerance) {
            groups.discarded.push_back(line);
        } else if (line.theta < kPi / 2.0) {
            // cos > 0, slope -cot(theta) < 0; theta == 0 is the -inf limit.
            groups.negative.push_back(line);
        } else {
            groups.positive.push_back(line);
        }
    }
    return groups;
}

RailSelection select_track_lines(const std::vector<HoughLine>& positive,
                                 const std::vector<HoughLine>& negative, int frame_w,
                                 int frame_h) {
    (void)frame_w;
    if (negative.empty()) throw DetectError("rail not found: no negative-slope lines (left rail)");
    if (positive.empty()) throw DetectError("rail not found: no positive-slope lines (right rail)");

    const HoughLine left_line = *std::min_element(
        negative.begin(), negative.end(),
        [](const HoughLine& a, const HoughLine& b) { return better_rail(a, b); });
    const HoughLine right_line = *std::min_element(
        positive.begin(), positive.end(),
        [](const HoughLine& a, const HoughLine& b) { return better_rail(a, b); });

    // Mutual intersection: solve the two normal-form equations.
    const double c1 = std::cos(left_line.theta), s1 = std::sin(left_line.theta);
    const double c2 = std::cos(right_line.theta), s2 = std::sin(right_line.theta);
    const double det = c1 * s2 - s1 * c2; // sin(theta2 - theta1)
    if (std::abs(det) < 1e-12) throw DetectError("no convergence: rails are parallel");
    const Vec2 vp{(left_line.rho * s2 - right_line.rho * s1) / det,
                  (right_line.rho * c1 - left_line.rho * c2) / det};
    if (!(vp.y >= 0.0 && vp.y < static_cast<double>(frame_h)))
        throw DetectError("no convergence: intersection at y=" + std::to_string(vp.y) +
                          " outside frame");

    const double yb = static_cast<double>(frame_h - 1);
    const LineSegment left{{bottom_intersection_x(left_line, frame_h), yb}, vp};
    const LineSegment right{{bottom_intersection_x(right_line, frame_h), yb}, vp};
    if (left.length() < 1e-9 || right.length() < 1e-9)
        throw DetectError("no convergence: rails meet at the frame bottom");
    return {left, right, vp};
}

Rect compute_roi(const LineSegment& left_rail, const LineSegment& right_rail, int roi_w,
                 int roi_h, int frame_w, int frame_h) {
    if (roi_w <= 0 || roi_h <= 0) throw ConfigError("roi dimensions must be positive");
    if (roi_w > frame_w || roi_h > frame_h)
        throw ConfigError("roi " + std::to_string(roi_w) + "x" + std::to_string(roi_h) +
                          " exceeds frame " + std::to_string(frame_w) + "x" +
                          std::to_string(frame_h));

    const double mid = 0.5 * (left_rail.p0.x + right_rail.p0.x);
    int x = static_cast<int>(std::llround(mid - roi_w / 2.0));
    x = std::clamp(x, 0, frame_w - roi_w);
    const int y = frame_h - roi_h;
    return Rect{x, y, roi_w, roi_h};
}

TrackGeometry detect_track(const RgbImage& img, const DetectConfig& config,
                           std::optional<Rect> prior_roi) {
    if (img.width() < config.roi_w || img.height() < config.roi_h)
        throw ConfigError("frame smaller than the configured roi");

    const RgbImage* frame = &img;
    RgbImage clipped;
    int ox = 0, oy = 0;
    if (prior_roi) {
        clipped = crop(img, *prior_roi); // bounds-checked by crop
        frame = &clipped;
        ox = prior_roi->x;
        oy = prior_roi->y;
    }

    const GrayImage gray = to_grayscale(*frame);
    CannyParams canny_params;
    canny_params.low = config.canny_low;
    canny_params.high = config.canny_high;
    canny_params.blur_sigma = config.blur_sigma;
    canny_params.blur_radius = config.blur_radius;
    const EdgeMap edges = canny(gray, canny_params);

    std::vector<HoughLine> lines = hough_lines(edges, config.hough_rho_res,
                                               config.hough_theta_res_deg * kPi / 180.0,
                                               config.hough_votes);
    if (prior_roi) {
        // Shift normal-form lines from crop coordinates to frame coordinates.
        for (HoughLine& line : lines)
            line.rho += ox * std::cos(line.theta) + oy * std::sin(line.theta);
    }

    const SlopeGroups groups =
        group_by_slope(lines, config.horizontal_tolerance_deg * kPi / 180.0);
    const RailSelection rails =
        select_track_lines(groups.positive, groups.negative, img.width(), img.height());
    const Rect roi =
        compute_roi(rails.left, rails.right, config.roi_w, config.roi_h, img.width(), img.height());

    return TrackGeometry{rails.left, rails.right, roi, rails.vanishing_point};
}

} // namespace railgen
