#pragma once

#include <cmath>

namespace railgen {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double norm() const { return std::hypot(x, y); }

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct LineSegment {
    Vec2 p0; // bottom end when the segment is a rail
    Vec2 p1;

    /// Point at parameter t: p0 at t=0, p1 at t=1.
    Vec2 point_at(double t) const { return p0 + (p1 - p0) * t; }
    double length() const { return (p1 - p0).norm(); }

    /// Unit direction from p0 toward p1.
    Vec2 direction() const {
        const Vec2 d = p1 - p0;
        const double n = d.norm();
        return {d.x / n, d.y / n};
    }

    /// Distance from a point to the segment (not the infinite line).
    double distance_to(const Vec2& p) const {
        const Vec2 d = p1 - p0;
        const double len2 = d.x * d.x + d.y * d.y;
        if (len2 == 0.0) return (p - p0).norm();
        double t = ((p.x - p0.x) * d.x + (p.y - p0.y) * d.y) / len2;
        t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
        return (p - point_at(t)).norm();
    }
};

} // namespace railgen
