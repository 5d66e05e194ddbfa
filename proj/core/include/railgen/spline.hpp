#pragma once

#include <vector>

#include "railgen/geometry.hpp"

namespace railgen {

/// Natural cubic spline through (t, v) knots: C2 across interior knots, zero
/// second derivative at both ends. Outside [t_front, t_back] evaluation is
/// linear, continued from the end tangents.
class NaturalCubicSpline {
public:
    /// Per-interval cubic v(t) = a + b*dt + c*dt^2 + d*dt^3 with dt = t - t0.
    struct Piece {
        double t0 = 0.0;
        double a = 0.0;
        double b = 0.0;
        double c = 0.0;
        double d = 0.0;
    };

    /// Throws ConfigError with fewer than 2 knots or non-increasing t.
    NaturalCubicSpline(std::vector<double> ts, std::vector<double> values);

    double eval(double t) const;
    double derivative(double t) const;
    double second_derivative(double t) const;

    double t_front() const { return ts_.front(); }
    double t_back() const { return ts_.back(); }
    std::size_t knot_count() const { return ts_.size(); }
    const std::vector<double>& knot_ts() const { return ts_; }
    const std::vector<double>& knot_values() const { return values_; }
    const std::vector<Piece>& pieces() const { return pieces_; }

private:
    std::size_t piece_index(double t) const;

    std::vector<double> ts_;
    std::vector<double> values_;
    std::vector<Piece> pieces_;
};

/// Planar curve (x(t), y(t)) built from two natural cubic splines sharing
/// one knot parameterization.
class ParametricCurve {
public:
    /// Throws ConfigError unless ts, points have equal length >= 2 and ts is
    /// strictly increasing.
    ParametricCurve(std::vector<double> ts, const std::vector<Vec2>& points);

    Vec2 eval(double t) const { return {x_.eval(t), y_.eval(t)}; }
    Vec2 derivative(double t) const { return {x_.derivative(t), y_.derivative(t)}; }

    double t_front() const { return x_.t_front(); }
    double t_back() const { return x_.t_back(); }
    const NaturalCubicSpline& x() const { return x_; }
    const NaturalCubicSpline& y() const { return y_; }

private:
    NaturalCubicSpline x_;
    NaturalCubicSpline y_;
};

} // namespace railgen
