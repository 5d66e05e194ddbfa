#include "railgen/spline.hpp"

#include <cstddef>

#include "railgen/error.hpp"

namespace railgen {

NaturalCubicSpline::NaturalCubicSpline(std::vector<double> ts, std::vector<double> values)
    : ts_(std::move(ts)), values_(std::move(values)) {
    const std::size_t n = ts_.size();
    if (n < 2) throw ConfigError("spline needs at least 2 knots");
    if (values_.size() != n) throw ConfigError("spline knot/value count mismatch");
    for (std::size_t i = 1; i < n; ++i)
        if (!(ts_[i] > ts_[i - 1]))
            throw ConfigError("spline knot parameters must be strictly increasing");

    // Second derivatives m_i from the standard tridiagonal system with
    // natural boundary m_0 = m_{n-1} = 0, solved by the Thomas algorithm.
    std::vector<double> h(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = ts_[i + 1] - ts_[i];

    std::vector<double> m(n, 0.0);
    if (n > 2) {
        const std::size_t k = n - 2; // interior unknowns
        std::vector<double> diag(k), rhs(k), upper(k);
        for (std::size_t i = 0; i < k; ++i) {
            diag[i] = 2.0 * (h[i] + h[i + 1]);
            upper[i] = h[i + 1];
            rhs[i] = 6.0 * ((values_[i + 2] - values_[i + 1]) / h[i + 1] -
                            (values_[i + 1] - values_[i]) / h[i]);
        }
        for (std::size_t i = 1; i < k; ++i) {
            const double w = h[i] / diag[i - 1]; // lower[i] == h[i]
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        m[k] = rhs[k - 1] / diag[k - 1];
        for (std::size_t i = k - 1; i >= 1; --i)
            m[i] = (rhs[i - 1] - upper[i - 1] * m[i + 1]) / diag[i - 1];
    }

    pieces_.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        Piece& p = pieces_[i];
        p.t0 = ts_[i];
        p.a = values_[i];
        p.b = (values_[i + 1] - values_[i]) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
        p.c = m[i] / 2.0;
        p.d = (m[i + 1] - m[i]) / (6.0 * h[i]);
    }
}

std::size_t NaturalCubicSpline::piece_index(double t) const {
    // Rightmost piece whose t0 <= t; clamped for the extrapolation paths.
    std::size_t lo = 0;
    std::size_t hi = pieces_.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi + 1) / 2;
        if (pieces_[mid].t0 <= t)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

double NaturalCubicSpline::eval(double t) const {
    if (t < ts_.front()) {
        // Linear continuation with the tangent at the first knot.
        const Piece& p = pieces_.front();
        return p.a + p.b * (t - p.t0);
    }
    if (t > ts_.back()) {
        const Piece& p = pieces_.back();
        const double dt = ts_.back() - p.t0;
        const double end_value = p.a + dt * (p.b + dt * (p.c + dt * p.d));
        const double end_slope = p.b + dt * (2.0 * p.c + dt * 3.0 * p.d);
        return end_value + end_slope * (t - ts_.back());
    }
    const Piece& p = pieces_[piece_index(t)];
    const double dt = t - p.t0;
    return p.a + dt * (p.b + dt * (p.c + dt * p.d));
}

double NaturalCubicSpline::derivative(double t) const {
    if (t < ts_.front()) return pieces_.front().b;
    if (t > ts_.back()) {
        const Piece& p = pieces_.back();
        const double dt = ts_.back() - p.t0;
        return p.b + dt * (2.0 * p.c + dt * 3.0 * p.d);
    }
    const Piece& p = pieces_[piece_index(t)];
    const double dt = t - p.t0;
    return p.b + dt * (2.0 * p.c + dt * 3.0 * p.d);
}

double NaturalCubicSpline::second_derivative(double t) const {
    if (t < ts_.front() || t > ts_.back()) return 0.0; // linear outside
    const Piece& p = pieces_[piece_index(t)];
    return 2.0 * p.c + 6.0 * p.d * (t - p.t0);
}

namespace {
std::vector<double> component(const std::vector<Vec2>& points, double Vec2::* axis) {
    std::vector<double> v(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) v[i] = points[i].*axis;
    return v;
}
} // namespace

ParametricCurve::ParametricCurve(std::vector<double> ts, const std::vector<Vec2>& points)
    : x_(ts, component(points, &Vec2::x)), y_(std::move(ts), component(points, &Vec2::y)) {}

} // namespace railgen
