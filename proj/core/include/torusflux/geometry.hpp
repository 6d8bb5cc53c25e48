#ifndef TORUSFLUX_GEOMETRY_HPP
#define TORUSFLUX_GEOMETRY_HPP

#include <algorithm>
#include <cmath>

namespace torusflux {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
    friend Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
    Vec2& operator+=(Vec2 b) { x += b.x; y += b.y; return *this; }
    Vec2& operator-=(Vec2 b) { x -= b.x; y -= b.y; return *this; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double norm_inf(Vec2 v) { return std::max(std::abs(v.x), std::abs(v.y)); }

// 2x2 matrix, row major: [[a, b], [c, d]].
struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;

    static Mat2 identity() { return {}; }

    friend Mat2 operator*(const Mat2& m, const Mat2& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
    friend Vec2 operator*(const Mat2& m, Vec2 v) {
        return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
    }
    friend Mat2 operator-(const Mat2& m, const Mat2& n) {
        return {m.a - n.a, m.b - n.b, m.c - n.c, m.d - n.d};
    }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }
    double max_abs() const {
        return std::max(std::max(std::abs(a), std::abs(b)),
                        std::max(std::abs(c), std::abs(d)));
    }
};

// Componentwise reduction mod 1 into [0,1).  Values that round up to
// exactly 1.0 are folded to 0.0; on the torus the two are the same point.
inline double project1(double x) {
    double r = x - std::floor(x);
    if (r >= 1.0) r = 0.0;
    return r;
}
inline Vec2 project(Vec2 p) { return {project1(p.x), project1(p.y)}; }

// Nearest-image representative in [-1/2, 1/2).
inline double wrap_half1(double x) {
    double r = x - std::round(x);
    if (r < -0.5) r += 1.0;
    if (r >= 0.5) r -= 1.0;
    return r;
}
inline Vec2 wrap_half(Vec2 v) { return {wrap_half1(v.x), wrap_half1(v.y)}; }

inline double torus_dist(Vec2 p, Vec2 q) { return norm(wrap_half(p - q)); }

// Closed interval [lo, hi] inside [0, 1]; used for shear bands.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double width() const { return hi - lo; }
    bool valid() const { return lo >= 0.0 && hi <= 1.0 && lo < hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

// Round disk in torus coordinates.  Twists and action machinery require
// radius < 1/2 so the Euclidean chart around the center is injective.
struct Disk {
    Vec2 center{};
    double radius = 0.0;

    // chart coordinate of a torus/lift point, nearest image of center
    Vec2 chart(Vec2 p) const { return wrap_half(p - center); }
    bool contains(Vec2 p, double tol = 0.0) const {
        return norm(chart(p)) <= radius + tol;
    }
    friend bool operator==(const Disk&, const Disk&) = default;
};

}  // namespace torusflux

#endif
