#include "torusflux/generators.hpp"

#include <cmath>
#include <stdexcept>

#include "torusflux/errors.hpp"

namespace torusflux {

namespace {

void check_band(const Interval& band) {
    if (!band.valid()) {
        throw std::invalid_argument("shear band must satisfy 0 <= lo < hi <= 1");
    }
}

}  // namespace

HorizontalShear::HorizontalShear(double eps_, Interval band_, BumpProfile profile_)
    : eps(eps_), band(band_), profile(profile_) {
    check_band(band);
}

VerticalShear::VerticalShear(double eps_, Interval band_, BumpProfile profile_)
    : eps(eps_), band(band_), profile(profile_) {
    check_band(band);
}

DiskTwist::DiskTwist(Vec2 center_, double radius_, double angle_, BumpProfile profile_)
    : center(center_), radius(radius_), angle(angle_), profile(profile_) {
    if (!(radius > 0.0 && radius < 0.5)) {
        throw DiskTooLarge("disk twist radius must lie in (0, 1/2)");
    }
}

double band_bump(const Interval& band, const BumpProfile& profile, double coord) {
    const double c = coord - std::floor(coord);
    if (c <= band.lo || c >= band.hi) return 0.0;
    const double u = (c - band.lo) / band.width();
    return profile.value(std::abs(2.0 * u - 1.0));
}

double band_bump_derivative(const Interval& band, const BumpProfile& profile,
                            double coord) {
    const double c = coord - std::floor(coord);
    if (c <= band.lo || c >= band.hi) return 0.0;
    const double u = (c - band.lo) / band.width();
    const double s = 2.0 * u - 1.0;
    const double sign = s >= 0.0 ? 1.0 : -1.0;
    return profile.derivative(std::abs(s)) * sign * 2.0 / band.width();
}

double band_bump_integral(const Interval& band, const BumpProfile& profile) {
    // substituting s = |2u - 1| shows the folded bump integrates to the
    // plain profile integral over one band width
    return band.width() * profile.integral();
}

namespace {

struct ApplyVisitor {
    Vec2 p;

    Vec2 operator()(const Translation& t) const { return {p.x + t.dx, p.y + t.dy}; }

    Vec2 operator()(const HorizontalShear& s) const {
        return {p.x + s.eps * band_bump(s.band, s.profile, p.y), p.y};
    }

    Vec2 operator()(const VerticalShear& s) const {
        return {p.x, p.y + s.eps * band_bump(s.band, s.profile, p.x)};
    }

    Vec2 operator()(const DiskTwist& t) const {
        const Vec2 d = p - t.center;
        const Vec2 k{std::round(d.x), std::round(d.y)};
        const Vec2 local = d - k;
        const double r = norm(local);
        if (r >= t.radius || r == 0.0) return p;
        const double phi = t.angle * t.profile.value(r / t.radius);
        const double cphi = std::cos(phi);
        const double sphi = std::sin(phi);
        const Vec2 rotated{cphi * local.x - sphi * local.y,
                           sphi * local.x + cphi * local.y};
        return t.center + k + rotated;
    }
};

struct JacobianVisitor {
    Vec2 p;

    Mat2 operator()(const Translation&) const { return Mat2::identity(); }

    Mat2 operator()(const HorizontalShear& s) const {
        Mat2 j = Mat2::identity();
        j.b = s.eps * band_bump_derivative(s.band, s.profile, p.y);
        return j;
    }

    Mat2 operator()(const VerticalShear& s) const {
        Mat2 j = Mat2::identity();
        j.c = s.eps * band_bump_derivative(s.band, s.profile, p.x);
        return j;
    }

    Mat2 operator()(const DiskTwist& t) const {
        const Vec2 d = p - t.center;
        const Vec2 k{std::round(d.x), std::round(d.y)};
        const Vec2 u = d - k;
        const double r = norm(u);
        if (r >= t.radius || r == 0.0) return Mat2::identity();
        const double rho = r / t.radius;
        const double phi = t.angle * t.profile.value(rho);
        const double cphi = std::cos(phi);
        const double sphi = std::sin(phi);
        Mat2 rot{cphi, -sphi, sphi, cphi};
        const double db = t.profile.derivative(rho);
        if (db == 0.0) return rot;
        // J = R(phi) + phi'(r) * (dR/dphi * u) (u/r)^T,  phi'(r) = angle*b'(rho)/radius
        const double coef = t.angle * db / (t.radius * r);
        const Vec2 w{-sphi * u.x - cphi * u.y, cphi * u.x - sphi * u.y};
        rot.a += coef * w.x * u.x;
        rot.b += coef * w.x * u.y;
        rot.c += coef * w.y * u.x;
        rot.d += coef * w.y * u.y;
        return rot;
    }
};

struct InvertVisitor {
    Generator operator()(const Translation& t) const {
        return Translation{-t.dx, -t.dy};
    }
    Generator operator()(const HorizontalShear& s) const {
        return HorizontalShear{-s.eps, s.band, s.profile};
    }
    Generator operator()(const VerticalShear& s) const {
        return VerticalShear{-s.eps, s.band, s.profile};
    }
    Generator operator()(const DiskTwist& t) const {
        return DiskTwist{t.center, t.radius, -t.angle, t.profile};
    }
};

}  // namespace

Vec2 apply(const Generator& g, Vec2 p) { return std::visit(ApplyVisitor{p}, g); }

Mat2 jacobian(const Generator& g, Vec2 p) { return std::visit(JacobianVisitor{p}, g); }

Generator inverted(const Generator& g) { return std::visit(InvertVisitor{}, g); }

}  // namespace torusflux
