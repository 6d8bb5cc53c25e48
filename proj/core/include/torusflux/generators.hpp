#ifndef TORUSFLUX_GENERATORS_HPP
#define TORUSFLUX_GENERATORS_HPP

#include <variant>

#include "torusflux/bump.hpp"
#include "torusflux/geometry.hpp"

namespace torusflux {

// Every generator is an exactly symplectic diffeomorphism of the torus,
// given as a closed-form lift of R^2 with integer-vector equivariance.
// Jacobian determinants are identically 1 and inverses are exact
// (negate the parameter).

struct Translation {
    double dx = 0.0;
    double dy = 0.0;
    friend bool operator==(const Translation&, const Translation&) = default;
};

// (x, y) -> (x + eps * beta(y), y) with beta a bump supported in the band.
// beta is built from the profile on the folded coordinate |2u - 1| so it
// vanishes to all orders at both band edges and plateaus at 1 mid-band.
struct HorizontalShear {
    HorizontalShear(double eps, Interval band, BumpProfile profile = {});
    double eps;
    Interval band;
    BumpProfile profile;
    friend bool operator==(const HorizontalShear&, const HorizontalShear&) = default;
};

// (x, y) -> (x, y + eps * beta(x)).
struct VerticalShear {
    VerticalShear(double eps, Interval band, BumpProfile profile = {});
    double eps;
    Interval band;
    BumpProfile profile;
    friend bool operator==(const VerticalShear&, const VerticalShear&) = default;
};

// Rotation by angle * b(rho) on the disk of the given radius, identity
// outside.  rho is the radius fraction within the disk.  Radius must be
// < 1/2 so the disk embeds injectively; throws DiskTooLarge otherwise.
struct DiskTwist {
    DiskTwist(Vec2 center, double radius, double angle, BumpProfile profile = {});
    Vec2 center;
    double radius;
    double angle;
    BumpProfile profile;

    Disk disk() const { return {center, radius}; }
    friend bool operator==(const DiskTwist&, const DiskTwist&) = default;
};

using Generator = std::variant<Translation, HorizontalShear, VerticalShear, DiskTwist>;

Vec2 apply(const Generator& g, Vec2 p);
Mat2 jacobian(const Generator& g, Vec2 p);
Generator inverted(const Generator& g);

// beta(coord) for a banded bump, 1-periodic in coord
double band_bump(const Interval& band, const BumpProfile& profile, double coord);
double band_bump_derivative(const Interval& band, const BumpProfile& profile, double coord);

// integral of beta over one period: width * integral of b, exactly
double band_bump_integral(const Interval& band, const BumpProfile& profile);

}  // namespace torusflux

#endif
