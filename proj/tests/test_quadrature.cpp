#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "torusflux/errors.hpp"
#include "torusflux/quadrature.hpp"

using namespace torusflux;
using tfx_test::kPi;

TEST_SUITE("quadrature") {

TEST_CASE("torus rule integrates constants exactly") {
    CHECK(integrate_torus([](Vec2) { return 1.0; }, GridSpec{16}) == 1.0);
    CHECK(std::abs(integrate_torus([](Vec2) { return -3.5; }, GridSpec{64}) + 3.5) < 1e-15);
}

TEST_CASE("torus rule kills pure harmonics") {
    const double v =
        integrate_torus([](Vec2 p) { return std::sin(2.0 * kPi * p.x); }, GridSpec{32});
    CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("torus rule self-converges on a smooth field") {
    auto f = [](Vec2 p) {
        return std::exp(std::sin(2.0 * kPi * p.x) * std::cos(2.0 * kPi * p.y));
    };
    const double a = integrate_torus(f, GridSpec{64});
    const double b = integrate_torus(f, GridSpec{128});
    CHECK(std::abs(a - b) < 1e-12);
}

TEST_CASE("gauss-legendre nodes are ascending and integrate polynomials") {
    const auto& gl = gauss_legendre(5);
    for (std::size_t i = 1; i < gl.size(); ++i) CHECK(gl[i][0] > gl[i - 1][0]);
    // exact for degree <= 2*5 - 1 on [-1, 1]
    for (int k = 0; k <= 9; ++k) {
        double acc = 0.0;
        for (const auto& nw : gl) acc += nw[1] * std::pow(nw[0], k);
        const double exact = (k % 2) ? 0.0 : 2.0 / (k + 1);
        CHECK(std::abs(acc - exact) < 1e-14);
    }
}

TEST_CASE("disk rule: area and moments") {
    const Disk unit{{0.0, 0.0}, 1.0};
    CHECK(std::abs(integrate_disk([](Vec2) { return 1.0; }, unit) - kPi) < 1e-12);
    // int r^2 dA = pi/2 on the unit disk
    const double m2 = integrate_disk([](Vec2 p) { return p.x * p.x + p.y * p.y; }, unit);
    CHECK(std::abs(m2 - kPi / 2.0) < 1e-10);
}

TEST_CASE("disk rule: angular refinement is idle for radial fields") {
    const Disk d{{0.3, 0.4}, 0.2};
    auto f = [&](Vec2 p) { return std::cos(5.0 * norm(p - d.center)); };
    const double a = integrate_disk(f, d, 64, 64);
    const double b = integrate_disk(f, d, 64, 128);
    CHECK(std::abs(a - b) < 1e-14);
}

TEST_CASE("pullback line integral of the identity vanishes") {
    const Disk d{{0.5, 0.5}, 0.3};
    const TorusMap id;
    const double v = line_integral_pullback(
        id, d, Path::line(d.center + Vec2{0.3, 0.0}, d.center + Vec2{-0.1, 0.1}));
    CHECK(v == 0.0);
}

TEST_CASE("closed loops integrate to zero for exact maps") {
    const Disk d{{0.5, 0.5}, 0.3};
    const TorusMap twist(Generator{DiskTwist{d.center, d.radius, 1.0}});
    std::vector<Vec2> loop;
    for (int i = 0; i <= 12; ++i) {
        const double th = 2.0 * kPi * i / 12;
        loop.push_back(d.center + 0.22 * Vec2{std::cos(th), std::sin(th)});
    }
    const double v = line_integral_pullback(twist, d, Path::polyline(loop));
    CHECK(std::abs(v) < 1e-10);
}

TEST_CASE("radial integral of the twist matches the closed form") {
    // along a radial path from the boundary to radius fraction rho, the
    // integral equals t * R^2 * int_1^rho (s^2/2) b'(s) ds
    const Disk d{{0.5, 0.5}, 0.35};
    const BumpProfile prof;
    const double t = 1.3;
    const TorusMap twist(Generator{DiskTwist{d.center, d.radius, t, prof}});
    for (double rho : {0.15, 0.4, 0.55, 0.8}) {
        for (double th : {0.0, 1.1, 4.0}) {
            const Vec2 dir{std::cos(th), std::sin(th)};
            const double got = line_integral_pullback(
                twist, d, Path::line(d.center + d.radius * dir, d.center + rho * d.radius * dir));
            const double want = t * d.radius * d.radius * tfx_test::twist_g_oracle(prof, rho);
            CHECK(std::abs(got - want) < 1e-8);
        }
    }
}

TEST_CASE("homotopic paths agree for exact maps") {
    const Disk d{{0.5, 0.5}, 0.3};
    const TorusMap twist(Generator{DiskTwist{d.center, d.radius, 1.0}});
    const Vec2 a = d.center + Vec2{d.radius, 0.0};
    const Vec2 b = d.center + Vec2{-0.1, 0.12};
    const double direct = line_integral_pullback(twist, d, Path::line(a, b));
    const double dogleg = line_integral_pullback(
        twist, d, Path::polyline({a, d.center + Vec2{0.05, -0.15}, b}));
    CHECK(std::abs(direct - dogleg) < 1e-9);
}

TEST_CASE("paths leaving the disk are rejected") {
    const Disk d{{0.5, 0.5}, 0.2};
    const TorusMap id;
    CHECK_THROWS_AS(line_integral_pullback(
                        id, d, Path::line(d.center, d.center + Vec2{0.3, 0.0})),
                    PathOutsideDisk);
}

TEST_CASE("degenerate paths are rejected") {
    const Disk d{{0.5, 0.5}, 0.2};
    const TorusMap id;
    CHECK_THROWS(line_integral_pullback(id, d, Path::line(d.center, d.center)));
    CHECK_THROWS(line_integral_pullback(id, d, Path{{d.center}, 64}));
    CHECK_THROWS(line_integral_pullback(
        id, d, Path::line(d.center, d.center + Vec2{0.1, 0.0}, 8)));
}

}  // TEST_SUITE
