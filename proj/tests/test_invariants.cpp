#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "torusflux/errors.hpp"
#include "torusflux/invariants.hpp"
#include "torusflux/rng.hpp"

using namespace torusflux;
using tfx_test::kPi;

namespace {

double circ_dist(double a, double b) {
    const double d = std::abs(project1(a) - project1(b));
    return std::min(d, 1.0 - d);
}

Gauge sine_gauge() {
    return {[](Vec2 p) {
                return 0.1 * std::sin(2.0 * kPi * p.x) * std::sin(2.0 * kPi * p.y);
            },
            [](Vec2 p) {
                const double c = 0.2 * kPi;
                return Vec2{c * std::cos(2.0 * kPi * p.x) * std::sin(2.0 * kPi * p.y),
                            c * std::sin(2.0 * kPi * p.x) * std::cos(2.0 * kPi * p.y)};
            }};
}

}  // namespace

TEST_SUITE("invariants") {

TEST_CASE("flux of a translation is the translation vector") {
    const FluxVector v = flux_vector(TorusMap(Generator{Translation{0.37, 0.18}}),
                                     GridSpec{128});
    CHECK(std::abs(v.vx - 0.37) < 1e-12);
    CHECK(std::abs(v.vy - 0.18) < 1e-12);
    const FluxVector zero = flux_vector(TorusMap{});
    CHECK(zero.vx == 0.0);
    CHECK(zero.vy == 0.0);
}

TEST_CASE("flux of a shear against the 1-D profile oracle") {
    const Interval band{0.2, 0.55};
    const BumpProfile prof{0.3, 0.9};
    const double eps = 0.04;
    const FluxVector v = flux_vector(TorusMap(Generator{HorizontalShear{eps, band, prof}}));
    const double expected = eps * tfx_test::band_integral_oracle(band, prof);
    CHECK(std::abs(v.vx - expected) < 1e-10);
    CHECK(std::abs(v.vy) < 1e-14);
}

TEST_CASE("reduced flux and cohomology pairing") {
    const FluxVector v = flux_vector(TorusMap(Generator{Translation{1.25, -0.3}}));
    CHECK(std::abs(v.reduced().x - 0.25) < 1e-12);
    CHECK(std::abs(v.reduced().y - 0.7) < 1e-12);
    CHECK(v.cohomology_pair().x == -v.vy);
    CHECK(v.cohomology_pair().y == v.vx);
}

TEST_CASE("loop flux: swept areas of the fundamental cycles") {
    const TorusMap f(Generator{Translation{0.37, 0.18}});
    CHECK(std::abs(loop_flux(f, Cycle::A, 0.1) - 0.18) < 1e-12);
    CHECK(circ_dist(loop_flux(f, Cycle::B, 0.4), -0.37) < 1e-12);
    CHECK(loop_flux(TorusMap{}, Cycle::A, 0.5) == 0.0);
    // cycle avoiding a compactly supported map sweeps nothing
    const TorusMap tw(Generator{DiskTwist{{0.5, 0.5}, 0.2, 1.0}});
    CHECK(std::abs(loop_flux(tw, Cycle::A, 0.9)) < 1e-14);
}

TEST_CASE("loop fluxes pair with the displacement integrals by a quarter turn") {
    // F_a = vy and F_b = -vx (mod 1), uniformly over the generator kinds
    std::vector<TorusMap> maps;
    maps.emplace_back(Generator{Translation{0.37, 0.18}});
    maps.emplace_back(Generator{HorizontalShear{0.1, {0.2, 0.6}}});
    maps.emplace_back(Generator{VerticalShear{-0.07, {0.5, 0.9}}});
    maps.emplace_back(Generator{DiskTwist{{0.31, 0.72}, 0.22, 1.1}});
    for (const TorusMap& m : maps) {
        const FluxVector v = flux_vector(m);
        CHECK(circ_dist(loop_flux(m, Cycle::A, 0.05), v.vy) < 1e-8);
        CHECK(circ_dist(loop_flux(m, Cycle::B, 0.05), -v.vx) < 1e-8);
    }
}

TEST_CASE("exactness criterion") {
    CHECK(is_exact(TorusMap(Generator{Translation{1.0, 2.0}})));
    CHECK_FALSE(is_exact(TorusMap(Generator{Translation{0.5, 0.0}})));
    CHECK(is_exact(TorusMap(Generator{DiskTwist{{0.3, 0.8}, 0.2, 1.7}})));
}

TEST_CASE("flux is additive along the lift") {
    Rng rng(101);
    const GridSpec grid{512};
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        const TorusMap f = random_chain(rng, 10);
        const TorusMap g = random_chain(rng, 10);
        const FluxVector vf = flux_vector(f, grid);
        const FluxVector vg = flux_vector(g, grid);
        const FluxVector vc = flux_vector(compose(f, g), grid);
        worst = std::max(worst, std::max(std::abs(vc.vx - vf.vx - vg.vx),
                                         std::abs(vc.vy - vf.vy - vg.vy)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("flux of the k-th iterate is k times the flux") {
    Rng rng(707);
    const GridSpec grid{512};
    const TorusMap f = random_chain(rng, 8);
    const FluxVector v1 = flux_vector(f, grid);
    double worst = 0.0;
    for (int k = 2; k <= 8; ++k) {
        const FluxVector vk = flux_vector(iterate(f, k), grid);
        worst = std::max(worst, std::max(std::abs(vk.vx - k * v1.vx),
                                         std::abs(vk.vy - k * v1.vy)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("action of the identity vanishes") {
    const Disk d{{0.5, 0.5}, 0.3};
    const ActionProfile ap = action_profile(TorusMap{}, d);
    CHECK(ap.total == 0.0);
    CHECK(ap.boundary_residual == 0.0);
    CHECK(ap.g_min == 0.0);
    CHECK(ap.g_max == 0.0);
}

TEST_CASE("twist action matches the brute-force nested quadrature oracle") {
    const Disk d{{0.5, 0.5}, 0.35};
    const BumpProfile prof;
    const TorusMap twist(Generator{DiskTwist{d.center, d.radius, 1.0, prof}});
    const ActionProfile ap = action_profile(twist, d);
    const double oracle = tfx_test::twist_action_oracle(1.0, d.radius, prof);
    CHECK(std::abs(ap.total - oracle) < 1e-8);
    CHECK(ap.total > 0.0);
    CHECK(ap.boundary_residual < 1e-9);
    CHECK(ap.g_min > -1e-10);
}

TEST_CASE("twist action is linear in the angle") {
    const Disk d{{0.5, 0.5}, 0.3};
    const double a1 =
        action_profile(TorusMap(Generator{DiskTwist{d.center, d.radius, 1.0}}), d).total;
    for (double t : {0.25, 0.5, 0.75}) {
        const double at =
            action_profile(TorusMap(Generator{DiskTwist{d.center, d.radius, t}}), d).total;
        CHECK(std::abs(at - t * a1) < 1e-9);
    }
}

TEST_CASE("maps that move the boundary are rejected") {
    const Disk d{{0.5, 0.5}, 0.2};
    // twist centered off this disk leaks through its boundary
    CHECK_THROWS_AS(action_profile(TorusMap(Generator{DiskTwist{{0.7, 0.5}, 0.2, 1.0}}), d),
                    NotDiskSupported);
    CHECK_THROWS_AS(action_profile(TorusMap(Generator{Translation{0.3, 0.0}}), d),
                    NotDiskSupported);
    CHECK_THROWS_AS(action_profile(TorusMap(Generator{HorizontalShear{0.1, {0.45, 0.55}}}), d),
                    NotDiskSupported);
}

TEST_CASE("action additivity") {
    const Disk d{{0.5, 0.5}, 0.3};
    SUBCASE("identity pair") {
        const AdditivityReport rep = check_action_additivity(TorusMap{}, TorusMap{}, d);
        CHECK(rep.residual == 0.0);
    }
    SUBCASE("same-disk twists compose as the flow") {
        const TorusMap f1(Generator{DiskTwist{d.center, d.radius, 0.3}});
        const TorusMap f2(Generator{DiskTwist{d.center, d.radius, 0.5}});
        const AdditivityReport rep = check_action_additivity(f1, f2, d);
        CHECK(rep.residual < 1e-8);
        const double a08 =
            action_profile(TorusMap(Generator{DiskTwist{d.center, d.radius, 0.8}}), d).total;
        CHECK(std::abs(rep.lhs - a08) < 1e-9);
    }
    SUBCASE("twists on disjoint sub-disks") {
        const TorusMap f1(Generator{DiskTwist{d.center + Vec2{0.12, 0.0}, 0.08, 0.9}});
        const TorusMap f2(Generator{DiskTwist{d.center - Vec2{0.12, 0.0}, 0.08, -1.2}});
        const AdditivityReport rep = check_action_additivity(f1, f2, d);
        CHECK(rep.residual < 1e-8);
    }
    SUBCASE("random disk-supported pairs") {
        Rng rng(5);
        for (int i = 0; i < 3; ++i) {
            const TorusMap f1 = random_disk_supported_chain(rng, d, 2);
            const TorusMap f2 = random_disk_supported_chain(rng, d, 2);
            CHECK(check_action_additivity(f1, f2, d).residual < 1e-8);
        }
    }
}

TEST_CASE("total action is independent of the primitive's gauge") {
    const Disk d{{0.5, 0.5}, 0.3};
    const TorusMap twist(Generator{DiskTwist{d.center, d.radius, 1.0}});
    ActionOptions plain;
    ActionOptions gauged;
    gauged.primitive.gauge = sine_gauge();
    const double a = action_profile(twist, d, plain).total;
    const double b = action_profile(twist, d, gauged).total;
    CHECK(std::abs(a - b) < 1e-8);
}

TEST_CASE("x dy gives the same totals; y dx the opposite orientation") {
    // x dy = angular + d(xy/2); y dx = -angular + d(xy/2)
    const Disk d{{0.5, 0.5}, 0.3};
    const TorusMap twist(Generator{DiskTwist{d.center, d.radius, 1.0}});
    ActionOptions xdy, ydx;
    xdy.primitive.kind = PrimitiveKind::XdY;
    ydx.primitive.kind = PrimitiveKind::YdX;
    const double a = action_profile(twist, d).total;
    CHECK(std::abs(action_profile(twist, d, xdy).total - a) < 1e-10);
    CHECK(std::abs(action_profile(twist, d, ydx).total + a) < 1e-10);
}

TEST_CASE("twist action function is pointwise nonnegative") {
    const Disk d{{0.5, 0.5}, 0.35};
    for (double t : {0.3, 1.0, 2.0}) {
        const ActionProfile ap =
            action_profile(TorusMap(Generator{DiskTwist{d.center, d.radius, t}}), d);
        CHECK(ap.g_min > -1e-10);
    }
}

TEST_CASE("action total equals the disk quadrature of the sampled field") {
    const Disk d{{0.5, 0.5}, 0.25};
    const TorusMap twist(Generator{DiskTwist{d.center, d.radius, 0.7}});
    const ActionProfile ap = action_profile(twist, d);
    KahanSum acc;
    const auto& gl = gauss_legendre(static_cast<int>(ap.radius_fractions.size()));
    for (std::size_t i = 0; i < ap.radius_fractions.size(); ++i) {
        for (std::size_t j = 0; j < ap.angles.size(); ++j) {
            acc.add(0.5 * gl[i][1] * ap.radius_fractions[i] * ap.g[i * ap.angles.size() + j]);
        }
    }
    const double total =
        acc.value() * d.radius * d.radius * 2.0 * kPi / static_cast<double>(ap.angles.size());
    CHECK(std::abs(total - ap.total) < 1e-15);
}

}  // TEST_SUITE
