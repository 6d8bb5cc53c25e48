#include "torusflux/rng.hpp"

#include <cmath>

namespace torusflux {

// Amplitudes and transition widths below are calibrated so that the
// periodic trapezoid rule resolves a 10-deep chain, and its 8th iterate,
// to ~1e-12 at n = 512.  Sharper profiles are perfectly legal map inputs,
// but the randomized law checks need quadrature error well under their
// 1e-10 tolerances.

TorusMap random_chain(Rng& rng, int depth) {
    std::vector<Generator> chain;
    chain.reserve(depth);
    for (int i = 0; i < depth; ++i) {
        switch (rng.uniform_int(0, 3)) {
            case 0:
                chain.push_back(Translation{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
                break;
            case 1: {
                const double w = rng.uniform(0.3, 0.45);
                const double lo = rng.uniform(0.0, 1.0 - w);
                chain.push_back(HorizontalShear{rng.uniform(-0.03, 0.03), Interval{lo, lo + w},
                                                BumpProfile{rng.uniform(0.2, 0.3),
                                                            rng.uniform(0.9, 1.0)}});
                break;
            }
            case 2: {
                const double w = rng.uniform(0.3, 0.45);
                const double lo = rng.uniform(0.0, 1.0 - w);
                chain.push_back(VerticalShear{rng.uniform(-0.03, 0.03), Interval{lo, lo + w},
                                              BumpProfile{rng.uniform(0.2, 0.3),
                                                          rng.uniform(0.9, 1.0)}});
                break;
            }
            default: {
                const double r = rng.uniform(0.15, 0.3);
                const Vec2 c{rng.uniform(), rng.uniform()};
                chain.push_back(DiskTwist{c, r, rng.uniform(-0.12, 0.12),
                                          BumpProfile{rng.uniform(0.2, 0.35),
                                                      rng.uniform(0.85, 0.95)}});
                break;
            }
        }
    }
    return TorusMap(std::move(chain));
}

TorusMap random_disk_supported_chain(Rng& rng, const Disk& disk, int depth) {
    std::vector<Generator> chain;
    chain.reserve(depth);
    for (int i = 0; i < depth; ++i) {
        const double sub_r = rng.uniform(0.25, 0.45) * disk.radius;
        const double off = rng.uniform(0.0, disk.radius - sub_r - 0.05 * disk.radius);
        const double th = rng.uniform(0.0, 2.0 * 3.141592653589793);
        const Vec2 c = disk.center + off * Vec2{std::cos(th), std::sin(th)};
        chain.push_back(DiskTwist{c, sub_r, rng.uniform(-0.8, 0.8),
                                  BumpProfile{rng.uniform(0.2, 0.4),
                                              rng.uniform(0.75, 0.95)}});
    }
    return TorusMap(std::move(chain));
}

}  // namespace torusflux
