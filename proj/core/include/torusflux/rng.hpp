#ifndef TORUSFLUX_RNG_HPP
#define TORUSFLUX_RNG_HPP

#include <cstdint>
#include <random>

#include "torusflux/torus_map.hpp"

namespace torusflux {

// mt19937_64 with hand-rolled value mappings.  The standard distributions
// are implementation-defined, so reports seeded the same way would differ
// across standard libraries; these mappings keep runs bit-identical
// everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    double uniform() {  // [0, 1), 53-bit
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(uniform() * (hi - lo + 1));
    }

private:
    std::mt19937_64 eng_;
};

// Random generator chain with parameter ranges mild enough that the
// default quadrature grids resolve every feature.
TorusMap random_chain(Rng& rng, int depth);

// Random composition of twists supported strictly inside the disk.
TorusMap random_disk_supported_chain(Rng& rng, const Disk& disk, int depth);

}  // namespace torusflux

#endif
