#ifndef TORUSFLUX_ORBITS_HPP
#define TORUSFLUX_ORBITS_HPP

#include <array>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include "torusflux/perturb.hpp"
#include "torusflux/torus_map.hpp"

namespace torusflux {

/** A verified periodic point of a torus map.
 *
 * point lies on the torus; lattice is the integer translation of the lift
 * over one period (the orbit's homology data):
 *     lift(f^q)(point) = point + lattice + O(residual).
 * multipliers are the eigenvalues of the q-step Jacobian; their product is
 * its determinant, 1 up to rounding.
 */
struct OrbitRecord {
    Vec2 point{};
    int period = 1;
    std::array<long long, 2> lattice{0, 0};
    double residual = 0.0;
    std::array<std::complex<double>, 2> multipliers{};
};

struct Region {
    enum class Kind { FullTorus, InDisk };
    Kind kind = Kind::FullTorus;
    Disk disk{};

    static Region full() { return {}; }
    static Region in_disk(const Disk& d) { return {Kind::InDisk, d}; }
    bool contains(Vec2 torus_point) const {
        return kind == Kind::FullTorus || disk.contains(torus_point, 1e-12);
    }
};

struct FindOptions {
    int seeds_per_axis = 64;
    double tol = 1e-12;             // Newton convergence on |f^q(x) - x - z|
    double accept_residual = 1e-10; // records above this are dropped
    int max_iter = 30;
    double dedup_dist = 1e-6;       // torus distance identifying orbits
};

struct FindDiagnostics {
    long seeds = 0;
    long converged = 0;
    long singular = 0;       // seeds abandoned at a singular Newton matrix
    long max_iter_hits = 0;
    long out_of_region = 0;  // orbits with no point inside the region
    long verify_failures = 0;
    double min_residual = std::numeric_limits<double>::infinity();
};

/** Newton search for period-q points.
 *
 * Seeds a uniform grid over the region, iterates
 *     x <- x - (Df^q(x) - I)^{-1} (lift(f^q)(x) - x - z)
 * with the lattice candidate z re-selected each step as the nearest
 * integer vector to the current q-step displacement (candidates stay
 * within the measured sup-displacement bound q * (d_max + 1)).  Converged
 * solutions are deduplicated orbit-wise: points of one orbit collapse to a
 * single record whose representative is the lexicographically smallest
 * orbit point inside the region.  Every record is re-verified by plain
 * forward iteration before being returned.  Seeds that hit a singular
 * Newton matrix are counted and skipped (unless already converged, which
 * covers maps with f^q = id).
 */
std::vector<OrbitRecord> find_periodic_points(const TorusMap& map, int q,
                                              const Region& region = {},
                                              const FindOptions& options = {},
                                              FindDiagnostics* diagnostics = nullptr);

enum class ScanStatus { Found, NoOrbitFound, DisjointnessFailed };

enum class ScanFamily {
    SingleDisk,  // one twist family on U0
    AllDisks     // product of twists on disks inscribed in every pulled-back U_i
};

struct ScanOptions {
    int q_max = 20;
    double c0_bound = 0.1;
    int t_steps = 200;
    int seeds_per_axis = 24;
    FindOptions find{};
    RationalizeOptions rationalize{};
    BumpProfile twist_profile{};
    int boundary_samples = 256;
    int max_shrinks = 6;
    int refine_rounds = 2;
    int refine_top = 4;  // local minima refined per round
    ScanFamily family = ScanFamily::SingleDisk;
};

struct ScanReport {
    ScanStatus status = ScanStatus::NoOrbitFound;
    std::optional<double> t_star{};
    std::optional<OrbitRecord> orbit{};
    std::vector<double> t_grid;          // every sampled t, in evaluation order
    std::vector<double> min_residuals;   // best Newton residual seen at each t
    bool disjointness_ok = false;
    double action_slope = 0.0;       // A(h_1) of the family on U0
    double action_certificate = 0.0; // q * A(h_1) (sum over disks for AllDisks)
    long long q = 1;
    std::array<long long, 2> p{0, 0};
    double u0_radius_used = 0.0;
    int shrinks = 0;
    std::array<double, 2> eps{0.0, 0.0};
    double c0_size = 0.0;
    bool band_overlap = false;
    FindDiagnostics find_totals{};
};

/** Periodic-orbit creation scan.
 *
 * Rationalizes the flux of f (denominator q), pulls U0 back through the
 * perturbed inverse to U_1, ..., U_{q-1} and checks pairwise disjointness
 * of the sampled boundaries (shrinking U0 by halves when they collide),
 * builds the twist family on U0, then walks t over a uniform grid in
 * [0, 1] looking for a verified period-q point of h_t o f inside U0.
 * Unsuccessful grids are refined around the deepest residual dips before
 * reporting NoOrbitFound; that outcome carries full diagnostics and is
 * legitimate, since the scan is a witness search with no guaranteed
 * modulus in t.
 */
ScanReport closing_scan(const TorusMap& map, const Disk& u0, const ScanOptions& options = {});

}  // namespace torusflux

#endif
