#ifndef TORUSFLUX_INVARIANTS_HPP
#define TORUSFLUX_INVARIANTS_HPP

#include <vector>

#include "torusflux/quadrature.hpp"
#include "torusflux/torus_map.hpp"

namespace torusflux {

/** Flux data of a torus map isotopic to the identity.
 *
 * vx, vy are the displacement integrals of the chain's natural lift,
 *     (vx, vy) = integral over T^2 of (lift(p) - p).
 * They are exactly additive under composition and under iteration.  The
 * torus-level flux is the mod-Z^2 reduction.
 *
 * Convention note.  The geometric flux across the two fundamental cycles
 * (signed area swept between a loop and its image) relates to the
 * displacement integrals by a quarter turn:
 *     flux across a-cycle = vy,   flux across b-cycle = -vx  (mod 1),
 * i.e. (F_a, F_b) = J0^T (vx, vy) with J0 = [[0,-1],[1,0]].  loop_flux
 * implements the geometric definition; cohomology_pair() exposes
 * J0 (vx, vy), the coefficients of the flux class a1 dx + a2 dy.
 */
struct FluxVector {
    double vx = 0.0;
    double vy = 0.0;

    Vec2 reduced() const { return project({vx, vy}); }
    Vec2 cohomology_pair() const { return {-vy, vx}; }
};

FluxVector flux_vector(const TorusMap& map, GridSpec grid = {});

enum class Cycle { A, B };  // A: horizontal loop at fixed y; B: vertical loop at fixed x

/** Signed area swept between the loop and its image, mod 1 into [0,1).
 *
 * Computed as a 1-D periodic trapezoid integral of
 * det((l' + (f o l)')/2, f(l) - l) along the loop, using the linear sweep
 * homotopy; the integrand only needs the lift and its analytic Jacobian.
 */
double loop_flux(const TorusMap& map, Cycle cycle, double offset, int nodes = 512);

// True iff both reduced flux components are within tol of an integer,
// i.e. some lift has zero displacement integral.
bool is_exact(const TorusMap& map, GridSpec grid = {}, double tol = 1e-9);

struct ActionOptions {
    int radial_nodes = 96;
    int angular_nodes = 128;
    int path_nodes = 256;       // per line-integral segment
    int boundary_samples = 32;  // chord-based boundary residual probes
    Primitive primitive{};
    double support_tol = 1e-10;
};

/** Action data of a disk-supported map.
 *
 * g is the potential of map*(lambda) - lambda, normalized to vanish on the
 * disk boundary; total is its integral over the disk.  The sampled field
 * is stored at the disk quadrature nodes (radius fractions x angles,
 * radial-major), and total is exactly the disk quadrature of those
 * samples.  boundary_residual is max |g| over boundary points computed
 * along chords from a fixed anchor, a nontrivial exactness check.
 */
struct ActionProfile {
    Disk disk{};
    double total = 0.0;
    double boundary_residual = 0.0;
    double g_min = 0.0;
    double g_max = 0.0;
    std::vector<double> radius_fractions;  // Gauss nodes in (0,1)
    std::vector<double> angles;            // uniform in [0, 2pi)
    std::vector<double> g;                 // g[i*angles.size() + j]
};

// Throws NotDiskSupported if the map moves boundary-ring or exterior
// sample points by more than options.support_tol.
ActionProfile action_profile(const TorusMap& map, const Disk& disk,
                             const ActionOptions& options = {});

// g at an arbitrary point of the closed disk, integrated along the chord
// from the fixed boundary anchor center + (radius, 0).
double action_g(const TorusMap& map, const Disk& disk, Vec2 p,
                const ActionOptions& options = {});

struct AdditivityReport {
    double lhs = 0.0;  // A(f2 o f1)
    double a1 = 0.0;
    double a2 = 0.0;
    double residual = 0.0;  // |lhs - a1 - a2|
};

// Both maps must be supported in the common disk.  The boundary
// normalization makes the compatibility anchor automatic there, so the
// report measures the additivity law directly.
AdditivityReport check_action_additivity(const TorusMap& f1, const TorusMap& f2,
                                         const Disk& disk,
                                         const ActionOptions& options = {});

}  // namespace torusflux

#endif
