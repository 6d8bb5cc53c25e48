#ifndef TORUSFLUX_PERTURB_HPP
#define TORUSFLUX_PERTURB_HPP

#include <array>
#include <optional>

#include "torusflux/invariants.hpp"
#include "torusflux/torus_map.hpp"

namespace torusflux {

/** One-parameter family of disk twists h_t with h_0 = id.
 *
 * member(t) rotates the disk by angle t * b(rho); members compose as a
 * flow, member(s) o member(t) = member(s + t).  action_slope is the total
 * action of member(1), computed once at construction; the total action of
 * member(t) is t * action_slope.
 */
class TwistFamily {
public:
    TwistFamily(Disk disk, BumpProfile profile = {}, const ActionOptions& options = {});

    TorusMap member(double t) const;
    double action_slope() const { return action_slope_; }
    const Disk& disk() const { return disk_; }
    const BumpProfile& profile() const { return profile_; }

private:
    Disk disk_;
    BumpProfile profile_;
    double action_slope_;
};

TwistFamily twist_family(const Disk& disk, const BumpProfile& profile = {});

struct RationalizeOptions {
    int q_max = 20;
    double c0_bound = 0.1;
    Interval horizontal_band{0.0, 0.25};   // y band of the x-direction shear
    Interval vertical_band{0.375, 0.625};  // x band of the y-direction shear
    BumpProfile shear_profile{0.5, 1.0};
    GridSpec grid{};
    std::optional<Disk> avoid{};  // warn if a shear band meets this disk
    double rational_tol = 1e-12;  // flux already rational below this: no shears
    int c0_grid = 256;            // sup-norm measurement grid per axis
};

/** Composition of the input with two band shears whose flux is rational. */
struct RationalizationResult {
    TorusMap perturbed;
    long long q = 1;
    std::array<long long, 2> p{0, 0};
    std::array<double, 2> eps{0.0, 0.0};  // horizontal, vertical shear amplitudes
    double c0_size = 0.0;                 // sup |perturbed - map| over the grid
    double jacobian_deviation = 0.0;      // sup max-abs entry of J_pert - J_map
    FluxVector flux_before{};
    FluxVector flux_after{};
    double target_error = 0.0;  // |target - flux_before|, Euclidean
    bool band_overlap = false;  // a shear band meets options.avoid
};

/** Perturb the map so its flux vector becomes (p1/q, p2/q), q <= q_max.
 *
 * The target is the best rational pair with a common denominator <= q_max
 * reachable within the displacement budget; ties prefer the smaller q.
 * Shear amplitudes are solved from empirically probed shear flux columns,
 * so no orientation convention is assumed.  Throws TargetUnreachable when
 * no denominator fits the budget.
 */
RationalizationResult rationalize_flux(const TorusMap& map,
                                       const RationalizeOptions& options = {});

}  // namespace torusflux

#endif
