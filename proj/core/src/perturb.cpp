#include "torusflux/perturb.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "torusflux/errors.hpp"

namespace torusflux {

TwistFamily::TwistFamily(Disk disk, BumpProfile profile, const ActionOptions& options)
    : disk_(disk), profile_(profile), action_slope_(0.0) {
    if (!(disk.radius > 0.0 && disk.radius < 0.5)) {
        throw DiskTooLarge("TwistFamily: disk radius must lie in (0, 1/2)");
    }
    action_slope_ = action_profile(member(1.0), disk_, options).total;
}

TorusMap TwistFamily::member(double t) const {
    if (t == 0.0) return TorusMap{};
    return TorusMap(Generator{DiskTwist{disk_.center, disk_.radius, t, profile_}});
}

TwistFamily twist_family(const Disk& disk, const BumpProfile& profile) {
    return TwistFamily(disk, profile);
}

namespace {

bool band_meets_strip(const Interval& band, double lo, double hi) {
    // does [lo,hi] mod 1 intersect [band.lo, band.hi]?
    for (int shift = -1; shift <= 1; ++shift) {
        if (band.lo <= hi + shift && lo + shift <= band.hi) return true;
    }
    return false;
}

}  // namespace

RationalizationResult rationalize_flux(const TorusMap& map,
                                       const RationalizeOptions& options) {
    if (options.q_max < 1) throw std::invalid_argument("rationalize_flux: q_max >= 1");
    if (!(options.c0_bound > 0.0)) {
        throw std::invalid_argument("rationalize_flux: c0_bound must be positive");
    }

    RationalizationResult res;
    res.flux_before = flux_vector(map, options.grid);
    const double vx = res.flux_before.vx;
    const double vy = res.flux_before.vy;

    // Probe which flux component each shear moves.  Shear flux is exactly
    // linear in eps, so the unit-amplitude columns determine the 2x2
    // response without trusting any orientation convention.
    const TorusMap hs(Generator{HorizontalShear{1.0, options.horizontal_band,
                                                options.shear_profile}});
    const TorusMap vs(Generator{VerticalShear{1.0, options.vertical_band,
                                              options.shear_profile}});
    const FluxVector ch = flux_vector(hs, options.grid);
    const FluxVector cv = flux_vector(vs, options.grid);
    const Mat2 response{ch.vx, cv.vx, ch.vy, cv.vy};
    const double rdet = response.det();
    if (std::abs(rdet) < 1e-12) {
        throw TargetUnreachable("rationalize_flux: degenerate shear response matrix");
    }

    // best rational target (p1/q, p2/q), q <= q_max, reachable within the
    // displacement budget; smaller q wins ties
    long long best_q = -1;
    long long best_p1 = 0, best_p2 = 0;
    double best_err = std::numeric_limits<double>::infinity();
    Vec2 best_eps{};
    for (long long q = 1; q <= options.q_max; ++q) {
        const long long p1 = std::llround(vx * q);
        const long long p2 = std::llround(vy * q);
        const Vec2 delta{static_cast<double>(p1) / q - vx,
                         static_cast<double>(p2) / q - vy};
        const Vec2 eps{(delta.x * response.d - delta.y * response.b) / rdet,
                       (delta.y * response.a - delta.x * response.c) / rdet};
        if (norm(eps) > options.c0_bound) continue;
        const double err = norm(delta);
        if (err < best_err * (1.0 - 1e-12)) {
            best_err = err;
            best_q = q;
            best_p1 = p1;
            best_p2 = p2;
            best_eps = eps;
        }
    }
    if (best_q < 0) {
        std::ostringstream os;
        os << "no rational flux with denominator <= " << options.q_max
           << " is reachable with displacement <= " << options.c0_bound;
        throw TargetUnreachable(os.str());
    }

    res.q = best_q;
    res.p = {best_p1, best_p2};
    res.target_error = best_err;

    std::vector<Generator> extra;
    if (best_err >= options.rational_tol) {
        res.eps = {best_eps.x, best_eps.y};
        if (std::abs(best_eps.x) > 0.0) {
            extra.push_back(HorizontalShear{best_eps.x, options.horizontal_band,
                                            options.shear_profile});
        }
        if (std::abs(best_eps.y) > 0.0) {
            extra.push_back(VerticalShear{best_eps.y, options.vertical_band,
                                          options.shear_profile});
        }
    }
    // correction applied after the map, so its C0 size is exactly the
    // shear displacement, with no Lipschitz amplification through the map
    res.perturbed = extra.empty() ? map : compose(TorusMap(std::move(extra)), map);
    res.flux_after = flux_vector(res.perturbed, options.grid);

    const int n = options.c0_grid;
    double c0 = 0.0, jdev = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Vec2 pnt{static_cast<double>(i) / n, static_cast<double>(j) / n};
            c0 = std::max(c0, norm(res.perturbed.lift(pnt) - map.lift(pnt)));
        }
    }
    const int nj = 64;
    for (int j = 0; j < nj; ++j) {
        for (int i = 0; i < nj; ++i) {
            const Vec2 pnt{static_cast<double>(i) / nj, static_cast<double>(j) / nj};
            jdev = std::max(jdev,
                            (res.perturbed.jacobian(pnt) - map.jacobian(pnt)).max_abs());
        }
    }
    res.c0_size = c0;
    res.jacobian_deviation = jdev;

    if (options.avoid) {
        const Disk& d = *options.avoid;
        const bool h_hit = std::abs(res.eps[0]) > 0.0 &&
                           band_meets_strip(options.horizontal_band, d.center.y - d.radius,
                                            d.center.y + d.radius);
        const bool v_hit = std::abs(res.eps[1]) > 0.0 &&
                           band_meets_strip(options.vertical_band, d.center.x - d.radius,
                                            d.center.x + d.radius);
        res.band_overlap = h_hit || v_hit;
    }
    return res;
}

}  // namespace torusflux
