#include "torusflux/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "torusflux/errors.hpp"

namespace torusflux {

namespace {

// lift and Jacobian of f^q at x in one sweep
void eval_power(const TorusMap& map, int q, Vec2 x, Vec2* image, Mat2* jac) {
    Vec2 y = x;
    Mat2 j = Mat2::identity();
    for (int s = 0; s < q; ++s) {
        j = map.jacobian(y) * j;
        y = map.lift(y);
    }
    *image = y;
    *jac = j;
}

std::array<std::complex<double>, 2> eigenvalues(const Mat2& m) {
    const double half_tr = 0.5 * m.trace();
    const double disc = half_tr * half_tr - m.det();
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        return {std::complex<double>(half_tr + s, 0.0),
                std::complex<double>(half_tr - s, 0.0)};
    }
    const double s = std::sqrt(-disc);
    return {std::complex<double>(half_tr, s), std::complex<double>(half_tr, -s)};
}

bool lex_less(Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

struct Solution {
    Vec2 point;  // on the torus
    double residual;
};

}  // namespace

std::vector<OrbitRecord> find_periodic_points(const TorusMap& map, int q,
                                              const Region& region,
                                              const FindOptions& options,
                                              FindDiagnostics* diagnostics) {
    if (q < 1) throw std::invalid_argument("find_periodic_points: q must be >= 1");
    FindDiagnostics local;
    FindDiagnostics& diag = diagnostics ? *diagnostics : local;

    // measured sup displacement bounds the admissible lattice vectors
    double dsup = 0.0;
    for (int j = 0; j < 32; ++j) {
        for (int i = 0; i < 32; ++i) {
            dsup = std::max(dsup, norm_inf(map.displacement({i / 32.0, j / 32.0})));
        }
    }
    const double zbound = q * (dsup + 1.0);

    double bx = 0.0, by = 0.0, bw = 1.0, bh = 1.0;
    if (region.kind == Region::Kind::InDisk) {
        bx = region.disk.center.x - region.disk.radius;
        by = region.disk.center.y - region.disk.radius;
        bw = bh = 2.0 * region.disk.radius;
    }

    const int n = options.seeds_per_axis;
    if (n < 1) throw std::invalid_argument("find_periodic_points: seeds_per_axis >= 1");

    std::vector<Solution> solutions;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const Vec2 seed{bx + (i + 0.5) * bw / n, by + (j + 0.5) * bh / n};
            if (region.kind == Region::Kind::InDisk &&
                !region.disk.contains(project(seed), 0.0)) {
                continue;
            }
            ++diag.seeds;

            Vec2 x = seed;
            bool converged = false;
            bool abandoned = false;
            for (int iter = 0; iter < options.max_iter; ++iter) {
                Vec2 fq;
                Mat2 jac;
                eval_power(map, q, x, &fq, &jac);
                const Vec2 disp = fq - x;
                if (norm_inf(disp) > zbound) {  // left the admissible lattice range
                    abandoned = true;
                    break;
                }
                const Vec2 lattice{std::round(disp.x), std::round(disp.y)};
                const Vec2 f = disp - lattice;
                const double fnorm = norm(f);
                diag.min_residual = std::min(diag.min_residual, fnorm);
                if (fnorm <= options.tol) {
                    solutions.push_back({project(x), fnorm});
                    ++diag.converged;
                    converged = true;
                    break;
                }
                const Mat2 a = jac - Mat2::identity();
                const double det = a.det();
                const double scale = std::max(1.0, a.max_abs());
                if (std::abs(det) < 1e-14 * scale * scale) {
                    ++diag.singular;
                    abandoned = true;
                    break;
                }
                Vec2 step{(-f.x * a.d + f.y * a.b) / det,
                          (-f.y * a.a + f.x * a.c) / det};
                const double slen = norm(step);
                if (slen > 0.25) step = (0.25 / slen) * step;  // trust region
                x += step;
            }
            if (!converged && !abandoned) ++diag.max_iter_hits;
        }
    }

    // orbit-wise deduplication
    struct Rep {
        std::vector<Vec2> orbit;
        double residual;
    };
    std::vector<Rep> reps;
    for (const Solution& sol : solutions) {
        bool merged = false;
        for (Rep& rep : reps) {
            for (const Vec2& pt : rep.orbit) {
                if (torus_dist(sol.point, pt) < options.dedup_dist) {
                    rep.residual = std::min(rep.residual, sol.residual);
                    merged = true;
                    break;
                }
            }
            if (merged) break;
        }
        if (merged) continue;
        Rep rep;
        rep.residual = sol.residual;
        Vec2 p = sol.point;
        for (int s = 0; s < q; ++s) {
            rep.orbit.push_back(p);
            p = map.on_torus(p);
        }
        reps.push_back(std::move(rep));
    }

    std::vector<OrbitRecord> records;
    for (const Rep& rep : reps) {
        // representative: lexicographically smallest orbit point inside the region
        const Vec2* best = nullptr;
        for (const Vec2& pt : rep.orbit) {
            if (!region.contains(pt)) continue;
            if (!best || lex_less(pt, *best)) best = &pt;
        }
        if (!best) {
            ++diag.out_of_region;
            continue;
        }
        Vec2 fq;
        Mat2 jac;
        eval_power(map, q, *best, &fq, &jac);
        const Vec2 disp = fq - *best;
        const std::array<long long, 2> lattice{std::llround(disp.x),
                                               std::llround(disp.y)};
        const double residual =
            norm({disp.x - lattice[0], disp.y - lattice[1]});
        if (residual > options.accept_residual) {
            ++diag.verify_failures;
            continue;
        }
        // independent of the Newton path: plain forward iteration on the torus
        Vec2 fwd = *best;
        for (int s = 0; s < q; ++s) fwd = map.on_torus(fwd);
        if (torus_dist(fwd, *best) > std::max(10.0 * residual, 1e-12)) {
            ++diag.verify_failures;
            continue;
        }
        OrbitRecord rec;
        rec.point = *best;
        rec.period = q;
        rec.lattice = lattice;
        rec.residual = residual;
        rec.multipliers = eigenvalues(jac);
        records.push_back(rec);
    }

    std::sort(records.begin(), records.end(), [](const OrbitRecord& a, const OrbitRecord& b) {
        return lex_less(a.point, b.point);
    });
    return records;
}

namespace {

struct Loop {
    std::vector<Vec2> samples;  // torus points
    Vec2 center;
    double max_gap = 0.0;
};

Loop make_circle_loop(const Disk& disk, int samples) {
    Loop loop;
    loop.center = project(disk.center);
    loop.samples.resize(samples);
    for (int s = 0; s < samples; ++s) {
        const double th = 2.0 * std::numbers::pi * s / samples;
        loop.samples[s] =
            project(disk.center + disk.radius * Vec2{std::cos(th), std::sin(th)});
    }
    return loop;
}

Loop pull_back(const TorusMap& inv, const Loop& loop) {
    Loop out;
    out.center = inv.on_torus(loop.center);
    out.samples.reserve(loop.samples.size());
    for (const Vec2& p : loop.samples) out.samples.push_back(inv.on_torus(p));
    return out;
}

void finish_loop(Loop& loop) {
    double gap = 0.0;
    const std::size_t n = loop.samples.size();
    for (std::size_t s = 0; s < n; ++s) {
        gap = std::max(gap, torus_dist(loop.samples[s], loop.samples[(s + 1) % n]));
    }
    loop.max_gap = gap;
}

// ray-cast in the chart around the loop's own center
bool point_inside_loop(const Loop& loop, Vec2 torus_point) {
    const Vec2 w = wrap_half(torus_point - loop.center);
    int crossings = 0;
    const std::size_t n = loop.samples.size();
    for (std::size_t s = 0; s < n; ++s) {
        const Vec2 a = wrap_half(loop.samples[s] - loop.center) - w;
        const Vec2 b = wrap_half(loop.samples[(s + 1) % n] - loop.center) - w;
        if ((a.y > 0.0) != (b.y > 0.0)) {
            const double xc = a.x + (-a.y) * (b.x - a.x) / (b.y - a.y);
            if (xc > 0.0) ++crossings;
        }
    }
    return (crossings % 2) == 1;
}

bool loops_disjoint(const std::vector<Loop>& loops) {
    for (std::size_t i = 0; i < loops.size(); ++i) {
        for (std::size_t j = i + 1; j < loops.size(); ++j) {
            const double margin = 2.0 * std::max(loops[i].max_gap, loops[j].max_gap);
            for (const Vec2& a : loops[i].samples) {
                for (const Vec2& b : loops[j].samples) {
                    if (torus_dist(a, b) <= margin) return false;
                }
            }
            if (point_inside_loop(loops[i], loops[j].center)) return false;
            if (point_inside_loop(loops[j], loops[i].center)) return false;
        }
    }
    return true;
}

void accumulate(FindDiagnostics& total, const FindDiagnostics& part) {
    total.seeds += part.seeds;
    total.converged += part.converged;
    total.singular += part.singular;
    total.max_iter_hits += part.max_iter_hits;
    total.out_of_region += part.out_of_region;
    total.verify_failures += part.verify_failures;
    total.min_residual = std::min(total.min_residual, part.min_residual);
}

}  // namespace

ScanReport closing_scan(const TorusMap& map, const Disk& u0, const ScanOptions& options) {
    if (!(u0.radius > 0.0 && u0.radius < 0.5)) {
        throw DiskTooLarge("closing_scan: U0 radius must lie in (0, 1/2)");
    }
    ScanReport report;

    RationalizeOptions ro = options.rationalize;
    ro.q_max = options.q_max;
    ro.c0_bound = options.c0_bound;
    ro.avoid = u0;
    const RationalizationResult rat = rationalize_flux(map, ro);
    report.q = rat.q;
    report.p = rat.p;
    report.eps = rat.eps;
    report.c0_size = rat.c0_size;
    report.band_overlap = rat.band_overlap;

    const TorusMap& f = rat.perturbed;
    const TorusMap finv = f.inverse();
    const int q = static_cast<int>(rat.q);

    // pull U0 back through f and shrink until the sampled disks are disjoint
    double radius = u0.radius;
    std::vector<Loop> loops;
    bool disjoint = false;
    int shrinks = 0;
    for (; shrinks <= options.max_shrinks; ++shrinks) {
        loops.clear();
        loops.push_back(make_circle_loop({u0.center, radius}, options.boundary_samples));
        finish_loop(loops.back());
        for (int i = 1; i < q; ++i) {
            loops.push_back(pull_back(finv, loops.back()));
            finish_loop(loops.back());
        }
        disjoint = loops_disjoint(loops);
        if (disjoint) break;
        radius *= 0.5;
    }
    report.u0_radius_used = radius;
    report.shrinks = shrinks;
    report.disjointness_ok = disjoint;
    if (!disjoint) {
        report.status = ScanStatus::DisjointnessFailed;
        return report;
    }

    const Disk u0_final{u0.center, radius};
    const TwistFamily family(u0_final, options.twist_profile);
    report.action_slope = family.action_slope();
    report.action_certificate = q * family.action_slope();

    // AllDisks: additional twist families on disks inscribed in the pullbacks
    std::vector<TwistFamily> extra;
    if (options.family == ScanFamily::AllDisks) {
        double slope_sum = family.action_slope();
        for (int i = 1; i < q; ++i) {
            double inradius = 0.5;
            for (const Vec2& s : loops[i].samples) {
                inradius = std::min(inradius, torus_dist(loops[i].center, s));
            }
            inradius *= 0.8;
            if (inradius < 1e-3) continue;
            extra.emplace_back(Disk{loops[i].center, std::min(inradius, 0.45)},
                               options.twist_profile);
            slope_sum += extra.back().action_slope();
        }
        report.action_certificate = slope_sum;
    }

    const Region region = Region::in_disk(u0_final);
    FindOptions fo = options.find;
    fo.seeds_per_axis = options.seeds_per_axis;

    auto evaluate = [&](double t) {
        TorusMap ht = family.member(t);
        for (const TwistFamily& fam : extra) ht = compose(ht, fam.member(t));
        const TorusMap mt = compose(ht, f);
        FindDiagnostics fd;
        const auto records = find_periodic_points(mt, q, region, fo, &fd);
        accumulate(report.find_totals, fd);
        report.t_grid.push_back(t);
        report.min_residuals.push_back(fd.min_residual);
        if (!records.empty()) {
            report.orbit = records.front();
            report.t_star = t;
            return true;
        }
        return false;
    };

    bool found = false;
    const int steps = std::max(1, options.t_steps);
    for (int j = 0; j < steps && !found; ++j) {
        const double t = steps == 1 ? 0.0 : static_cast<double>(j) / (steps - 1);
        found = evaluate(t);
    }

    // refine around the deepest residual dips
    double delta = steps > 1 ? 1.0 / (steps - 1) : 1.0;
    for (int round = 0; round < options.refine_rounds && !found; ++round) {
        std::vector<std::size_t> order(report.t_grid.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return report.min_residuals[a] < report.min_residuals[b];
        });
        std::vector<double> centers;
        for (std::size_t idx : order) {
            if (static_cast<int>(centers.size()) >= options.refine_top) break;
            const double t = report.t_grid[idx];
            bool close = false;
            for (double c : centers) close = close || std::abs(c - t) < delta;
            if (!close) centers.push_back(t);
        }
        const double sub = delta / 5.0;
        for (double c : centers) {
            for (int s = -4; s <= 4 && !found; ++s) {
                if (s == 0) continue;
                const double t = c + s * sub;
                if (t < 0.0 || t > 1.0) continue;
                found = evaluate(t);
            }
            if (found) break;
        }
        delta = sub;
    }

    report.status = found ? ScanStatus::Found : ScanStatus::NoOrbitFound;
    return report;
}

}  // namespace torusflux
