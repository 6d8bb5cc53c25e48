#include "torusflux/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "torusflux/errors.hpp"
#include "torusflux/invariants.hpp"
#include "torusflux/mapfile.hpp"
#include "torusflux/orbits.hpp"
#include "torusflux/perturb.hpp"
#include "torusflux/report.hpp"
#include "torusflux/rng.hpp"

namespace torusflux {

namespace {

struct GlobalArgs {
    std::string file;
    int grid = 256;
    std::uint64_t seed = 0;
    std::string json_out;
    std::string csv_out;
};

Disk parse_disk_spec(const std::string& spec, const MapDocument& doc) {
    if (!spec.empty() && spec[0] == '@') {
        const std::string name = spec.substr(1);
        auto it = doc.disks.find(name);
        if (it == doc.disks.end()) {
            throw ParseError(0, 0, "no disk named '" + name + "' in the map file");
        }
        return it->second;
    }
    std::istringstream in(spec);
    double cx = 0, cy = 0, r = 0;
    char c1 = 0, c2 = 0;
    if (!(in >> cx >> c1 >> cy >> c2 >> r) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof()) {
        throw ParseError(0, 0, "disk spec must be 'cx,cy,r' or '@name', got '" + spec + "'");
    }
    if (!(r > 0.0 && r < 0.5)) {
        throw ParseError(0, 0, "disk radius must lie in (0, 1/2)");
    }
    return Disk{{cx, cy}, r};
}

void json_number_or_null(JsonWriter& w, double x) {
    if (std::isfinite(x)) {
        w.value(x);
    } else {
        w.null();
    }
}

void begin_report(JsonWriter& w, const char* command, const MapDocument& doc) {
    w.begin_object();
    w.field("schema", 1);
    w.field("command", command);
    w.field("map_hash", fnv1a_hex(serialize(doc)));
}

void write_parameters_prefix(JsonWriter& w, const GlobalArgs& g) {
    w.field("file", g.file);
    w.field("grid", g.grid);
    w.field("seed", static_cast<std::int64_t>(g.seed));
}

void write_orbit(JsonWriter& w, const OrbitRecord& rec) {
    w.begin_object();
    w.field("x", rec.point.x);
    w.field("y", rec.point.y);
    w.field("period", rec.period);
    w.key("z").begin_array().value(rec.lattice[0]).value(rec.lattice[1]).end_array();
    w.field("residual", rec.residual);
    w.key("multipliers").begin_array();
    for (const auto& m : rec.multipliers) {
        w.begin_array().value(m.real()).value(m.imag()).end_array();
    }
    w.end_array();
    w.field("multiplier_product_error",
            std::abs(rec.multipliers[0] * rec.multipliers[1] - 1.0));
    w.end_object();
}

void write_find_diagnostics(JsonWriter& w, const FindDiagnostics& d) {
    w.begin_object();
    w.field("seeds", static_cast<std::int64_t>(d.seeds));
    w.field("converged", static_cast<std::int64_t>(d.converged));
    w.field("singular", static_cast<std::int64_t>(d.singular));
    w.field("max_iter_hits", static_cast<std::int64_t>(d.max_iter_hits));
    w.field("out_of_region", static_cast<std::int64_t>(d.out_of_region));
    w.field("verify_failures", static_cast<std::int64_t>(d.verify_failures));
    w.key("min_residual");
    json_number_or_null(w, d.min_residual);
    w.end_object();
}

std::string orbit_csv(const std::vector<OrbitRecord>& records) {
    std::string csv = "x,y,period,z1,z2,residual\n";
    for (const auto& r : records) {
        csv += format_sig17(r.point.x) + "," + format_sig17(r.point.y) + "," +
               std::to_string(r.period) + "," + std::to_string(r.lattice[0]) + "," +
               std::to_string(r.lattice[1]) + "," + format_sig17(r.residual) + "\n";
    }
    return csv;
}

// ---------------------------------------------------------------------------

CliResult cmd_flux(const MapDocument& doc, const GlobalArgs& g) {
    CliResult result;
    const GridSpec grid{g.grid};
    const FluxVector v = flux_vector(doc.map, grid);
    const Vec2 reduced = v.reduced();
    const Vec2 pair = v.cohomology_pair();
    const double la = loop_flux(doc.map, Cycle::A, 0.0);
    const double lb = loop_flux(doc.map, Cycle::B, 0.0);
    const bool exact = is_exact(doc.map, grid);

    auto circ = [](double a, double b) {
        const double d = std::abs(project1(a) - project1(b));
        return std::min(d, 1.0 - d);
    };

    JsonWriter w;
    begin_report(w, "flux", doc);
    w.key("parameters").begin_object();
    write_parameters_prefix(w, g);
    w.end_object();
    w.key("results").begin_object();
    w.field("vx", v.vx);
    w.field("vy", v.vy);
    w.key("reduced").begin_array().value(reduced.x).value(reduced.y).end_array();
    w.key("cohomology_pair").begin_array().value(pair.x).value(pair.y).end_array();
    w.field("loop_flux_a", la);
    w.field("loop_flux_b", lb);
    w.field("exact", exact);
    w.field("exactness_tol", 1e-9);
    w.end_object();
    w.key("residuals").begin_object();
    w.field("loop_a_vs_vy", circ(la, v.vy));
    w.field("loop_b_vs_minus_vx", circ(lb, -v.vx));
    w.end_object();
    w.key("timings").begin_object();
    w.field("torus_grid_points", static_cast<std::int64_t>(g.grid) * g.grid);
    w.end_object();
    w.end_object();
    result.json = w.str();
    return result;
}

CliResult cmd_action(const MapDocument& doc, const GlobalArgs& g, const std::string& disk_spec) {
    CliResult result;
    const Disk disk = parse_disk_spec(disk_spec, doc);
    const ActionProfile prof = action_profile(doc.map, disk);

    JsonWriter w;
    begin_report(w, "action", doc);
    w.key("parameters").begin_object();
    write_parameters_prefix(w, g);
    w.key("disk").begin_array().value(disk.center.x).value(disk.center.y).value(disk.radius).end_array();
    w.end_object();
    w.key("results").begin_object();
    w.field("total", prof.total);
    w.field("g_min", prof.g_min);
    w.field("g_max", prof.g_max);
    w.end_object();
    w.key("residuals").begin_object();
    w.field("boundary", prof.boundary_residual);
    w.end_object();
    w.key("timings").begin_object();
    w.field("disk_nodes", static_cast<std::int64_t>(prof.radius_fractions.size() *
                                                    prof.angles.size()));
    w.end_object();
    w.end_object();
    result.json = w.str();

    // g samples at the quadrature nodes
    std::string csv = "x,y,g\n";
    for (std::size_t i = 0; i < prof.radius_fractions.size(); ++i) {
        for (std::size_t j = 0; j < prof.angles.size(); ++j) {
            const double rho = prof.radius_fractions[i];
            const double th = prof.angles[j];
            const Vec2 p = disk.center +
                           (rho * disk.radius) * Vec2{std::cos(th), std::sin(th)};
            csv += format_sig17(p.x) + "," + format_sig17(p.y) + "," +
                   format_sig17(prof.g[i * prof.angles.size() + j]) + "\n";
        }
    }
    result.csv = std::move(csv);
    return result;
}

CliResult cmd_orbits(const MapDocument& doc, const GlobalArgs& g, int q,
                     const std::string& region_spec, int seeds, double tol, int max_iter) {
    CliResult result;
    Region region = Region::full();
    if (region_spec != "full") {
        region = Region::in_disk(parse_disk_spec(region_spec, doc));
    }
    FindOptions fo;
    fo.seeds_per_axis = seeds;
    fo.tol = tol;
    fo.max_iter = max_iter;
    FindDiagnostics diag;
    const auto records = find_periodic_points(doc.map, q, region, fo, &diag);

    JsonWriter w;
    begin_report(w, "orbits", doc);
    w.key("parameters").begin_object();
    write_parameters_prefix(w, g);
    w.field("q", q);
    w.field("region", region_spec);
    w.field("seeds_per_axis", seeds);
    w.field("tol", tol);
    w.field("max_iter", max_iter);
    w.end_object();
    w.key("results").begin_object();
    w.field("count", static_cast<std::int64_t>(records.size()));
    w.key("orbits").begin_array();
    for (const auto& rec : records) write_orbit(w, rec);
    w.end_array();
    w.end_object();
    w.key("residuals").begin_object();
    double worst = 0.0;
    for (const auto& rec : records) worst = std::max(worst, rec.residual);
    w.field("max_orbit_residual", worst);
    w.end_object();
    w.key("diagnostics");
    write_find_diagnostics(w, diag);
    w.key("timings").begin_object();
    w.field("newton_seeds", static_cast<std::int64_t>(diag.seeds));
    w.end_object();
    w.end_object();
    result.json = w.str();
    result.csv = orbit_csv(records);
    return result;
}

CliResult cmd_rationalize(const MapDocument& doc, const GlobalArgs& g, int q_max, double c0) {
    CliResult result;
    RationalizeOptions ro;
    ro.q_max = q_max;
    ro.c0_bound = c0;
    ro.grid = GridSpec{g.grid};
    const RationalizationResult rat = rationalize_flux(doc.map, ro);

    JsonWriter w;
    begin_report(w, "rationalize", doc);
    w.key("parameters").begin_object();
    write_parameters_prefix(w, g);
    w.field("q_max", q_max);
    w.field("c0_bound", c0);
    w.end_object();
    w.key("results").begin_object();
    w.field("q", rat.q);
    w.key("p").begin_array().value(rat.p[0]).value(rat.p[1]).end_array();
    w.key("eps").begin_array().value(rat.eps[0]).value(rat.eps[1]).end_array();
    w.field("c0_size", rat.c0_size);
    w.field("jacobian_deviation", rat.jacobian_deviation);
    w.key("flux_before").begin_array().value(rat.flux_before.vx).value(rat.flux_before.vy).end_array();
    w.key("flux_after").begin_array().value(rat.flux_after.vx).value(rat.flux_after.vy).end_array();
    w.field("target_error", rat.target_error);
    w.field("band_overlap", rat.band_overlap);
    w.key("perturbed_map").value(serialize(MapDocument{rat.perturbed, {}, {}}));
    w.end_object();
    w.key("residuals").begin_object();
    const Vec2 red = rat.flux_after.reduced();
    const double qx = red.x * rat.q, qy = red.y * rat.q;
    w.field("q_flux_off_integer",
            std::max(std::abs(qx - std::round(qx)), std::abs(qy - std::round(qy))));
    w.end_object();
    w.key("timings").begin_object();
    w.field("torus_grid_points", static_cast<std::int64_t>(g.grid) * g.grid);
    w.end_object();
    w.end_object();
    result.json = w.str();
    return result;
}

CliResult cmd_scan(const MapDocument& doc, const GlobalArgs& g, const std::string& disk_spec,
                   int q_max, int t_steps, double c0, int seeds) {
    CliResult result;
    const Disk u0 = parse_disk_spec(disk_spec, doc);
    ScanOptions so;
    so.q_max = q_max;
    so.c0_bound = c0;
    so.t_steps = t_steps;
    so.seeds_per_axis = seeds;
    so.rationalize.grid = GridSpec{g.grid};
    const ScanReport rep = closing_scan(doc.map, u0, so);

    JsonWriter w;
    begin_report(w, "scan", doc);
    w.key("parameters").begin_object();
    write_parameters_prefix(w, g);
    w.key("disk").begin_array().value(u0.center.x).value(u0.center.y).value(u0.radius).end_array();
    w.field("q_max", q_max);
    w.field("t_steps", t_steps);
    w.field("c0_bound", c0);
    w.field("seeds_per_axis", seeds);
    w.end_object();
    w.key("results").begin_object();
    const char* status = rep.status == ScanStatus::Found             ? "found"
                         : rep.status == ScanStatus::NoOrbitFound    ? "no_orbit_found"
                                                                     : "disjointness_failed";
    w.field("status", status);
    w.key("t_star");
    if (rep.t_star) {
        w.value(*rep.t_star);
    } else {
        w.null();
    }
    w.key("orbit");
    if (rep.orbit) {
        write_orbit(w, *rep.orbit);
    } else {
        w.null();
    }
    w.field("q", rep.q);
    w.key("p").begin_array().value(rep.p[0]).value(rep.p[1]).end_array();
    w.field("action_slope", rep.action_slope);
    w.field("action_certificate", rep.action_certificate);
    w.field("disjointness_ok", rep.disjointness_ok);
    w.field("u0_radius_used", rep.u0_radius_used);
    w.field("shrinks", rep.shrinks);
    w.key("eps").begin_array().value(rep.eps[0]).value(rep.eps[1]).end_array();
    w.field("c0_size", rep.c0_size);
    w.field("band_overlap", rep.band_overlap);
    w.end_object();
    w.key("diagnostics").begin_object();
    w.key("t_grid").begin_array();
    for (double t : rep.t_grid) w.value(t);
    w.end_array();
    w.key("min_residuals").begin_array();
    for (double r : rep.min_residuals) json_number_or_null(w, r);
    w.end_array();
    w.key("newton");
    write_find_diagnostics(w, rep.find_totals);
    w.end_object();
    w.key("timings").begin_object();
    w.field("t_samples", static_cast<std::int64_t>(rep.t_grid.size()));
    w.field("newton_seeds", static_cast<std::int64_t>(rep.find_totals.seeds));
    w.end_object();
    w.end_object();
    result.json = w.str();

    if (rep.orbit) {
        result.csv = orbit_csv({*rep.orbit});
    } else {
        result.csv = orbit_csv({});
    }
    if (rep.status == ScanStatus::NoOrbitFound) result.exit_code = kExitNoOrbitFound;
    if (rep.status == ScanStatus::DisjointnessFailed) result.exit_code = kExitDisjointnessFailed;
    return result;
}

// ---------------------------------------------------------------------------

struct Check {
    std::string name;
    double residual;
    double tol;
    bool pass;
    std::string note;
};

std::vector<Check> verify_checks(const MapDocument& doc, const GlobalArgs& g) {
    std::vector<Check> checks;
    const TorusMap& f = doc.map;
    // flux laws compare quadratures of composed chains, which need a finer
    // grid than single-map results
    const GridSpec grid{std::max(g.grid, 512)};
    Rng rng(g.seed);

    auto add = [&](const std::string& name, double residual, double tol,
                   const std::string& note = "") {
        checks.push_back({name, residual, tol, residual <= tol, note});
    };

    std::vector<Vec2> pts(100);
    for (auto& p : pts) p = {rng.uniform(-1.0, 2.0), rng.uniform(-1.0, 2.0)};

    {
        double r = 0.0;
        for (const Vec2& p : pts) {
            const Vec2 z{static_cast<double>(rng.uniform_int(-2, 2)),
                         static_cast<double>(rng.uniform_int(-2, 2))};
            r = std::max(r, norm_inf(f.lift(p + z) - f.lift(p) - z));
        }
        add("equivariance", r, 1e-12);
    }
    {
        double r = 0.0;
        for (const Vec2& p : pts) r = std::max(r, std::abs(f.jacobian(p).det() - 1.0));
        add("jacobian_det_analytic", r, 1e-12);
    }
    {
        double r = 0.0;
        for (std::size_t i = 0; i < 25; ++i) {
            r = std::max(r, (f.jacobian(pts[i]) - jacobian_fd(f, pts[i])).max_abs());
        }
        add("jacobian_vs_finite_difference", r, 1e-6);
    }
    {
        const TorusMap finv = f.inverse();
        double r = 0.0;
        for (const Vec2& p : pts) r = std::max(r, norm_inf(finv.lift(f.lift(p)) - p));
        add("inverse_roundtrip", r, 1e-12);
    }

    const FluxVector vf = flux_vector(f, grid);
    {
        double r = 0.0;
        for (int k = 0; k < 3; ++k) {
            const TorusMap other = random_chain(rng, 10);
            const FluxVector vo = flux_vector(other, grid);
            const FluxVector vc = flux_vector(compose(f, other), grid);
            r = std::max(r, std::max(std::abs(vc.vx - vf.vx - vo.vx),
                                     std::abs(vc.vy - vf.vy - vo.vy)));
        }
        add("flux_additivity", r, 1e-10);
    }
    {
        double r = 0.0;
        for (int k = 2; k <= 4; ++k) {
            const FluxVector vk = flux_vector(iterate(f, k), grid);
            r = std::max(r, std::max(std::abs(vk.vx - k * vf.vx),
                                     std::abs(vk.vy - k * vf.vy)));
        }
        add("flux_iteration_law", r, 1e-10);
    }
    {
        auto circ = [](double a, double b) {
            const double d = std::abs(project1(a) - project1(b));
            return std::min(d, 1.0 - d);
        };
        const double la = loop_flux(f, Cycle::A, 0.0);
        const double lb = loop_flux(f, Cycle::B, 0.0);
        add("loop_flux_consistency",
            std::max(circ(la, vf.vy), circ(lb, -vf.vx)), 1e-8);
    }
    {
        double req = 0.0, rdet = 0.0;
        for (int k = 0; k < 3; ++k) {
            const TorusMap chain = random_chain(rng, 10);
            for (int i = 0; i < 30; ++i) {
                const Vec2 p{rng.uniform(-1.0, 2.0), rng.uniform(-1.0, 2.0)};
                const Vec2 z{static_cast<double>(rng.uniform_int(-2, 2)),
                             static_cast<double>(rng.uniform_int(-2, 2))};
                req = std::max(req, norm_inf(chain.lift(p + z) - chain.lift(p) - z));
                rdet = std::max(rdet, std::abs(chain.jacobian(p).det() - 1.0));
            }
        }
        add("random_chain_equivariance", req, 1e-12);
        add("random_chain_jacobian_det", rdet, 1e-12);
    }

    // action machinery: use the input map split in two when it is supported
    // on a named disk, otherwise a stock twist pair
    {
        bool used_input = false;
        double residual = 0.0;
        std::string note;
        if (!doc.disks.empty() && f.size() >= 2) {
            const auto& [name, disk] = *doc.disks.begin();
            try {
                const std::size_t mid = f.size() / 2;
                const TorusMap f2(std::vector<Generator>(f.chain().begin(),
                                                         f.chain().begin() + mid));
                const TorusMap f1(std::vector<Generator>(f.chain().begin() + mid,
                                                         f.chain().end()));
                residual = check_action_additivity(f1, f2, disk).residual;
                note = "input map split on disk '" + name + "'";
                used_input = true;
            } catch (const NotDiskSupported&) {
                used_input = false;
            }
        }
        if (!used_input) {
            const Disk disk{{0.5, 0.5}, 0.2};
            const TorusMap f1(Generator{DiskTwist{disk.center, disk.radius, 0.3}});
            const TorusMap f2(Generator{DiskTwist{disk.center, disk.radius, 0.5}});
            residual = check_action_additivity(f1, f2, disk).residual;
            note = "builtin twist pair";
        }
        add("action_additivity", residual, 1e-8, note);
    }
    {
        const Disk disk{{0.5, 0.5}, 0.2};
        const TorusMap twist(Generator{DiskTwist{disk.center, disk.radius, 1.0}});
        ActionOptions plain;
        ActionOptions gauged;
        gauged.primitive.gauge = Gauge{
            [](Vec2 p) {
                return 0.1 * std::sin(2 * std::numbers::pi * p.x) *
                       std::sin(2 * std::numbers::pi * p.y);
            },
            [](Vec2 p) {
                const double c = 0.2 * std::numbers::pi;
                return Vec2{c * std::cos(2 * std::numbers::pi * p.x) *
                                std::sin(2 * std::numbers::pi * p.y),
                            c * std::sin(2 * std::numbers::pi * p.x) *
                                std::cos(2 * std::numbers::pi * p.y)};
            }};
        const double a0 = action_profile(twist, disk, plain).total;
        const double a1 = action_profile(twist, disk, gauged).total;
        add("form_independence", std::abs(a1 - a0), 1e-8, "builtin twist");
    }
    return checks;
}

CliResult cmd_verify(const MapDocument& doc, const GlobalArgs& g) {
    CliResult result;
    const auto checks = verify_checks(doc, g);
    bool all = true;
    for (const auto& c : checks) all = all && c.pass;

    JsonWriter w;
    begin_report(w, "verify", doc);
    w.key("parameters").begin_object();
    write_parameters_prefix(w, g);
    w.end_object();
    w.key("results").begin_object();
    w.field("all_pass", all);
    w.key("checks").begin_array();
    for (const auto& c : checks) {
        w.begin_object();
        w.field("name", c.name);
        w.field("pass", c.pass);
        w.field("residual", c.residual);
        w.field("tolerance", c.tol);
        if (!c.note.empty()) w.field("note", c.note);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    w.key("residuals").begin_object();
    double worst = 0.0;
    for (const auto& c : checks) worst = std::max(worst, c.residual / c.tol);
    w.field("worst_over_tolerance", worst);
    w.end_object();
    w.key("timings").begin_object();
    w.field("checks", static_cast<std::int64_t>(checks.size()));
    w.end_object();
    w.end_object();
    result.json = w.str();
    if (!all) result.exit_code = kExitVerifyFailed;
    return result;
}

}  // namespace

CliResult run_command(const std::vector<std::string>& args) {
    CLI::App app{"torusflux: invariants, perturbations and periodic-orbit scans "
                 "for area-preserving torus maps"};
    app.fallthrough();

    GlobalArgs g;
    app.add_option("--grid", g.grid, "torus quadrature points per axis")
        ->check(CLI::Range(8, 8192));
    app.add_option("--seed", g.seed, "seed for every randomized internal");
    app.add_option("--json-out", g.json_out, "write the JSON report to this path");
    app.add_option("--csv-out", g.csv_out, "write orbit/sample rows to this path");

    std::string flux_file, action_file, orbits_file, scan_file, rat_file, verify_file;
    std::string action_disk, scan_disk = "0.5,0.5,0.05", orbits_region = "full";
    int orbits_q = 1, orbits_seeds = 64, orbits_max_iter = 30;
    double orbits_tol = 1e-12;
    int q_max = 20, t_steps = 200, scan_seeds = 24;
    double c0 = 0.1;

    CLI::App* c_flux = app.add_subcommand("flux", "flux vector, loop fluxes, exactness");
    c_flux->add_option("file", flux_file, "map description file")->required();

    CLI::App* c_action = app.add_subcommand("action", "action function and total action");
    c_action->add_option("file", action_file, "map description file")->required();
    c_action->add_option("--disk", action_disk, "disk 'cx,cy,r' or '@name'")->required();

    CLI::App* c_orbits = app.add_subcommand("orbits", "Newton search for periodic points");
    c_orbits->add_option("file", orbits_file, "map description file")->required();
    c_orbits->add_option("--q", orbits_q, "period")->required()->check(CLI::PositiveNumber);
    c_orbits->add_option("--region", orbits_region, "'full' (default), 'cx,cy,r' or '@name'");
    c_orbits->add_option("--seeds", orbits_seeds, "seed grid points per axis");
    c_orbits->add_option("--tol", orbits_tol, "Newton residual tolerance");
    c_orbits->add_option("--max-iter", orbits_max_iter, "Newton iteration cap");

    CLI::App* c_scan = app.add_subcommand("scan", "periodic-orbit creation scan");
    c_scan->add_option("file", scan_file, "map description file")->required();
    c_scan->add_option("--disk", scan_disk, "target disk 'cx,cy,r' or '@name'");
    c_scan->add_option("--qmax", q_max, "largest rational denominator");
    c_scan->add_option("--tsteps", t_steps, "uniform t samples in [0,1]");
    c_scan->add_option("--c0", c0, "sup-displacement budget for rationalization");
    c_scan->add_option("--seeds", scan_seeds, "Newton seed grid per axis");

    CLI::App* c_rat = app.add_subcommand("rationalize", "shear the flux vector rational");
    c_rat->add_option("file", rat_file, "map description file")->required();
    c_rat->add_option("--qmax", q_max, "largest rational denominator");
    c_rat->add_option("--c0", c0, "sup-displacement budget");

    CLI::App* c_verify = app.add_subcommand("verify", "run the invariant suite");
    c_verify->add_option("file", verify_file, "map description file")->required();

    app.require_subcommand(1);

    std::vector<const char*> argv;
    argv.push_back("torusflux");
    for (const auto& a : args) argv.push_back(a.c_str());

    CliResult result;
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        result.exit_code = e.get_exit_code() == 0 ? kExitOk : kExitUsage;
        std::ostringstream os;
        if (result.exit_code == kExitOk) {
            os << app.help();
        } else {
            os << "error: " << e.what() << "\n";
        }
        result.diagnostics = os.str();
        return result;
    }
    result.json_path = g.json_out;
    result.csv_path = g.csv_out;

    const std::string file = c_flux->parsed()     ? flux_file
                             : c_action->parsed() ? action_file
                             : c_orbits->parsed() ? orbits_file
                             : c_scan->parsed()   ? scan_file
                             : c_rat->parsed()    ? rat_file
                                                  : verify_file;
    g.file = file;

    try {
        const MapDocument doc = load_map_file(file);
        CliResult r;
        if (c_flux->parsed()) {
            r = cmd_flux(doc, g);
        } else if (c_action->parsed()) {
            r = cmd_action(doc, g, action_disk);
        } else if (c_orbits->parsed()) {
            r = cmd_orbits(doc, g, orbits_q, orbits_region, orbits_seeds, orbits_tol,
                           orbits_max_iter);
        } else if (c_scan->parsed()) {
            r = cmd_scan(doc, g, scan_disk, q_max, t_steps, c0, scan_seeds);
        } else if (c_rat->parsed()) {
            r = cmd_rationalize(doc, g, q_max, c0);
        } else {
            r = cmd_verify(doc, g);
        }
        r.json_path = result.json_path;
        r.csv_path = result.csv_path;
        return r;
    } catch (const ParseError& e) {
        result.exit_code = kExitParse;
        result.diagnostics = file + ": " + e.what() + "\n";
    } catch (const NotDiskSupported& e) {
        result.exit_code = kExitNotDiskSupported;
        result.diagnostics = std::string("error: ") + e.what() + "\n";
    } catch (const DiskTooLarge& e) {
        result.exit_code = kExitParse;
        result.diagnostics = std::string("error: ") + e.what() + "\n";
    } catch (const TargetUnreachable& e) {
        result.exit_code = kExitNumeric;
        result.diagnostics = std::string("error: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        result.exit_code = kExitNumeric;
        result.diagnostics = std::string("error: ") + e.what() + "\n";
    }
    return result;
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);

    const auto start = std::chrono::steady_clock::now();
    const CliResult result = run_command(args);
    const auto elapsed = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();

    if (!result.diagnostics.empty()) std::cerr << result.diagnostics;

    if (!result.json.empty()) {
        if (result.json_path.empty()) {
            std::cout << result.json << "\n";
        } else {
            std::ofstream out(result.json_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write " << result.json_path << "\n";
                return kExitNumeric;
            }
            out << result.json << "\n";
        }
    }
    if (!result.csv_path.empty() && !result.csv.empty()) {
        std::ofstream out(result.csv_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << result.csv_path << "\n";
            return kExitNumeric;
        }
        out << result.csv;
    }
    std::cerr << "torusflux: finished in " << elapsed << " ms\n";
    return result.exit_code;
}

}  // namespace torusflux
