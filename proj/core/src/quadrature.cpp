#include "torusflux/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "torusflux/errors.hpp"

namespace torusflux {

double integrate_torus(const std::function<double(Vec2)>& f, GridSpec grid) {
    const int n = grid.n;
    if (n < 8) throw std::invalid_argument("GridSpec: n must be >= 8");
    const double h = 1.0 / n;
    KahanSum sum;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            sum.add(f({i * h, j * h}));
        }
    }
    return sum.value() / (static_cast<double>(n) * n);
}

const std::vector<std::array<double, 2>>& gauss_legendre(int m) {
    if (m < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::mutex mu;
    static std::map<int, std::vector<std::array<double, 2>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    std::vector<std::array<double, 2>> nw(m);
    // Newton on P_m from the Chebyshev-like initial guess; nodes come out
    // in decreasing order, store them increasing
    for (int k = 0; k < m; ++k) {
        double x = std::cos(std::numbers::pi * (k + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= m; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // one clean-up step then stop
                p0 = 1.0;
                p1 = x;
                for (int j = 2; j <= m; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = m * (x * p1 - p0) / (x * x - 1.0);
                break;
            }
        }
        nw[m - 1 - k] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
    }
    return cache.emplace(m, std::move(nw)).first->second;
}

double integrate_disk(const std::function<double(Vec2)>& f, const Disk& disk,
                      int radial_nodes, int angular_nodes) {
    if (radial_nodes < 2 || angular_nodes < 4) {
        throw std::invalid_argument("integrate_disk: too few nodes");
    }
    const auto& gl = gauss_legendre(radial_nodes);
    const double R = disk.radius;
    const double two_pi = 2.0 * std::numbers::pi;
    KahanSum sum;
    for (int i = 0; i < radial_nodes; ++i) {
        const double rho = 0.5 * (gl[i][0] + 1.0);  // radius fraction in (0,1)
        const double wr = 0.5 * gl[i][1];
        for (int j = 0; j < angular_nodes; ++j) {
            const double theta = two_pi * j / angular_nodes;
            const Vec2 p = disk.center + (R * rho) * Vec2{std::cos(theta), std::sin(theta)};
            sum.add(wr * rho * f(p));
        }
    }
    // area element r dr dtheta = R^2 rho drho dtheta
    return sum.value() * R * R * two_pi / angular_nodes;
}

namespace {

double primitive_pair(PrimitiveKind kind, Vec2 u, Vec2 w) {
    switch (kind) {
        case PrimitiveKind::Angular:
            return 0.5 * (u.x * w.y - u.y * w.x);
        case PrimitiveKind::XdY:
            return u.x * w.y;
        case PrimitiveKind::YdX:
            return u.y * w.x;
    }
    return 0.0;
}

}  // namespace

double line_integral_pullback(const TorusMap& map, const Disk& disk, const Path& path,
                              const Primitive& primitive) {
    if (path.waypoints.size() < 2) {
        throw std::invalid_argument("Path: need at least two waypoints");
    }
    if (path.nodes < 16) {
        throw std::invalid_argument("Path: need at least 16 nodes per segment");
    }
    constexpr int kGaussOrder = 8;
    const auto& gl = gauss_legendre(kGaussOrder);
    const int panels = (path.nodes + kGaussOrder - 1) / kGaussOrder;
    const double rtol = disk.radius * (1.0 + 1e-9) + 1e-12;

    KahanSum total;
    for (std::size_t seg = 0; seg + 1 < path.waypoints.size(); ++seg) {
        const Vec2 a = disk.chart(path.waypoints[seg]);
        const Vec2 b = disk.chart(path.waypoints[seg + 1]);
        const Vec2 tangent = b - a;
        if (norm(tangent) == 0.0) {
            throw std::invalid_argument("Path: consecutive waypoints must be distinct");
        }
        KahanSum segsum;
        for (int pnl = 0; pnl < panels; ++pnl) {
            const double s0 = static_cast<double>(pnl) / panels;
            const double s1 = static_cast<double>(pnl + 1) / panels;
            const double mid = 0.5 * (s0 + s1);
            const double half = 0.5 * (s1 - s0);
            for (int g = 0; g < kGaussOrder; ++g) {
                const double s = mid + half * gl[g][0];
                const Vec2 u = a + s * tangent;
                if (norm(u) > rtol) {
                    throw PathOutsideDisk("line_integral_pullback: node outside disk");
                }
                const Vec2 abs = disk.center + u;
                const Vec2 habs = map.lift(abs);
                // u + displacement, not habs - center: keeps the integrand
                // exactly zero wherever the map is exactly the identity
                const Vec2 hu = u + (habs - abs);
                const Vec2 w = map.jacobian(abs) * tangent;
                double val = primitive_pair(primitive.kind, hu, w) -
                             primitive_pair(primitive.kind, u, tangent);
                if (primitive.gauge) {
                    val += dot(primitive.gauge->grad(habs), w) -
                           dot(primitive.gauge->grad(abs), tangent);
                }
                segsum.add(half * gl[g][1] * val);
            }
        }
        total.add(segsum.value());
    }
    return total.value();
}

}  // namespace torusflux
