#include "torusflux/torus_map.hpp"

#include <algorithm>
#include <stdexcept>

namespace torusflux {

Vec2 TorusMap::lift(Vec2 p) const {
    for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
        p = apply(*it, p);
    }
    return p;
}

Mat2 TorusMap::jacobian(Vec2 p) const {
    Mat2 j = Mat2::identity();
    for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
        j = torusflux::jacobian(*it, p) * j;
        p = apply(*it, p);
    }
    return j;
}

TorusMap TorusMap::inverse() const {
    std::vector<Generator> inv;
    inv.reserve(chain_.size());
    for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
        inv.push_back(inverted(*it));
    }
    return TorusMap(std::move(inv));
}

TorusMap compose(const TorusMap& f, const TorusMap& g) {
    std::vector<Generator> chain;
    chain.reserve(f.size() + g.size());
    chain.insert(chain.end(), f.chain().begin(), f.chain().end());
    chain.insert(chain.end(), g.chain().begin(), g.chain().end());
    return TorusMap(std::move(chain));
}

TorusMap iterate(const TorusMap& f, int q) {
    if (q < 1) throw std::invalid_argument("iterate: q must be >= 1");
    std::vector<Generator> chain;
    chain.reserve(f.size() * static_cast<std::size_t>(q));
    for (int k = 0; k < q; ++k) {
        chain.insert(chain.end(), f.chain().begin(), f.chain().end());
    }
    return TorusMap(std::move(chain));
}

Mat2 jacobian_fd(const TorusMap& f, Vec2 p, double h) {
    const Vec2 fx1 = f.lift({p.x + h, p.y});
    const Vec2 fx0 = f.lift({p.x - h, p.y});
    const Vec2 fy1 = f.lift({p.x, p.y + h});
    const Vec2 fy0 = f.lift({p.x, p.y - h});
    return {(fx1.x - fx0.x) / (2 * h), (fy1.x - fy0.x) / (2 * h),
            (fx1.y - fx0.y) / (2 * h), (fy1.y - fy0.y) / (2 * h)};
}

}  // namespace torusflux
