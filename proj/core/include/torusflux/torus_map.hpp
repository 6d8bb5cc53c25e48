#ifndef TORUSFLUX_TORUS_MAP_HPP
#define TORUSFLUX_TORUS_MAP_HPP

#include <vector>

#include "torusflux/generators.hpp"

namespace torusflux {

/** Area-preserving torus map given as a finite composition of generators.
 *
 * The chain is stored in composition order: chain()[0] is the leftmost
 * factor, i.e. the one applied last.  A map written g0 o g1 o ... o gk
 * applies gk first.  Maps are immutable after construction; evaluation is
 * pure and safe to share across threads.
 *
 * The lift is the natural one induced by the generator lifts, so
 * lift(p + z) = lift(p) + z holds exactly for integer vectors z.
 */
class TorusMap {
public:
    TorusMap() = default;
    explicit TorusMap(std::vector<Generator> chain) : chain_(std::move(chain)) {}
    explicit TorusMap(Generator g) : chain_{std::move(g)} {}

    const std::vector<Generator>& chain() const { return chain_; }
    bool empty() const { return chain_.empty(); }
    std::size_t size() const { return chain_.size(); }

    // lift evaluation on R^2
    Vec2 lift(Vec2 p) const;

    // torus evaluation: project(lift(p))
    Vec2 on_torus(Vec2 p) const { return project(lift(p)); }

    // lift(p) - p; Z^2-periodic in p
    Vec2 displacement(Vec2 p) const { return lift(p) - p; }

    // chain-rule product of the analytic generator Jacobians
    Mat2 jacobian(Vec2 p) const;

    // reversed chain of inverted generators
    TorusMap inverse() const;

    friend bool operator==(const TorusMap&, const TorusMap&) = default;

private:
    std::vector<Generator> chain_;
};

// lift of (f o g): lift(f) o lift(g)
TorusMap compose(const TorusMap& f, const TorusMap& g);

// q-fold composition, q >= 1
TorusMap iterate(const TorusMap& f, int q);

// Jacobian of the lift by central finite differences; testing oracle for
// the analytic chain rule.
Mat2 jacobian_fd(const TorusMap& f, Vec2 p, double h = 1e-6);

}  // namespace torusflux

#endif
