#ifndef TORUSFLUX_BUMP_HPP
#define TORUSFLUX_BUMP_HPP

namespace torusflux {

/** C-infinity plateau profile on [0, 1].
 *
 * b(r) = 1 on [0, inner], b(r) = 0 on [outer, 1], strictly decreasing in
 * between, with every one-sided derivative vanishing at both junctions.
 * Realized as the standard mollifier ratio
 *     b(r) = phi(u) / (phi(u) + phi(1 - u)),  u = (outer - r)/(outer - inner),
 * with phi(s) = exp(-1/s) for s > 0 and phi(s) = 0 otherwise.  Junction
 * derivatives are 0 by definition.
 */
class BumpProfile {
public:
    BumpProfile() = default;  // inner = 1/3, outer = 2/3
    BumpProfile(double inner, double outer);

    double value(double r) const;
    double derivative(double r) const;

    double inner() const { return inner_; }
    double outer() const { return outer_; }

    // integral of b over [0,1]; exact by the symmetry b(r) + b(inner+outer-r) = 1
    // on the transition zone
    double integral() const { return inner_ + 0.5 * (outer_ - inner_); }

    friend bool operator==(const BumpProfile&, const BumpProfile&) = default;

private:
    double inner_ = 1.0 / 3.0;
    double outer_ = 2.0 / 3.0;
};

}  // namespace torusflux

#endif
