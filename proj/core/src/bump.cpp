#include "torusflux/bump.hpp"

#include <cmath>
#include <stdexcept>

namespace torusflux {

namespace {

// exponentially flat cutoff: 0 for s <= 0, exp(-1/s) otherwise
double flat(double s) {
    return s <= 0.0 ? 0.0 : std::exp(-1.0 / s);
}

// flat'(s) = exp(-1/s) / s^2
double flat_derivative(double s) {
    if (s <= 0.0) return 0.0;
    return std::exp(-1.0 / s) / (s * s);
}

}  // namespace

BumpProfile::BumpProfile(double inner, double outer) : inner_(inner), outer_(outer) {
    if (!(inner > 0.0 && inner < outer && outer <= 1.0)) {
        throw std::invalid_argument("BumpProfile: need 0 < inner < outer <= 1");
    }
}

double BumpProfile::value(double r) const {
    if (r <= inner_) return 1.0;
    if (r >= outer_) return 0.0;
    const double u = (outer_ - r) / (outer_ - inner_);
    const double a = flat(u);
    const double b = flat(1.0 - u);
    return a / (a + b);
}

double BumpProfile::derivative(double r) const {
    if (r <= inner_ || r >= outer_) return 0.0;
    const double w = outer_ - inner_;
    const double u = (outer_ - r) / w;
    const double a = flat(u);
    const double b = flat(1.0 - u);
    const double da = flat_derivative(u);
    const double db = flat_derivative(1.0 - u);
    // d/du [a/(a+b)] = (a' b + a b') / (a+b)^2, then du/dr = -1/w
    const double s = a + b;
    return -(da * b + a * db) / (s * s * w);
}

}  // namespace torusflux
