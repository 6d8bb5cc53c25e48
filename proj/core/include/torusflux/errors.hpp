#ifndef TORUSFLUX_ERRORS_HPP
#define TORUSFLUX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace torusflux {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Disk radius must lie in (0, 1/2) so the embedded chart is injective.
struct DiskTooLarge : Error {
    using Error::Error;
};

struct PathOutsideDisk : Error {
    using Error::Error;
};

// Raised when a map claimed to be disk-supported moves points near or
// outside the disk boundary beyond the support tolerance.
struct NotDiskSupported : Error {
    using Error::Error;
};

// No rational flux target with denominator <= q_max is reachable by
// shears of the allowed size.
struct TargetUnreachable : Error {
    using Error::Error;
};

}  // namespace torusflux

#endif
