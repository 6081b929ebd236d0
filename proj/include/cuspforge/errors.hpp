#pragma once

#include <stdexcept>
#include <string>

namespace cuspforge {

/// Parallel slope vectors passed to an intersection routine. The two curves
/// are either identical or disjoint; `identical` says which.
struct parallel_curves_error : std::runtime_error {
    bool identical;
    explicit parallel_curves_error(bool identical_)
        : std::runtime_error(identical_ ? "parallel curves: identical"
                                        : "parallel curves: disjoint"),
          identical(identical_) {}
};

/// An enumeration (cosets, solution sets) would exceed the configured cap.
struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A generator set that should span a full-rank lattice does not.
struct degenerate_lattice_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// A congruence system with an infinite solution family.
struct degenerate_intersection_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Violation of an internal cross-check (e.g. closed form vs lattice oracle).
struct internal_check_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace cuspforge
