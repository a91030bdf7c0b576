#pragma once

#include <stdexcept>
#include <string>

namespace qcpl {

/// Truncation produced an unexpected spectral pattern (e.g. more than one
/// interior near-kernel direction); raise N or widen the margin.
struct DegenerateTruncation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The v-basis left the trusted block or lost orthonormality beyond the hard
/// threshold; raise N.
struct TruncationTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Seed projections failed their rank-1 sanity bounds.
struct DecompositionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A measured residual exceeded the hard-failure threshold.
struct VerificationFailure : std::runtime_error {
    VerificationFailure(const std::string& what, int offending_k)
        : std::runtime_error(what), k(offending_k) {}
    int k;
};

/// Symbol samples scattered too widely across the window to be trusted.
struct UnreliableSymbol : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The sampled symbol nearly vanishes on the evaluation grid.
struct IndexUndefined : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qcpl
