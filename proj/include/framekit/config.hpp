#pragma once

#include <cstddef>

namespace framekit {

/// Numerical tolerances used throughout the library.  All of them are
/// relative to the largest magnitude involved in the quantity they guard.
/// Callers can tweak individual fields; no operation hard-codes these.
struct Tolerances {
    double sym = 1e-10;        ///< Hermitian-symmetry residual admitted by eigensolvers.
    double eigen = 1e-10;      ///< reconstruction / orthonormality residual of spectral factorizations
    double rank = 1e-12;       ///< eigen/singular values below rank*largest count as zero
    double iso = 1e-10;        ///< spread below which subspaces count as exactly isoclinic
    double tight = 1e-8;       ///< tight_ratio - 1 admitted when a frame must be tight
    double reconstruction = 1e-8;  ///< relative round-trip error admitted by reconstruction

    /// Slack used when asserting a certified inequality: 10x the spectral tolerance.
    double slack() const { return 10.0 * eigen; }
};

/// Knobs for subset sweeps (exhaustive RIP search and friends).
struct SweepOptions {
    std::size_t budget = 2'000'000;  ///< max number of subsets an exhaustive sweep may enumerate
    unsigned threads = 1;            ///< worker threads; reduction stays deterministic
};

} // namespace framekit
