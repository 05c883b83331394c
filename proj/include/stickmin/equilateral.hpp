#pragma once

#include "stickmin/polygon.hpp"
#include "stickmin/rng.hpp"

namespace stickmin {

/// Millett-Rawdon certificate: when max_i |L_i - 1| < min{mu/n, mu^2/4}
/// there is a true equilateral realization of the same knot type nearby.
struct EquilateralCertificate {
    int n = 0;
    double mu = 0.0;       // minimum distance between non-adjacent edges
    double max_dev = 0.0;  // max_i |L_i - 1|
    double bound = 0.0;    // min{mu/n, mu^2/4}
    double margin = 0.0;   // bound / max_dev (inf when max_dev == 0)
    bool holds = false;    // max_dev < bound, strictly
};

/// Requires n >= 4 (mu is vacuous on a triangle).
EquilateralCertificate mr_certificate(const Polygon& poly);

struct EqualizeResult {
    Polygon polygon;
    double max_dev;
    bool converged;
    long iters;
};

/// Drives every |L_i - 1| toward zero by replacing one vertex at a time with
/// the nearest point making its two incident edges unit length (the
/// intersection circle of the unit spheres about its neighbors when that
/// exists, otherwise the better single-sphere projection). Every replacement
/// is guarded by fold-style sweep checks, so the knot type is preserved.
/// Vertices are visited in cyclic order from a random phase. Returns the
/// best-found polygon with converged=false when target_band is not reached
/// within max_iters proposals.
EqualizeResult equalize_edges(const Polygon& poly, double target_band, long max_iters, double eps,
                              Rng& rng);

struct CloseResult {
    Polygon polygon;
    double closure_norm;  // |sum of edge vectors| measured on the result
    double max_dev;       // max |L_i - 1| measured on the result
    int iters;
};

/// Rescales every edge displacement vector to unit length, then repairs the
/// closure defect delta = sum(e_i) by iterating e_i <- normalize(e_i - delta/n)
/// until the defect reaches the floating-point noise floor. The polygon is
/// rebuilt from partial sums. Throws NotConverged when the defect stays above
/// tol, and InvalidPolygon when the closed polygon fails validation (the
/// operation does not return a corrupted polygon).
CloseResult normalize_and_close(const Polygon& poly, double tol = 1e-14, int max_iters = 10000);

namespace detail {

struct CloseIterStats {
    double residual;
    int iters;
};

/// The closure iteration on raw unit vectors; exposed for direct testing.
CloseIterStats close_unit_vectors(std::vector<Vec3>& edges, double floor_target, int max_iters);

} // namespace detail

} // namespace stickmin
