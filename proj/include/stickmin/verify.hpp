#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "stickmin/polygon.hpp"
#include "stickmin/rng.hpp"

namespace stickmin {

/// One crossing of a knot diagram. Arcs are the maximal strands between
/// consecutive under-passes, numbered along the curve; for a knot the arc
/// count equals the crossing count. sign is the usual right-handed crossing
/// sign.
struct Crossing {
    int over_arc = 0;
    int under_in_arc = 0;
    int under_out_arc = 0;
    int sign = +1;
};

struct DiagramCode {
    std::vector<Crossing> crossings;
    int arc_count = 0;  // == crossings.size(); 0 encodes the unknot diagram
};

struct ProjectionResult {
    Vec3 direction;
    DiagramCode code;
};

/// Projects along random directions until the image is generic: no vertex
/// within tolerance of another edge's image, all crossings transversal with
/// separated depths, crossing points pairwise separated. Tolerances are
/// 1e-9 times the polygon diameter. Throws NoGenericProjection after
/// max_attempts failures.
ProjectionResult project_generic(const Polygon& poly, Rng& rng, int max_attempts = 64);

/// |det| of the reduced Alexander matrix of the diagram at t (|t| = 1).
/// Positive crossing row: (1-t) at the over arc, t at under_in, -1 at
/// under_out; negative crossing: (1-t) at the over arc, t at under_out,
/// -1 at under_in. One row and one column are deleted; the magnitude is
/// independent of the choice and of the diagram used, since the Alexander
/// polynomial is defined up to units.
double alexander_eval(const DiagramCode& code, std::complex<double> t);

struct SamplePoint {
    std::complex<double> t;
    double magnitude;
};

struct InvariantReport {
    long long determinant = 0;  // |Alexander(-1)|, an odd positive integer
    std::vector<SamplePoint> samples;
    int crossing_count = 0;  // of the projection used, not minimal
};

/// Determinant plus |Alexander| at sample_count random unit-circle points.
/// The sample points are drawn from rng before the projection, so the same
/// seed always yields bit-identical sample points.
InvariantReport invariant_report(const Polygon& poly, int sample_count, Rng& rng);

/// True iff determinants match exactly and all sample magnitudes agree
/// within rel_tol (pairs both below 1e-9 compare absolutely). Throws
/// MismatchedSamples when the reports were built from different sample
/// points.
bool compare_invariants(const InvariantReport& a, const InvariantReport& b,
                        double rel_tol = 1e-6);

/// Round |Alexander(-1)| of a projection of poly to the knot determinant.
long long knot_determinant(const Polygon& poly, Rng& rng);

namespace detail {

/// alexander_eval with an explicit deleted row/column (for the invariance
/// checks); row and col index crossings/arcs of the full matrix.
double alexander_eval_deleting(const DiagramCode& code, std::complex<double> t,
                               int row, int col);

long long determinant_from_code(const DiagramCode& code);

/// Diagram geometry retained for rendering: 2D vertex images plus crossing
/// positions and which strand is under.
struct PlanarCrossing {
    int edge_over = 0, edge_under = 0;
    double s_over = 0.0, s_under = 0.0;  // params along the edges
    double px = 0.0, py = 0.0;
};

struct PlanarDiagram {
    Vec3 direction, ex, ey;
    std::vector<double> xs, ys;  // projected vertices
    std::vector<PlanarCrossing> crossings;
    DiagramCode code;
};

/// Single projection attempt; empty when the direction is not generic.
std::optional<PlanarDiagram> try_project(const Polygon& poly, const Vec3& direction);

} // namespace detail

} // namespace stickmin
