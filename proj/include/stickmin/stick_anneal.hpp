#pragma once

#include <functional>
#include <optional>

#include "stickmin/polygon.hpp"
#include "stickmin/rng.hpp"

namespace stickmin {

enum class MoveStatus {
    Accepted,
    RejectedPrecondition,
    RejectedTriangleCheck,
    RejectedMetropolis,
};

struct MoveOutcome {
    MoveStatus status;
    std::optional<Polygon> polygon;  // present iff Accepted
};

/// Rotates vertex i about the line through its neighbors by angle. The swept
/// triangles (prev, v, v') and (next, v, v') must clear the rest of the
/// polygon. Preserves the two incident edge lengths and the edge count.
MoveOutcome fold_move(const Polygon& poly, int i, double angle, double eps);

/// Unit-stick length-decreasing move on vertices o=v(i-1), a=v(i), b=v(i+1),
/// p=v(i+2): replaces a,b by the apex c of a unit-legged triangle over op in
/// the plane selected by plane_angle. Rejected when |o-p| > 2 or the three
/// incident edges are not unit length.
MoveOutcome shrink_move(const Polygon& poly, int i, double plane_angle, double eps);

/// Unit-stick length-increasing move on o=v(i-1), c=v(i), p=v(i+1): replaces
/// c by the top corners a,b of the symmetric unit-sided trapezoid over op in
/// the plane of o,c,p (on c's side). Rejected when o,c,p are collinear or
/// |o-p| > 3.
MoveOutcome grow_move(const Polygon& poly, int i, double eps);

/// Free-length vertex deletion: removes c=v(i) when |o-p|^2 > 1/8 and the
/// triangle (o,c,p) clears the rest of the polygon.
MoveOutcome collapse_move(const Polygon& poly, int i, double eps);

/// Free-length vertex insertion on edge i = (o,p): c = o + t(p-o) + u r with
/// r a unit vector orthogonal to the edge. Rejected when c is collinear with
/// the edge (within 1e-12 of its line) or (t,u) leave the sampling box.
MoveOutcome inflate_move(const Polygon& poly, int edge_index, const Vec3& r, double t, double u,
                         double eps);

struct StageConfig {
    // move weights: fold / edge-count-decreasing / edge-count-increasing
    double w_fold = 0.6;
    double w_decrease = 0.3;
    double w_increase = 0.1;
    double p_grow = 0.05;  // acceptance probability for edge-count increases
    double eps = 1e-9;
    long max_iters = 100000;
    int verify_every = 10000;  // accepted moves between determinant checks; 0 disables
    double time_budget_seconds = 0.0;
};

enum class MoveKind { Fold, Shrink, Grow, Collapse, Inflate };

struct MoveEvent {
    MoveKind kind;
    MoveStatus status;
    int n_before;
    const Polygon* result;  // null unless accepted
};

using MoveObserver = std::function<void(const MoveEvent&)>;

struct StageStats {
    long proposed = 0;
    long accepted = 0;
    int initial_edges = 0;
    int best_edges = 0;
};

/// Annealing over {fold, shrink, grow}. Requires every input edge length
/// within 1e-9 of 1; every output edge keeps that bound. Returns the
/// fewest-edge snapshot observed.
Polygon run_unit_stage(const Polygon& poly, const StageConfig& cfg, Rng& rng,
                       StageStats* stats = nullptr, const MoveObserver* observer = nullptr);

/// Annealing over {fold, collapse, inflate}; edge lengths are unconstrained.
Polygon run_free_stage(const Polygon& poly, const StageConfig& cfg, Rng& rng,
                       StageStats* stats = nullptr, const MoveObserver* observer = nullptr);

} // namespace stickmin
